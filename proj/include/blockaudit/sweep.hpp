#pragma once

// Grid sweeps over all implemented block families.
//
// Config format: "key = value" lines, '#' comments, and [family] sections.
// Values are comma-separated items; an item is an integer, a range lo..hi,
// or a keyword (divisors, all, ell). Keys before the first section are
// global (name, oracle_cap).

#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockaudit/audit.hpp"
#include "blockaudit/exceptional.hpp"
#include "blockaudit/lie_blocks.hpp"
#include "blockaudit/symalt.hpp"

namespace blockaudit {

class config_error : public invalid_parameter {
public:
    using invalid_parameter::invalid_parameter;
};

struct GridSection {
    std::string family;
    int line = 0;
    std::map<std::string, std::vector<std::string>> keys;
};

struct SweepConfig {
    std::string name = "custom";
    std::optional<std::uint64_t> oracle_cap;
    std::vector<GridSection> grids;
};

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_items(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

inline std::uint64_t parse_uint(const std::string& s, int line)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw config_error("line " + std::to_string(line) + ": expected a non-negative integer, got '" + s + "'");
    }
    return std::stoull(s);
}

} // namespace detail

inline const std::vector<std::string>& sweep_families()
{
    static const std::vector<std::string> f{"gl",     "gu",        "sl",          "su",   "pgl",
                                            "pgu",    "sp",        "so-odd",      "go-even", "so-even",
                                            "symmetric", "alternating", "spin", "exceptional", "e8-d8"};
    return f;
}

inline SweepConfig parse_config(std::istream& in)
{
    SweepConfig cfg;
    std::string raw;
    int line = 0;
    GridSection* current = nullptr;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw config_error("line " + std::to_string(line) + ": unterminated section header");
            }
            std::string family = detail::trim(text.substr(1, text.size() - 2));
            std::transform(family.begin(), family.end(), family.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (std::find(sweep_families().begin(), sweep_families().end(), family) == sweep_families().end()) {
                throw config_error("line " + std::to_string(line) + ": unknown family '" + family + "'");
            }
            cfg.grids.push_back({family, line, {}});
            current = &cfg.grids.back();
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line) + ": expected 'key = value'");
        }
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (current == nullptr) {
            if (key == "name") {
                cfg.name = value;
            } else if (key == "oracle_cap") {
                cfg.oracle_cap = detail::parse_uint(value, line);
            } else {
                throw config_error("line " + std::to_string(line) + ": unknown global key '" + key + "'");
            }
            continue;
        }
        auto items = detail::split_items(value);
        if (items.empty()) {
            throw config_error("line " + std::to_string(line) + ": empty value for '" + key + "'");
        }
        current->keys[key] = std::move(items);
    }
    return cfg;
}

inline SweepConfig parse_config_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

/// The built-in grid: every family on the audited ranges.
inline const char* default_config_text()
{
    return R"(name = default

[gl]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[gu]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[sl]
ell = 5, 7, 11, 13
a = 1..3
n = ell
g = all

[su]
ell = 5, 7, 11, 13
a = 1..3
n = ell
g = all

[sl]
ell = 5, 7
a = 1..2
n = 1..12
g = all

[pgl]
ell = 5, 7, 11, 13
a = 1..3
n = 1..13

[sp]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[so-odd]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[go-even]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[so-even]
ell = 5, 7, 11, 13
a = 1..3
d = divisors
w = 0..25

[symmetric]
p = 2, 3
w = 0..17

[alternating]
p = 2, 3
w = 0..17

[spin]
p = 3
w = 0..17

[exceptional]
family = all
a = 1..8

[e8-d8]
a = 1..4
)";
}

inline SweepConfig default_config() { return parse_config_string(default_config_text()); }

/// "default" or a path.
inline SweepConfig load_config(const std::string& name_or_path)
{
    if (name_or_path == "default") {
        return default_config();
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw config_error("cannot open config file '" + name_or_path + "'");
    }
    return parse_config(in);
}

using SweepCase = std::variant<BlockSpec, SymBlockSpec, ExceptionalCase>;

namespace detail {

struct SectionReader {
    const GridSection& section;

    const std::vector<std::string>& items(const std::string& key) const
    {
        auto it = section.keys.find(key);
        if (it == section.keys.end()) {
            throw config_error("section [" + section.family + "] at line " + std::to_string(section.line) +
                               ": missing key '" + key + "'");
        }
        return it->second;
    }

    /// Integer list; keywords are resolved by the callback (empty: unknown).
    std::vector<std::uint64_t> values(const std::string& key,
                                      const std::function<std::vector<std::uint64_t>(const std::string&)>& keyword =
                                          {}) const
    {
        std::vector<std::uint64_t> out;
        for (const auto& item : items(key)) {
            const auto dots = item.find("..");
            if (dots != std::string::npos) {
                const auto lo = parse_uint(trim(item.substr(0, dots)), section.line);
                const auto hi = parse_uint(trim(item.substr(dots + 2)), section.line);
                for (auto v = lo; v <= hi; ++v) {
                    out.push_back(v);
                }
            } else if (!item.empty() && std::isdigit(static_cast<unsigned char>(item[0]))) {
                out.push_back(parse_uint(item, section.line));
            } else {
                std::vector<std::uint64_t> resolved;
                if (keyword) {
                    resolved = keyword(item);
                }
                if (resolved.empty()) {
                    throw config_error("section [" + section.family + "] at line " + std::to_string(section.line) +
                                       ": '" + item + "' is not valid for '" + key + "'");
                }
                out.insert(out.end(), resolved.begin(), resolved.end());
            }
        }
        return out;
    }

    void check_keys(std::initializer_list<const char*> allowed) const
    {
        for (const auto& [k, v] : section.keys) {
            bool ok = false;
            for (const char* a : allowed) {
                ok = ok || k == a;
            }
            if (!ok) {
                throw config_error("section [" + section.family + "] at line " + std::to_string(section.line) +
                                   ": unknown key '" + k + "'");
            }
        }
    }
};

inline unsigned narrow(std::uint64_t v)
{
    if (v > 100000) {
        throw config_error("parameter " + std::to_string(v) + " is out of range");
    }
    return static_cast<unsigned>(v);
}

inline void expand_section(const GridSection& s, std::vector<SweepCase>& out)
{
    const SectionReader r{s};
    const auto fam = s.family;
    if (fam == "symmetric" || fam == "alternating" || fam == "spin") {
        r.check_keys({"p", "w"});
        const SymKind kind = fam == "symmetric" ? SymKind::symmetric
                             : fam == "alternating" ? SymKind::alternating
                                                    : SymKind::spin;
        for (auto p : r.values("p")) {
            for (auto w : r.values("w")) {
                out.push_back(SymBlockSpec{p, narrow(w), kind});
            }
        }
        return;
    }
    if (fam == "exceptional" || fam == "e8-d8") {
        std::vector<ExceptionalFamily> families;
        if (fam == "e8-d8") {
            r.check_keys({"a"});
            families.push_back(ExceptionalFamily::E8_D8_isolated);
        } else {
            r.check_keys({"family", "a"});
            for (const auto& item : r.items("family")) {
                if (item == "all") {
                    for (auto f : all_exceptional_families()) {
                        if (f != ExceptionalFamily::E8_D8_isolated) {
                            families.push_back(f);
                        }
                    }
                } else if (auto f = parse_exceptional_family(item)) {
                    families.push_back(*f);
                } else {
                    throw config_error("section [exceptional] at line " + std::to_string(s.line) +
                                       ": unknown family '" + item + "'");
                }
            }
        }
        const auto as = r.values("a");
        for (auto f : families) {
            for (auto a : as) {
                // The ell = 2 series start at a = 2; smaller a are skipped, not errors.
                if (a >= exceptional_min_a(f)) {
                    out.push_back(ExceptionalCase{f, narrow(a)});
                }
            }
        }
        return;
    }
    const auto family = parse_lie_family(fam);
    if (!family) {
        throw config_error("unknown family '" + fam + "'");
    }
    BlockSpec proto;
    proto.family = *family;
    const bool quotient = proto.linear_quotient();
    const bool with_g = *family == LieFamily::SL || *family == LieFamily::SU;
    if (quotient) {
        if (with_g) {
            r.check_keys({"ell", "a", "n", "g"});
        } else {
            r.check_keys({"ell", "a", "n"});
        }
    } else {
        r.check_keys({"ell", "a", "d", "w"});
    }
    for (auto ell : r.values("ell")) {
        for (auto a : r.values("a")) {
            std::vector<std::uint64_t> ds{1};
            if (!quotient) {
                ds = r.values("d", [&](const std::string& kw) {
                    return kw == "divisors" ? divisors(ell - 1) : std::vector<std::uint64_t>{};
                });
            }
            const std::string size_key = quotient ? "n" : "w";
            const auto sizes = r.values(size_key, [&](const std::string& kw) {
                return kw == "ell" ? std::vector<std::uint64_t>{ell} : std::vector<std::uint64_t>{};
            });
            for (auto d : ds) {
                for (auto w : sizes) {
                    std::vector<std::uint64_t> gs{0};
                    if (with_g) {
                        gs = r.values("g", [&](const std::string& kw) {
                            std::vector<std::uint64_t> all;
                            if (kw == "all") {
                                for (std::uint64_t g = 0; g <= a; ++g) {
                                    all.push_back(g);
                                }
                            }
                            return all;
                        });
                    }
                    for (auto g : gs) {
                        BlockSpec spec = proto;
                        spec.ell = ell;
                        spec.a = narrow(a);
                        spec.d = d;
                        spec.w = narrow(w);
                        spec.g = narrow(g);
                        out.push_back(spec);
                    }
                }
            }
        }
    }
}

} // namespace detail

inline std::vector<SweepCase> expand(const SweepConfig& cfg)
{
    std::vector<SweepCase> out;
    for (const auto& s : cfg.grids) {
        detail::expand_section(s, out);
    }
    return out;
}

inline AuditRecord evaluate_case(const SweepCase& c, std::uint64_t cap)
{
    if (const auto* b = std::get_if<BlockSpec>(&c)) {
        return audit(audit_case(evaluate(*b), cap));
    }
    if (const auto* s = std::get_if<SymBlockSpec>(&c)) {
        return audit(audit_case(evaluate(*s), cap));
    }
    return audit(audit_case(exceptional_invariants(std::get<ExceptionalCase>(c))));
}

struct SweepReport {
    std::string name;
    std::vector<AuditRecord> records;

    std::size_t violations() const
    {
        std::size_t n = 0;
        for (const auto& r : records) {
            n += r.c1.verdict == Verdict::violated;
            n += r.c2.verdict == Verdict::violated;
        }
        return n;
    }
};

struct SweepOptions {
    std::uint64_t cap = oracle_cap_from_environment();
    unsigned threads = 0; // 0: hardware concurrency
};

/// Evaluates every case; output order is the enumeration order regardless
/// of the number of workers.
inline SweepReport run_sweep(const SweepConfig& cfg, SweepOptions options = {})
{
    if (cfg.oracle_cap) {
        options.cap = *cfg.oracle_cap;
    }
    const auto cases = expand(cfg);
    std::vector<std::optional<AuditRecord>> slots(cases.size());
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(1, cases.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) {
                return;
            }
            try {
                slots[i] = evaluate_case(cases[i], options.cap);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = cases.size();
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    SweepReport report;
    report.name = cfg.name;
    report.records.reserve(cases.size());
    for (auto& s : slots) {
        report.records.push_back(std::move(*s));
    }
    return report;
}

inline nlohmann::json summary_json(const SweepReport& report)
{
    nlohmann::json counts;
    for (const char* which : {"c1", "c2"}) {
        nlohmann::json c;
        for (auto v : {Verdict::holds_exact, Verdict::holds_conservative, Verdict::violated, Verdict::inconclusive}) {
            c[to_string(v)] = 0;
        }
        counts[which] = c;
    }
    std::map<std::string, std::size_t> brauer;
    for (const auto& r : report.records) {
        counts["c1"][to_string(r.c1.verdict)] = counts["c1"][to_string(r.c1.verdict)].get<std::size_t>() + 1;
        counts["c2"][to_string(r.c2.verdict)] = counts["c2"][to_string(r.c2.verdict)].get<std::size_t>() + 1;
        ++brauer[r.brauer];
    }
    return {{"cases", report.records.size()},
            {"verdicts", counts},
            {"violations", report.violations()},
            {"brauer", brauer}};
}

inline nlohmann::json to_json(const SweepReport& report)
{
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& r : report.records) {
        cases.push_back(to_json(r));
    }
    return {{"config", report.name}, {"cases", cases}, {"summary", summary_json(report)}};
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string params_field(const nlohmann::json& params)
{
    std::string out;
    for (const auto& [k, v] : params.items()) {
        if (!out.empty()) {
            out += ';';
        }
        out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
}

} // namespace detail

inline std::string to_csv(const SweepReport& report)
{
    std::ostringstream out;
    out << "case,family,params,k,k0,l,kD,kDprime,k_kind,k0_kind,l_kind,kD_kind,kDprime_kind,c1,c2,"
           "c1_lhs,c1_rhs,c2_lhs,c2_rhs,brauer\n";
    for (const auto& r : report.records) {
        const auto& c = r.audit_case;
        const auto& inv = c.invariants;
        out << detail::csv_field(c.label) << ',' << detail::csv_field(c.family) << ','
            << detail::csv_field(detail::params_field(c.params)) << ',' << inv.k.value << ',' << inv.k0.value << ','
            << inv.l.value << ',' << c.k_defect.value << ',' << c.k_derived.value << ',' << to_string(inv.k.kind)
            << ',' << to_string(inv.k0.kind) << ',' << to_string(inv.l.kind) << ',' << to_string(c.k_defect.kind)
            << ',' << to_string(c.k_derived.kind) << ',' << to_string(r.c1.verdict) << ','
            << to_string(r.c2.verdict) << ',' << r.c1.witness.lhs << ',' << r.c1.witness.rhs << ','
            << r.c2.witness.lhs << ',' << r.c2.witness.rhs << ',' << r.brauer << '\n';
    }
    return out.str();
}

} // namespace blockaudit
