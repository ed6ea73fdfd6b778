#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "blockaudit/blockaudit.hpp"

using namespace blockaudit;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

template <class T>
std::string str(const T& v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void timed(Outcome& out, const std::string& label, double limit, const std::function<void(Outcome&)>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    body(out);
    const double dt = seconds_since(t0);
    out.expect(dt < limit, label + " took " + str(dt) + " s (limit " + str(limit) + " s)");
}

Outcome golden_values()
{
    Outcome out;
    auto check = [&](const std::string& label, const BigInt& got, const BigInt& want) {
        out.expect(got == want, label + ": got " + got.get_str() + ", expected " + want.get_str());
    };
    timed(out, "k(5,1,2,5)", 1, [&](Outcome&) { check("k(5,1,2,5)", k_ell(5, 1, 2, 5), 254); });
    timed(out, "k(5,1,1,5)", 1, [&](Outcome&) { check("k(5,1,1,5)", k_ell(5, 1, 1, 5), 510); });
    timed(out, "SL5", 1, [&](Outcome&) {
        const auto b = sl_invariants(5, 5, 1, 1);
        check("SL5 k", b.k.value, 126);
        check("SL5 k0", b.k0.value, 10);
        check("SL5 l", b.l.value, 11);
    });
    timed(out, "SL7", 1, [&](Outcome&) { check("SL7 k", sl_invariants(7, 7, 1, 1).k.value, 1821); });
    timed(out, "wreath", 1, [&](Outcome&) { check("wreath_class_count(7,7)", wreath_class_count(7, 7), 117697); });
    timed(out, "det-kernel", 1, [&](Outcome&) {
        const OracleResult r = brute_force_group(DetKernel{TowerProduct{{{{5, 5, 1}, 1}}}, 1});
        check("det-kernel(5,5) k", r.k.value_or(0), 149);
    });
    timed(out, "2F4", 1, [&](Outcome&) {
        const auto r = exceptional_invariants({ExceptionalFamily::F4_2_l3, 1});
        check("2F4 k", r.invariants.k.value, 14);
        check("2F4 kD", r.k_defect.value, 11);
    });
    timed(out, "table k0 row", 1, [&](Outcome&) {
        const std::vector<unsigned> printed{9, 27, 81, 54, 162, 486, 27, 81, 243, 648, 2187, 13122};
        const auto& ws = table_p3_weights();
        for (std::size_t i = 0; i < ws.size(); ++i) {
            check("k0(B~) at w=" + std::to_string(ws[i]), sym_k0(3, ws[i]), printed[i]);
        }
    });
    return out;
}

Outcome oracle_equivalence()
{
    Outcome out;
    timed(out, "oracle suite", 60, [&](Outcome& o) {
        std::size_t instances = 0;
        for (const auto& model : oracle_suite()) {
            const bool tower = std::holds_alternative<TowerProduct>(model);
            if ((!tower && !std::holds_alternative<DetKernel>(model)) || order(model) > 200000) {
                continue;
            }
            const std::string name = describe(model);
            const OracleResult r = brute_force_group(model);
            if (!r.k) {
                o.expect(false, name + ": no class count");
                continue;
            }
            ++instances;
            const CountBound k = defect_class_count(model);
            const CountBound kd = defect_derived_class_count(model);
            if (k.is_exact()) {
                o.expect(k.value == *r.k, name + ": k formula " + k.value.get_str() + " vs " + r.k->get_str());
            } else {
                o.expect(k.kind == BoundKind::lower && k.value <= *r.k,
                         name + ": k bound " + k.value.get_str() + " vs " + r.k->get_str());
            }
            if (kd.is_exact()) {
                o.expect(kd.value == r.k_derived,
                         name + ": k(D') formula " + kd.value.get_str() + " vs " + r.k_derived.get_str());
            } else {
                o.expect(kd.kind == BoundKind::lower && kd.value <= r.k_derived,
                         name + ": k(D') bound " + kd.value.get_str() + " vs " + r.k_derived.get_str());
            }
            if (tower) {
                for (const auto& f : std::get<TowerProduct>(model).factors) {
                    if (f.multiplicity != 1 || std::get<TowerProduct>(model).factors.size() != 1) {
                        continue;
                    }
                    o.expect(class_count_lower(f.tower) <= *r.k, name + ": lower bound on k(D) exceeded");
                    if (f.tower.levels >= 1) {
                        o.expect(derived_class_count_lower(f.tower) <= r.k_derived,
                                 name + ": lower bound on k(D') exceeded");
                    }
                }
            }
        }
        // the claimed kernel value
        const OracleResult sl5 = brute_force_group(DetKernel{TowerProduct{{{{5, 5, 1}, 1}}}, 1});
        o.expect(sl5.k && *sl5.k == 149, "ker(C5 wr C5) class count is not 149");
        o.expect(instances >= 6, "only " + std::to_string(instances) + " instances");
    });
    return out;
}

Outcome bound_suites()
{
    Outcome out;
    timed(out, "bound suites", 120, [&](Outcome& o) {
        for (auto id : {LemmaId::L5_1a, LemmaId::L5_1b, LemmaId::L5_2a, LemmaId::L5_2b, LemmaId::L5_3,
                        LemmaId::L5_4, LemmaId::L5_5, LemmaId::P2_3}) {
            const auto results = verify_bounds(id);
            const BoundSummary s = summarize(id, results);
            if (!s.pass) {
                for (const auto& r : results) {
                    if (r.outcome == Certified::fails && !r.in_exception) {
                        o.expect(false, std::string(to_string(id)) + " fails outside its exception set at " +
                                            r.point.dump() + " (lhs " + r.lhs + ", rhs " + str(r.rhs) + ")");
                    }
                }
                o.expect(s.required_failure_seen, "L5.4 (5,1,5) failure not reproduced");
                o.expect(s.inconclusive == 0, std::string(to_string(id)) + " has inconclusive points");
                o.expect(false, std::string(to_string(id)) + " suite does not pass");
            }
        }
    });
    return out;
}

Outcome conjecture_sweeps()
{
    Outcome out;
    timed(out, "sweep", 300, [&](Outcome& o) {
        const SweepReport report = run_sweep(default_config());
        o.expect(report.violations() == 0, std::to_string(report.violations()) + " violations");
        for (const auto& r : report.records) {
            if (r.c1.verdict == Verdict::violated || r.c2.verdict == Verdict::violated) {
                o.expect(false, "violation at " + r.audit_case.label);
            }
        }
        for (const auto& rec : e8_isolated_d8_check(1, 4)) {
            o.expect(rec.c1.verdict != Verdict::violated && rec.c2.verdict != Verdict::violated,
                     "violation at " + rec.audit_case.label);
        }
    });
    return out;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const std::string& cli)
{
    Outcome out;
    if (cli.empty()) {
        out.expect(false, "no CLI path given");
        return out;
    }
    const std::string a = "acceptance_sweep_a.json", b = "acceptance_sweep_b.json";
    for (const auto& f : {a, b}) {
        const std::string cmd = "\"" + cli + "\" sweep --config default --json " + f + " 2>/dev/null";
        const int rc = std::system(cmd.c_str());
        out.expect(rc == 0, "'" + cmd + "' returned " + std::to_string(rc));
    }
    const std::string ja = slurp(a), jb = slurp(b);
    out.expect(!ja.empty(), "empty report");
    out.expect(ja == jb, "reports differ");
    std::remove(a.c_str());
    std::remove(b.c_str());
    return out;
}

Outcome root_counts()
{
    Outcome out;
    timed(out, "root counts", 1, [&](Outcome& o) {
        for (char c : std::string("ABCDEFG")) {
            const RootType t = *parse_root_type(c);
            for (unsigned r = 2; r <= 12; ++r) {
                if (valid_root_system(t, r)) {
                    const unsigned n = root_height_count(t, r);
                    o.expect(n >= root_height_claim(r), std::string(1, c) + std::to_string(r) + ": " +
                                                            std::to_string(n) + " roots of height 2 or 3");
                }
            }
        }
    });
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 golden values", golden_values},
        {"2 oracle equivalence", oracle_equivalence},
        {"3 bound suites", bound_suites},
        {"4 conjecture sweeps", conjecture_sweeps},
        {"5 determinism", [&] { return determinism(cli); }},
        {"6 root counts", root_counts},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  (" << seconds_since(t0) << " s)\n";
        for (const auto& n : o.notes) {
            std::cout << "      " << n << "\n";
        }
        failed += !o.pass;
    }
    std::cout << (6 - failed) << "/6 criteria pass\n";
    return 0;
}
