#pragma once

// Brute-force conjugacy class counts for small defect groups.
//
// Every supported model is a group of monomial maps on N labelled points:
// an element (pi, v) sends (j, x) to (pi[j], x + v[j]) with x taken mod the
// modulus of point j. Towers, their direct products and determinant kernels
// are subgroups of this shape.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockaudit/wreath.hpp"

namespace blockaudit {

constexpr std::uint64_t default_oracle_cap = 200000;

/// A JSON number when the value fits in 64 bits, else its decimal string.
inline nlohmann::json json_integer(const BigInt& v)
{
    if (mpz_fits_slong_p(v.get_mpz_t())) {
        return static_cast<std::int64_t>(v.get_si());
    }
    return v.get_str();
}

/// Raised when a group is larger than the configured cap.
class cap_exceeded : public std::runtime_error {
public:
    cap_exceeded(const BigInt& required, std::uint64_t cap, bool exact_requirement = true)
        : std::runtime_error("oracle cap exceeded: need " + std::string(exact_requirement ? "" : "more than ") +
                             required.get_str() + " elements, cap is " + std::to_string(cap)),
          required_(required), cap_(cap)
    {
    }
    const BigInt& required() const { return required_; }
    std::uint64_t cap() const { return cap_; }

private:
    BigInt required_;
    std::uint64_t cap_;
};

/// The cap from BLOCKAUDIT_ORACLE_CAP, or the default.
inline std::uint64_t oracle_cap_from_environment()
{
    if (const char* env = std::getenv("BLOCKAUDIT_ORACLE_CAP")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return v;
        }
    }
    return default_oracle_cap;
}

class MonomialGroup {
public:
    using Element = std::vector<std::uint16_t>; // perm[0..N), then residues[0..N)

    struct ElementHash {
        std::size_t operator()(const Element& e) const noexcept
        {
            std::uint64_t h = 1469598103934665603ull;
            for (auto x : e) {
                h ^= x;
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    explicit MonomialGroup(std::vector<std::uint16_t> moduli) : moduli_(std::move(moduli))
    {
        for (auto m : moduli_) {
            if (m < 1) {
                throw invalid_parameter("monomial group: moduli must be positive");
            }
        }
    }

    std::size_t points() const { return moduli_.size(); }

    Element identity() const
    {
        Element e(2 * points(), 0);
        for (std::size_t j = 0; j < points(); ++j) {
            e[j] = static_cast<std::uint16_t>(j);
        }
        return e;
    }

    Element permutation(const std::vector<std::size_t>& perm) const
    {
        Element e = identity();
        for (std::size_t j = 0; j < points(); ++j) {
            e[j] = static_cast<std::uint16_t>(perm[j]);
        }
        return e;
    }

    Element translation(const std::vector<std::int64_t>& residues) const
    {
        Element e = identity();
        for (std::size_t j = 0; j < points(); ++j) {
            const auto m = static_cast<std::int64_t>(moduli_[j]);
            e[points() + j] = static_cast<std::uint16_t>(((residues[j] % m) + m) % m);
        }
        return e;
    }

    // (g h)(j, x) = g(h(j, x))
    Element multiply(const Element& g, const Element& h) const
    {
        const std::size_t n = points();
        Element r(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto hj = h[j];
            r[j] = g[hj];
            r[n + j] = static_cast<std::uint16_t>((h[n + j] + g[n + hj]) % moduli_[j]);
        }
        return r;
    }

    Element inverse(const Element& g) const
    {
        const std::size_t n = points();
        Element r(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto target = g[j];
            r[target] = static_cast<std::uint16_t>(j);
            r[n + target] = static_cast<std::uint16_t>((moduli_[j] - g[n + j]) % moduli_[j]);
        }
        return r;
    }

    Element conjugate(const Element& s, const Element& x) const { return multiply(multiply(s, x), inverse(s)); }

    Element commutator(const Element& x, const Element& y) const
    {
        return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
    }

    /// Residue sum over all points (meaningful when all moduli agree).
    std::uint64_t residue_sum(const Element& e) const
    {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < points(); ++j) {
            s += e[points() + j];
        }
        return s;
    }

    /// The subgroup generated by gens, refusing beyond cap elements.
    std::vector<Element> closure(const std::vector<Element>& gens, std::uint64_t cap) const
    {
        std::vector<Element> elements{identity()};
        std::unordered_map<Element, std::size_t, ElementHash> index{{elements[0], 0}};
        for (std::size_t i = 0; i < elements.size(); ++i) {
            for (const auto& s : gens) {
                Element y = multiply(elements[i], s);
                if (index.emplace(y, elements.size()).second) {
                    elements.push_back(std::move(y));
                    if (elements.size() > cap) {
                        throw cap_exceeded(big(cap), cap, false);
                    }
                }
            }
        }
        return elements;
    }

    /// Number of orbits of conjugation by gens on the given element set.
    std::uint64_t conjugation_orbits(const std::vector<Element>& elements, const std::vector<Element>& gens) const
    {
        std::unordered_map<Element, std::size_t, ElementHash> index;
        index.reserve(elements.size());
        for (std::size_t i = 0; i < elements.size(); ++i) {
            index.emplace(elements[i], i);
        }
        std::vector<Element> inverses;
        for (const auto& s : gens) {
            inverses.push_back(inverse(s));
        }
        std::vector<char> seen(elements.size(), 0);
        std::vector<std::size_t> stack;
        std::uint64_t orbits = 0;
        for (std::size_t start = 0; start < elements.size(); ++start) {
            if (seen[start]) {
                continue;
            }
            ++orbits;
            seen[start] = 1;
            stack.push_back(start);
            while (!stack.empty()) {
                const auto cur = stack.back();
                stack.pop_back();
                for (std::size_t g = 0; g < gens.size(); ++g) {
                    const Element y = multiply(multiply(gens[g], elements[cur]), inverses[g]);
                    auto it = index.find(y);
                    if (it == index.end()) {
                        throw arithmetic_inconsistency("conjugation left the element set");
                    }
                    if (!seen[it->second]) {
                        seen[it->second] = 1;
                        stack.push_back(it->second);
                    }
                }
            }
        }
        return orbits;
    }

    /// Normal closure in <group_gens> of the commutators of group_gens, as
    /// an element list plus a generating set of it.
    std::pair<std::vector<Element>, std::vector<Element>> derived_subgroup(const std::vector<Element>& group_gens,
                                                                           std::uint64_t cap) const
    {
        const Element one = identity();
        std::vector<Element> gens;
        std::vector<Element> elements{one};
        std::unordered_map<Element, std::size_t, ElementHash> index{{one, 0}};

        // Adds a generator and re-closes. Returns false if already contained.
        auto add_generator = [&](const Element& g) {
            if (index.count(g)) {
                return false;
            }
            gens.push_back(g);
            // Old elements are already closed under the old generators.
            const std::size_t old_size = elements.size();
            auto push = [&](Element y) {
                if (index.emplace(y, elements.size()).second) {
                    elements.push_back(std::move(y));
                    if (elements.size() > cap) {
                        throw cap_exceeded(big(cap), cap, false);
                    }
                }
            };
            for (std::size_t i = 0; i < old_size; ++i) {
                push(multiply(elements[i], g));
            }
            for (std::size_t i = old_size; i < elements.size(); ++i) {
                for (const auto& s : gens) {
                    push(multiply(elements[i], s));
                }
            }
            return true;
        };

        for (std::size_t i = 0; i < group_gens.size(); ++i) {
            for (std::size_t j = i + 1; j < group_gens.size(); ++j) {
                add_generator(commutator(group_gens[i], group_gens[j]));
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                for (const auto& s : group_gens) {
                    if (add_generator(conjugate(s, gens[i]))) {
                        changed = true;
                    }
                }
            }
        }
        return {std::move(elements), std::move(gens)};
    }

private:
    std::vector<std::uint16_t> moduli_;
};

/// A model laid out as a concrete monomial group.
struct MonomialModel {
    MonomialGroup group;
    std::vector<MonomialGroup::Element> generators;
    BigInt expected_order;
    std::string label;
};

namespace detail {

struct Layout {
    std::vector<std::uint16_t> moduli;
    std::vector<std::size_t> tower_offsets; // base point of each tower copy
    std::vector<WreathTower> towers;
};

inline Layout layout(const TowerProduct& product)
{
    Layout out;
    for (const auto& f : product.factors) {
        f.tower.validate();
        if (f.tower.m > 65535) {
            throw invalid_parameter("oracle: modulus too large");
        }
        for (unsigned c = 0; c < f.multiplicity; ++c) {
            out.tower_offsets.push_back(out.moduli.size());
            out.towers.push_back(f.tower);
            for (std::uint64_t j = 0; j < f.tower.degree(); ++j) {
                out.moduli.push_back(static_cast<std::uint16_t>(f.tower.m));
            }
        }
    }
    if (out.moduli.empty()) {
        out.moduli.push_back(1); // the trivial group on one point
    }
    if (out.moduli.size() > 65535) {
        throw invalid_parameter("oracle: too many points");
    }
    return out;
}

// Shift of blocks of size ell^k inside the first ell^{k+1} points of a tower.
inline std::vector<std::size_t> top_shift(std::size_t points, std::size_t offset, const WreathTower& t, unsigned k)
{
    std::vector<std::size_t> perm(points);
    for (std::size_t j = 0; j < points; ++j) {
        perm[j] = j;
    }
    const std::uint64_t block = upow(t.ell, k);
    const std::uint64_t span = block * t.ell;
    for (std::uint64_t j = 0; j < span; ++j) {
        perm[offset + j] = offset + (j + block) % span;
    }
    return perm;
}

inline std::vector<std::int64_t> unit(std::size_t points, std::size_t at, std::int64_t value = 1)
{
    std::vector<std::int64_t> v(points, 0);
    v[at] = value;
    return v;
}

} // namespace detail

inline MonomialModel monomial_model(const TowerProduct& product)
{
    auto lay = detail::layout(product);
    MonomialModel model{MonomialGroup(lay.moduli), {}, order(product), describe(product)};
    const auto n = lay.moduli.size();
    for (std::size_t t = 0; t < lay.towers.size(); ++t) {
        const auto& tower = lay.towers[t];
        const auto off = lay.tower_offsets[t];
        if (tower.m > 1) {
            model.generators.push_back(model.group.translation(detail::unit(n, off)));
        }
        for (unsigned k = 0; k < tower.levels; ++k) {
            model.generators.push_back(model.group.permutation(detail::top_shift(n, off, tower, k)));
        }
    }
    return model;
}

inline MonomialModel monomial_model(const DetKernel& kernel)
{
    validate(kernel);
    auto lay = detail::layout(kernel.base);
    const auto ell = kernel_ell(kernel);
    MonomialModel model{MonomialGroup(lay.moduli), {}, order(DefectModel{kernel}), describe(DefectModel{kernel})};
    const auto n = lay.moduli.size();
    auto diff = [&](std::size_t plus, std::size_t minus) {
        auto v = detail::unit(n, plus);
        v[minus] -= 1;
        return model.group.translation(v);
    };
    for (std::size_t t = 0; t < lay.towers.size(); ++t) {
        const auto& tower = lay.towers[t];
        const auto off = lay.tower_offsets[t];
        for (unsigned k = 0; k < tower.levels; ++k) {
            model.generators.push_back(model.group.permutation(detail::top_shift(n, off, tower, k)));
            model.generators.push_back(diff(off + upow(ell, k), off));
        }
        if (t > 0) {
            model.generators.push_back(diff(off, lay.tower_offsets[0]));
        }
    }
    model.generators.push_back(
        model.group.translation(detail::unit(n, 0, static_cast<std::int64_t>(upow(ell, kernel.kernel_exponent)))));
    return model;
}

struct OracleResult {
    std::string model;
    BigInt order = 1;
    std::optional<BigInt> k;           // absent when only the derived subgroup was enumerated
    BigInt derived_order = 1;
    BigInt k_derived = 1;
};

inline nlohmann::json to_json(const OracleResult& r)
{
    nlohmann::json j;
    j["model"] = r.model;
    j["order"] = json_integer(r.order);
    j["k"] = r.k ? json_integer(*r.k) : nlohmann::json(nullptr);
    j["derived_order"] = json_integer(r.derived_order);
    j["k_derived"] = json_integer(r.k_derived);
    return j;
}

struct OracleOptions {
    std::uint64_t cap = default_oracle_cap;
    bool whole_group = true; // false: enumerate only the derived subgroup
};

/// Enumerates the model (and its derived subgroup) and counts classes.
inline OracleResult brute_force_group(const MonomialModel& model, const OracleOptions& options = {})
{
    OracleResult out;
    out.model = model.label;
    out.order = model.expected_order;
    if (options.whole_group) {
        if (model.expected_order > big(options.cap)) {
            throw cap_exceeded(model.expected_order, options.cap);
        }
        const auto elements = model.group.closure(model.generators, options.cap);
        if (big(elements.size()) != model.expected_order) {
            throw arithmetic_inconsistency("oracle: generated " + std::to_string(elements.size()) +
                                           " elements, expected " + model.expected_order.get_str());
        }
        out.k = big(model.group.conjugation_orbits(elements, model.generators));
    }
    const auto [derived, derived_gens] = model.group.derived_subgroup(model.generators, options.cap);
    out.derived_order = big(derived.size());
    out.k_derived = big(model.group.conjugation_orbits(derived, derived_gens));
    return out;
}

inline OracleResult brute_force_group(const DefectModel& model, const OracleOptions& options = {})
{
    if (const auto* p = std::get_if<TowerProduct>(&model)) {
        return brute_force_group(monomial_model(*p), options);
    }
    if (const auto* k = std::get_if<DetKernel>(&model)) {
        return brute_force_group(monomial_model(*k), options);
    }
    throw invalid_parameter("oracle: only tower products and determinant kernels are supported");
}

namespace detail {

// Memo of derived-subgroup class counts of single towers, shared across
// threads; towers recur throughout sweeps.
class DerivedMemo {
public:
    std::optional<BigInt> get(const WreathTower& t, std::uint64_t cap)
    {
        const auto key = std::make_tuple(t.m, t.ell, t.levels, cap);
        {
            std::lock_guard lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                return it->second;
            }
        }
        std::optional<BigInt> value;
        if (t.derived_order() <= big(cap)) {
            OracleOptions opts{cap, false};
            value = brute_force_group(monomial_model(TowerProduct{{{t, 1}}}), opts).k_derived;
        }
        std::lock_guard lock(mutex_);
        memo_.emplace(key, value);
        return value;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::uint64_t, std::uint64_t, unsigned, std::uint64_t>, std::optional<BigInt>> memo_;
};

inline DerivedMemo& derived_memo()
{
    static DerivedMemo memo;
    return memo;
}

} // namespace detail

/// k(D') for a tower, exact from the formulas for i <= 1 and from the oracle
/// for larger towers whose derived subgroup fits under the cap; otherwise
/// the formula lower bound.
inline CountBound derived_class_count_refined(const WreathTower& tower, std::uint64_t cap = oracle_cap_from_environment())
{
    const CountBound formula = derived_class_count(tower);
    if (formula.is_exact()) {
        return formula;
    }
    if (auto exact = detail::derived_memo().get(tower, cap)) {
        return CountBound::exact(*exact);
    }
    return formula;
}

inline CountBound derived_class_count_refined(const TowerProduct& product,
                                              std::uint64_t cap = oracle_cap_from_environment())
{
    CountBound k = CountBound::exact(1);
    for (const auto& f : product.factors) {
        k = detail::multiply(k, detail::power(derived_class_count_refined(f.tower, cap), f.multiplicity));
    }
    return k;
}

/// (k(D), k(D')) for a model, replacing formula bounds by brute-force values
/// when the relevant group fits under the cap.
inline std::pair<CountBound, CountBound> defect_counts(const DefectModel& model,
                                                       std::uint64_t cap = oracle_cap_from_environment())
{
    CountBound k = defect_class_count(model);
    CountBound kd = defect_derived_class_count(model);
    if (const auto* p = std::get_if<TowerProduct>(&model)) {
        kd = derived_class_count_refined(*p, cap);
    } else if (std::holds_alternative<DetKernel>(model) && (!k.is_exact() || !kd.is_exact()) &&
               order(model) <= big(cap)) {
        const auto r = brute_force_group(model, OracleOptions{cap, true});
        k = CountBound::exact(*r.k);
        kd = CountBound::exact(r.k_derived);
    }
    return {k, kd};
}

/// Models small enough to enumerate under the default cap, used by the
/// oracle equivalence checks and the p-group class bound.
inline std::vector<DefectModel> oracle_suite()
{
    auto tower = [](std::uint64_t m, std::uint64_t ell, unsigned i) {
        return TowerProduct{{{WreathTower{m, ell, i}, 1}}};
    };
    std::vector<DefectModel> suite{
        tower(2, 2, 1),
        tower(2, 2, 2),
        tower(2, 2, 3),
        tower(4, 2, 1),
        tower(4, 2, 2),
        tower(8, 2, 2),
        tower(3, 3, 1),
        tower(9, 3, 1),
        tower(27, 3, 1),
        tower(5, 5, 1),
        TowerProduct{{{WreathTower{3, 3, 0}, 2}, {WreathTower{3, 3, 1}, 1}}},
        TowerProduct{{{WreathTower{2, 2, 1}, 1}, {WreathTower{2, 2, 2}, 1}}},
        DetKernel{tower(3, 3, 1), 1},
        DetKernel{tower(9, 3, 1), 1},
        DetKernel{tower(9, 3, 1), 2},
        DetKernel{tower(5, 5, 1), 1},
        DetKernel{tower(2, 2, 2), 1},
        DetKernel{tower(2, 2, 3), 1},
        DetKernel{TowerProduct{{{WreathTower{2, 2, 0}, 1}, {WreathTower{2, 2, 2}, 1}}}, 1},
        DetKernel{TowerProduct{{{WreathTower{3, 3, 0}, 1}, {WreathTower{3, 3, 1}, 1}}}, 1},
    };
    return suite;
}

} // namespace blockaudit
