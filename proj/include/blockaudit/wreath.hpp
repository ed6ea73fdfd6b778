#pragma once

// Symbolic defect groups: iterated wreath towers C_m wr C_ell wr ... wr C_ell,
// direct products of towers, abelian groups, determinant kernels, and
// closed-form families whose counts come from elsewhere.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "blockaudit/bigint.hpp"

namespace blockaudit {

enum class BoundKind { exact, lower, upper };

inline const char* to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::exact:
        return "exact";
    case BoundKind::lower:
        return "lower";
    case BoundKind::upper:
        return "upper";
    }
    return "?";
}

struct CountBound {
    BigInt value = 1;
    BoundKind kind = BoundKind::exact;

    static CountBound exact(BigInt v) { return {std::move(v), BoundKind::exact}; }
    static CountBound lower(BigInt v) { return {std::move(v), BoundKind::lower}; }
    static CountBound upper(BigInt v) { return {std::move(v), BoundKind::upper}; }

    bool is_exact() const { return kind == BoundKind::exact; }

    friend bool operator==(const CountBound&, const CountBound&) = default;
};

/// D_{i,m}: the cyclic group C_m wreathed i times with C_ell.
struct WreathTower {
    std::uint64_t m = 2;
    std::uint64_t ell = 2;
    unsigned levels = 0;

    void validate() const
    {
        if (m < 1) {
            throw invalid_parameter("wreath tower: m must be positive");
        }
        if (!is_prime(ell)) {
            throw invalid_parameter("wreath tower: ell must be prime");
        }
    }

    /// Number of points permuted by the top group, ell^levels.
    std::uint64_t degree() const { return upow(ell, levels); }

    /// (ell^i - 1) / (ell - 1): exponent of ell in the order of the top group.
    std::uint64_t top_exponent() const { return (degree() - 1) / (ell - 1); }

    /// m^{ell^i} * ell^{(ell^i - 1)/(ell - 1)}
    BigInt order() const { return ipow(m, degree()) * ipow(ell, top_exponent()); }

    /// Order of the derived subgroup, which has index m * ell^i for i >= 1.
    BigInt derived_order() const
    {
        if (levels == 0) {
            return 1;
        }
        return exact_div(order(), big(m) * ipow(ell, levels), "derived order");
    }

    std::string describe() const
    {
        return "D(" + std::to_string(levels) + "," + std::to_string(m) + ";" + std::to_string(ell) + ")";
    }

    friend bool operator==(const WreathTower&, const WreathTower&) = default;
};

struct TowerFactor {
    WreathTower tower;
    unsigned multiplicity = 1;
    friend bool operator==(const TowerFactor&, const TowerFactor&) = default;
};

struct TowerProduct {
    std::vector<TowerFactor> factors;
    friend bool operator==(const TowerProduct&, const TowerProduct&) = default;
};

/// Abelian group given by its invariant factors; its class count is its order.
struct AbelianGroup {
    std::vector<BigInt> invariant_factors;

    BigInt order() const
    {
        BigInt o = 1;
        for (const auto& f : invariant_factors) {
            o *= f;
        }
        return o;
    }
};

/// Elements of a tower product of monomial groups over C_m whose residue sum
/// vanishes mod ell^e (the ell-part of a determinant condition). All towers
/// share the same m and ell, and ell^e must divide m.
struct DetKernel {
    TowerProduct base;
    unsigned kernel_exponent = 1;
};

/// A family whose order and class counts are given by closed forms elsewhere.
struct ClosedForm {
    std::string family;
    unsigned a = 1;
    BigInt order = 1;
    CountBound k;
    CountBound k_derived;
};

using DefectModel = std::variant<TowerProduct, AbelianGroup, DetKernel, ClosedForm>;

/// Class count of G wr C_ell given k(G): (k^ell - k)/ell + ell*k.
inline BigInt wreath_class_count(const BigInt& base_classes, std::uint64_t ell)
{
    if (base_classes < 1) {
        throw invalid_parameter("wreath_class_count: base class count must be positive");
    }
    if (!is_prime(ell)) {
        throw invalid_parameter("wreath_class_count: ell must be prime");
    }
    const BigInt non_constant = pow(base_classes, ell) - base_classes;
    return exact_div(non_constant, big(ell), "wreath_class_count") + big(ell) * base_classes;
}

/// Exact k(D_{i,m}) by iterating the wreath recursion from k(C_m) = m.
inline BigInt tower_class_count(const WreathTower& tower)
{
    tower.validate();
    BigInt k = big(tower.m);
    for (unsigned i = 0; i < tower.levels; ++i) {
        k = wreath_class_count(k, tower.ell);
    }
    return k;
}

/// ceil(m^{ell^i} / ell^{(ell^i-1)/(ell-1)})
inline BigInt class_count_lower(const WreathTower& tower)
{
    tower.validate();
    return ceil_div(ipow(tower.m, tower.degree()), ipow(tower.ell, tower.top_exponent()));
}

/// ceil(m^{ell^i - 1} / ell^{(ell^i-1)/(ell-1) + i - 1}), for i >= 1.
inline BigInt derived_class_count_lower(const WreathTower& tower)
{
    tower.validate();
    if (tower.levels == 0) {
        throw invalid_parameter("derived_class_count_lower: requires at least one wreathing step");
    }
    return ceil_div(ipow(tower.m, tower.degree() - 1),
                    ipow(tower.ell, tower.top_exponent() + tower.levels - 1));
}

/// Best formula-only information on k(D_{i,m}').
///
/// i = 0: trivial. i = 1: D' is the sum-zero part of the abelian base, of
/// order m^{ell-1}. i >= 2: D' has index |D_{i-1} : D_{i-1}'| = m ell^{i-1}
/// in the base D_{i-1}^ell, so k(D') >= k(D_{i-1})^ell / (m ell^{i-1}); the
/// larger of that and the closed-form lower bound is reported.
inline CountBound derived_class_count(const WreathTower& tower)
{
    tower.validate();
    if (tower.levels == 0) {
        return CountBound::exact(1);
    }
    if (tower.levels == 1) {
        return CountBound::exact(ipow(tower.m, tower.ell - 1));
    }
    WreathTower below = tower;
    below.levels -= 1;
    const BigInt via_base =
        ceil_div(pow(tower_class_count(below), tower.ell), big(tower.m) * ipow(tower.ell, tower.levels - 1));
    const BigInt closed = derived_class_count_lower(tower);
    return CountBound::lower(via_base > closed ? via_base : closed);
}

/// |D~' : D'| for D a Sylow ell-subgroup of SL_n inside one of GL_n.
inline std::uint64_t sl_derived_index(std::uint64_t n, std::uint64_t ell)
{
    if (n < 2) {
        throw invalid_parameter("sl_derived_index: n must be at least 2");
    }
    if (ell < 3 || !is_prime(ell)) {
        throw invalid_parameter("sl_derived_index: ell must be an odd prime");
    }
    return prime_power_exponent(n, ell) >= 1 ? ell : 1;
}

/// Lower bound p^2 + (n-2)(p-1) on the class count of a group of order p^n.
inline BigInt p_group_class_lower(std::uint64_t p, unsigned n)
{
    if (!is_prime(p)) {
        throw invalid_parameter("p_group_class_lower: p must be prime");
    }
    if (n < 2) {
        return ipow(p, n);
    }
    return big(p * p) + big(n - 2) * big(p - 1);
}

// ---------------------------------------------------------------------------
// Whole-model quantities.

inline BigInt order(const TowerProduct& product)
{
    BigInt o = 1;
    for (const auto& f : product.factors) {
        o *= pow(f.tower.order(), f.multiplicity);
    }
    return o;
}

inline std::uint64_t point_count(const TowerProduct& product)
{
    std::uint64_t n = 0;
    for (const auto& f : product.factors) {
        n += f.tower.degree() * f.multiplicity;
    }
    return n;
}

inline void validate(const DetKernel& kernel)
{
    if (kernel.base.factors.empty()) {
        throw invalid_parameter("det-kernel: empty base");
    }
    const auto m = kernel.base.factors.front().tower.m;
    const auto ell = kernel.base.factors.front().tower.ell;
    for (const auto& f : kernel.base.factors) {
        f.tower.validate();
        if (f.tower.m != m || f.tower.ell != ell) {
            throw invalid_parameter("det-kernel: all towers must share m and ell");
        }
    }
    if (m % upow(ell, kernel.kernel_exponent) != 0) {
        throw invalid_parameter("det-kernel: ell^e must divide m");
    }
}

inline std::uint64_t kernel_ell(const DetKernel& kernel)
{
    return kernel.base.factors.front().tower.ell;
}

inline BigInt order(const DefectModel& model)
{
    struct Visitor {
        BigInt operator()(const TowerProduct& p) const { return blockaudit::order(p); }
        BigInt operator()(const AbelianGroup& g) const { return g.order(); }
        BigInt operator()(const DetKernel& k) const
        {
            validate(k);
            return exact_div(blockaudit::order(k.base), ipow(kernel_ell(k), k.kernel_exponent), "det-kernel order");
        }
        BigInt operator()(const ClosedForm& c) const { return c.order; }
    };
    return std::visit(Visitor{}, model);
}

inline std::string describe(const TowerProduct& product)
{
    if (product.factors.empty()) {
        return "1";
    }
    std::string s;
    for (const auto& f : product.factors) {
        if (!s.empty()) {
            s += " x ";
        }
        s += f.tower.describe();
        if (f.multiplicity != 1) {
            s += "^" + std::to_string(f.multiplicity);
        }
    }
    return s;
}

inline std::string describe(const DefectModel& model)
{
    struct Visitor {
        std::string operator()(const TowerProduct& p) const { return describe(p); }
        std::string operator()(const AbelianGroup& g) const
        {
            std::string s = "abelian(";
            for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
                s += (i ? "," : "") + g.invariant_factors[i].get_str();
            }
            return s + ")";
        }
        std::string operator()(const DetKernel& k) const
        {
            return "ker[" + describe(k.base) + " -> C_" + std::to_string(kernel_ell(k)) + "^" +
                   std::to_string(k.kernel_exponent) + "]";
        }
        std::string operator()(const ClosedForm& c) const { return c.family + "(a=" + std::to_string(c.a) + ")"; }
    };
    return std::visit(Visitor{}, model);
}

namespace detail {

inline CountBound multiply(const CountBound& x, const CountBound& y)
{
    if (x.kind == y.kind) {
        return {x.value * y.value, x.kind};
    }
    if (x.is_exact()) {
        return {x.value * y.value, y.kind};
    }
    if (y.is_exact()) {
        return {x.value * y.value, x.kind};
    }
    throw arithmetic_inconsistency("cannot multiply a lower bound by an upper bound");
}

inline CountBound power(const CountBound& x, unsigned e)
{
    CountBound r = CountBound::exact(1);
    for (unsigned i = 0; i < e; ++i) {
        r = multiply(r, x);
    }
    return r;
}

} // namespace detail

/// k(D) from formulas alone.
///
/// Exact for tower products and abelian groups. For a determinant kernel
/// of index ell^e = m the count is k(D~)/m when the point count is prime
/// to ell (the kernel is then a direct factor); otherwise ceil(k(D~)/ell^e)
/// is returned as a lower bound.
inline CountBound defect_class_count(const DefectModel& model)
{
    struct Visitor {
        CountBound operator()(const TowerProduct& p) const
        {
            BigInt k = 1;
            for (const auto& f : p.factors) {
                k *= pow(tower_class_count(f.tower), f.multiplicity);
            }
            return CountBound::exact(k);
        }
        CountBound operator()(const AbelianGroup& g) const { return CountBound::exact(g.order()); }
        CountBound operator()(const DetKernel& k) const
        {
            validate(k);
            const auto ell = kernel_ell(k);
            const BigInt full = (*this)(k.base).value;
            const BigInt index = ipow(ell, k.kernel_exponent);
            if (k.kernel_exponent == 0) {
                return CountBound::exact(full);
            }
            // With ell^e = m and ell prime to the point count, the scalars
            // of order m form a central complement.
            const bool full_kernel = upow(ell, k.kernel_exponent) == k.base.factors.front().tower.m;
            if (full_kernel && point_count(k.base) % ell != 0) {
                return CountBound::exact(exact_div(full, index, "det-kernel class count"));
            }
            return CountBound::lower(ceil_div(full, index));
        }
        CountBound operator()(const ClosedForm& c) const { return c.k; }
    };
    return std::visit(Visitor{}, model);
}

inline CountBound derived_class_count(const TowerProduct& product)
{
    CountBound k = CountBound::exact(1);
    for (const auto& f : product.factors) {
        k = detail::multiply(k, detail::power(derived_class_count(f.tower), f.multiplicity));
    }
    return k;
}

/// k(D') from formulas alone.
///
/// For a determinant kernel: when the point count n is not a power of ell
/// the kernel has the same derived subgroup as the full product; when n is
/// a power of ell the derived subgroup has index at most ell in D~', so
/// k(D') >= k(D~')/ell. For n = ell and e = a (the full SL condition) D' is
/// abelian of order m^{ell-1}/ell.
inline CountBound defect_derived_class_count(const DefectModel& model)
{
    struct Visitor {
        CountBound operator()(const TowerProduct& p) const { return derived_class_count(p); }
        CountBound operator()(const AbelianGroup&) const { return CountBound::exact(1); }
        CountBound operator()(const DetKernel& k) const
        {
            validate(k);
            const auto ell = kernel_ell(k);
            const auto n = point_count(k.base);
            const CountBound full = derived_class_count(k.base);
            if (k.kernel_exponent == 0 || prime_power_exponent(n, ell) == 0) {
                return full;
            }
            const auto& tower = k.base.factors.front().tower;
            if (n == ell && upow(ell, k.kernel_exponent) == tower.m) {
                return CountBound::exact(exact_div(full.value, big(ell), "SL derived order"));
            }
            return CountBound::lower(ceil_div(full.value, big(ell)));
        }
        CountBound operator()(const ClosedForm& c) const { return c.k_derived; }
    };
    return std::visit(Visitor{}, model);
}

} // namespace blockaudit
