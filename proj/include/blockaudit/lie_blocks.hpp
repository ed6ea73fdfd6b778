#pragma once

// Invariants of unipotent ell-blocks of linear, unitary and classical groups
// in non-defining characteristic. Everything is a function of (ell, a, d, w)
// and the index parameters; q itself never appears.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>

#include "blockaudit/combinatorics.hpp"
#include "blockaudit/wreath.hpp"

namespace blockaudit {

enum class LieFamily { GL, GU, SL, SU, PGL, PGU, Sp, SO_odd, GO_even, SO_even };

inline const char* to_string(LieFamily f)
{
    switch (f) {
    case LieFamily::GL:
        return "GL";
    case LieFamily::GU:
        return "GU";
    case LieFamily::SL:
        return "SL";
    case LieFamily::SU:
        return "SU";
    case LieFamily::PGL:
        return "PGL";
    case LieFamily::PGU:
        return "PGU";
    case LieFamily::Sp:
        return "Sp";
    case LieFamily::SO_odd:
        return "SO-odd";
    case LieFamily::GO_even:
        return "GO-even";
    case LieFamily::SO_even:
        return "SO-even";
    }
    return "?";
}

inline std::optional<LieFamily> parse_lie_family(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "gl") return LieFamily::GL;
    if (s == "gu") return LieFamily::GU;
    if (s == "sl") return LieFamily::SL;
    if (s == "su") return LieFamily::SU;
    if (s == "pgl") return LieFamily::PGL;
    if (s == "pgu") return LieFamily::PGU;
    if (s == "sp") return LieFamily::Sp;
    if (s == "so-odd" || s == "so_odd") return LieFamily::SO_odd;
    if (s == "go-even" || s == "go_even") return LieFamily::GO_even;
    if (s == "so-even" || s == "so_even") return LieFamily::SO_even;
    return std::nullopt;
}

struct BlockInvariants {
    CountBound k;
    CountBound k0;
    CountBound l;

    static BlockInvariants trivial()
    {
        return {CountBound::exact(1), CountBound::exact(1), CountBound::exact(1)};
    }
};

/// A unipotent block family member. For SL/SU/PGL/PGU the weight is n and
/// d = 1. g is the ell-exponent of |GL : G| (SL/SU only).
struct BlockSpec {
    LieFamily family = LieFamily::GL;
    std::uint64_t ell = 5;
    unsigned a = 1;
    std::uint64_t d = 1;
    unsigned w = 0;
    unsigned g = 0;

    bool linear_quotient() const
    {
        return family == LieFamily::SL || family == LieFamily::SU || family == LieFamily::PGL ||
               family == LieFamily::PGU;
    }

    bool classical() const
    {
        return family == LieFamily::Sp || family == LieFamily::SO_odd || family == LieFamily::GO_even ||
               family == LieFamily::SO_even;
    }

    /// ell^u = gcd(ell^g, n, ell^a)_ell.
    unsigned u() const { return std::min({g, valuation(w, ell), a}); }

    /// ell^m = gcd(n, ell^a)_ell.
    unsigned m() const { return std::min(valuation(w, ell), a); }

    /// d' = d / gcd(d, 2); classical families use 2d' as multipartition parameter.
    std::uint64_t d_prime() const { return d / std::gcd<std::uint64_t>(d, 2); }

    std::string describe() const
    {
        std::string s = std::string(to_string(family)) + "(ell=" + std::to_string(ell) + ",a=" + std::to_string(a);
        if (linear_quotient()) {
            s += ",n=" + std::to_string(w);
            if (family == LieFamily::SL || family == LieFamily::SU) {
                s += ",g=" + std::to_string(g);
            }
        } else {
            s += ",d=" + std::to_string(d) + ",w=" + std::to_string(w);
        }
        return s + ")";
    }
};

/// Sylow ell-subgroup of GL_{dw}: prod_i D_{i,ell^a}^{a_i} over the ell-adic digits of w.
inline TowerProduct gl_defect_model(std::uint64_t ell, unsigned a, unsigned w)
{
    TowerProduct p;
    const auto digits = l_adic_digits(w, ell);
    const auto m = upow(ell, a);
    for (std::size_t i = 0; i < digits.digits.size(); ++i) {
        if (digits.digits[i] > 0) {
            p.factors.push_back({WreathTower{m, ell, static_cast<unsigned>(i)}, static_cast<unsigned>(digits.digits[i])});
        }
    }
    return p;
}

/// k_0 = prod_i k(b ell^i, a_i).
inline BigInt gl_k0(std::uint64_t ell, std::uint64_t b, unsigned w)
{
    const auto digits = l_adic_digits(w, ell);
    BigInt k0 = 1;
    std::uint64_t scale = 1;
    for (auto digit : digits.digits) {
        k0 *= multipartition_count(b * scale, static_cast<unsigned>(digit));
        scale *= ell;
    }
    return k0;
}

inline BlockInvariants gl_invariants(std::uint64_t ell, unsigned a, std::uint64_t d, unsigned w)
{
    const MultipartitionParams params{ell, a, d, w};
    params.validate();
    if (w == 0) {
        return BlockInvariants::trivial();
    }
    return {CountBound::exact(k_ell(params)), CountBound::exact(gl_k0(ell, params.b(), w)),
            CountBound::exact(multipartition_count(d, w))};
}

namespace detail {

inline void validate_linear_quotient(std::uint64_t n, std::uint64_t ell, unsigned a)
{
    if (ell < 3 || !is_prime(ell)) {
        throw invalid_parameter("ell must be an odd prime");
    }
    if (a < 1) {
        throw invalid_parameter("a must be at least 1");
    }
    if (n < 1) {
        throw invalid_parameter("n must be positive");
    }
}

} // namespace detail

/// Principal ell-block of SL_n(eps q) <= G <= GL_n(eps q), ell | q - eps,
/// with ell^g = |GL_n : G|_ell.
inline BlockInvariants sl_invariants(unsigned n, std::uint64_t ell, unsigned a, unsigned g)
{
    detail::validate_linear_quotient(n, ell, a);
    if (g > a) {
        throw invalid_parameter("g cannot exceed a");
    }
    const BlockInvariants gl = gl_invariants(ell, a, 1, n);
    const BigInt ell_g = ipow(ell, g);
    const unsigned f = prime_power_exponent(n, ell);
    const unsigned v = valuation(n, ell);
    const unsigned u = std::min({g, v, a});

    BigInt k0 = exact_div(gl.k0.value, ell_g, "k0(B~)/ell^g");
    if (f >= 1 && g > 0) {
        k0 += ipow(ell, a + f - g);
    }

    BigInt l = partition_count(n);
    for (unsigned i = 1; i <= u; ++i) {
        l += (ipow(ell, i) - ipow(ell, i - 1)) * partition_count(static_cast<unsigned>(n / upow(ell, i)));
    }

    CountBound k;
    if (g == 0) {
        k = gl.k;
    } else if (v == 0) {
        // Restrictions are irreducible and twisting orbits have length ell^g.
        k = CountBound::exact(exact_div(gl.k.value, ell_g, "k(B~)/ell^g"));
    } else if (n == ell && g == a) {
        const BigInt num = k_ell(ell, a, 1, static_cast<unsigned>(ell)) + big(ell * ell - 1) * k_ell(ell, a, 1, 1);
        k = CountBound::exact(exact_div(num, ipow(ell, a), "SL_ell class count"));
    } else {
        // Characters splitting into ell^j constituents are counted by
        // p_ell(n / ell^j) ell^{a n / ell^j}; j runs up to min(v, g).
        BigInt num = gl.k.value;
        const unsigned top = std::min(v, g);
        for (unsigned j = 1; j <= top; ++j) {
            const auto part = n / upow(ell, j);
            num += l_composition_count(part, ell) * ipow(ell, 2 * j + a * part);
        }
        k = CountBound::upper(floor_div(num, ell_g));
    }
    return {k, CountBound::exact(k0), CountBound::exact(l)};
}

/// k_0 of the principal block of PGL_n(eps q): k_0(B~) / ell^{a-m}.
inline BigInt pgl_k0(std::uint64_t ell, unsigned a, unsigned m, const BigInt& gl_k0_value)
{
    if (m > a) {
        throw invalid_parameter("m cannot exceed a");
    }
    return exact_div(gl_k0_value, ipow(ell, a - m), "k0(B~)/ell^(a-m)");
}

inline BlockInvariants pgl_invariants(unsigned n, std::uint64_t ell, unsigned a)
{
    detail::validate_linear_quotient(n, ell, a);
    const BlockInvariants gl = gl_invariants(ell, a, 1, n);
    const unsigned m = std::min(valuation(n, ell), a);
    if (m == 0) {
        // Z(GL)_ell is a direct factor: B~ is B-bar times its ell^a linear characters.
        return {CountBound::exact(exact_div(gl.k.value, ipow(ell, a), "k(B~)/ell^a")),
                CountBound::exact(pgl_k0(ell, a, m, gl.k0.value)), gl.l};
    }
    // Characters of the quotient are those of B~ with the centre in their
    // kernel; l is only bounded by the unipotent basic set.
    return {CountBound::upper(gl.k.value), CountBound::exact(pgl_k0(ell, a, m, gl.k0.value)),
            CountBound::lower(partition_count(n))};
}

inline BlockInvariants classical_invariants(LieFamily family, std::uint64_t ell, unsigned a, std::uint64_t d,
                                            unsigned w)
{
    if (!(family == LieFamily::Sp || family == LieFamily::SO_odd || family == LieFamily::GO_even ||
          family == LieFamily::SO_even)) {
        throw invalid_parameter("classical_invariants: not a classical family");
    }
    if (ell < 3 || !is_prime(ell)) {
        throw invalid_parameter("classical_invariants: ell must be an odd prime");
    }
    if (d < 1 || (ell - 1) % d != 0) {
        throw invalid_parameter("classical_invariants: d must divide ell - 1");
    }
    const std::uint64_t d_eff = 2 * (d / std::gcd<std::uint64_t>(d, 2));
    if ((ell - 1) % d_eff != 0) {
        throw invalid_parameter("classical_invariants: 2d' must divide ell - 1");
    }
    const BlockInvariants gl = gl_invariants(ell, a, d_eff, w);
    if (family != LieFamily::SO_even || w == 0) {
        return gl;
    }
    // SO-even under the GO-even covering block: k(B) <= k(B~), and index 2
    // halves k_0 and l at worst.
    return {CountBound::upper(gl.k.value), CountBound::lower(ceil_div(gl.k0.value, 2)),
            CountBound::lower(ceil_div(gl.l.value, 2))};
}

struct LieBlockResult {
    BlockSpec spec;
    BlockInvariants invariants;
    DefectModel defect;
};

inline void validate(const BlockSpec& spec)
{
    if (!is_prime(spec.ell) || spec.ell < 3) {
        throw invalid_parameter("ell must be an odd prime");
    }
    if (spec.a < 1) {
        throw invalid_parameter("a must be at least 1");
    }
    if (spec.linear_quotient()) {
        if (spec.d != 1) {
            throw invalid_parameter(std::string(to_string(spec.family)) + " requires d = 1 (ell | q - eps)");
        }
        if (spec.w < 1) {
            throw invalid_parameter("n must be positive");
        }
    }
    if (spec.g > 0 && spec.family != LieFamily::SL && spec.family != LieFamily::SU) {
        throw invalid_parameter("g applies only to SL/SU");
    }
}

/// Invariants and defect model for one block.
inline LieBlockResult evaluate(const BlockSpec& spec)
{
    validate(spec);
    LieBlockResult r{spec, BlockInvariants::trivial(), TowerProduct{}};
    switch (spec.family) {
    case LieFamily::GL:
    case LieFamily::GU:
        r.invariants = gl_invariants(spec.ell, spec.a, spec.d, spec.w);
        r.defect = gl_defect_model(spec.ell, spec.a, spec.w);
        break;
    case LieFamily::SL:
    case LieFamily::SU: {
        r.invariants = sl_invariants(spec.w, spec.ell, spec.a, spec.g);
        DetKernel kernel{gl_defect_model(spec.ell, spec.a, spec.w), spec.g};
        r.defect = kernel;
        break;
    }
    case LieFamily::PGL:
    case LieFamily::PGU: {
        r.invariants = pgl_invariants(spec.w, spec.ell, spec.a);
        const TowerProduct base = gl_defect_model(spec.ell, spec.a, spec.w);
        if (spec.m() == 0) {
            // D~ = (D~ cap SL) x Z_ell, so the image is the determinant kernel.
            r.defect = DetKernel{base, spec.a};
            break;
        }
        const CountBound k_base = defect_class_count(DefectModel{base});
        const CountBound kd_base = derived_class_count(base);
        ClosedForm cf;
        cf.family = std::string("image of Sylow in ") + to_string(spec.family);
        cf.a = spec.a;
        cf.order = exact_div(order(base), ipow(spec.ell, spec.a), "PGL Sylow order");
        // Quotients by a central subgroup of order ell^a, meeting D~' in at most ell^m elements.
        cf.k = CountBound::lower(ceil_div(k_base.value, ipow(spec.ell, spec.a)));
        cf.k_derived = CountBound::lower(ceil_div(kd_base.value, ipow(spec.ell, spec.m())));
        r.defect = cf;
        break;
    }
    case LieFamily::Sp:
    case LieFamily::SO_odd:
    case LieFamily::GO_even:
    case LieFamily::SO_even:
        r.invariants = classical_invariants(spec.family, spec.ell, spec.a, spec.d, spec.w);
        r.defect = gl_defect_model(spec.ell, spec.a, spec.w);
        break;
    }
    return r;
}

} // namespace blockaudit
