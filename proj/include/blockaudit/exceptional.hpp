#pragma once

// Principal blocks of exceptional groups in non-defining characteristic:
// closed forms for the small-rank series and the estimates for types E.

#include <optional>
#include <string>
#include <vector>

#include "blockaudit/combinatorics.hpp"
#include "blockaudit/lie_blocks.hpp"
#include "blockaudit/wreath.hpp"

namespace blockaudit {

enum class ExceptionalFamily {
    G2_l2,
    G2_l3,
    D4_3_l2,
    D4_3_l3,
    F4_2_l3,
    E6_l5,
    E6_2_l5,
    E7_l5,
    E7_l7,
    E8_l5_split,
    E8_l5_twisted,
    E8_l7,
    E8_D8_isolated,
};

inline const std::vector<ExceptionalFamily>& all_exceptional_families()
{
    static const std::vector<ExceptionalFamily> all{
        ExceptionalFamily::G2_l2,        ExceptionalFamily::G2_l3,         ExceptionalFamily::D4_3_l2,
        ExceptionalFamily::D4_3_l3,      ExceptionalFamily::F4_2_l3,       ExceptionalFamily::E6_l5,
        ExceptionalFamily::E6_2_l5,      ExceptionalFamily::E7_l5,         ExceptionalFamily::E7_l7,
        ExceptionalFamily::E8_l5_split,  ExceptionalFamily::E8_l5_twisted, ExceptionalFamily::E8_l7,
        ExceptionalFamily::E8_D8_isolated,
    };
    return all;
}

inline const char* to_string(ExceptionalFamily f)
{
    switch (f) {
    case ExceptionalFamily::G2_l2:
        return "G2-l2";
    case ExceptionalFamily::G2_l3:
        return "G2-l3";
    case ExceptionalFamily::D4_3_l2:
        return "3D4-l2";
    case ExceptionalFamily::D4_3_l3:
        return "3D4-l3";
    case ExceptionalFamily::F4_2_l3:
        return "2F4-l3";
    case ExceptionalFamily::E6_l5:
        return "E6-l5";
    case ExceptionalFamily::E6_2_l5:
        return "2E6-l5";
    case ExceptionalFamily::E7_l5:
        return "E7-l5";
    case ExceptionalFamily::E7_l7:
        return "E7-l7";
    case ExceptionalFamily::E8_l5_split:
        return "E8-l5-split";
    case ExceptionalFamily::E8_l5_twisted:
        return "E8-l5-twisted";
    case ExceptionalFamily::E8_l7:
        return "E8-l7";
    case ExceptionalFamily::E8_D8_isolated:
        return "E8-D8-isolated";
    }
    return "?";
}

inline std::optional<ExceptionalFamily> parse_exceptional_family(const std::string& s)
{
    for (auto f : all_exceptional_families()) {
        if (s == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

inline bool is_small_rank(ExceptionalFamily f)
{
    return f == ExceptionalFamily::G2_l2 || f == ExceptionalFamily::G2_l3 || f == ExceptionalFamily::D4_3_l2 ||
           f == ExceptionalFamily::D4_3_l3 || f == ExceptionalFamily::F4_2_l3;
}

inline std::uint64_t exceptional_ell(ExceptionalFamily f)
{
    switch (f) {
    case ExceptionalFamily::G2_l2:
    case ExceptionalFamily::D4_3_l2:
        return 2;
    case ExceptionalFamily::G2_l3:
    case ExceptionalFamily::D4_3_l3:
    case ExceptionalFamily::F4_2_l3:
        return 3;
    case ExceptionalFamily::E7_l7:
    case ExceptionalFamily::E8_l7:
        return 7;
    default:
        return 5;
    }
}

/// Smallest legal a: the 2-part of q - eps is at least 4 for the ell = 2 series.
inline unsigned exceptional_min_a(ExceptionalFamily f)
{
    return (f == ExceptionalFamily::G2_l2 || f == ExceptionalFamily::D4_3_l2) ? 2 : 1;
}

struct ExceptionalCase {
    ExceptionalFamily family = ExceptionalFamily::G2_l3;
    unsigned a = 1;

    std::string describe() const { return std::string(to_string(family)) + "(a=" + std::to_string(a) + ")"; }
};

struct ExceptionalResult {
    ExceptionalCase spec;
    BlockInvariants invariants;
    CountBound k_defect;
    CountBound k_derived;
    BigInt defect_order;
    // Type E estimates only.
    std::optional<Rational> c;                // k(B_0) <= c k(D)
    std::optional<BigInt> k0_table;           // tabulated lower bound
    std::optional<BigInt> k0_proof;           // stronger bound from the argument
    std::optional<Rational> ratio_claim;      // claimed lower bound for k_0 k(D') / k(D)
    bool ratio_claim_strict = false;          // claim is ">" rather than ">="
    std::optional<BigInt> k_explicit;         // explicit bound on k(B) where one is given
};

namespace detail {

inline BigInt pw(std::uint64_t base, long exponent)
{
    if (exponent < 0) {
        throw invalid_parameter("negative exponent in closed form");
    }
    return ipow(base, static_cast<unsigned long>(exponent));
}

// k(D_{1,ell^a}) = (ell^{ell a} - ell^a)/ell + ell^{a+1}
inline BigInt wreath1(std::uint64_t ell, unsigned a)
{
    return tower_class_count(WreathTower{upow(ell, a), ell, 1});
}

} // namespace detail

inline ExceptionalResult exceptional_invariants(const ExceptionalCase& ec)
{
    using detail::pw;
    const unsigned a = ec.a;
    const long la = static_cast<long>(a);
    if (a < exceptional_min_a(ec.family)) {
        throw invalid_parameter(std::string(to_string(ec.family)) + " requires a >= " +
                                std::to_string(exceptional_min_a(ec.family)));
    }
    ExceptionalResult r;
    r.spec = ec;
    switch (ec.family) {
    case ExceptionalFamily::G2_l2:
    case ExceptionalFamily::D4_3_l2: {
        const BigInt k = 9 + pw(2, la + 1) + exact_div(pw(4, la - 1) - 1, 3, "(4^(a-1)-1)/3");
        r.invariants = {CountBound::exact(k), CountBound::exact(8), CountBound::exact(7)};
        // Homocyclic C_{2^a}^2 extended by a Klein four group.
        r.k_defect = CountBound::lower(pw(2, 2 * la - 2));
        r.k_derived = CountBound::exact(pw(2, 2 * la - 1));
        r.defect_order = pw(2, 2 * la + 2);
        break;
    }
    case ExceptionalFamily::G2_l3: {
        const BigInt t = pw(3, la) - 3;
        const BigInt k = 8 + 2 * pw(3, la) + exact_div(t * t, 12, "(3^a-3)^2/12");
        r.invariants = {CountBound::exact(k), CountBound::exact(9), CountBound::exact(7)};
        r.k_defect = CountBound::lower(pw(3, 2 * la - 1));
        r.k_derived = CountBound::exact(pw(3, 2 * la - 1));
        r.defect_order = pw(3, 2 * la + 1);
        break;
    }
    case ExceptionalFamily::D4_3_l3: {
        const BigInt k = 7 + pw(3, la + 1) + exact_div(pw(9, la) - 1, 4, "(9^a-1)/4");
        r.invariants = {CountBound::exact(k), CountBound::exact(9), CountBound::exact(7)};
        r.k_defect = CountBound::lower(pw(3, 2 * la));
        r.k_derived = CountBound::lower(pw(3, 2 * la - 1));
        r.defect_order = pw(3, 2 * la + 2);
        break;
    }
    case ExceptionalFamily::F4_2_l3: {
        const BigInt k = exact_div(pw(3, 2 * la) + 36 * pw(3, la) + 555, 48, "2F4 class formula");
        r.invariants = {CountBound::exact(k), CountBound::exact(9), CountBound::lower(2)};
        r.k_defect = a == 1 ? CountBound::exact(11) : CountBound::lower(pw(3, 2 * la - 1));
        r.k_derived = CountBound::exact(pw(3, 2 * la - 1));
        r.defect_order = pw(3, 2 * la + 1);
        break;
    }
    case ExceptionalFamily::E6_l5:
    case ExceptionalFamily::E6_2_l5: {
        const BigInt kd = pw(5, la) * detail::wreath1(5, a);
        r.c = rational(6);
        r.k0_table = 5 + pw(5, la + 1);
        r.k0_proof = 10 + exact_div(5 * (pw(5, 2 * la) - 1), 2, "5(5^2a-1)/2");
        r.invariants = {CountBound::upper(floor(*r.c * rational(kd))),
                        CountBound::lower(std::max(*r.k0_table, *r.k0_proof)), CountBound::exact(25)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(5, 4 * la));
        r.defect_order = pw(5, 5 * la + 1) * pw(5, la);
        r.ratio_claim = rational(25, 2);
        break;
    }
    case ExceptionalFamily::E7_l5: {
        const BigInt kd = pw(5, 2 * la) * detail::wreath1(5, a);
        r.c = rational(1);
        r.k0_table = 14;
        r.k0_proof = 30 + ceil(rational(5 * (pw(5, 3 * la) - 1), 12));
        // Central elements contribute at most 65 characters each, the rest
        // lie in W-orbits of length at least 2520 with at most 50 each.
        r.k_explicit = 65 * pw(5, 3 * la) + floor(rational(50 * (pw(5, 7 * la + 1) - pw(5, 3 * la)), 2520));
        const BigInt via_c = floor(*r.c * rational(kd));
        r.invariants = {CountBound::upper(std::min(via_c, *r.k_explicit)),
                        CountBound::lower(std::max(*r.k0_table, *r.k0_proof)), CountBound::exact(60)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(5, 4 * la));
        r.defect_order = pw(5, 5 * la + 1) * pw(5, 2 * la);
        r.ratio_claim = rational(25, 12);
        break;
    }
    case ExceptionalFamily::E7_l7: {
        const BigInt kd = detail::wreath1(7, a);
        r.c = rational(15, 4);
        r.k0_proof = 14 + exact_div(7 * (pw(7, la) - 1), 2, "7(7^a-1)/2");
        r.invariants = {CountBound::upper(floor(*r.c * rational(kd))), CountBound::lower(*r.k0_proof),
                        CountBound::exact(60)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(7, 6 * la));
        r.defect_order = pw(7, 7 * la + 1);
        r.ratio_claim = rational(24);
        break;
    }
    case ExceptionalFamily::E8_l5_split: {
        const BigInt base = pw(5, 4 * la - 1) + 24;
        const BigInt kd = base * base;
        r.c = rational(25, 4);
        r.k0_table = 40;
        r.invariants = {CountBound::upper(floor(*r.c * rational(kd))), CountBound::exact(40), CountBound::exact(112)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(5, 8 * la - 2));
        r.defect_order = pw(5, 8 * la + 2);
        r.ratio_claim = rational(28);
        r.ratio_claim_strict = true;
        break;
    }
    case ExceptionalFamily::E8_l5_twisted: {
        const BigInt kd = pw(5, 4 * la - 1) + 24;
        r.c = rational(3, 4);
        r.k0_table = 20;
        r.invariants = {CountBound::upper(floor(*r.c * rational(kd))), CountBound::exact(20), CountBound::exact(59)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(5, 4 * la - 1));
        r.defect_order = pw(5, 4 * la + 1);
        r.ratio_claim = rational(16);
        r.ratio_claim_strict = true;
        break;
    }
    case ExceptionalFamily::E8_l7: {
        const BigInt kd = pw(7, la) * detail::wreath1(7, a);
        r.c = rational(38, 17);
        r.k0_proof = 28 + exact_div(7 * (pw(7, 2 * la) - 1), 4, "7(7^2a-1)/4");
        r.invariants = {CountBound::upper(floor(*r.c * rational(kd))), CountBound::lower(*r.k0_proof),
                        CountBound::exact(112)};
        r.k_defect = CountBound::exact(kd);
        r.k_derived = CountBound::exact(pw(7, 6 * la));
        r.defect_order = pw(7, 7 * la + 1) * pw(7, la);
        r.ratio_claim = rational(12);
        r.ratio_claim_strict = true;
        break;
    }
    case ExceptionalFamily::E8_D8_isolated: {
        // Defect groups C_{5^a}^3 x (C_{5^a} wr C_5).
        const std::uint64_t m = upow(5, a);
        const TowerProduct d{{{WreathTower{m, 5, 0}, 3}, {WreathTower{m, 5, 1}, 1}}};
        const BigInt k = k_ell(5, a, 1, 8) + k_ell(5, a, 1, 4);
        r.invariants = {CountBound::upper(k), CountBound::lower(pw(5, la + 1) * multipartition_count(m, 3)),
                        CountBound::lower(1)};
        r.k_defect = defect_class_count(DefectModel{d});
        r.k_derived = derived_class_count(d);
        r.defect_order = order(d);
        break;
    }
    }
    return r;
}

/// Whether the claimed ratio k_0 k(D') / k(D) >= claim (or > claim) holds,
/// evaluated with the bounds in r.
inline std::optional<bool> ratio_claim_holds(const ExceptionalResult& r)
{
    if (!r.ratio_claim) {
        return std::nullopt;
    }
    const Rational ratio(r.invariants.k0.value * r.k_derived.value, r.k_defect.value);
    return r.ratio_claim_strict ? ratio > *r.ratio_claim : ratio >= *r.ratio_claim;
}

struct TableThreeColumn {
    ExceptionalFamily family;
    const char* congruence;
    unsigned l;
    Rational c;
    const char* k0_bound; // symbolic, empty when not tabulated
};

/// l(B_0), c and the k_0 bound for the type E principal blocks.
inline std::vector<TableThreeColumn> table_three()
{
    return {
        {ExceptionalFamily::E6_l5, "q=eps1 (5)", 25, rational(6), "5+5^(a+1)"},
        {ExceptionalFamily::E7_l5, "q^2=1 (5)", 60, rational(1), "14"},
        {ExceptionalFamily::E7_l7, "q^2=1 (7)", 60, rational(15, 4), ""},
        {ExceptionalFamily::E8_l5_split, "q^2=1 (5)", 112, rational(25, 4), "40"},
        {ExceptionalFamily::E8_l5_twisted, "q^2=4 (5)", 59, rational(3, 4), "20"},
        {ExceptionalFamily::E8_l7, "q^2=1 (7)", 112, rational(38, 17), ""},
    };
}

} // namespace blockaudit
