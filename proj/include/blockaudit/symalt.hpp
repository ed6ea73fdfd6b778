#pragma once

// p-blocks of symmetric and alternating groups and spin blocks of their
// double covers, as functions of the prime p and the weight w.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blockaudit/combinatorics.hpp"
#include "blockaudit/lie_blocks.hpp"
#include "blockaudit/oracle.hpp"
#include "blockaudit/wreath.hpp"

namespace blockaudit {

enum class SymKind { symmetric, alternating, spin };

inline const char* to_string(SymKind k)
{
    switch (k) {
    case SymKind::symmetric:
        return "symmetric";
    case SymKind::alternating:
        return "alternating";
    case SymKind::spin:
        return "spin";
    }
    return "?";
}

struct SymBlockSpec {
    std::uint64_t p = 3;
    unsigned w = 0;
    SymKind kind = SymKind::symmetric;

    std::string describe() const
    {
        return std::string(to_string(kind)) + "(p=" + std::to_string(p) + ",w=" + std::to_string(w) + ")";
    }
};

/// D~(w) = prod_i P_{i+1}^{a_i}, with P_{i+1} = C_p wr ... wr C_p (i wreathing steps).
inline TowerProduct sym_defect_model(std::uint64_t p, unsigned w)
{
    TowerProduct prod;
    const auto digits = l_adic_digits(w, p);
    for (std::size_t i = 0; i < digits.digits.size(); ++i) {
        if (digits.digits[i] > 0) {
            prod.factors.push_back({WreathTower{p, p, static_cast<unsigned>(i)}, static_cast<unsigned>(digits.digits[i])});
        }
    }
    return prod;
}

/// k_0(B~) = prod_i k(p^{i+1}, a_i).
inline BigInt sym_k0(std::uint64_t p, unsigned w)
{
    const auto digits = l_adic_digits(w, p);
    BigInt k0 = 1;
    std::uint64_t scale = p;
    for (auto digit : digits.digits) {
        k0 *= multipartition_count(scale, static_cast<unsigned>(digit));
        scale *= p;
    }
    return k0;
}

inline void validate_prime(std::uint64_t p)
{
    if (!is_prime(p)) {
        throw invalid_parameter("p must be prime");
    }
}

inline BlockInvariants sym_invariants(std::uint64_t p, unsigned w)
{
    validate_prime(p);
    if (w == 0) {
        return BlockInvariants::trivial();
    }
    const BigInt k = multipartition_count(p, w);
    const BigInt k0 = sym_k0(p, w);
    // For p = 2 no closed form for l is used; 1 is the trivial floor.
    const CountBound l = p == 2 ? CountBound::lower(1) : CountBound::exact(multipartition_count(p - 1, w));
    return {CountBound::exact(k), CountBound::exact(k0), l};
}

inline BlockInvariants alt_invariants(std::uint64_t p, unsigned w)
{
    validate_prime(p);
    if (w == 0) {
        return BlockInvariants::trivial();
    }
    const BlockInvariants s = sym_invariants(p, w);
    if (p != 2) {
        return {CountBound::upper(s.k.value), CountBound::lower(ceil_div(s.k0.value, 2)),
                CountBound::lower(ceil_div(s.l.value, 2))};
    }
    if (w % 2 == 1) {
        return {CountBound::exact(exact_div(s.k.value, 2, "k(B~)/2")),
                CountBound::exact(exact_div(s.k0.value, 2, "k0(B~)/2")), CountBound::lower(1)};
    }
    // Even weight: D is non-abelian from w = 4 on, forcing l >= 2.
    return {CountBound::upper(s.k.value), CountBound::lower(ceil_div(s.k0.value, 2)),
            CountBound::lower(w >= 4 ? 2 : 1)};
}

/// (3/2) sum_{i=0}^{w} q(i) p(w - i), for spin 3-blocks of weight w.
inline BigInt spin_k(unsigned w)
{
    if (w < 1) {
        throw invalid_parameter("spin_k: w must be at least 1");
    }
    BigInt sum = 0;
    for (unsigned i = 0; i <= w; ++i) {
        sum += strict_partition_count(i) * partition_count(w - i);
    }
    return exact_div(3 * sum, 2, "spin block count");
}

inline BlockInvariants spin_invariants(std::uint64_t p, unsigned w)
{
    if (p != 3) {
        throw invalid_parameter("spin blocks are implemented for p = 3 only");
    }
    if (w == 0) {
        return BlockInvariants::trivial();
    }
    // Only k is known in closed form; l is bounded by the partition count.
    return {CountBound::exact(spin_k(w)), CountBound::lower(1), CountBound::lower(partition_count(w))};
}

struct SymBlockResult {
    SymBlockSpec spec;
    BlockInvariants invariants;
    DefectModel defect;
};

inline SymBlockResult evaluate(const SymBlockSpec& spec)
{
    switch (spec.kind) {
    case SymKind::symmetric:
        return {spec, sym_invariants(spec.p, spec.w), sym_defect_model(spec.p, spec.w)};
    case SymKind::alternating:
        if (spec.p == 2 && spec.w > 0) {
            // Even permutations: the residue sum of the monomial model is the sign.
            return {spec, alt_invariants(spec.p, spec.w), DetKernel{sym_defect_model(2, spec.w), 1}};
        }
        return {spec, alt_invariants(spec.p, spec.w), sym_defect_model(spec.p, spec.w)};
    case SymKind::spin:
        return {spec, spin_invariants(spec.p, spec.w), sym_defect_model(spec.p, spec.w)};
    }
    throw invalid_parameter("unknown block kind");
}

// ---------------------------------------------------------------------------
// The table of 3-blocks of small weight.

inline const std::vector<unsigned>& table_p3_weights()
{
    static const std::vector<unsigned> weights{3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 17};
    return weights;
}

/// ceil(num / den) when num/den > 1, empty otherwise ("-").
inline std::optional<BigInt> ratio_ceiling(const BigInt& num, const BigInt& den)
{
    if (num <= den) {
        return std::nullopt;
    }
    return ceil_div(num, den);
}

struct TableP3Row {
    unsigned w = 0;
    BigInt k;         // k(B~) = k(3, w)
    BigInt k0;        // k_0(B~)
    BigInt spin;      // k(B^)
    CountBound k_derived;
    BigInt k_defect;  // k(D~), exact
    std::optional<BigInt> k_over_kd;       // ceil(k(B~)/k(D~'))
    std::optional<BigInt> spin_over_kd;    // ceil(k(B^)/k(D~'))
    std::optional<BigInt> k_over_kdefect;  // ceil(k(B~)/k(D~))
};

inline std::vector<TableP3Row> reproduce_table_p3(std::uint64_t cap = oracle_cap_from_environment())
{
    std::vector<TableP3Row> rows;
    for (unsigned w : table_p3_weights()) {
        TableP3Row r;
        r.w = w;
        r.k = multipartition_count(3, w);
        r.k0 = sym_k0(3, w);
        r.spin = spin_k(w);
        const TowerProduct model = sym_defect_model(3, w);
        r.k_derived = derived_class_count_refined(model, cap);
        r.k_defect = defect_class_count(DefectModel{model}).value;
        r.k_over_kd = ratio_ceiling(r.k, r.k_derived.value);
        r.spin_over_kd = ratio_ceiling(r.spin, r.k_derived.value);
        r.k_over_kdefect = ratio_ceiling(r.k, r.k_defect);
        rows.push_back(std::move(r));
    }
    return rows;
}

/// CSV with one column per weight, rows in the order of the printed table.
inline std::string table_p3_csv(const std::vector<TableP3Row>& rows)
{
    auto cell = [](const std::optional<BigInt>& v) { return v ? v->get_str() : std::string("-"); };
    std::ostringstream out;
    out << "w";
    for (const auto& r : rows) {
        out << ',' << r.w;
    }
    out << "\nk(B~)/k(D')<=";
    for (const auto& r : rows) {
        out << ',' << cell(r.k_over_kd);
    }
    out << "\nk0(B~)";
    for (const auto& r : rows) {
        out << ',' << r.k0.get_str();
    }
    out << "\nk(B^)/k(D')";
    for (const auto& r : rows) {
        out << ',' << cell(r.spin_over_kd);
    }
    out << "\nk(B~)/k(D)<=";
    for (const auto& r : rows) {
        out << ',' << cell(r.k_over_kdefect);
    }
    out << '\n';
    return out.str();
}

} // namespace blockaudit
