#pragma once

// The inequalities (C1) k(B) <= k_0(B) k(D') and (C2) k(B) <= l(B) k(D),
// decided by integer cross-multiplication with bound-aware verdicts.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockaudit/exceptional.hpp"
#include "blockaudit/lie_blocks.hpp"
#include "blockaudit/oracle.hpp"
#include "blockaudit/symalt.hpp"
#include "blockaudit/wreath.hpp"

namespace blockaudit {

enum class Verdict { holds_exact, holds_conservative, violated, inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::holds_exact:
        return "holds-exact";
    case Verdict::holds_conservative:
        return "holds-conservative";
    case Verdict::violated:
        return "violated";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

inline bool holds(Verdict v) { return v == Verdict::holds_exact || v == Verdict::holds_conservative; }

/// lhs <= prod(factors), with the exact integers on both sides.
struct Witness {
    std::string relation;
    BigInt lhs;
    BigInt rhs;
    BoundKind lhs_kind = BoundKind::exact;
    std::vector<CountBound> factors;
};

struct InequalityResult {
    Verdict verdict = Verdict::inconclusive;
    Witness witness;
};

/// The verdict lattice. The left side may be exact or an upper bound, the
/// right-hand factors exact or lower bounds, for a certified "holds"; a
/// failure is a violation only when every operand is exact.
inline InequalityResult check_le_product(std::string relation, const CountBound& lhs,
                                         const std::vector<CountBound>& factors)
{
    InequalityResult out;
    out.witness.relation = std::move(relation);
    out.witness.lhs = lhs.value;
    out.witness.lhs_kind = lhs.kind;
    out.witness.factors = factors;
    BigInt rhs = 1;
    bool all_exact = lhs.is_exact();
    bool sound = lhs.kind != BoundKind::lower;
    for (const auto& f : factors) {
        rhs *= f.value;
        all_exact = all_exact && f.is_exact();
        sound = sound && f.kind != BoundKind::upper;
    }
    out.witness.rhs = rhs;
    if (lhs.value <= rhs) {
        out.verdict = all_exact ? Verdict::holds_exact : sound ? Verdict::holds_conservative : Verdict::inconclusive;
    } else {
        out.verdict = all_exact ? Verdict::violated : Verdict::inconclusive;
    }
    return out;
}

inline nlohmann::json to_json(const Witness& w)
{
    nlohmann::json j;
    j["relation"] = w.relation;
    j["lhs"] = json_integer(w.lhs);
    j["lhs_kind"] = to_string(w.lhs_kind);
    j["rhs"] = json_integer(w.rhs);
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : w.factors) {
        fs.push_back({{"value", json_integer(f.value)}, {"kind", to_string(f.kind)}});
    }
    j["factors"] = fs;
    return j;
}

struct AuditCase {
    std::string label;
    std::string family;
    nlohmann::json params = nlohmann::json::object();
    BlockInvariants invariants;
    CountBound k_defect;
    CountBound k_derived;
    std::optional<BigInt> defect_order;
};

inline void validate(const AuditCase& c)
{
    for (const CountBound* b : {&c.invariants.k, &c.invariants.k0, &c.invariants.l, &c.k_defect, &c.k_derived}) {
        if (b->value < 1) {
            throw invalid_parameter("audit case " + c.label + ": counts must be at least 1");
        }
    }
}

inline InequalityResult check_c1(const AuditCase& c)
{
    validate(c);
    return check_le_product("k <= k0 * kD'", c.invariants.k, {c.invariants.k0, c.k_derived});
}

inline InequalityResult check_c2(const AuditCase& c)
{
    validate(c);
    return check_le_product("k <= l * kD", c.invariants.k, {c.invariants.l, c.k_defect});
}

/// k(B) <= |D|: "ok", "flagged" when a non-upper value of k exceeds |D|,
/// "weak" when only an upper bound exceeds it, "unknown" without |D|.
inline std::string brauer_check(const AuditCase& c)
{
    if (!c.defect_order) {
        return "unknown";
    }
    if (c.invariants.k.value <= *c.defect_order) {
        return "ok";
    }
    return c.invariants.k.kind == BoundKind::upper ? "weak" : "flagged";
}

struct AuditRecord {
    AuditCase audit_case;
    InequalityResult c1;
    InequalityResult c2;
    std::string brauer;
};

inline AuditRecord audit(const AuditCase& c)
{
    return {c, check_c1(c), check_c2(c), brauer_check(c)};
}

inline nlohmann::json to_json(const AuditRecord& r)
{
    const auto& c = r.audit_case;
    nlohmann::json j;
    j["case"] = c.label;
    j["family"] = c.family;
    j["params"] = c.params;
    j["k"] = json_integer(c.invariants.k.value);
    j["k0"] = json_integer(c.invariants.k0.value);
    j["l"] = json_integer(c.invariants.l.value);
    j["kD"] = json_integer(c.k_defect.value);
    j["kDprime"] = json_integer(c.k_derived.value);
    j["bound_kinds"] = {{"k", to_string(c.invariants.k.kind)},   {"k0", to_string(c.invariants.k0.kind)},
                        {"l", to_string(c.invariants.l.kind)},   {"kD", to_string(c.k_defect.kind)},
                        {"kDprime", to_string(c.k_derived.kind)}};
    j["c1"] = to_string(r.c1.verdict);
    j["c2"] = to_string(r.c2.verdict);
    j["witness"] = {{"c1", to_json(r.c1.witness)}, {"c2", to_json(r.c2.witness)}};
    j["brauer"] = r.brauer;
    if (c.defect_order) {
        j["defect_order"] = json_integer(*c.defect_order);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Block results to audit cases.

inline AuditCase audit_case(const LieBlockResult& r, std::uint64_t cap = oracle_cap_from_environment())
{
    AuditCase c;
    c.label = r.spec.describe();
    c.family = to_string(r.spec.family);
    c.params = {{"ell", r.spec.ell}, {"a", r.spec.a}};
    if (r.spec.linear_quotient()) {
        c.params["n"] = r.spec.w;
        if (r.spec.family == LieFamily::SL || r.spec.family == LieFamily::SU) {
            c.params["g"] = r.spec.g;
        }
    } else {
        c.params["d"] = r.spec.d;
        c.params["w"] = r.spec.w;
    }
    c.invariants = r.invariants;
    std::tie(c.k_defect, c.k_derived) = defect_counts(r.defect, cap);
    c.defect_order = order(r.defect);
    return c;
}

inline AuditCase audit_case(const SymBlockResult& r, std::uint64_t cap = oracle_cap_from_environment())
{
    AuditCase c;
    c.label = r.spec.describe();
    c.family = to_string(r.spec.kind);
    c.params = {{"p", r.spec.p}, {"w", r.spec.w}};
    c.invariants = r.invariants;
    std::tie(c.k_defect, c.k_derived) = defect_counts(r.defect, cap);
    c.defect_order = order(r.defect);
    return c;
}

inline AuditCase audit_case(const ExceptionalResult& r)
{
    AuditCase c;
    c.label = r.spec.describe();
    c.family = to_string(r.spec.family);
    c.params = {{"a", r.spec.a}, {"ell", exceptional_ell(r.spec.family)}};
    c.invariants = r.invariants;
    c.k_defect = r.k_defect;
    c.k_derived = r.k_derived;
    c.defect_order = r.defect_order;
    return c;
}

// ---------------------------------------------------------------------------
// Type E estimates.

/// Rational analogue of check_le_product for the routes through c.
inline Verdict compare_routes(const Rational& lhs, bool lhs_exact, const Rational& rhs, bool rhs_exact,
                              bool rhs_sound = true)
{
    if (lhs <= rhs) {
        return lhs_exact && rhs_exact ? Verdict::holds_exact
                                      : (rhs_sound ? Verdict::holds_conservative : Verdict::inconclusive);
    }
    return lhs_exact && rhs_exact ? Verdict::violated : Verdict::inconclusive;
}

struct ESeriesRecord {
    AuditRecord record;
    Verdict c2_route = Verdict::inconclusive; // c <= l(B_0)
    Verdict c1_route = Verdict::inconclusive; // c k(D) <= k_0 k(D')
    std::optional<bool> ratio_claim;          // k_0 k(D')/k(D) against the stated ratio
    ExceptionalResult result;
};

inline std::vector<ESeriesRecord> e_series_check(ExceptionalFamily family, unsigned a_lo = 1, unsigned a_hi = 8)
{
    std::vector<ESeriesRecord> out;
    for (unsigned a = std::max(a_lo, exceptional_min_a(family)); a <= a_hi; ++a) {
        ESeriesRecord rec;
        rec.result = exceptional_invariants({family, a});
        rec.record = audit(audit_case(rec.result));
        const auto& r = rec.result;
        if (r.c) {
            const auto& inv = r.invariants;
            rec.c2_route = compare_routes(*r.c, true, rational(inv.l.value), inv.l.is_exact(),
                                          inv.l.kind != BoundKind::upper);
            rec.c1_route = compare_routes(*r.c * rational(r.k_defect.value), r.k_defect.is_exact(),
                                          rational(inv.k0.value * r.k_derived.value),
                                          inv.k0.is_exact() && r.k_derived.is_exact(),
                                          inv.k0.kind != BoundKind::upper && r.k_derived.kind != BoundKind::upper);
            rec.ratio_claim = ratio_claim_holds(r);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<AuditRecord> e8_isolated_d8_check(unsigned a_lo = 1, unsigned a_hi = 4)
{
    std::vector<AuditRecord> out;
    for (unsigned a = std::max(1u, a_lo); a <= a_hi; ++a) {
        out.push_back(audit(audit_case(exceptional_invariants({ExceptionalFamily::E8_D8_isolated, a}))));
    }
    return out;
}

} // namespace blockaudit
