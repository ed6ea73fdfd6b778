#pragma once

// Closed real intervals with MPFR endpoints and outward rounding. Used only
// to certify inequalities whose right-hand side has a real exponent.

#include <functional>
#include <string>
#include <optional>
#include <utility>

#include <mpfr.h>

#include "blockaudit/bigint.hpp"

namespace blockaudit {

class Interval {
public:
    explicit Interval(mpfr_prec_t precision)
    {
        mpfr_init2(lo_, precision);
        mpfr_init2(hi_, precision);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& other) : Interval(other.precision())
    {
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }

    Interval& operator=(const Interval& other)
    {
        if (this != &other) {
            mpfr_set_prec(lo_, other.precision());
            mpfr_set_prec(hi_, other.precision());
            mpfr_set(lo_, other.lo_, MPFR_RNDD);
            mpfr_set(hi_, other.hi_, MPFR_RNDU);
        }
        return *this;
    }

    ~Interval()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_integer(const BigInt& v, mpfr_prec_t precision)
    {
        Interval r(precision);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_rational(const Rational& v, mpfr_prec_t precision)
    {
        Interval r(precision);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    /// Decimal literal such as "0.73", converted exactly to a rational first.
    static Interval from_decimal(const char* text, mpfr_prec_t precision)
    {
        return from_rational(parse_decimal(text), precision);
    }

    static Rational parse_decimal(const char* text)
    {
        std::string s(text);
        bool negative = false;
        if (!s.empty() && s[0] == '-') {
            negative = true;
            s.erase(0, 1);
        }
        const auto dot = s.find('.');
        BigInt den = 1;
        if (dot != std::string::npos) {
            den = ipow(10, s.size() - dot - 1);
            s.erase(dot, 1);
        }
        const Rational r = rational(BigInt(s, 10), den);
        return negative ? Rational(-r) : r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    bool is_positive() const { return mpfr_sgn(lo_) > 0; }

    friend Interval operator+(const Interval& x, const Interval& y)
    {
        Interval r(x.precision());
        mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& x, const Interval& y)
    {
        Interval r(x.precision());
        mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& x)
    {
        Interval r(x.precision());
        mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& x, const Interval& y)
    {
        const auto prec = x.precision();
        Interval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        const mpfr_srcptr xs[2] = {x.lo_, x.hi_};
        const mpfr_srcptr ys[2] = {y.lo_, y.hi_};
        bool first = true;
        for (auto a : xs) {
            for (auto b : ys) {
                mpfr_mul(t, a, b, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) {
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                }
                mpfr_mul(t, a, b, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) {
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                }
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }

    friend Interval operator/(const Interval& x, const Interval& y)
    {
        if (mpfr_sgn(y.lo_) <= 0 && mpfr_sgn(y.hi_) >= 0) {
            throw invalid_parameter("interval division by an interval containing zero");
        }
        Interval inv(y.precision());
        mpfr_ui_div(inv.lo_, 1, y.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, y.lo_, MPFR_RNDU);
        return x * inv;
    }

    friend Interval log(const Interval& x)
    {
        if (!x.is_positive()) {
            throw invalid_parameter("interval log of a non-positive interval");
        }
        Interval r(x.precision());
        mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval exp(const Interval& x)
    {
        Interval r(x.precision());
        mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
        return r;
    }

    /// x^y = exp(y ln x) for x > 0.
    friend Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

    /// Certainly x <= y over all points of both intervals.
    friend bool certainly_le(const Interval& x, const Interval& y) { return mpfr_lessequal_p(x.hi_, y.lo_); }

    /// Certainly x > y over all points of both intervals.
    friend bool certainly_gt(const Interval& x, const Interval& y) { return mpfr_greater_p(x.lo_, y.hi_); }

    double mid() const
    {
        return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
    }

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

enum class Certified { holds, fails, inconclusive };

inline const char* to_string(Certified c)
{
    switch (c) {
    case Certified::holds:
        return "holds";
    case Certified::fails:
        return "fails";
    case Certified::inconclusive:
        return "inconclusive";
    }
    return "?";
}

struct CertifiedComparison {
    Certified outcome = Certified::inconclusive;
    mpfr_prec_t precision = 0;
    double lhs = 0; // midpoints, for reports only
    double rhs = 0;
};

constexpr mpfr_prec_t default_start_precision = 128;
constexpr mpfr_prec_t default_precision_cap = 1024;

/// Decides lhs(prec) <= rhs(prec), doubling the working precision until the
/// two enclosures separate or the cap is reached.
inline CertifiedComparison certify_le(const std::function<Interval(mpfr_prec_t)>& lhs,
                                      const std::function<Interval(mpfr_prec_t)>& rhs,
                                      mpfr_prec_t start = default_start_precision,
                                      mpfr_prec_t cap = default_precision_cap)
{
    CertifiedComparison out;
    for (mpfr_prec_t prec = start; prec <= cap; prec *= 2) {
        const Interval l = lhs(prec);
        const Interval r = rhs(prec);
        out.precision = prec;
        out.lhs = l.mid();
        out.rhs = r.mid();
        if (certainly_le(l, r)) {
            out.outcome = Certified::holds;
            return out;
        }
        if (certainly_gt(l, r)) {
            out.outcome = Certified::fails;
            return out;
        }
    }
    out.outcome = Certified::inconclusive;
    return out;
}

} // namespace blockaudit
