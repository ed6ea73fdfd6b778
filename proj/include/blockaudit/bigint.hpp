#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace blockaudit {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when caller-supplied parameters violate an operation's preconditions.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an identity that must hold exactly (a division, a closure order) does not.
class arithmetic_inconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline BigInt big(std::uint64_t v)
{
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return BigInt(static_cast<unsigned long>(v));
}

inline BigInt pow(const BigInt& base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigInt ipow(std::uint64_t base, unsigned long exponent)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

// Overflow-checked machine power, for small parameters like ell^a.
inline std::uint64_t upow(std::uint64_t base, unsigned exponent)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && r > UINT64_MAX / base) {
            throw invalid_parameter("upow: result exceeds 64 bits");
        }
        r *= base;
    }
    return r;
}

/// num / den in canonical form.
inline Rational rational(const BigInt& num, const BigInt& den = 1)
{
    if (den == 0) {
        throw arithmetic_inconsistency("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const BigInt& v)
{
    return v.get_str();
}

inline std::string to_string(const Rational& v)
{
    return v.get_str();
}

/// Quotient a / b, which must be exact.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what)
{
    if (b == 0) {
        throw arithmetic_inconsistency(std::string(what) + ": division by zero");
    }
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
        throw arithmetic_inconsistency(std::string(what) + ": " + a.get_str() + " is not divisible by " +
                                       b.get_str());
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil(const Rational& r)
{
    return ceil_div(r.get_num(), r.get_den());
}

inline BigInt floor(const Rational& r)
{
    return floor_div(r.get_num(), r.get_den());
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

/// Exponent of the largest power of p dividing n (n > 0).
inline unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Returns f >= 1 when n == p^f, otherwise 0.
inline unsigned prime_power_exponent(std::uint64_t n, std::uint64_t p)
{
    if (n < p) {
        return 0;
    }
    unsigned f = 0;
    while (n % p == 0) {
        n /= p;
        ++f;
    }
    return n == 1 ? f : 0;
}

} // namespace blockaudit
