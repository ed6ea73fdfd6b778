#pragma once

// Exact counting of partitions, strict partitions, b-multipartitions and
// ell-compositions, and the composite count k(ell, a, d, w) that gives the
// number of characters in a unipotent block of a general linear group.

#include <cstdint>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "blockaudit/bigint.hpp"

namespace blockaudit {

struct LAdicDigits {
    std::uint64_t base = 2;
    std::vector<std::uint64_t> digits; // least significant first, no trailing zeros

    std::uint64_t value() const
    {
        std::uint64_t v = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            v = v * base + *it;
        }
        return v;
    }
};

/// A tuple (w_0, w_1, ...) with sum w_i * ell^i equal to the composed value.
/// Parts may exceed ell; trailing zero parts are dropped.
struct LComposition {
    std::uint64_t ell = 2;
    std::vector<std::uint64_t> parts;

    std::uint64_t value() const
    {
        std::uint64_t v = 0;
        std::uint64_t scale = 1;
        for (auto part : parts) {
            v += part * scale;
            scale *= ell;
        }
        return v;
    }

    friend bool operator==(const LComposition&, const LComposition&) = default;
};

struct MultipartitionParams {
    std::uint64_t ell = 5;
    unsigned a = 1;
    std::uint64_t d = 1;
    unsigned w = 0;

    std::uint64_t ell_to_a() const { return upow(ell, a); }

    // b = d + (ell^a - 1) / d
    std::uint64_t b() const { return d + (ell_to_a() - 1) / d; }

    // b_1 = (ell^a - ell^(a-1)) / d
    std::uint64_t b1() const { return (ell_to_a() - upow(ell, a - 1)) / d; }

    void validate() const
    {
        if (!is_prime(ell)) {
            throw invalid_parameter("ell must be prime");
        }
        if (a < 1) {
            throw invalid_parameter("a must be at least 1");
        }
        if (d < 1 || (ell - 1) % d != 0) {
            throw invalid_parameter("d must divide ell - 1");
        }
        const auto q = ell_to_a();
        if ((q - 1) % d != 0 || (q - upow(ell, a - 1)) % d != 0) {
            throw invalid_parameter("d does not give integral multipartition parameters");
        }
    }
};

namespace detail {

inline std::uint64_t divisor_sum(std::uint64_t n)
{
    std::uint64_t s = 0;
    for (std::uint64_t f = 1; f * f <= n; ++f) {
        if (n % f == 0) {
            s += f;
            if (f * f != n) {
                s += n / f;
            }
        }
    }
    return s;
}

// Grow-on-demand memo shared by all callers. Readers take a shared lock;
// extension takes the exclusive lock and re-checks.
class CountingTables {
public:
    BigInt partitions(unsigned w)
    {
        {
            std::shared_lock lock(mutex_);
            if (w < partitions_.size()) {
                return partitions_[w];
            }
        }
        std::unique_lock lock(mutex_);
        if (partitions_.empty()) {
            partitions_.push_back(1);
        }
        // Euler's pentagonal recurrence.
        while (partitions_.size() <= w) {
            const long n = static_cast<long>(partitions_.size());
            BigInt sum = 0;
            for (long k = 1;; ++k) {
                const long g1 = k * (3 * k - 1) / 2;
                if (g1 > n) {
                    break;
                }
                const long g2 = k * (3 * k + 1) / 2;
                const bool plus = (k % 2) == 1;
                if (plus) {
                    sum += partitions_[n - g1];
                } else {
                    sum -= partitions_[n - g1];
                }
                if (g2 <= n) {
                    if (plus) {
                        sum += partitions_[n - g2];
                    } else {
                        sum -= partitions_[n - g2];
                    }
                }
            }
            partitions_.push_back(sum);
        }
        return partitions_[w];
    }

    BigInt strict_partitions(unsigned w)
    {
        {
            std::shared_lock lock(mutex_);
            if (w < strict_.size()) {
                return strict_[w];
            }
        }
        std::unique_lock lock(mutex_);
        if (w < strict_.size()) {
            return strict_[w];
        }
        const unsigned n = std::max<unsigned>(w + 1, 2 * static_cast<unsigned>(strict_.size()));
        // Coefficients of prod_{k>=1} (1 + x^k), truncated.
        std::vector<BigInt> table(n, 0);
        table[0] = 1;
        for (unsigned part = 1; part < n; ++part) {
            for (unsigned s = n - 1; s >= part; --s) {
                table[s] += table[s - part];
            }
        }
        strict_ = std::move(table);
        return strict_[w];
    }

    BigInt multipartitions(std::uint64_t b, unsigned w)
    {
        {
            std::shared_lock lock(mutex_);
            auto it = multi_.find(b);
            if (it != multi_.end() && w < it->second.size()) {
                return it->second[w];
            }
        }
        std::unique_lock lock(mutex_);
        auto& row = multi_[b];
        if (row.empty()) {
            row.push_back(1);
        }
        // With F = P^b and P the partition generating function,
        // n F_n = b * sum_{j=1..n} sigma(j) F_{n-j}.
        const BigInt bb = big(b);
        while (row.size() <= w) {
            const unsigned n = static_cast<unsigned>(row.size());
            BigInt acc = 0;
            for (unsigned j = 1; j <= n; ++j) {
                acc += big(divisor_sum(j)) * row[n - j];
            }
            acc *= bb;
            row.push_back(exact_div(acc, BigInt(n), "multipartition recurrence"));
        }
        return row[w];
    }

private:
    std::shared_mutex mutex_;
    std::vector<BigInt> partitions_;
    std::vector<BigInt> strict_;
    std::unordered_map<std::uint64_t, std::vector<BigInt>> multi_;
};

inline CountingTables& counting_tables()
{
    static CountingTables tables;
    return tables;
}

} // namespace detail

/// p(w), the number of partitions of w.
inline BigInt partition_count(unsigned w)
{
    return detail::counting_tables().partitions(w);
}

/// q(w), the number of partitions of w into distinct parts.
inline BigInt strict_partition_count(unsigned w)
{
    return detail::counting_tables().strict_partitions(w);
}

/// k(b, w), the number of b-tuples of partitions with total size w.
/// k(0, 0) = 1 and k(0, w) = 0 for w > 0.
inline BigInt multipartition_count(std::uint64_t b, unsigned w)
{
    return detail::counting_tables().multipartitions(b, w);
}

inline LAdicDigits l_adic_digits(std::uint64_t w, std::uint64_t base)
{
    if (base < 2) {
        throw invalid_parameter("l_adic_digits: base must be at least 2");
    }
    LAdicDigits out{base, {}};
    while (w > 0) {
        out.digits.push_back(w % base);
        w /= base;
    }
    return out;
}

namespace detail {

inline void enumerate_compositions(std::uint64_t w, std::uint64_t ell, std::vector<std::uint64_t>& prefix,
                                   std::vector<LComposition>& out)
{
    if (w == 0) {
        auto parts = prefix;
        while (!parts.empty() && parts.back() == 0) {
            parts.pop_back();
        }
        out.push_back(LComposition{ell, std::move(parts)});
        return;
    }
    // The remaining parts contribute a multiple of ell, so w_0 = w mod ell.
    for (std::uint64_t w0 = w % ell; w0 <= w; w0 += ell) {
        prefix.push_back(w0);
        if (w0 == w) {
            enumerate_compositions(0, ell, prefix, out);
        } else {
            enumerate_compositions((w - w0) / ell, ell, prefix, out);
        }
        prefix.pop_back();
    }
}

} // namespace detail

/// All ell-compositions of w in lexicographic order of (w_0, w_1, ...).
inline std::vector<LComposition> l_compositions(std::uint64_t w, std::uint64_t ell)
{
    if (ell < 2) {
        throw invalid_parameter("l_compositions: ell must be at least 2");
    }
    std::vector<LComposition> out;
    std::vector<std::uint64_t> prefix;
    detail::enumerate_compositions(w, ell, prefix, out);
    return out;
}

/// p_ell(w), the number of ell-compositions of w.
inline BigInt l_composition_count(std::uint64_t w, std::uint64_t ell)
{
    if (ell < 2) {
        throw invalid_parameter("l_composition_count: ell must be at least 2");
    }
    std::vector<BigInt> c(w + 1, 0);
    c[0] = 1;
    for (std::uint64_t v = 1; v <= w; ++v) {
        for (std::uint64_t w0 = v % ell; w0 <= v; w0 += ell) {
            c[v] += (w0 == v) ? BigInt(1) : c[(v - w0) / ell];
        }
    }
    return c[w];
}

/// k(ell, a, d, w): sum over ell-compositions of k(b, w_0) * prod_{i>=1} k(b_1, w_i).
inline BigInt k_ell(const MultipartitionParams& params)
{
    params.validate();
    const auto b = params.b();
    const auto b1 = params.b1();
    BigInt total = 0;
    for (const auto& comp : l_compositions(params.w, params.ell)) {
        BigInt term = 1;
        for (std::size_t i = 0; i < comp.parts.size(); ++i) {
            term *= multipartition_count(i == 0 ? b : b1, static_cast<unsigned>(comp.parts[i]));
        }
        total += term;
    }
    return total;
}

inline BigInt k_ell(std::uint64_t ell, unsigned a, std::uint64_t d, unsigned w)
{
    return k_ell(MultipartitionParams{ell, a, d, w});
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 1; f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
        }
    }
    return out;
}

} // namespace blockaudit
