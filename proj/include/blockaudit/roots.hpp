#pragma once

// Positive roots of the indecomposable root systems, built from the Cartan
// matrix by root strings.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockaudit/bigint.hpp"

namespace blockaudit {

enum class RootType { A, B, C, D, E, F, G };

inline char to_char(RootType t) { return static_cast<char>('A' + static_cast<int>(t)); }

inline std::optional<RootType> parse_root_type(char c)
{
    if (c >= 'a' && c <= 'g') {
        c = static_cast<char>(c - 'a' + 'A');
    }
    if (c < 'A' || c > 'G') {
        return std::nullopt;
    }
    return static_cast<RootType>(c - 'A');
}

inline bool valid_root_system(RootType t, unsigned r)
{
    switch (t) {
    case RootType::A:
        return r >= 1;
    case RootType::B:
    case RootType::C:
        return r >= 2;
    case RootType::D:
        return r >= 4;
    case RootType::E:
        return r >= 6 && r <= 8;
    case RootType::F:
        return r == 4;
    case RootType::G:
        return r == 2;
    }
    return false;
}

using CartanMatrix = std::vector<std::vector<int>>;

/// A[i][j] = <alpha_i^vee, alpha_j>, Bourbaki numbering.
inline CartanMatrix cartan_matrix(RootType t, unsigned r)
{
    if (!valid_root_system(t, r)) {
        throw invalid_parameter(std::string("no indecomposable root system ") + to_char(t) + std::to_string(r));
    }
    CartanMatrix A(r, std::vector<int>(r, 0));
    for (unsigned i = 0; i < r; ++i) {
        A[i][i] = 2;
    }
    auto link = [&](unsigned i, unsigned j) { A[i][j] = A[j][i] = -1; };
    switch (t) {
    case RootType::A:
    case RootType::B:
    case RootType::C:
        for (unsigned i = 0; i + 1 < r; ++i) {
            link(i, i + 1);
        }
        if (t == RootType::B) {
            A[r - 1][r - 2] = -2; // alpha_r short
        } else if (t == RootType::C) {
            A[r - 2][r - 1] = -2; // alpha_r long
        }
        break;
    case RootType::D:
        for (unsigned i = 0; i + 2 < r; ++i) {
            link(i, i + 1);
        }
        link(r - 3, r - 1);
        break;
    case RootType::E:
        link(0, 2);
        link(1, 3);
        for (unsigned i = 2; i + 1 < r; ++i) {
            link(i, i + 1);
        }
        break;
    case RootType::F:
        link(0, 1);
        link(1, 2);
        link(2, 3);
        A[2][1] = -2;
        break;
    case RootType::G:
        link(0, 1);
        A[0][1] = -3; // alpha_1 short
        break;
    }
    return A;
}

using RootVector = std::vector<int>; // coefficients in the simple roots

inline unsigned height(const RootVector& v)
{
    int h = 0;
    for (int c : v) {
        h += c;
    }
    return static_cast<unsigned>(h);
}

/// All positive roots, ordered by height and then lexicographically.
inline std::vector<RootVector> positive_roots(RootType t, unsigned r)
{
    const CartanMatrix A = cartan_matrix(t, r);
    std::set<RootVector> known;
    std::vector<std::vector<RootVector>> levels(1);
    for (unsigned i = 0; i < r; ++i) {
        RootVector e(r, 0);
        e[i] = 1;
        levels[0].push_back(e);
        known.insert(e);
    }
    while (!levels.back().empty()) {
        std::set<RootVector> next;
        for (const auto& beta : levels.back()) {
            for (unsigned i = 0; i < r; ++i) {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                int p = 0;
                RootVector down = beta;
                while (true) {
                    --down[i];
                    if (down[i] < 0 || !known.count(down)) {
                        break;
                    }
                    ++p;
                }
                int pairing = 0;
                for (unsigned j = 0; j < r; ++j) {
                    pairing += beta[j] * A[i][j];
                }
                if (p - pairing > 0) {
                    RootVector up = beta;
                    ++up[i];
                    next.insert(up);
                }
            }
        }
        levels.emplace_back(next.begin(), next.end());
        known.insert(next.begin(), next.end());
    }
    std::vector<RootVector> out;
    for (const auto& level : levels) {
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

/// Number of positive roots of each height 1, 2, ...
inline std::map<unsigned, unsigned> roots_by_height(RootType t, unsigned r)
{
    std::map<unsigned, unsigned> counts;
    for (const auto& v : positive_roots(t, r)) {
        ++counts[height(v)];
    }
    return counts;
}

/// Positive roots that are sums of two or three simple roots.
inline unsigned root_height_count(RootType t, unsigned r)
{
    const auto counts = roots_by_height(t, r);
    unsigned n = 0;
    for (unsigned h : {2u, 3u}) {
        if (auto it = counts.find(h); it != counts.end()) {
            n += it->second;
        }
    }
    return n;
}

/// Lower bound claimed for root_height_count.
inline unsigned root_height_claim(unsigned r) { return r >= 2 ? 2 * r - 3 : 0; }

} // namespace blockaudit
