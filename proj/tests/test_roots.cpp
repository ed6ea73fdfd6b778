#include <gtest/gtest.h>

#include <set>

#include "blockaudit/roots.hpp"

using namespace blockaudit;

namespace {

// Positive roots of the classical types listed in the epsilon basis and
// rewritten in the simple roots (Bourbaki numbering) by elimination.
std::set<RootVector> classical_roots(RootType t, unsigned r)
{
    const unsigned dim = t == RootType::A ? r + 1 : r;
    auto e = [&](int i, int ci, int j = -1, int cj = 0) {
        std::vector<int> v(dim, 0);
        v[i] += ci;
        if (j >= 0) {
            v[j] += cj;
        }
        return v;
    };
    std::vector<std::vector<int>> simple;
    for (unsigned i = 0; i + 1 < r; ++i) {
        simple.push_back(e(i, 1, i + 1, -1));
    }
    switch (t) {
    case RootType::A:
        simple.push_back(e(r - 1, 1, r, -1));
        break;
    case RootType::B:
        simple.push_back(e(r - 1, 1));
        break;
    case RootType::C:
        simple.push_back(e(r - 1, 2));
        break;
    default:
        simple.push_back(e(r - 2, 1, r - 1, 1));
    }
    std::vector<std::vector<int>> eps;
    if (t == RootType::A) {
        for (unsigned i = 0; i < dim; ++i) {
            for (unsigned j = i + 1; j < dim; ++j) {
                eps.push_back(e(i, 1, j, -1));
            }
        }
    } else {
        for (unsigned i = 0; i < r; ++i) {
            for (unsigned j = i + 1; j < r; ++j) {
                eps.push_back(e(i, 1, j, -1));
                eps.push_back(e(i, 1, j, 1));
            }
            if (t == RootType::B) {
                eps.push_back(e(i, 1));
            } else if (t == RootType::C) {
                eps.push_back(e(i, 2));
            }
        }
    }
    // Solve sum_k c_k simple_k = v with exact rational elimination on the normal equations.
    std::set<RootVector> out;
    for (const auto& v : eps) {
        std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
        for (unsigned a = 0; a < r; ++a) {
            for (unsigned b = 0; b < r; ++b) {
                int dot = 0;
                for (unsigned k = 0; k < dim; ++k) {
                    dot += simple[a][k] * simple[b][k];
                }
                m[a][b] = dot;
            }
            int dot = 0;
            for (unsigned k = 0; k < dim; ++k) {
                dot += simple[a][k] * v[k];
            }
            m[a][r] = dot;
        }
        for (unsigned col = 0; col < r; ++col) {
            unsigned piv = col;
            while (m[piv][col] == 0) {
                ++piv;
            }
            std::swap(m[piv], m[col]);
            for (unsigned row = 0; row < r; ++row) {
                if (row != col && m[row][col] != 0) {
                    const Rational f = m[row][col] / m[col][col];
                    for (unsigned k = col; k <= r; ++k) {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
        RootVector c(r);
        for (unsigned k = 0; k < r; ++k) {
            const Rational x = m[k][r] / m[k][k];
            c[k] = static_cast<int>(x.get_num().get_si());
            EXPECT_EQ(x.get_den(), 1);
        }
        out.insert(c);
    }
    return out;
}

} // namespace

TEST(Roots, PositiveRootCounts)
{
    for (unsigned r = 1; r <= 12; ++r) {
        EXPECT_EQ(positive_roots(RootType::A, r).size(), r * (r + 1) / 2);
    }
    for (unsigned r = 2; r <= 12; ++r) {
        EXPECT_EQ(positive_roots(RootType::B, r).size(), r * r);
        EXPECT_EQ(positive_roots(RootType::C, r).size(), r * r);
    }
    for (unsigned r = 4; r <= 12; ++r) {
        EXPECT_EQ(positive_roots(RootType::D, r).size(), r * (r - 1));
    }
    EXPECT_EQ(positive_roots(RootType::E, 6).size(), 36u);
    EXPECT_EQ(positive_roots(RootType::E, 7).size(), 63u);
    EXPECT_EQ(positive_roots(RootType::E, 8).size(), 120u);
    EXPECT_EQ(positive_roots(RootType::F, 4).size(), 24u);
    EXPECT_EQ(positive_roots(RootType::G, 2).size(), 6u);
}

TEST(Roots, ExplicitClassicalRootSets)
{
    for (unsigned r = 1; r <= 9; ++r) {
        const auto got = positive_roots(RootType::A, r);
        EXPECT_EQ(std::set<RootVector>(got.begin(), got.end()), classical_roots(RootType::A, r));
    }
    for (unsigned r = 2; r <= 9; ++r) {
        const auto got = positive_roots(RootType::B, r);
        EXPECT_EQ(std::set<RootVector>(got.begin(), got.end()), classical_roots(RootType::B, r)) << "B" << r;
    }
    for (unsigned r = 2; r <= 9; ++r) {
        const auto got = positive_roots(RootType::C, r);
        EXPECT_EQ(std::set<RootVector>(got.begin(), got.end()), classical_roots(RootType::C, r)) << "C" << r;
    }
    for (unsigned r = 4; r <= 9; ++r) {
        const auto got = positive_roots(RootType::D, r);
        EXPECT_EQ(std::set<RootVector>(got.begin(), got.end()), classical_roots(RootType::D, r)) << "D" << r;
    }
}

TEST(Roots, HighestRoots)
{
    // the highest root has height h - 1 (Coxeter number h)
    auto top = [](RootType t, unsigned r) { return height(positive_roots(t, r).back()); };
    EXPECT_EQ(top(RootType::E, 8), 29u);
    EXPECT_EQ(top(RootType::E, 7), 17u);
    EXPECT_EQ(top(RootType::E, 6), 11u);
    EXPECT_EQ(top(RootType::F, 4), 11u);
    EXPECT_EQ(top(RootType::G, 2), 5u);
    EXPECT_EQ(positive_roots(RootType::G, 2).back(), (RootVector{3, 2}));
    EXPECT_EQ(positive_roots(RootType::E, 8).back(), (RootVector{2, 3, 4, 6, 5, 4, 3, 2}));
}

TEST(Roots, HeightTwoAndThreeClaim)
{
    for (char c : std::string("ABCDEFG")) {
        const RootType t = *parse_root_type(c);
        for (unsigned r = 2; r <= 12; ++r) {
            if (!valid_root_system(t, r)) {
                continue;
            }
            EXPECT_GE(root_height_count(t, r), root_height_claim(r)) << c << r;
        }
    }
    // type A attains the bound
    for (unsigned r = 2; r <= 12; ++r) {
        EXPECT_EQ(root_height_count(RootType::A, r), 2 * r - 3);
    }
}

TEST(Roots, Validation)
{
    EXPECT_THROW(cartan_matrix(RootType::E, 9), invalid_parameter);
    EXPECT_THROW(cartan_matrix(RootType::D, 3), invalid_parameter);
    EXPECT_FALSE(parse_root_type('H'));
    EXPECT_EQ(to_char(RootType::F), 'F');
}
