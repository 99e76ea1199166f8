#include "etass/errors.hpp"
#include "etass/gf2.hpp"

#include <gtest/gtest.h>

#include <random>

using etass::gf2::F2Matrix;
using etass::gf2::F2Span;
using etass::gf2::F2Vector;

namespace {

F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density)
{
    std::bernoulli_distribution bit(density);
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(rng))
                m.set(r, c);
    return m;
}

// Textbook elimination on a byte matrix; shares nothing with the packed code.
std::size_t naive_rank(const F2Matrix& m)
{
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            a[r][c] = m.get(r, c) ? 1 : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r)
            if (r != rank && a[r][c])
                for (std::size_t k = 0; k < m.cols(); ++k)
                    a[r][k] ^= a[rank][k];
        ++rank;
    }
    return rank;
}

F2Vector random_vector(std::mt19937_64& rng, std::size_t n)
{
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1U)
            v.set(i);
    return v;
}

} // namespace

TEST(F2Vector, BitOperationsAcrossWordBoundary)
{
    F2Vector v(130);
    EXPECT_TRUE(v.is_zero());
    EXPECT_EQ(v.lowest_set(), 130U);
    v.set(64);
    v.set(129);
    v.flip(3);
    EXPECT_EQ(v.popcount(), 3U);
    EXPECT_EQ(v.lowest_set(), 3U);
    EXPECT_EQ(v.support(), (std::vector<std::size_t>{3, 64, 129}));
    v.set(3, false);
    EXPECT_EQ(v.lowest_set(), 64U);
    EXPECT_TRUE((v ^ v).is_zero());
    EXPECT_TRUE(v.dot(F2Vector::unit(130, 129)));
    EXPECT_FALSE(v.dot(F2Vector::unit(130, 128)));
}

TEST(F2Matrix, SmallRankAndKernel)
{
    const F2Matrix m{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    EXPECT_EQ(etass::gf2::rank(m), 2U);
    const auto ker = etass::gf2::kernel_basis(m);
    ASSERT_EQ(ker.size(), 1U);
    EXPECT_EQ(ker[0], (F2Vector{1, 1, 1}));
    EXPECT_EQ(etass::gf2::rank(F2Matrix::identity(70)), 70U);
    EXPECT_EQ(etass::gf2::rank(F2Matrix(5, 0)), 0U);
    EXPECT_EQ(etass::gf2::kernel_basis(F2Matrix(0, 4)).size(), 4U);
}

TEST(F2Matrix, RankMatchesNaiveElimination)
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> size(0, 150);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = random_matrix(rng, size(rng), size(rng), trial % 3 == 0 ? 0.05 : 0.5);
        ASSERT_EQ(etass::gf2::rank(m), naive_rank(m)) << m.rows() << "x" << m.cols();
    }
}

TEST(F2Matrix, KernelProperties)
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::size_t> size(1, 120);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_matrix(rng, size(rng), size(rng), 0.3);
        const auto ker = etass::gf2::kernel_basis(m);
        ASSERT_EQ(ker.size() + etass::gf2::rank(m), m.cols());
        for (const auto& v : ker)
            ASSERT_TRUE(m.apply(v).is_zero());
        ASSERT_EQ(naive_rank(F2Matrix::from_rows(m.cols(), ker)), ker.size());
    }
}

TEST(F2Matrix, RowReductionIsReducedEchelon)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_matrix(rng, 40, 90, 0.2);
        const auto rr = etass::gf2::row_reduce(m);
        ASSERT_EQ(rr.pivot_cols.size(), rr.rank);
        for (std::size_t i = 0; i < rr.rank; ++i) {
            if (i > 0)
                ASSERT_LT(rr.pivot_cols[i - 1], rr.pivot_cols[i]);
            for (std::size_t r = 0; r < rr.reduced.rows(); ++r)
                ASSERT_EQ(rr.reduced.get(r, rr.pivot_cols[i]), r == i);
        }
        for (std::size_t r = rr.rank; r < rr.reduced.rows(); ++r)
            ASSERT_TRUE(rr.reduced.row(r).is_zero());
    }
}

TEST(F2Matrix, TransposeAndProduct)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_matrix(rng, 17, 70, 0.4);
        const auto b = random_matrix(rng, 70, 9, 0.4);
        const auto c = random_matrix(rng, 9, 66, 0.4);
        ASSERT_EQ(a.transpose().transpose(), a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ((a * b).transpose(), b.transpose() * a.transpose());
        // apply(v) agrees with multiplying by v as a one-column matrix.
        const auto v = random_vector(rng, 70);
        const auto col = a * F2Matrix::from_rows(70, {v}).transpose();
        ASSERT_EQ(a.apply(v), col.transpose().row(0));
    }
}

TEST(F2Span, InsertReduceContains)
{
    std::mt19937_64 rng(5);
    F2Span span(100);
    std::vector<F2Vector> inserted;
    for (int i = 0; i < 60; ++i) {
        // Every third vector is dependent by construction.
        F2Vector v = random_vector(rng, 100);
        if (i % 3 == 2)
            v = inserted[i - 1] ^ inserted[i - 2];
        const std::size_t before = span.dim();
        const bool grew = span.insert(v);
        inserted.push_back(v);
        ASSERT_EQ(span.dim(), naive_rank(F2Matrix::from_rows(100, inserted)));
        ASSERT_EQ(grew, span.dim() > before);
        ASSERT_TRUE(span.reduce(v).is_zero());
    }
    for (const auto& v : inserted)
        EXPECT_TRUE(span.contains(v));
    EXPECT_TRUE(span.contains(inserted[0] ^ inserted[7] ^ inserted[31]));
}

TEST(QuotientBasis, DimensionAndIndependence)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 90;
        std::vector<F2Vector> ambient;
        for (std::size_t i = 0, k = rng() % 20; i < k; ++i)
            ambient.push_back(random_vector(rng, n));
        std::vector<F2Vector> sub;
        for (std::size_t i = 0, k = ambient.empty() ? 0 : rng() % 8; i < k; ++i) {
            F2Vector s(n);
            for (const auto& a : ambient)
                if (rng() & 1U)
                    s ^= a;
            sub.push_back(s);
        }
        const auto reps = etass::gf2::quotient_basis(sub, ambient);
        const std::size_t amb = naive_rank(F2Matrix::from_rows(n, ambient));
        const std::size_t sb = naive_rank(F2Matrix::from_rows(n, sub));
        ASSERT_EQ(reps.size(), amb - sb);
        auto all = sub;
        all.insert(all.end(), reps.begin(), reps.end());
        ASSERT_EQ(naive_rank(F2Matrix::from_rows(n, all)), amb);
    }
}

TEST(QuotientBasis, PrefersStandardBasisVectors)
{
    const std::vector<F2Vector> ambient{{1, 1, 0}, {0, 0, 1}};
    const std::vector<F2Vector> sub{{1, 1, 0}};
    const auto reps = etass::gf2::quotient_basis(sub, ambient);
    ASSERT_EQ(reps.size(), 1U);
    EXPECT_EQ(reps[0], (F2Vector{0, 0, 1}));
}

TEST(QuotientBasis, RejectsSubspaceOutsideAmbient)
{
    const std::vector<F2Vector> ambient{{1, 0, 0}};
    const std::vector<F2Vector> sub{{0, 1, 0}};
    EXPECT_THROW(etass::gf2::quotient_basis(sub, ambient), etass::SubspaceNotContained);
}
