#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "paving/errors.hpp"
#include "paving/matrix.hpp"

using namespace paving;

namespace {

double unitarity_error(const ComplexMatrix& u) {
    // Direct triple loop, independent of operator*.
    double worst = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.rows(); ++j) {
            Complex s{};
            for (std::size_t k = 0; k < u.cols(); ++k) s += u(i, k) * std::conj(u(j, k));
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace

TEST(ComplexMatrix, RejectsWrongEntryCountAndNonFinite) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), InvalidArgument);
    std::vector<Complex> bad(4);
    bad[2] = {std::nan(""), 0.0};
    EXPECT_THROW(ComplexMatrix(2, 2, bad), InvalidArgument);
    bad[2] = {0.0, INFINITY};
    EXPECT_THROW(ComplexMatrix(2, 2, bad), InvalidArgument);
}

TEST(HermitianMatrix, RejectsAsymmetricInput) {
    ComplexMatrix m(2, 2);
    m(0, 1) = {1.0, 1.0};
    m(1, 0) = {1.0, 1.0};  // should be the conjugate
    EXPECT_THROW(HermitianMatrix{m}, InvalidArgument);
    m(1, 0) = {1.0, -1.0};
    EXPECT_NO_THROW(HermitianMatrix{m});
    EXPECT_THROW(HermitianMatrix{ComplexMatrix(2, 3)}, InvalidArgument);
}

TEST(DftMatrix, SizeOneIsOne) {
    const auto u = dft_matrix(1);
    ASSERT_EQ(u.rows(), 1u);
    EXPECT_EQ(u(0, 0), Complex(1.0, 0.0));
}

TEST(DftMatrix, SizeTwoZeroBased) {
    const auto u = dft_matrix(2);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(u(0, 0) - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(0, 1) - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 0) - s), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(1, 1) + s), 0.0, 1e-15);
}

TEST(DftMatrix, PositiveRootConvention) {
    const auto u = dft_matrix(4);
    // w = i, entry (1,1) = i / 2.
    EXPECT_NEAR(std::abs(u(1, 1) - Complex(0.0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(3, 2) - Complex(-0.5, 0.0)), 0.0, 1e-15);
}

TEST(DftMatrix, SizeFourIsUnitary) { EXPECT_LE(unitarity_error(dft_matrix(4)), 1e-12); }

TEST(DftMatrix, ZeroIsInvalid) { EXPECT_THROW(dft_matrix(0), InvalidArgument); }

TEST(DftMatrix, UnitaryAndFlatUpTo512) {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 64u, 100u, 255u, 512u}) {
        const auto u = dft_matrix(n);
        EXPECT_LE(max_abs_diff(u * adjoint(u), ComplexMatrix::identity(n)), 1e-12) << n;
        const double target = 1.0 / std::sqrt(static_cast<double>(n));
        for (const auto& z : u.entries()) ASSERT_NEAR(std::abs(z), target, 1e-14) << n;
    }
}

TEST(ScaleColumns, DftTwoExample) {
    const std::vector<double> w{std::sqrt(2.0), 0.0};
    const auto b = scale_columns(dft_matrix(2), w);
    const auto cols = col_square_sums(b);
    EXPECT_NEAR(cols[0], 2.0, 1e-15);
    EXPECT_NEAR(cols[1], 0.0, 1e-15);
    // Row sums: a * sum C_j^2 with a = 1/2.
    for (double r : row_square_sums(b)) EXPECT_NEAR(r, 0.5 * (2.0 + 0.0), 1e-15);
}

TEST(ScaleColumns, OnesIsIdentity) {
    std::mt19937_64 rng(7);
    const auto a = oracle::random_matrix(3, 4, rng);
    const std::vector<double> ones(4, 1.0);
    EXPECT_EQ(scale_columns(a, ones), a);
}

TEST(ScaleColumns, RejectsBadWeights) {
    const auto u = dft_matrix(3);
    EXPECT_THROW(scale_columns(u, std::vector<double>{1.0, 1.0}), InvalidArgument);
    EXPECT_THROW(scale_columns(u, std::vector<double>{1.0, -0.1, 1.0}), InvalidArgument);
}

TEST(ScaleColumns, RowAndColumnSumsFollowScaling) {
    // Flat |a_ij|^2 = a with orthogonal columns: row sum a * sum C_j^2,
    // column sum rows * a * C_j^2.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
        std::vector<double> weights(n);
        for (auto& x : weights) x = w(rng);
        const auto u = dft_matrix(n);
        const auto b = scale_columns(u, weights);
        const double a = 1.0 / static_cast<double>(n);
        double sum_sq = 0.0;
        for (double x : weights) sum_sq += x * x;
        for (double r : row_square_sums(b)) EXPECT_NEAR(r, a * sum_sq, 1e-12);
        const auto cols = col_square_sums(b);
        for (std::size_t j = 0; j < n; ++j)
            EXPECT_NEAR(cols[j], static_cast<double>(n) * a * weights[j] * weights[j], 1e-12);
        double max_c2 = 0.0;
        for (double x : weights) max_c2 = std::max(max_c2, x * x);
        EXPECT_LE(column_orthogonality_defect(b),
                  column_orthogonality_defect(u) * max_c2 + 1e-12);
    }
}

TEST(Gram, IdentityAndDuplicateRows) {
    EXPECT_EQ(gram(ComplexMatrix::identity(3)).matrix(), ComplexMatrix::identity(3));
    ComplexMatrix f(2, 2);
    f(0, 0) = 1.0;
    f(1, 0) = 1.0;
    const auto g = gram(f);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(g(i, j), Complex(1.0, 0.0));
}

TEST(Gram, ConjugateLinearInSecondArgument) {
    ComplexMatrix f(2, 1);
    f(0, 0) = {0.0, 1.0};
    f(1, 0) = 1.0;
    const auto g = gram(f);
    // <i, 1> = i * conj(1) = i
    EXPECT_EQ(g(0, 1), Complex(0.0, 1.0));
    EXPECT_EQ(g(1, 0), Complex(0.0, -1.0));
}

TEST(Gram, PositiveSemidefinite) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = oracle::random_matrix(2 + trial % 9, 1 + trial % 5, rng);
        EXPECT_GE(hermitian_extremal_eig(gram(f), Extremal::min), -1e-10);
    }
}

TEST(HermitianEig, TrivialSpectra) {
    ComplexMatrix d(2, 2);
    d(0, 0) = 0.25;
    d(1, 1) = 0.75;
    EXPECT_NEAR(hermitian_extremal_eig(HermitianMatrix(d), Extremal::min), 0.25, 1e-15);
    EXPECT_NEAR(hermitian_extremal_eig(HermitianMatrix(d), Extremal::max), 0.75, 1e-15);

    ComplexMatrix ones(2, 2, std::vector<Complex>(4, 1.0));
    EXPECT_NEAR(hermitian_extremal_eig(HermitianMatrix(ones), Extremal::min), 0.0, 1e-14);
    EXPECT_NEAR(hermitian_extremal_eig(HermitianMatrix(ones), Extremal::max), 2.0, 1e-14);
}

TEST(HermitianEig, DftGramIsIdentitySpectrum) {
    for (std::size_t n : {2u, 5u, 12u}) {
        const auto g = gram(dft_matrix(n));
        EXPECT_NEAR(hermitian_extremal_eig(g, Extremal::min), 1.0, 1e-12);
        EXPECT_NEAR(hermitian_extremal_eig(g, Extremal::max), 1.0, 1e-12);
    }
}

TEST(HermitianEig, AgreesWithFullDiagonalizationOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 16);
        const auto h = oracle::random_hermitian(dim, rng);
        const auto mine = hermitian_eigenvalues(HermitianMatrix(h));
        const auto ref = oracle::eigenvalues(h);
        ASSERT_EQ(mine.size(), ref.size());
        for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(mine[i], ref[i], 1e-9) << dim;
    }
}

TEST(HermitianEig, Deterministic) {
    std::mt19937_64 rng(5);
    const HermitianMatrix h(oracle::random_hermitian(9, rng));
    EXPECT_EQ(hermitian_eigenvalues(h), hermitian_eigenvalues(h));
}

TEST(HermitianEig, RejectsBadTolerance) {
    EXPECT_THROW(hermitian_eigenvalues(HermitianMatrix(ComplexMatrix::identity(2)), 0.0),
                 InvalidArgument);
}

TEST(OrthogonalityDefect, Basics) {
    EXPECT_LE(column_orthogonality_defect(dft_matrix(6)), 1e-12);
    ComplexMatrix twin(2, 2);
    twin(0, 0) = 1.0;
    twin(0, 1) = 1.0;
    EXPECT_NEAR(column_orthogonality_defect(twin), 1.0, 1e-15);
    EXPECT_EQ(column_orthogonality_defect(ComplexMatrix(3, 1)), 0.0);
}

TEST(OrthogonalComplement, SpansNullSpaceOfAdjoint) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(trial % 8);
        const std::size_t p = static_cast<std::size_t>(trial % 4);
        auto c = oracle::random_matrix(m, p, rng);
        if (p >= 2 && trial % 3 == 0) {
            // rank-deficient: duplicate a column
            for (std::size_t i = 0; i < m; ++i) c(i, p - 1) = 2.0 * c(i, 0);
        }
        const auto n = orthogonal_complement(c);
        std::size_t rank = 0;
        if (p > 0) rank = static_cast<std::size_t>(Eigen::FullPivLU<oracle::EMatrix>(oracle::to_eigen(c)).rank());
        ASSERT_EQ(n.cols(), m - rank);
        // Orthonormal columns, each orthogonal to range(c).
        EXPECT_LE(max_abs_diff(adjoint(n) * n, ComplexMatrix::identity(n.cols())), 1e-12);
        if (p > 0) EXPECT_LE(max_abs_entry(adjoint(c) * n), 1e-12 * (1.0 + frobenius_norm(c)));
    }
}

TEST(OrthogonalComplement, EmptyBandGivesWholeSpace) {
    const auto n = orthogonal_complement(ComplexMatrix(4, 0));
    EXPECT_EQ(n, ComplexMatrix::identity(4));
}
