#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "paving/constructions.hpp"
#include "paving/errors.hpp"

using namespace paving;

TEST(DeltaSchedule, TwoBlocksMatchesTwoBlockWeights) {
    const auto s = delta_schedule(2, 3);
    ASSERT_EQ(s.deltas.size(), 2u);
    // 2/(n+1) and 2n/(n+1) at n = 3
    EXPECT_NEAR(s.deltas[0], 0.5, 1e-15);
    EXPECT_NEAR(s.deltas[1], 1.5, 1e-15);
}

TEST(DeltaSchedule, ThreeBlocksExactValues) {
    const auto s = delta_schedule(3, 2);
    ASSERT_EQ(s.deltas.size(), 3u);
    EXPECT_TRUE(oracle::exact_delta(3, 2, 1) == (oracle::Rational{3, 5}));
    EXPECT_TRUE(oracle::exact_delta(3, 2, 2) == (oracle::Rational{9, 10}));
    EXPECT_TRUE(oracle::exact_delta(3, 2, 3) == (oracle::Rational{3, 2}));
    EXPECT_NEAR(s.deltas[0], 0.6, 1e-15);
    EXPECT_NEAR(s.deltas[1], 0.9, 1e-15);
    EXPECT_NEAR(s.deltas[2], 1.5, 1e-15);
    EXPECT_NEAR(s.partial_sums[0], 0.6, 1e-15);
    EXPECT_NEAR(s.partial_sums[1], 1.5, 1e-15);
    EXPECT_NEAR(s.partial_sums[2], 3.0, 1e-15);
}

TEST(DeltaSchedule, DegenerateNOne) {
    const auto s = delta_schedule(2, 1);
    EXPECT_NEAR(s.deltas[0], 1.0, 1e-15);
    EXPECT_NEAR(s.deltas[1], 1.0, 1e-15);
    EXPECT_TRUE(s.vacuous());
    EXPECT_FALSE(delta_schedule(2, 2).vacuous());
}

TEST(DeltaSchedule, RejectsBadArguments) {
    EXPECT_THROW(delta_schedule(1, 3), InvalidArgument);
    EXPECT_THROW(delta_schedule(0, 3), InvalidArgument);
    EXPECT_THROW(delta_schedule(3, 0), InvalidArgument);
}

TEST(DeltaSchedule, InvariantsAgainstExactRationals) {
    for (std::int64_t r = 2; r <= 6; ++r) {
        for (std::int64_t n = 1; n <= 8; ++n) {
            const auto s = delta_schedule(std::size_t(r), std::size_t(n));
            oracle::Rational running{0, 1};
            for (std::int64_t k = 1; k <= r; ++k) {
                const auto exact = oracle::exact_delta(r, n, k);
                running = running + exact;
                EXPECT_NEAR(s.deltas[k - 1], exact.value(), 1e-15 * exact.value());
                // Telescoped closed form rk / ((r-k)n + k), exactly.
                EXPECT_TRUE(running == oracle::reduce(r * k, (r - k) * n + k)) << r << n << k;
                EXPECT_NEAR(s.partial_sums[k - 1], running.value(), 1e-12);
                if (k < r) EXPECT_GT(double(r) - s.partial_sums[k - 1], 0.0);
            }
            EXPECT_NEAR(s.partial_sums.back(), double(r), 1e-12);
            // Base case delta_1 = r / ((r-1)n + 1).
            EXPECT_NEAR(s.deltas[0], double(r) / double((r - 1) * n + 1), 1e-15);
        }
    }
}

TEST(DeltaSchedule, DecreasesInNForSmallR) {
    for (std::size_t r = 2; r <= 3; ++r) {
        for (std::size_t k = 1; k < r; ++k) {
            double prev = delta_schedule(r, 1).delta(k);
            for (std::size_t n = 2; n <= 32; ++n) {
                const double cur = delta_schedule(r, n).delta(k);
                EXPECT_LT(cur, prev) << "r=" << r << " k=" << k << " n=" << n;
                prev = cur;
            }
            EXPECT_LT(delta_schedule(r, 32).delta(k), delta_schedule(r, 8).delta(k) / 3.0);
        }
    }
}

TEST(DeltaSchedule, EventuallyDecaysLikeOneOverN) {
    // For k near r the schedule first rises (delta_3 of r = 4 is 1 at n = 1
    // and 16/15 at n = 2), then decays with n * delta_k -> r^2/((r-k+1)(r-k)).
    EXPECT_GT(delta_schedule(4, 2).delta(3), delta_schedule(4, 1).delta(3));
    for (std::size_t r = 2; r <= 6; ++r) {
        for (std::size_t k = 1; k < r; ++k) {
            for (std::size_t n = 4; n <= 64; ++n)
                EXPECT_LT(delta_schedule(r, n).delta(k), delta_schedule(r, n - 1).delta(k))
                    << "r=" << r << " k=" << k << " n=" << n;
            const double limit = double(r * r) / double((r - k + 1) * (r - k));
            const double scaled = 4096.0 * delta_schedule(r, 4096).delta(k);
            EXPECT_NEAR(scaled, limit, 0.01 * limit) << "r=" << r << " k=" << k;
            EXPECT_LT(delta_schedule(r, 32).delta(k), delta_schedule(r, 8).delta(k) / 2.0);
        }
    }
}

TEST(BlockLayout, WidthsAndBands) {
    for (std::size_t r = 2; r <= 5; ++r) {
        for (std::size_t n = 1; n <= 5; ++n) {
            const auto s = delta_schedule(r, n);
            const auto layout = block_layout(s);
            ASSERT_EQ(layout.blocks.size(), r);
            for (std::size_t k = 1; k <= r; ++k) {
                const auto& b = layout.blocks[k - 1];
                EXPECT_EQ(b.zero_prefix + b.band_width + b.tail_width, r * n);
                EXPECT_EQ(b.zero_prefix, (k - 1) * (n - 1));
                if (k < r) {
                    EXPECT_EQ(b.band_width, n - 1);
                    EXPECT_NEAR(b.band_weight * b.band_weight, s.band_residual(k), 1e-12);
                } else {
                    EXPECT_EQ(b.band_width, 0u);
                    EXPECT_EQ(b.tail_width, n + r - 1);
                }
                EXPECT_NEAR(b.tail_weight * b.tail_weight, s.delta(k), 1e-12);
            }
        }
    }
}

TEST(BuildR2, SmallInstance) {
    const auto f = build_nonpavable_r2(2);
    ASSERT_EQ(f.size(), 8u);
    ASSERT_EQ(f.dimension(), 4u);
    EXPECT_LE(column_orthogonality_defect(f.vectors()), 1e-10);
    for (double s : row_square_sums(f.vectors())) EXPECT_NEAR(s, 1.0, 1e-10);
    for (double s : col_square_sums(f.vectors())) EXPECT_NEAR(s, 2.0, 1e-10);
}

TEST(BuildR2, TopBlockWeights) {
    // Top block: DFT_{2n} with the first n-1 columns times sqrt(2), the rest
    // times sqrt(2/(n+1)).
    const std::size_t n = 4;
    const auto f = build_nonpavable_r2(n);
    const auto u = dft_matrix(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        for (std::size_t j = 0; j < 2 * n; ++j) {
            const double w = j + 1 < n ? std::sqrt(2.0) : std::sqrt(2.0 / (n + 1.0));
            EXPECT_NEAR(std::abs(f.vectors()(i, j) - w * u(i, j)), 0.0, 1e-15);
            const double w2 = j + 1 < n ? 0.0 : std::sqrt(2.0 * n / (n + 1.0));
            EXPECT_NEAR(std::abs(f.vectors()(2 * n + i, j) - w2 * u(i, j)), 0.0, 1e-15);
        }
    }
}

TEST(BuildR2, NOneIsTwoStackedDfts) {
    const auto f = build_nonpavable_r2(1);
    const auto u = dft_matrix(2);
    EXPECT_LE(max_abs_diff(f.vectors(), vstack(u, u)), 1e-15);
    EXPECT_TRUE(is_tight_frame(f, 1e-8));
}

TEST(BuildR2, MatchesGeneralConstruction) {
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_LE(max_abs_diff(build_nonpavable_r2(n).vectors(),
                               build_nonpavable_general(2, n).vectors()),
                  1e-14)
            << n;
    }
}

TEST(BuildGeneral, ThreeBlocks) {
    const auto f = build_nonpavable_general(3, 2);
    ASSERT_EQ(f.size(), 18u);
    ASSERT_EQ(f.dimension(), 6u);
    EXPECT_LE(column_orthogonality_defect(f.vectors()), 1e-10);
    for (double s : row_square_sums(f.vectors())) EXPECT_NEAR(s, 1.0, 1e-10);
    for (double s : col_square_sums(f.vectors())) EXPECT_NEAR(s, 3.0, 1e-10);
}

TEST(BuildGeneral, BandColumnSumsByBlock) {
    // r = 4, n = 3: a column in the band of block k collects delta_j from
    // every earlier block and the residual r - sum_{j<k} delta_j from block k.
    const std::int64_t r = 4, n = 3;
    const auto f = build_nonpavable_general(std::size_t(r), std::size_t(n));
    const std::size_t rn = std::size_t(r * n);
    for (std::int64_t k = 1; k < r; ++k) {
        oracle::Rational earlier{0, 1};
        for (std::int64_t j = 1; j < k; ++j) earlier = earlier + oracle::exact_delta(r, n, j);
        for (std::size_t c = std::size_t((k - 1) * (n - 1)); c < std::size_t(k * (n - 1)); ++c) {
            double from_earlier = 0.0;
            double from_block = 0.0;
            double from_later = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const std::int64_t block = std::int64_t(i / rn) + 1;
                const double v = std::norm(f.vectors()(i, c));
                (block < k ? from_earlier : block == k ? from_block : from_later) += v;
            }
            EXPECT_NEAR(from_earlier, earlier.value(), 1e-12);
            EXPECT_NEAR(from_block, double(r) - earlier.value(), 1e-12);
            EXPECT_NEAR(from_later, 0.0, 1e-20);
            EXPECT_NEAR(from_earlier + from_block, double(r), 1e-12);
        }
    }
}

TEST(BuildGeneral, TightForSmallParameters) {
    for (std::size_t r : {2u, 3u, 4u}) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto f = build_nonpavable_general(r, n);
            const auto a = is_tight_frame(f, 1e-8);
            ASSERT_TRUE(a) << r << "," << n;
            EXPECT_NEAR(*a, double(r), 1e-8);
            for (double s : row_square_sums(f.vectors())) EXPECT_NEAR(s, 1.0, 1e-10);
        }
    }
}

TEST(BuildGeneral, FigureDiagonalWeightWouldBreakRowSums) {
    // With sqrt(r) on every band (instead of the residual) the rows of block
    // 2 no longer square-sum to 1.
    const std::size_t r = 3, n = 3;
    const auto s = delta_schedule(r, n);
    const double rn = double(r * n);
    const double with_residual = ((n - 1) * s.band_residual(2) + (rn - 2 * (n - 1)) * s.delta(2)) / rn;
    const double with_r = ((n - 1) * double(r) + (rn - 2 * (n - 1)) * s.delta(2)) / rn;
    EXPECT_NEAR(with_residual, 1.0, 1e-12);
    EXPECT_GT(std::abs(with_r - 1.0), 1e-3);
}

TEST(Doubling, OnesSeedExpansion) {
    const FrameFamily seed(ComplexMatrix(2, 1, {1.0, 1.0}), 2.0);
    const auto d = doubling_step(seed);
    ASSERT_EQ(d.size(), 4u);
    ASSERT_EQ(d.dimension(), 2u);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix expected(4, 2, {s, s, s, s, s, -s, s, -s});
    EXPECT_LE(max_abs_diff(d.vectors(), expected), 1e-16);
    const auto g = gram(d.vectors());
    const ComplexMatrix expected_gram(4, 4, {1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1});
    EXPECT_LE(max_abs_diff(g.matrix(), expected_gram), 1e-15);
}

TEST(Doubling, ZeroStepsIsIdentity) {
    const auto f = build_nonpavable_r2(2);
    EXPECT_EQ(doubled_family(f, 0).vectors(), f.vectors());
}

TEST(Doubling, TwiceOnOnesSeed) {
    const FrameFamily seed(ComplexMatrix(2, 1, {1.0, 1.0}), 2.0);
    const auto d = doubled_family(seed, 2);
    ASSERT_EQ(d.size(), 8u);
    ASSERT_EQ(d.dimension(), 4u);
    for (double s : row_square_sums(d.vectors())) EXPECT_NEAR(s, 1.0, 1e-15);
    const auto b = frame_bounds(d);
    EXPECT_NEAR(b.lower, 2.0, 1e-12);
    EXPECT_NEAR(b.upper, 2.0, 1e-12);
}

TEST(Doubling, GramIsBlockDiagonal) {
    const auto f = build_nonpavable_general(3, 2);
    const auto g = gram(f.vectors());
    const auto gd = gram(doubling_step(f).vectors());
    const std::size_t m = f.size();
    for (std::size_t i = 0; i < 2 * m; ++i)
        for (std::size_t j = 0; j < 2 * m; ++j) {
            const Complex want = (i / m == j / m) ? g(i % m, j % m) : Complex{};
            EXPECT_LE(std::abs(gd(i, j) - want), 1e-12);
        }
}

TEST(Doubling, ShrinksEntriesAndPreservesBounds) {
    const auto f = build_nonpavable_r2(2);
    const double seed_max = max_abs_entry(f.vectors());
    const auto fb = frame_bounds(f);
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto d = doubled_family(f, k);
        EXPECT_LE(max_abs_entry(d.vectors()), std::pow(2.0, -0.5 * double(k)) * seed_max + 1e-12);
        EXPECT_LE(column_orthogonality_defect(d.vectors()), 1e-10);
        const auto db = frame_bounds(d);
        EXPECT_NEAR(db.lower, fb.lower, 1e-10);
        EXPECT_NEAR(db.upper, fb.upper, 1e-10);
    }
}

TEST(Doubling, RestrictionIdentity) {
    const auto f = build_nonpavable_r2(2);
    const auto d = doubled_family(f, 3);
    const auto fe = oracle::to_eigen(f.vectors());
    const auto de = oracle::to_eigen(d.vectors());
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (int t = 0; t < 100; ++t) {
        Eigen::VectorXcd a(static_cast<Eigen::Index>(f.size()));
        for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = {g(rng), g(rng)};
        const double lhs = (a.transpose() * de.topRows(a.size())).squaredNorm();
        const double rhs = (a.transpose() * fe).squaredNorm();
        EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + rhs));
    }
}

TEST(Doubling, EntryBudget) {
    const auto f = build_nonpavable_r2(2);  // 32 entries
    EXPECT_THROW(doubled_family(f, 3, 32 * 63), ResourceLimit);
    EXPECT_NO_THROW(doubled_family(f, 3, 32 * 64));
    EXPECT_THROW(doubled_family(f, 40), ResourceLimit);
}
