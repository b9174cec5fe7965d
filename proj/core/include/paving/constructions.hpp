#pragma once
//
// Stacked, column-rescaled DFT families whose rows form unit-norm r-tight
// frames that are not uniformly r-Rieszable, plus the entry-shrinking
// doubling recursion A -> (1/sqrt 2)[A A; A -A].
//

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paving/frame.hpp"

namespace paving {

// Column weights delta_1..delta_r of the r-block stack for block size rn.
//
//   delta_k = r^2 n / ([(r-k+1)n + k-1] [(r-k)n + k])
//
// partial_sums[k-1] = delta_1 + ... + delta_k, which telescopes to
// rk / ((r-k)n + k) and reaches r at k = r.
struct DeltaSchedule {
    std::size_t r = 0;
    std::size_t n = 0;
    std::vector<double> deltas;
    std::vector<double> partial_sums;

    double delta(std::size_t k) const { return deltas.at(k - 1); }
    // r - sum_{j<k} delta_j: squared weight of block k's band.
    double band_residual(std::size_t k) const {
        return static_cast<double>(r) - (k >= 2 ? partial_sums.at(k - 2) : 0.0);
    }
    // Bands have width n-1; for n = 1 no witness bound is informative.
    bool vacuous() const noexcept { return n == 1; }
};

// Throws InvalidArgument for r < 2 or n < 1.
DeltaSchedule delta_schedule(std::size_t r, std::size_t n);

// Column layout of one rn x rn block: zero_prefix zero columns, then
// band_width columns at band_weight, then tail_width columns at tail_weight.
struct BlockSpec {
    std::size_t zero_prefix = 0;
    std::size_t band_width = 0;
    double band_weight = 0.0;
    std::size_t tail_width = 0;
    double tail_weight = 0.0;

    std::size_t band_begin() const noexcept { return zero_prefix; }
    std::size_t band_end() const noexcept { return zero_prefix + band_width; }
};

struct BlockLayout {
    std::size_t r = 0;
    std::size_t n = 0;
    std::vector<BlockSpec> blocks;  // blocks[k-1] describes block k

    std::vector<double> column_weights(std::size_t k) const;
};

// Block k < r: (k-1)(n-1) zeros, n-1 band columns at sqrt(r - sum_{j<k} delta_j),
// rn - k(n-1) tail columns at sqrt(delta_k). Block r has no band: (r-1)(n-1)
// zeros followed by sqrt(delta_r).
BlockLayout block_layout(const DeltaSchedule& schedule);

// 4n x 2n two-block family: DFT_{2n} with the first n-1 columns scaled by
// sqrt 2 and the rest by sqrt(2/(n+1)), stacked over DFT_{2n} with the first
// n-1 columns zeroed and the rest scaled by sqrt(2n/(n+1)).
FrameFamily build_nonpavable_r2(std::size_t n);

// r^2 n x rn stack of r column-rescaled DFT_{rn} blocks per block_layout.
FrameFamily build_nonpavable_general(std::size_t r, std::size_t n);

// (1/sqrt 2) [[F, F], [F, -F]].
FrameFamily doubling_step(const FrameFamily& f);

inline constexpr std::uint64_t kDefaultEntryBudget = std::uint64_t{1} << 24;

// K-fold doubling. Throws ResourceLimit if the result would hold more than
// entry_budget entries.
FrameFamily doubled_family(const FrameFamily& f, std::size_t k,
                           std::uint64_t entry_budget = kDefaultEntryBudget);

}  // namespace paving
