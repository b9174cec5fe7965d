#include "paving/constructions.hpp"

#include <cmath>
#include <string>

#include "paving/errors.hpp"

namespace paving {

namespace {

// sqrt that tolerates rounding residue just below zero.
double safe_sqrt(double value) {
    if (value < -1e-12) {
        throw InternalInconsistency("negative squared column weight " + std::to_string(value));
    }
    return std::sqrt(std::max(value, 0.0));
}

}  // namespace

DeltaSchedule delta_schedule(std::size_t r, std::size_t n) {
    if (r < 2) throw InvalidArgument("delta_schedule: r must be at least 2");
    if (n < 1) throw InvalidArgument("delta_schedule: n must be at least 1");

    DeltaSchedule s;
    s.r = r;
    s.n = n;
    const double numerator = static_cast<double>(r * r * n);
    double running = 0.0;
    for (std::size_t k = 1; k <= r; ++k) {
        const std::size_t left = (r - k + 1) * n + k - 1;
        const std::size_t right = (r - k) * n + k;
        const double delta = numerator / (static_cast<double>(left) * static_cast<double>(right));
        running += delta;
        s.deltas.push_back(delta);
        s.partial_sums.push_back(running);
    }

    for (std::size_t k = 1; k <= r; ++k) {
        const double closed_form =
            static_cast<double>(r * k) / static_cast<double>((r - k) * n + k);
        if (std::abs(s.partial_sums[k - 1] - closed_form) > 1e-12) {
            throw InternalInconsistency("delta partial sum " + std::to_string(k) +
                                        " misses its closed form");
        }
        if (k < r && !(s.band_residual(k + 1) > 0.0)) {
            throw InternalInconsistency("nonpositive band residual at block " +
                                        std::to_string(k + 1));
        }
    }
    return s;
}

std::vector<double> BlockLayout::column_weights(std::size_t k) const {
    const BlockSpec& b = blocks.at(k - 1);
    std::vector<double> w;
    w.reserve(b.zero_prefix + b.band_width + b.tail_width);
    w.insert(w.end(), b.zero_prefix, 0.0);
    w.insert(w.end(), b.band_width, b.band_weight);
    w.insert(w.end(), b.tail_width, b.tail_weight);
    return w;
}

BlockLayout block_layout(const DeltaSchedule& schedule) {
    const std::size_t r = schedule.r;
    const std::size_t n = schedule.n;
    BlockLayout layout;
    layout.r = r;
    layout.n = n;
    for (std::size_t k = 1; k <= r; ++k) {
        BlockSpec b;
        if (k < r) {
            b.zero_prefix = (k - 1) * (n - 1);
            b.band_width = n - 1;
            b.band_weight = safe_sqrt(schedule.band_residual(k));
        } else {
            b.zero_prefix = (r - 1) * (n - 1);
        }
        b.tail_width = r * n - b.zero_prefix - b.band_width;
        b.tail_weight = safe_sqrt(schedule.delta(k));
        layout.blocks.push_back(b);
    }
    return layout;
}

FrameFamily build_nonpavable_r2(std::size_t n) {
    if (n < 1) throw InvalidArgument("build_nonpavable_r2: n must be at least 1");
    const ComplexMatrix u = dft_matrix(2 * n);
    const double nd = static_cast<double>(n);

    std::vector<double> top(2 * n, std::sqrt(2.0 / (nd + 1.0)));
    std::vector<double> bottom(2 * n, std::sqrt(2.0 * nd / (nd + 1.0)));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        top[j] = std::sqrt(2.0);
        bottom[j] = 0.0;
    }
    return FrameFamily(vstack(scale_columns(u, top), scale_columns(u, bottom)), 2.0);
}

FrameFamily build_nonpavable_general(std::size_t r, std::size_t n) {
    const DeltaSchedule schedule = delta_schedule(r, n);
    const BlockLayout layout = block_layout(schedule);
    const ComplexMatrix u = dft_matrix(r * n);

    std::vector<Complex> entries;
    entries.reserve(r * r * n * r * n);
    for (std::size_t k = 1; k <= r; ++k) {
        const ComplexMatrix block = scale_columns(u, layout.column_weights(k));
        entries.insert(entries.end(), block.entries().begin(), block.entries().end());
    }
    return FrameFamily(ComplexMatrix(r * r * n, r * n, std::move(entries)),
                       static_cast<double>(r));
}

FrameFamily doubling_step(const FrameFamily& f) {
    const ComplexMatrix& a = f.vectors();
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix out(2 * m, 2 * d);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Complex v = s * a(i, j);
            out(i, j) = v;
            out(i, d + j) = v;
            out(m + i, j) = v;
            out(m + i, d + j) = -v;
        }
    }
    return FrameFamily(std::move(out), f.claimed_tightness());
}

FrameFamily doubled_family(const FrameFamily& f, std::size_t k, std::uint64_t entry_budget) {
    const std::uint64_t base = static_cast<std::uint64_t>(f.size()) * f.dimension();
    if (k >= 32 || (base > 0 && (base << (2 * k)) >> (2 * k) != base) ||
        (base << (2 * k)) > entry_budget) {
        throw ResourceLimit("doubling " + std::to_string(k) + " times exceeds the entry budget of " +
                                std::to_string(entry_budget),
                            entry_budget);
    }
    FrameFamily out = f;
    for (std::size_t step = 0; step < k; ++step) out = doubling_step(out);
    return out;
}

}  // namespace paving
