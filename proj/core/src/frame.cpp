#include "paving/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paving/errors.hpp"

namespace paving {

FrameFamily::FrameFamily(ComplexMatrix vectors, std::optional<double> claimed_tightness)
    : vectors_(std::move(vectors)), claimed_(claimed_tightness) {
    if (claimed_) {
        const auto bounds = frame_bounds(vectors_);
        if (std::abs(bounds.lower - *claimed_) > kTightnessTolerance ||
            std::abs(bounds.upper - *claimed_) > kTightnessTolerance) {
            throw InvalidArgument("claimed tightness " + std::to_string(*claimed_) +
                                  " not confirmed by frame bounds [" +
                                  std::to_string(bounds.lower) + ", " +
                                  std::to_string(bounds.upper) + "]");
        }
    }
}

HermitianMatrix frame_operator(const ComplexMatrix& vectors) {
    const std::size_t d = vectors.cols();
    ComplexMatrix s(d, d);
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        const auto f = vectors.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j; k < d; ++k) s(j, k) += f[j] * std::conj(f[k]);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        s(j, j) = {s(j, j).real(), 0.0};
        for (std::size_t k = j + 1; k < d; ++k) s(k, j) = std::conj(s(j, k));
    }
    return HermitianMatrix(std::move(s));
}

FrameBounds frame_bounds(const ComplexMatrix& vectors) {
    if (vectors.cols() == 0) throw InvalidArgument("frame_bounds: dimension must be at least 1");
    const auto values = hermitian_eigenvalues(frame_operator(vectors));
    return {std::max(values.front(), 0.0), values.back()};
}

FrameBounds frame_bounds(const FrameFamily& f) { return frame_bounds(f.vectors()); }

std::optional<double> is_tight_frame(const ComplexMatrix& vectors, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("is_tight_frame: tolerance must be positive");
    const auto bounds = frame_bounds(vectors);
    const double spectral_gap = bounds.upper - bounds.lower;
    const double constant = 0.5 * (bounds.lower + bounds.upper);

    const auto cols = col_square_sums(vectors);
    double column_gap = column_orthogonality_defect(vectors);
    for (double c : cols) column_gap = std::max(column_gap, std::abs(c - constant));

    const bool spectral_tight = spectral_gap <= tol;
    const bool column_tight = column_gap <= tol;
    if ((spectral_tight && column_gap > 10.0 * tol) ||
        (column_tight && spectral_gap > 10.0 * tol)) {
        throw InternalInconsistency("tight-frame characterizations disagree: spectral gap " +
                                    std::to_string(spectral_gap) + ", column gap " +
                                    std::to_string(column_gap));
    }
    if (spectral_tight && column_tight) return constant;
    return std::nullopt;
}

std::optional<double> is_tight_frame(const FrameFamily& f, double tol) {
    return is_tight_frame(f.vectors(), tol);
}

ProjectionMatrix::ProjectionMatrix(HermitianMatrix p, std::optional<double> diag_constant)
    : p_(std::move(p)), diag_(diag_constant) {
    const ComplexMatrix& m = p_.matrix();
    idempotency_residual_ = max_abs_diff(m * m, m);
    if (idempotency_residual_ > kIdempotencyTolerance) {
        throw InvalidArgument("matrix is not idempotent (residual " +
                              std::to_string(idempotency_residual_) + ")");
    }
    for (std::size_t i = 0; i < dim(); ++i) trace_ += m(i, i).real();
    const double rounded = std::round(trace_);
    if (std::abs(trace_ - rounded) > kTraceTolerance) {
        throw InvalidArgument("projection trace " + std::to_string(trace_) +
                              " is not an integer");
    }
    rank_ = static_cast<std::size_t>(std::max(rounded, 0.0));
    if (diag_) {
        for (std::size_t i = 0; i < dim(); ++i)
            max_diag_deviation_ = std::max(max_diag_deviation_, std::abs(m(i, i).real() - *diag_));
        if (max_diag_deviation_ > kDiagonalTolerance) {
            throw InvalidArgument("projection diagonal deviates from " + std::to_string(*diag_) +
                                  " by " + std::to_string(max_diag_deviation_));
        }
    }
}

HermitianMatrix ProjectionMatrix::complement() const {
    return HermitianMatrix(ComplexMatrix::identity(dim()) - p_.matrix());
}

ProjectionMatrix projection_from_tight_frame(const FrameFamily& f, double r) {
    if (!(r > 0.0)) throw InvalidArgument("projection_from_tight_frame: r must be positive");
    const auto constant = is_tight_frame(f, FrameFamily::kTightnessTolerance);
    if (!constant || std::abs(*constant - r) > FrameFamily::kTightnessTolerance) {
        throw InvalidArgument("projection_from_tight_frame: family is not " + std::to_string(r) +
                              "-tight");
    }
    const ComplexMatrix scaled = (1.0 / std::sqrt(r)) * f.vectors();
    bool unit_norm = true;
    for (double s : row_square_sums(f.vectors()))
        unit_norm = unit_norm && std::abs(s - 1.0) <= ProjectionMatrix::kDiagonalTolerance;
    std::optional<double> diag;
    if (unit_norm) diag = 1.0 / r;
    ProjectionMatrix p(gram(scaled), diag);
    if (p.rank() != f.dimension()) {
        throw InternalInconsistency("projection rank " + std::to_string(p.rank()) +
                                    " differs from frame dimension " +
                                    std::to_string(f.dimension()));
    }
    return p;
}

DualitySides complement_duality_check(const ProjectionMatrix& p,
                                      std::span<const std::size_t> subset) {
    if (subset.empty()) throw InvalidArgument("complement_duality_check: empty subset");
    for (std::size_t i : subset) {
        if (i >= p.dim()) throw InvalidArgument("complement_duality_check: index out of range");
    }
    const double riesz = hermitian_extremal_eig(p.matrix().principal(subset), Extremal::min);
    const double paving = hermitian_extremal_eig(p.complement().principal(subset), Extremal::max);
    if (std::abs(riesz + paving - 1.0) > 1e-8) {
        throw InternalInconsistency("duality sides sum to " + std::to_string(riesz + paving));
    }
    return {riesz, paving};
}

}  // namespace paving
