#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "paving/matrix.hpp"

namespace paving {

// M frame vectors in C^d, stored as the rows of an M x d matrix.
//
// When a tightness constant is claimed, the constructor confirms that both
// frame bounds equal it to within kTightnessTolerance.
class FrameFamily {
public:
    static constexpr double kTightnessTolerance = 1e-8;

    explicit FrameFamily(ComplexMatrix vectors, std::optional<double> claimed_tightness = {});

    const ComplexMatrix& vectors() const noexcept { return vectors_; }
    std::size_t size() const noexcept { return vectors_.rows(); }
    std::size_t dimension() const noexcept { return vectors_.cols(); }
    std::optional<double> claimed_tightness() const noexcept { return claimed_; }

private:
    ComplexMatrix vectors_;
    std::optional<double> claimed_;
};

struct FrameBounds {
    double lower;
    double upper;
};

// S = sum_i f_i f_i^*, i.e. S_jk = sum_i f_i[j] conj(f_i[k]).
HermitianMatrix frame_operator(const ComplexMatrix& vectors);

// Extreme eigenvalues of the frame operator. lower == 0 (to rounding) for a
// family that does not span.
FrameBounds frame_bounds(const FrameFamily& f);
FrameBounds frame_bounds(const ComplexMatrix& vectors);

// Returns the tight constant A when the frame bounds agree within tol.
// The column characterization (orthogonal columns, each with square sum A)
// is evaluated too; if one test passes while the other misses by more than
// 10*tol, InternalInconsistency is thrown.
std::optional<double> is_tight_frame(const FrameFamily& f, double tol);
std::optional<double> is_tight_frame(const ComplexMatrix& vectors, double tol);

// Orthogonal projection with its integer rank and, when every diagonal
// entry agrees, the constant diagonal value.
class ProjectionMatrix {
public:
    static constexpr double kIdempotencyTolerance = 1e-8;
    static constexpr double kDiagonalTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-6;

    // Validates idempotency, integer trace and (if given) the diagonal.
    ProjectionMatrix(HermitianMatrix p, std::optional<double> diag_constant = {});

    const HermitianMatrix& matrix() const noexcept { return p_; }
    std::size_t dim() const noexcept { return p_.dim(); }
    std::size_t rank() const noexcept { return rank_; }
    std::optional<double> diag_constant() const noexcept { return diag_; }

    // Measured quantities behind the invariants.
    double idempotency_residual() const noexcept { return idempotency_residual_; }
    double trace() const noexcept { return trace_; }
    double max_diag_deviation() const noexcept { return max_diag_deviation_; }

    // I - P.
    HermitianMatrix complement() const;

private:
    HermitianMatrix p_;
    std::size_t rank_ = 0;
    std::optional<double> diag_;
    double idempotency_residual_ = 0.0;
    double trace_ = 0.0;
    double max_diag_deviation_ = 0.0;
};

// P = gram(F / sqrt(r)). F must be r-tight within 1e-8. The constant
// diagonal 1/r is recorded when F is unit-norm.
ProjectionMatrix projection_from_tight_frame(const FrameFamily& f, double r);

struct DualitySides {
    double riesz_side;   // lambda_min of P restricted to the subset
    double paving_side;  // lambda_max of (I - P) restricted to the subset
};

// Both sides of the Riesz / complement-paving duality on one index subset.
// Throws InternalInconsistency if they do not sum to 1 within 1e-8.
DualitySides complement_duality_check(const ProjectionMatrix& p,
                                      std::span<const std::size_t> subset);

}  // namespace paving
