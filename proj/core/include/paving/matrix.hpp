#pragma once
//
// Dense complex matrices and the handful of kernels the frame and paving
// code is built on: DFT construction, column scaling, Gram matrices,
// Hermitian spectra (cyclic Jacobi) and orthogonal complements.
//

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace paving {

using Complex = std::complex<double>;

// Row-major dense complex matrix. Every entry is finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    // Throws InvalidArgument if entries.size() != rows*cols or any entry is
    // not finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    const std::vector<Complex>& entries() const noexcept { return data_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

ComplexMatrix adjoint(const ComplexMatrix& a);
// Rows of `top` followed by rows of `bottom`.
ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom);
ComplexMatrix select_rows(const ComplexMatrix& a, std::span<const std::size_t> rows);
ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> index);

double max_abs_entry(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

// Square matrix with max |H_ij - conj(H_ji)| <= 1e-12, checked on
// construction.
class HermitianMatrix {
public:
    static constexpr double kAsymmetryTolerance = 1e-12;

    explicit HermitianMatrix(ComplexMatrix m);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    HermitianMatrix principal(std::span<const std::size_t> index) const;

private:
    ComplexMatrix m_;
};

// max |H_ij - conj(H_ji)| over all pairs.
double hermitian_asymmetry(const ComplexMatrix& m);

// Unitary DFT with zero-based exponents: entry (j,k) = w^{jk}/sqrt(n),
// w = exp(+2 pi i / n).
ComplexMatrix dft_matrix(std::size_t n);

// B_ij = weights[j] * A_ij. Weights must be nonnegative and one per column.
ComplexMatrix scale_columns(const ComplexMatrix& a, std::span<const double> weights);

// Gram matrix of the rows: G_ij = <row_i, row_j> = sum_c row_i[c] conj(row_j[c]),
// linear in the first argument and conjugate-linear in the second.
HermitianMatrix gram(const ComplexMatrix& f);

enum class Extremal { min, max };

// Full spectrum in ascending order by cyclic Jacobi. Iteration stops once
// the off-diagonal Frobenius mass is below min(tol, 1e-13 * ||H||_F), which
// bounds every eigenvalue error by tol (Weyl).
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, double tol = 1e-13);

double hermitian_extremal_eig(const HermitianMatrix& h, Extremal which, double tol = 1e-13);

// max over i != j of |<col_i, col_j>|; 0 for fewer than two columns.
double column_orthogonality_defect(const ComplexMatrix& a);

std::vector<double> row_square_sums(const ComplexMatrix& a);
std::vector<double> col_square_sums(const ComplexMatrix& a);

// Orthonormal basis (as columns) of the orthogonal complement of range(c)
// in C^{c.rows()}. Rank is decided by Householder QR with column pivoting:
// |R_ii| <= rel_tol * |R_00| counts as zero.
ComplexMatrix orthogonal_complement(const ComplexMatrix& c, double rel_tol = 1e-10);

double squared_norm(std::span<const Complex> v);

}  // namespace paving
