#include "paving/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paving/errors.hpp"

namespace paving {

namespace {

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidArgument("matrix entry count " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
    }
    for (const auto& z : data_) {
        if (!finite(z)) throw InvalidArgument("matrix entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("matrix difference: shapes differ");
    }
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw InvalidArgument("vstack: column counts differ");
    std::vector<Complex> entries = top.entries();
    entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
    return ComplexMatrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

ComplexMatrix select_rows(const ComplexMatrix& a, std::span<const std::size_t> rows) {
    ComplexMatrix c(rows.size(), a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= a.rows()) throw InvalidArgument("select_rows: row index out of range");
        std::copy(a.row(rows[i]).begin(), a.row(rows[i]).end(), c.row(i).begin());
    }
    return c;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> index) {
    if (!a.is_square()) throw InvalidArgument("principal submatrix of a non-square matrix");
    ComplexMatrix c(index.size(), index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] >= a.rows()) throw InvalidArgument("principal submatrix: index out of range");
        for (std::size_t j = 0; j < index.size(); ++j) c(i, j) = a(index[i], index[j]);
    }
    return c;
}

double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("max_abs_diff: shapes differ");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

double hermitian_asymmetry(const ComplexMatrix& m) {
    if (!m.is_square()) throw InvalidArgument("Hermitian check on a non-square matrix");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    const double asym = hermitian_asymmetry(m_);
    if (asym > kAsymmetryTolerance) {
        throw InvalidArgument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    }
}

HermitianMatrix HermitianMatrix::principal(std::span<const std::size_t> index) const {
    return HermitianMatrix(principal_submatrix(m_, index));
}

ComplexMatrix dft_matrix(std::size_t n) {
    if (n == 0) throw InvalidArgument("dft_matrix: n must be at least 1");
    ComplexMatrix u(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce the exponent mod n before forming the angle.
            const std::size_t e = (j * k) % n;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) /
                                 static_cast<double>(n);
            u(j, k) = std::polar(scale, angle);
        }
    }
    return u;
}

ComplexMatrix scale_columns(const ComplexMatrix& a, std::span<const double> weights) {
    if (weights.size() != a.cols()) {
        throw InvalidArgument("scale_columns: " + std::to_string(weights.size()) +
                              " weights for " + std::to_string(a.cols()) + " columns");
    }
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidArgument("scale_columns: weights must be finite and nonnegative");
        }
    }
    ComplexMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = weights[j] * a(i, j);
    return b;
}

HermitianMatrix gram(const ComplexMatrix& f) {
    const std::size_t m = f.rows();
    ComplexMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto ri = f.row(i);
        for (std::size_t j = i; j < m; ++j) {
            const auto rj = f.row(j);
            Complex s{};
            for (std::size_t c = 0; c < f.cols(); ++c) s += ri[c] * std::conj(rj[c]);
            if (i == j) s = {s.real(), 0.0};
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    }
    return HermitianMatrix(std::move(g));
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("eigenvalue tolerance must be positive");
    const std::size_t n = h.dim();
    ComplexMatrix a = h.matrix();
    for (std::size_t i = 0; i < n; ++i) a(i, i) = {a(i, i).real(), 0.0};

    const double threshold = std::min(tol, 1e-13 * frobenius_norm(a));
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    double off = off_norm();
    for (int sweep = 0; sweep < kMaxSweeps && off > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]; H <- G^H H G.
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = aip * gpp + aiq * gqp;
                    a(i, q) = aip * gpq + aiq * gqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
                    a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = {app - t * mag, 0.0};
                a(q, q) = {aqq + t * mag, 0.0};
            }
        }
        off = off_norm();
    }
    if (off > tol) {
        throw InternalInconsistency("Jacobi iteration did not converge (off-diagonal " +
                                    std::to_string(off) + ")");
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

double hermitian_extremal_eig(const HermitianMatrix& h, Extremal which, double tol) {
    if (h.dim() == 0) throw InvalidArgument("extremal eigenvalue of an empty matrix");
    const auto values = hermitian_eigenvalues(h, tol);
    return which == Extremal::min ? values.front() : values.back();
}

double column_orthogonality_defect(const ComplexMatrix& a) {
    double worst = 0.0;
    for (std::size_t p = 0; p < a.cols(); ++p) {
        for (std::size_t q = p + 1; q < a.cols(); ++q) {
            Complex s{};
            for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, p) * std::conj(a(i, q));
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

std::vector<double> row_square_sums(const ComplexMatrix& a) {
    std::vector<double> sums(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) sums[i] = squared_norm(a.row(i));
    return sums;
}

std::vector<double> col_square_sums(const ComplexMatrix& a) {
    std::vector<double> sums(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) sums[j] += std::norm(a(i, j));
    return sums;
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& c, double rel_tol) {
    const std::size_t m = c.rows();
    const std::size_t p = c.cols();
    ComplexMatrix work = c;
    std::vector<std::vector<Complex>> reflectors;  // v_k acting on rows k..m-1

    auto column_tail_norm = [&](std::size_t col, std::size_t from) {
        double s = 0.0;
        for (std::size_t i = from; i < m; ++i) s += std::norm(work(i, col));
        return std::sqrt(s);
    };

    std::size_t rank = 0;
    double reference = 0.0;
    const std::size_t steps = std::min(m, p);
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pivot = k;
        double best = -1.0;
        for (std::size_t col = k; col < p; ++col) {
            const double nrm = column_tail_norm(col, k);
            if (nrm > best) {
                best = nrm;
                pivot = col;
            }
        }
        if (k == 0) reference = best;
        if (best <= rel_tol * reference || best == 0.0) break;
        if (pivot != k) {
            for (std::size_t i = 0; i < m; ++i) std::swap(work(i, k), work(i, pivot));
        }

        std::vector<Complex> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = work(i, k);
        const Complex x0 = v[0];
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
        const Complex alpha = -phase * best;
        v[0] -= alpha;
        const double vn = std::sqrt(squared_norm(v));
        for (auto& z : v) z /= vn;

        for (std::size_t col = k; col < p; ++col) {
            Complex dot{};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * work(i, col);
            for (std::size_t i = k; i < m; ++i) work(i, col) -= 2.0 * v[i - k] * dot;
        }
        reflectors.push_back(std::move(v));
        ++rank;
    }

    // Columns rank..m-1 of Q = H_0 H_1 ... H_{rank-1}.
    ComplexMatrix basis(m, m - rank);
    for (std::size_t col = rank; col < m; ++col) {
        std::vector<Complex> x(m);
        x[col] = 1.0;
        for (std::size_t k = rank; k-- > 0;) {
            const auto& v = reflectors[k];
            Complex dot{};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * x[i];
            for (std::size_t i = k; i < m; ++i) x[i] -= 2.0 * v[i - k] * dot;
        }
        for (std::size_t i = 0; i < m; ++i) basis(i, col - rank) = x[i];
    }
    return basis;
}

}  // namespace paving
