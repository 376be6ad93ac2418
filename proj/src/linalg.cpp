// SPDX-License-Identifier: Apache-2.0

#include "qbayes/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

namespace qbayes {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()) + ")");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("entry count " + std::to_string(data_.size()) +
                             " does not equal rows*cols = " + std::to_string(rows_ * cols_));
    }
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw DimensionError("from_rows: ragged row lengths");
        }
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& ket,
                                   const std::vector<Complex>& bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) {
            m(i, j) = ket[i] * std::conj(bra[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    require_same_shape(*this, other, "add");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + other.data_[k];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    require_same_shape(*this, other, "subtract");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - other.data_[k];
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) {
        throw DimensionError("multiply: inner dimensions " + std::to_string(cols_) + " vs " +
                             std::to_string(other.rows_));
    }
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = data_[i * cols_ + k];
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out.data_[i * other.cols_ + j] += aik * other.data_[k * other.cols_ + j];
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] * scalar;
    return out;
}

ComplexMatrix ComplexMatrix::operator-() const { return *this * Complex{-1.0, 0.0}; }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix not square");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        }
    }
    return true;
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& v) const {
    if (v.size() != cols_) {
        throw DimensionError("apply: vector length " + std::to_string(v.size()) +
                             " vs matrix cols " + std::to_string(cols_));
    }
    std::vector<Complex> out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

std::size_t DimSpec::total() const {
    std::size_t t = 1;
    for (auto d : factor_dims) t *= d;
    return t;
}

std::size_t DimSpec::stride(std::size_t factor) const {
    std::size_t s = 1;
    for (std::size_t f = factor + 1; f < factor_dims.size(); ++f) s *= factor_dims[f];
    return s;
}

std::size_t DimSpec::digit(std::size_t index, std::size_t factor) const {
    return (index / stride(factor)) % factor_dims[factor];
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            const std::set<std::size_t>& keep) {
    if (!m.is_square()) throw DimensionError("partial_trace: matrix not square");
    if (dims.total() != m.rows()) {
        throw DimensionError("partial_trace: dims product " + std::to_string(dims.total()) +
                             " does not match matrix dimension " + std::to_string(m.rows()));
    }
    for (auto f : keep) {
        if (f >= dims.count()) throw DimensionError("partial_trace: kept factor out of range");
    }

    // Kept factors in original order; the rest are traced.
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    DimSpec kept_dims;
    for (auto f : kept) kept_dims.factor_dims.push_back(dims.factor_dims[f]);
    const std::size_t out_dim = kept_dims.total();

    auto kept_index = [&](std::size_t composite) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            idx = idx * dims.factor_dims[kept[k]] + dims.digit(composite, kept[k]);
        }
        return idx;
    };
    auto traced_equal = [&](std::size_t i, std::size_t j) {
        for (std::size_t f = 0; f < dims.count(); ++f) {
            if (keep.count(f)) continue;
            if (dims.digit(i, f) != dims.digit(j, f)) return false;
        }
        return true;
    };

    ComplexMatrix out(out_dim, out_dim);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!traced_equal(i, j)) continue;
            out(kept_index(i), kept_index(j)) += m(i, j);
        }
    }
    return out;
}

ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t d0, std::size_t d1) {
    if (!m.is_square() || m.rows() != d0 * d1) {
        throw DimensionError("swap_factors: matrix dimension does not equal d0*d1");
    }
    ComplexMatrix out(m.rows(), m.cols());
    auto swapped = [&](std::size_t idx) {
        const std::size_t a = idx / d1;
        const std::size_t b = idx % d1;
        return b * d0 + a;
    };
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(swapped(i), swapped(j)) = m(i, j);
        }
    }
    return out;
}

HermEigen eig_hermitian(const ComplexMatrix& m, double herm_tol) {
    if (!m.is_square()) throw DimensionError("eig_hermitian: matrix not square");
    if (!m.is_hermitian(herm_tol)) {
        throw NotHermitianError("eig_hermitian: matrix is not Hermitian within tolerance");
    }
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd em(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    // Symmetrize away the sub-tolerance asymmetry before factorizing.
    em = (em + em.adjoint()).eval() * 0.5;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_hermitian: eigensolver failed");
    }

    HermEigen out;
    out.values.resize(m.rows());
    out.vectors = ComplexMatrix(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        for (Eigen::Index j = 0; j < n; ++j) {
            out.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                solver.eigenvectors()(i, j);
        }
    }
    return out;
}

namespace {

// Rebuild V f(diag) V^dag from a Hermitian eigendecomposition.
ComplexMatrix herm_function(const HermEigen& eig, const std::function<double(double)>& f) {
    const std::size_t n = eig.values.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k);
            if (vik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += fk * vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

void require_psd_spectrum(const std::vector<double>& values, const char* op) {
    for (double v : values) {
        if (v < -tol::kPsd) {
            throw NotPsdError(std::string(op) + ": eigenvalue " + std::to_string(v) +
                              " below -" + std::to_string(tol::kPsd));
        }
    }
}

double pinv_cutoff(const std::vector<double>& values) {
    double lambda_max = 0.0;
    for (double v : values) lambda_max = std::max(lambda_max, v);
    return tol::kPinvRel * lambda_max;
}

}  // namespace

ComplexMatrix herm_sqrt(const ComplexMatrix& m) {
    const HermEigen eig = eig_hermitian(m);
    require_psd_spectrum(eig.values, "herm_sqrt");
    return herm_function(eig, [](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; });
}

ComplexMatrix pinv_psd(const ComplexMatrix& m) {
    const HermEigen eig = eig_hermitian(m);
    require_psd_spectrum(eig.values, "pinv_psd");
    const double cutoff = pinv_cutoff(eig.values);
    return herm_function(eig, [cutoff](double v) { return v > cutoff ? 1.0 / v : 0.0; });
}

ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& m) {
    const HermEigen eig = eig_hermitian(m);
    require_psd_spectrum(eig.values, "pinv_sqrt_psd");
    const double cutoff = pinv_cutoff(eig.values);
    return herm_function(eig, [cutoff](double v) { return v > cutoff ? 1.0 / std::sqrt(v) : 0.0; });
}

}  // namespace qbayes
