// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrices plus the structural operations the rest of the
// library is built from: Kronecker products, partial traces, Hermitian
// PSD square roots and support-restricted pseudo-inverses.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <vector>

#include "qbayes/errors.hpp"
#include "qbayes/tolerances.hpp"

namespace qbayes {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage. Values are immutable in spirit:
// all library operations return fresh matrices.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    // Row-major rows, e.g. ComplexMatrix::from_rows({{1, 0}, {0, 1}}).
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    // |ket><bra| outer product.
    static ComplexMatrix outer(const std::vector<Complex>& ket, const std::vector<Complex>& bra);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(Complex scalar) const;
    ComplexMatrix operator-() const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    // Largest entry magnitude.
    double max_abs() const;
    // ||M - M^dag||_max <= tol.
    bool is_hermitian(double tol = tol::kDefault) const;

    // Matrix-vector product.
    std::vector<Complex> apply(const std::vector<Complex>& v) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) { return m * scalar; }

// Max-entry absolute difference; the library's standard comparison metric.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Ordered subsystem dimensions, leftmost factor first (slowest-varying
// index). Composite basis index = sum_i m_i * (product of later dims).
struct DimSpec {
    std::vector<std::size_t> factor_dims;

    DimSpec() = default;
    DimSpec(std::initializer_list<std::size_t> dims) : factor_dims(dims) {}
    explicit DimSpec(std::vector<std::size_t> dims) : factor_dims(std::move(dims)) {}

    std::size_t total() const;
    std::size_t count() const { return factor_dims.size(); }

    // Stride of a factor: product of dimensions to its right.
    std::size_t stride(std::size_t factor) const;
    // Digit of a composite index at a factor position.
    std::size_t digit(std::size_t index, std::size_t factor) const;

    bool operator==(const DimSpec& other) const { return factor_dims == other.factor_dims; }
};

// Kronecker product with a as the leftmost (slowest-varying) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced matrix over the kept factors (original relative order).
// Preserves the trace: Tr(result) == Tr(m).
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            const std::set<std::size_t>& keep);

// Exchange the two factors of a bipartite operator on (d0 x d1).
ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t d0, std::size_t d1);

// Eigendecomposition of a Hermitian matrix: m = V diag(values) V^dag,
// eigenvalues ascending, columns of `vectors` are the eigenvectors.
struct HermEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};
HermEigen eig_hermitian(const ComplexMatrix& m, double herm_tol = tol::kDefault);

// Hermitian PSD square root via eigendecomposition. Eigenvalues within
// tol::kPsd of zero are clipped; anything below -tol::kPsd throws.
ComplexMatrix herm_sqrt(const ComplexMatrix& m);

// Inverse on the support: eigenvalues <= tol::kPinvRel * lambda_max are
// excluded. Satisfies m * pinv(m) * m == m.
ComplexMatrix pinv_psd(const ComplexMatrix& m);

// Support-restricted inverse square root, pinv_psd followed by herm_sqrt
// in one eigendecomposition.
ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& m);

}  // namespace qbayes
