// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>

#include "qbayes/linalg.hpp"

namespace qbayes::testing {

inline bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool close(const Complex& a, const Complex& b, double tol = 1e-9) {
    return std::abs(a - b) <= tol;
}

inline bool matrices_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-9) {
    return max_abs_diff(a, b) <= tol;
}

}  // namespace qbayes::testing
