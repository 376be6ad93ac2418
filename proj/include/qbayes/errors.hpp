// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qbayes {

// Shape or subsystem-dimension mismatch between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operand required to be Hermitian is not, beyond tolerance.
struct NotHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operand required to be positive semidefinite has an eigenvalue
// below -tol_psd.
struct NotPsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Kraus set fails the trace-preservation check, or a unitary check fails.
struct InvalidChannelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A partial isometry specification is inconsistent (pairwise inner
// products of inputs and outputs disagree, or dimensions are off).
struct InvalidIsometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A projective effect with (numerically) zero probability was observed,
// or an effect lies outside the support of the output prior.
struct ImpossibleOutcomeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative routine failed to converge within its cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario parameters outside the valid domain (e.g. |alpha| == |beta|).
struct DegenerateParametersError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace qbayes
