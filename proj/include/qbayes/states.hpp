// SPDX-License-Identifier: Apache-2.0
//
// Pure and mixed states with subsystem metadata, Born-rule probabilities
// and measurement-induced collapse.

#pragma once

#include <set>
#include <utility>
#include <vector>

#include "qbayes/linalg.hpp"

namespace qbayes {

// Normalized state vector with subsystem dimensions.
class PureState {
  public:
    PureState() = default;
    // Normalizes; throws on a (numerically) zero vector.
    PureState(std::vector<Complex> amplitudes, DimSpec dims);

    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const DimSpec& dims() const { return dims_; }
    std::size_t dim() const { return amplitudes_.size(); }

    Complex amplitude(std::size_t basis_index) const { return amplitudes_[basis_index]; }
    Complex inner(const PureState& other) const;

  private:
    std::vector<Complex> amplitudes_;
    DimSpec dims_;
};

// Unit-trace PSD Hermitian matrix with subsystem dimensions.
class DensityOperator {
  public:
    DensityOperator() = default;
    // Validates Hermitian / PSD / unit trace.
    DensityOperator(ComplexMatrix matrix, DimSpec dims);

    const ComplexMatrix& matrix() const { return matrix_; }
    const DimSpec& dims() const { return dims_; }
    std::size_t dim() const { return matrix_.rows(); }

  private:
    ComplexMatrix matrix_;
    DimSpec dims_;
};

// Normalized copy of the amplitude vector; zero vector is an error.
PureState make_pure(const std::vector<Complex>& amplitudes, const DimSpec& dims);

// Composite a (x) b with concatenated factor dims, a leftmost.
PureState tensor_pure(const PureState& a, const PureState& b);

// |psi><psi| with dims carried over.
DensityOperator density_of(const PureState& psi);

// |<phi|chi>|^2.
double fidelity_pure(const PureState& phi, const PureState& chi);

// <phi|rho|phi>: Uhlmann fidelity between a pure and a mixed state.
double fidelity_pure_mixed(const PureState& phi, const DensityOperator& rho);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// 0.5 * trace norm of rho - sigma.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Rank-1 projective measurement of `effect` on the targeted factors.
// Returns the Born probability and the renormalized collapsed composite.
// Probability below tol::kImpossible throws ImpossibleOutcomeError.
struct MeasurementOutcome {
    double probability;
    PureState post;
};
MeasurementOutcome measure_project(const PureState& psi,
                                   const std::set<std::size_t>& target_factors,
                                   const PureState& effect);

// Born probability of the effect without collapsing (0 allowed).
double born_probability(const PureState& psi, const std::set<std::size_t>& target_factors,
                        const PureState& effect);

}  // namespace qbayes
