// SPDX-License-Identifier: Apache-2.0
//
// CPTP maps as Kraus sets, unitary channels, canonical completion of
// partially specified isometries, and trace duals.

#pragma once

#include <utility>
#include <vector>

#include "qbayes/states.hpp"

namespace qbayes {

// A linear map rho -> sum_i K_i rho K_i^dag. Channels built through
// channel_from_kraus / channel_from_unitary are trace-preserving; the
// Petz recovery of a channel with rank-deficient output prior is only
// trace-preserving on that support (see trace_preserving_defect).
struct Channel {
    std::vector<ComplexMatrix> kraus;  // each dim_out x dim_in
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
};

// sum_i K_i^dag K_i as a matrix; the max-entry deviation from identity
// measures how far the map is from trace-preserving.
ComplexMatrix kraus_gram(const Channel& channel);
double trace_preserving_defect(const Channel& channel);

// Validates sum K^dag K == I within tol::kDefault.
Channel channel_from_kraus(std::vector<ComplexMatrix> kraus, std::size_t dim_in,
                           std::size_t dim_out);

// Validates U^dag U == I and wraps as a single-Kraus channel.
Channel channel_from_unitary(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = tol::kDefault);
// True when the channel consists of one unitary Kraus operator.
bool is_unitary_channel(const Channel& channel, double tol = tol::kDefault);

// A partially specified isometry: input states map to output states,
// pairwise inner products preserved.
struct PartialIsometrySpec {
    std::vector<std::pair<PureState, PureState>> pairs;  // (input, output)
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
};

// Deterministic unitary completion: Gram-Schmidt of the standard basis
// against the specified input (resp. output) spans, pairing leftover
// input directions with leftover output directions in standard-basis
// order. Requires dim_in == dim_out.
ComplexMatrix complete_isometry(const PartialIsometrySpec& spec);

// sum_i K_i rho K_i^dag on a raw matrix (no density validation).
ComplexMatrix apply_channel_matrix(const Channel& channel, const ComplexMatrix& rho);

// Channel application to a density operator; trace is preserved.
DensityOperator apply_channel(const Channel& channel, const DensityOperator& rho);

// Single-factor dims on the output unless the input was multi-factor
// with the same total dimension, in which case dims carry over.
PureState apply_unitary(const ComplexMatrix& u, const PureState& psi);

// Trace dual {K_i^dag}: Tr[Y L(X)] == Tr[L^dag(Y) X]. Unital rather than
// trace-preserving in general.
Channel adjoint_channel(const Channel& channel);

// Coherent-copy unitary on two d-dimensional factors:
// |i>|j> -> |i>|j + i mod d> (the generalized controlled shift; an ideal
// measurement interaction when the second factor starts in |0>).
ComplexMatrix coherent_copy_unitary(std::size_t d);

}  // namespace qbayes
