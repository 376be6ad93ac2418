// SPDX-License-Identifier: Apache-2.0
//
// Causal conditional states, the star product, the quantum Bayes rule
// and its Petz recovery channel, reference priors, and the classical
// stochastic analog with classical Bayes retrodiction.

#pragma once

#include <string>
#include <vector>

#include "qbayes/channels.hpp"

namespace qbayes {

// Bipartite operator on H_cond (x) H_out encoding a channel's
// input-output relation: factor 0 conditions, factor 1 is the output.
// For channels built from a CPTP map, Tr_out == identity on H_cond.
struct ConditionalState {
    ComplexMatrix matrix;
    std::size_t dim_cond = 0;
    std::size_t dim_out = 0;
};

// Max-entry deviation of the output marginal from I_cond.
double marginal_defect(const ConditionalState& p);

// Reference input state used to invert a channel.
struct Prior {
    enum class Kind { Uniform, SteadyState, Explicit };
    Kind kind = Kind::Uniform;
    DensityOperator state;

    static Prior uniform(std::size_t dim);
    static Prior steady(const Channel& channel);
    static Prior explicit_state(DensityOperator rho);
};

// Column-stochastic transition matrix with basis labels: entry (n, m) is
// the probability of output n given input m.
struct StochasticMatrix {
    std::vector<std::vector<double>> transition;  // [output][input]
    std::vector<std::string> input_labels;
    std::vector<std::string> output_labels;

    double operator()(std::size_t out, std::size_t in) const { return transition[out][in]; }
    std::size_t output_index(const std::string& label) const;
    std::size_t input_index(const std::string& label) const;
};

// An orthonormal labeled basis of a (possibly composite) space.
struct LabeledBasis {
    std::vector<std::string> labels;
    std::vector<PureState> states;

    std::size_t index_of(const std::string& label) const;
    // Index of the basis state closest to `state`; requires overlap^2
    // >= 1 - tol (the state must be a basis element up to phase).
    std::size_t index_of_state(const PureState& state, double tol = tol::kDefault) const;
};

// Product basis of two labeled bases, labels joined with a space.
LabeledBasis product_basis(const LabeledBasis& a, const LabeledBasis& b);

// X * Y = Y^(1/2) X Y^(1/2) for Hermitian PSD Y.
ComplexMatrix star(const ComplexMatrix& x, const ComplexMatrix& y);

// The channel's conditional state sum_{m,n} |n><m| (x) L(|m><n|) over the
// standard basis of the input space.
ConditionalState causal_conditional_state(const Channel& channel);

// Tr_cond[P * (rho (x) I_out)]: pushes a state on the conditioning factor
// through the conditional state. Equals apply_channel for the generating
// channel.
DensityOperator propagate(const ConditionalState& p, const DensityOperator& rho);

// Quantum Bayes rule: the retrodictive conditional state
// P * (rho_in (x) pinv(rho_out)) with rho_out = channel(prior), returned
// with the output system as the conditioning factor. Propagating rho_out
// through the result reconstructs the prior.
ConditionalState bayes_invert(const ConditionalState& p, const Prior& prior,
                              const Channel& channel);

// Petz recovery channel: Kraus set {rho_in^(1/2) K_i^dag rho_out^(-1/2)}.
// Trace-preserving on the support of rho_out; applying it to
// channel(prior) returns the prior.
Channel petz_channel(const Channel& channel, const Prior& prior);

// Fixed point of the channel by plain iteration from I/d (successive
// iterates within tol::kFixedPoint, capped). Throws ConvergenceError with
// advice to supply an explicit prior when iteration does not settle.
DensityOperator steady_state(const Channel& channel);

// Classical stochastic analog of a unitary in the given bases:
// P(n|m) = |<out_n|U|in_m>|^2. Bases must be orthonormal and complete.
StochasticMatrix classical_transition(const ComplexMatrix& u, const LabeledBasis& basis_in,
                                      const LabeledBasis& basis_out);

// Bayes retrodiction: posterior(m) proportional to T(outcome|m) prior(m).
// A zero-probability outcome throws ImpossibleOutcomeError.
std::vector<double> classical_bayes(const StochasticMatrix& t,
                                    const std::vector<double>& prior_probs,
                                    const std::string& outcome);

// Total-probability forward prediction sum_m T(outcome|m) prior(m).
double classical_predict(const StochasticMatrix& t, const std::vector<double>& prior_probs,
                         const std::string& outcome);

// Born distribution of a state over a labeled orthonormal basis.
std::vector<double> born_distribution(const PureState& psi, const LabeledBasis& basis);

}  // namespace qbayes
