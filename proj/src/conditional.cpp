// SPDX-License-Identifier: Apache-2.0

#include "qbayes/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qbayes {

double marginal_defect(const ConditionalState& p) {
    const ComplexMatrix marginal =
        partial_trace(p.matrix, DimSpec{{p.dim_cond, p.dim_out}}, {0});
    return max_abs_diff(marginal, ComplexMatrix::identity(p.dim_cond));
}

Prior Prior::uniform(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim), 0.0};
    return Prior{Kind::Uniform, DensityOperator(std::move(m), DimSpec{{dim}})};
}

Prior Prior::steady(const Channel& channel) {
    return Prior{Kind::SteadyState, steady_state(channel)};
}

Prior Prior::explicit_state(DensityOperator rho) {
    return Prior{Kind::Explicit, std::move(rho)};
}

std::size_t StochasticMatrix::output_index(const std::string& label) const {
    const auto it = std::find(output_labels.begin(), output_labels.end(), label);
    if (it == output_labels.end()) {
        throw DimensionError("StochasticMatrix: unknown output label '" + label + "'");
    }
    return static_cast<std::size_t>(it - output_labels.begin());
}

std::size_t StochasticMatrix::input_index(const std::string& label) const {
    const auto it = std::find(input_labels.begin(), input_labels.end(), label);
    if (it == input_labels.end()) {
        throw DimensionError("StochasticMatrix: unknown input label '" + label + "'");
    }
    return static_cast<std::size_t>(it - input_labels.begin());
}

std::size_t LabeledBasis::index_of(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw DimensionError("LabeledBasis: unknown label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

std::size_t LabeledBasis::index_of_state(const PureState& state, double tol) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (fidelity_pure(states[i], state) >= 1.0 - tol) return i;
    }
    throw DimensionError("LabeledBasis: state is not a basis element up to phase");
}

LabeledBasis product_basis(const LabeledBasis& a, const LabeledBasis& b) {
    LabeledBasis out;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        for (std::size_t j = 0; j < b.states.size(); ++j) {
            out.labels.push_back(a.labels[i] + " " + b.labels[j]);
            out.states.push_back(tensor_pure(a.states[i], b.states[j]));
        }
    }
    return out;
}

ComplexMatrix star(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || !x.is_square()) {
        throw DimensionError("star: operands must be square and equal-sized");
    }
    const ComplexMatrix root = herm_sqrt(y);
    return root * x * root;
}

ConditionalState causal_conditional_state(const Channel& channel) {
    const std::size_t din = channel.dim_in;
    const std::size_t dout = channel.dim_out;
    ComplexMatrix p = ComplexMatrix::zero(din * dout, din * dout);
    for (std::size_t m = 0; m < din; ++m) {
        for (std::size_t n = 0; n < din; ++n) {
            ComplexMatrix basis_op = ComplexMatrix::zero(din, din);
            basis_op(m, n) = 1.0;
            const ComplexMatrix image = apply_channel_matrix(channel, basis_op);
            // |n><m| (x) L(|m><n|)
            for (std::size_t r = 0; r < dout; ++r) {
                for (std::size_t c = 0; c < dout; ++c) {
                    p(n * dout + r, m * dout + c) += image(r, c);
                }
            }
        }
    }
    return ConditionalState{std::move(p), din, dout};
}

DensityOperator propagate(const ConditionalState& p, const DensityOperator& rho) {
    if (rho.dim() != p.dim_cond) {
        throw DimensionError("propagate: state dimension does not match conditioning factor");
    }
    // Lift rho to the conditioning factor and star-combine; (A (x) B)^(1/2)
    // factorizes, so the square root only touches rho.
    const ComplexMatrix lift = tensor(herm_sqrt(rho.matrix()), ComplexMatrix::identity(p.dim_out));
    const ComplexMatrix combined = lift * p.matrix * lift;
    ComplexMatrix out = partial_trace(combined, DimSpec{{p.dim_cond, p.dim_out}}, {1});
    return DensityOperator(std::move(out), DimSpec{{p.dim_out}});
}

ConditionalState bayes_invert(const ConditionalState& p, const Prior& prior,
                              const Channel& channel) {
    if (prior.state.dim() != p.dim_cond || channel.dim_in != p.dim_cond ||
        channel.dim_out != p.dim_out) {
        throw DimensionError("bayes_invert: conditional state, prior and channel disagree");
    }
    const ComplexMatrix rho_out = apply_channel_matrix(channel, prior.state.matrix());
    const ComplexMatrix lift =
        tensor(herm_sqrt(prior.state.matrix()), pinv_sqrt_psd(rho_out));
    const ComplexMatrix retro = lift * p.matrix * lift;
    // Reorder so the observed (output) system becomes the conditioning
    // factor of the returned conditional state.
    return ConditionalState{swap_factors(retro, p.dim_cond, p.dim_out), p.dim_out, p.dim_cond};
}

Channel petz_channel(const Channel& channel, const Prior& prior) {
    if (prior.state.dim() != channel.dim_in) {
        throw DimensionError("petz_channel: prior dimension does not match channel input");
    }
    const ComplexMatrix rho_out = apply_channel_matrix(channel, prior.state.matrix());
    const ComplexMatrix root_in = herm_sqrt(prior.state.matrix());
    const ComplexMatrix inv_root_out = pinv_sqrt_psd(rho_out);

    Channel recovery;
    recovery.dim_in = channel.dim_out;
    recovery.dim_out = channel.dim_in;
    for (const auto& k : channel.kraus) {
        recovery.kraus.push_back(root_in * k.adjoint() * inv_root_out);
    }
    return recovery;
}

DensityOperator steady_state(const Channel& channel) {
    if (channel.dim_in != channel.dim_out) {
        throw DimensionError("steady_state: channel must preserve the space");
    }
    const std::size_t d = channel.dim_in;
    ComplexMatrix rho =
        ComplexMatrix::identity(d) * Complex{1.0 / static_cast<double>(d), 0.0};
    for (int iter = 0; iter < tol::kFixedPointMaxIters; ++iter) {
        ComplexMatrix next = apply_channel_matrix(channel, rho);
        if (max_abs_diff(next, rho) < tol::kFixedPoint) {
            return DensityOperator(std::move(next), DimSpec{{d}});
        }
        rho = std::move(next);
    }
    throw ConvergenceError(
        "steady_state: fixed-point iteration did not converge; supply an explicit prior");
}

StochasticMatrix classical_transition(const ComplexMatrix& u, const LabeledBasis& basis_in,
                                      const LabeledBasis& basis_out) {
    if (basis_in.states.size() != u.cols() || basis_out.states.size() != u.rows()) {
        throw DimensionError("classical_transition: bases do not span the unitary's spaces");
    }
    auto check_orthonormal = [](const LabeledBasis& basis, const char* which) {
        for (std::size_t i = 0; i < basis.states.size(); ++i) {
            for (std::size_t j = 0; j < basis.states.size(); ++j) {
                const Complex g = basis.states[i].inner(basis.states[j]);
                const Complex expect = i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                if (std::abs(g - expect) > tol::kDefault) {
                    throw DimensionError(std::string("classical_transition: ") + which +
                                         " basis is not orthonormal");
                }
            }
        }
    };
    check_orthonormal(basis_in, "input");
    check_orthonormal(basis_out, "output");

    StochasticMatrix t;
    t.input_labels = basis_in.labels;
    t.output_labels = basis_out.labels;
    t.transition.assign(basis_out.states.size(),
                        std::vector<double>(basis_in.states.size(), 0.0));
    for (std::size_t m = 0; m < basis_in.states.size(); ++m) {
        const auto image = u.apply(basis_in.states[m].amplitudes());
        for (std::size_t n = 0; n < basis_out.states.size(); ++n) {
            Complex overlap{0.0, 0.0};
            const auto& out_amp = basis_out.states[n].amplitudes();
            for (std::size_t i = 0; i < image.size(); ++i) {
                overlap += std::conj(out_amp[i]) * image[i];
            }
            t.transition[n][m] = std::norm(overlap);
        }
    }
    return t;
}

std::vector<double> classical_bayes(const StochasticMatrix& t,
                                    const std::vector<double>& prior_probs,
                                    const std::string& outcome) {
    if (prior_probs.size() != t.input_labels.size()) {
        throw DimensionError("classical_bayes: prior length does not match input labels");
    }
    const std::size_t n = t.output_index(outcome);
    double total = 0.0;
    for (std::size_t m = 0; m < prior_probs.size(); ++m) total += t(n, m) * prior_probs[m];
    if (total < tol::kImpossible) {
        throw ImpossibleOutcomeError("classical_bayes: outcome '" + outcome +
                                     "' has zero probability under the prior");
    }
    std::vector<double> posterior(prior_probs.size(), 0.0);
    for (std::size_t m = 0; m < prior_probs.size(); ++m) {
        posterior[m] = t(n, m) * prior_probs[m] / total;
    }
    return posterior;
}

double classical_predict(const StochasticMatrix& t, const std::vector<double>& prior_probs,
                         const std::string& outcome) {
    if (prior_probs.size() != t.input_labels.size()) {
        throw DimensionError("classical_predict: prior length does not match input labels");
    }
    const std::size_t n = t.output_index(outcome);
    double total = 0.0;
    for (std::size_t m = 0; m < prior_probs.size(); ++m) total += t(n, m) * prior_probs[m];
    return total;
}

std::vector<double> born_distribution(const PureState& psi, const LabeledBasis& basis) {
    std::vector<double> probs;
    probs.reserve(basis.states.size());
    for (const auto& b : basis.states) probs.push_back(fidelity_pure(b, psi));
    return probs;
}

}  // namespace qbayes
