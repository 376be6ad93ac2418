// SPDX-License-Identifier: Apache-2.0

#include "qbayes/checks.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qbayes/causal.hpp"

namespace qbayes {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

constexpr std::size_t kMaxReportedFailures = 8;

struct Recorder {
    CheckSummary& summary;
    std::string check;

    void expect(bool ok, double residual) {
        ++summary.assertions;
        if (ok) return;
        if (summary.failures.size() < kMaxReportedFailures) {
            summary.failures.push_back({check, "residual " + fmt(residual)});
        } else {
            summary.failures.back().detail += " (+more)";
        }
    }
};

}  // namespace

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex{rng.gauss(), rng.gauss()};
    }
    return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
    const ComplexMatrix g = random_matrix(rng, dim, dim);
    return (g + g.adjoint()) * Complex{0.5, 0.0};
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    // Gram-Schmidt on Gaussian columns; almost surely full rank.
    const ComplexMatrix g = random_matrix(rng, dim, dim);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex overlap{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) overlap += std::conj(cols[k][i]) * cols[j][i];
                for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= overlap * cols[k][i];
            }
        }
        double norm = 0.0;
        for (const auto& v : cols[j]) norm += std::norm(v);
        norm = std::sqrt(norm);
        for (auto& v : cols[j]) v /= norm;
    }
    ComplexMatrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
    }
    return u;
}

Channel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out, std::size_t n_kraus) {
    std::vector<ComplexMatrix> raw;
    raw.reserve(n_kraus);
    ComplexMatrix gram = ComplexMatrix::zero(dim_in, dim_in);
    for (std::size_t k = 0; k < n_kraus; ++k) {
        raw.push_back(random_matrix(rng, dim_out, dim_in));
        gram = gram + raw.back().adjoint() * raw.back();
    }
    // Normalize so the Kraus set is exactly trace-preserving.
    const ComplexMatrix correction = pinv_sqrt_psd(gram);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(n_kraus);
    for (const auto& r : raw) kraus.push_back(r * correction);
    return channel_from_kraus(std::move(kraus), dim_in, dim_out);
}

DensityOperator random_density(Rng& rng, std::size_t dim) {
    const ComplexMatrix g = random_matrix(rng, dim, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho = rho * Complex{1.0 / rho.trace().real(), 0.0};
    return DensityOperator(std::move(rho), DimSpec{{dim}});
}

PureState random_pure(Rng& rng, std::size_t dim) {
    std::vector<Complex> amps(dim);
    for (auto& a : amps) a = Complex{rng.gauss(), rng.gauss()};
    return PureState(std::move(amps), DimSpec{{dim}});
}

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& v : p) {
        v = rng.uniform() + 0.05;  // bounded away from zero
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

namespace {

// Recovery channel applied to the propagated prior returns the prior.
void check_petz_recovery(Rng& rng, const CheckOptions& options, CheckSummary& summary) {
    Recorder rec{summary, "petz-recovery"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            const Channel channel = random_channel(rng, dim, dim, 1 + rng.index(dim));
            const Prior prior = Prior::explicit_state(random_density(rng, dim));
            const DensityOperator forward = apply_channel(channel, prior.state);
            const DensityOperator recovered =
                apply_channel(petz_channel(channel, prior), forward);
            const double residual = trace_distance(recovered, prior.state);
            rec.expect(residual <= 1e-8, residual);
        }
    }
}

// Inverting a unitary channel gives the adjoint regardless of the prior.
void check_unitary_prior_independence(Rng& rng, const CheckOptions& options,
                                      CheckSummary& summary) {
    Recorder rec{summary, "unitary-prior-independence"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            const ComplexMatrix u = random_unitary(rng, dim);
            const Channel channel = channel_from_unitary(u);
            const ComplexMatrix expected = u.adjoint();
            for (int p = 0; p < 3; ++p) {
                const Prior prior = Prior::explicit_state(random_density(rng, dim));
                const Channel recovery = petz_channel(channel, prior);
                // Allow a global phase between the Kraus operator and u^dag.
                Complex phase{1.0, 0.0};
                double best = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        if (std::abs(expected(i, j)) > best) {
                            best = std::abs(expected(i, j));
                            phase = recovery.kraus[0](i, j) / expected(i, j);
                        }
                    }
                }
                phase /= std::abs(phase);
                const double residual =
                    max_abs_diff(recovery.kraus[0] * std::conj(phase), expected);
                rec.expect(residual <= 1e-8, residual);
            }
        }
    }
}

// Tr[Y L(X)] == Tr[L^dag(Y) X] for random Hermitian X, Y.
void check_trace_duality(Rng& rng, const CheckOptions& options, CheckSummary& summary) {
    Recorder rec{summary, "trace-duality"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            const Channel channel = random_channel(rng, dim, dim, 1 + rng.index(dim));
            const Channel dual = adjoint_channel(channel);
            const ComplexMatrix x = random_hermitian(rng, dim);
            const ComplexMatrix y = random_hermitian(rng, dim);
            const Complex lhs = (y * apply_channel_matrix(channel, x)).trace();
            const Complex rhs = (apply_channel_matrix(dual, y) * x).trace();
            const double residual = std::abs(lhs - rhs);
            rec.expect(residual <= 1e-9, residual);
        }
    }
}

// Pushing a state through the conditional state equals applying the
// channel, and the output marginal of the conditional state is identity.
void check_conditional_consistency(Rng& rng, const CheckOptions& options,
                                   CheckSummary& summary) {
    Recorder rec{summary, "conditional-consistency"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            const Channel channel = random_channel(rng, dim, dim, 1 + rng.index(dim));
            const ConditionalState p = causal_conditional_state(channel);
            const double marg = marginal_defect(p);
            rec.expect(marg <= 1e-9, marg);

            const DensityOperator rho = random_density(rng, dim);
            const double residual =
                max_abs_diff(propagate(p, rho).matrix(), apply_channel(channel, rho).matrix());
            rec.expect(residual <= 1e-9, residual);
        }
    }
}

// Inverting the inversion returns the original conditional state.
void check_double_inversion(Rng& rng, const CheckOptions& options, CheckSummary& summary) {
    Recorder rec{summary, "double-inversion"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            const Channel channel = random_channel(rng, dim, dim, 1 + rng.index(dim));
            const Prior prior = Prior::explicit_state(random_density(rng, dim));
            const ConditionalState forward = causal_conditional_state(channel);
            const ConditionalState retro = bayes_invert(forward, prior, channel);

            const DensityOperator rho_out = apply_channel(channel, prior.state);
            const Channel recovery = petz_channel(channel, prior);
            const ConditionalState back =
                bayes_invert(retro, Prior::explicit_state(rho_out), recovery);
            const double residual = max_abs_diff(back.matrix, forward.matrix);
            rec.expect(residual <= 1e-8, residual);
        }
    }
}

// On classical channels the retrodicted conditional state carries the
// classical posteriors on its diagonal.
void check_classical_reduction(Rng& rng, const CheckOptions& options, CheckSummary& summary) {
    Recorder rec{summary, "classical-reduction"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            // Column-stochastic transition probabilities.
            std::vector<std::vector<double>> columns;
            for (std::size_t m = 0; m < dim; ++m) columns.push_back(random_distribution(rng, dim));

            StochasticMatrix transition;
            for (std::size_t i = 0; i < dim; ++i) {
                transition.input_labels.push_back("in" + std::to_string(i));
                transition.output_labels.push_back("out" + std::to_string(i));
            }
            transition.transition.assign(dim, std::vector<double>(dim, 0.0));
            for (std::size_t n = 0; n < dim; ++n) {
                for (std::size_t m = 0; m < dim; ++m) transition.transition[n][m] = columns[m][n];
            }

            // Kraus set {sqrt(T(n|m)) |n><m|} realizes the classical map.
            std::vector<ComplexMatrix> kraus;
            for (std::size_t n = 0; n < dim; ++n) {
                for (std::size_t m = 0; m < dim; ++m) {
                    ComplexMatrix k = ComplexMatrix::zero(dim, dim);
                    k(n, m) = std::sqrt(transition.transition[n][m]);
                    kraus.push_back(std::move(k));
                }
            }
            const Channel channel = channel_from_kraus(std::move(kraus), dim, dim);

            const auto prior_probs = random_distribution(rng, dim);
            ComplexMatrix prior_matrix = ComplexMatrix::zero(dim, dim);
            for (std::size_t m = 0; m < dim; ++m) prior_matrix(m, m) = prior_probs[m];
            const Prior prior =
                Prior::explicit_state(DensityOperator(prior_matrix, DimSpec{{dim}}));

            const ConditionalState retro =
                bayes_invert(causal_conditional_state(channel), prior, channel);
            for (std::size_t n = 0; n < dim; ++n) {
                const auto posterior =
                    classical_bayes(transition, prior_probs, transition.output_labels[n]);
                for (std::size_t m = 0; m < dim; ++m) {
                    const Complex entry = retro.matrix(n * dim + m, n * dim + m);
                    const double residual = std::abs(entry - Complex{posterior[m], 0.0});
                    rec.expect(residual <= 1e-9, residual);
                }
            }
        }
    }
}

// On permutation channels the classical and quantum verdicts coincide
// for every basis-state query.
void check_permutation_agreement(Rng& rng, const CheckOptions& options, CheckSummary& summary) {
    Recorder rec{summary, "permutation-agreement"};
    for (auto dim : options.dims) {
        for (int t = 0; t < options.trials; ++t) {
            std::vector<std::size_t> perm(dim);
            for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
            for (std::size_t i = dim - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
            ComplexMatrix u = ComplexMatrix::zero(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) u(perm[i], i) = 1.0;

            LabeledBasis basis;
            for (std::size_t i = 0; i < dim; ++i) {
                basis.labels.push_back(std::to_string(i));
                std::vector<Complex> amps(dim, Complex{0.0, 0.0});
                amps[i] = 1.0;
                basis.states.emplace_back(std::move(amps), DimSpec{{dim}});
            }

            const auto diag = random_distribution(rng, dim);
            ComplexMatrix prior_matrix = ComplexMatrix::zero(dim, dim);
            for (std::size_t m = 0; m < dim; ++m) prior_matrix(m, m) = diag[m];

            CausalQuery query;
            query.channel = channel_from_unitary(u);
            query.prior = Prior::explicit_state(DensityOperator(prior_matrix, DimSpec{{dim}}));
            query.basis_in = basis;
            query.basis_out = basis;
            for (std::size_t m = 0; m < dim; ++m) {
                for (std::size_t n = 0; n < dim; ++n) {
                    query.cause = basis.states[m];
                    query.effect = basis.states[n];
                    query.direction = CausalQuery::Direction::Infer;
                    const InferenceVerdict verdict = compare_ccr_qcr(query);
                    const double residual =
                        std::abs(verdict.ccr_probability - verdict.qcr_match_fidelity);
                    rec.expect(residual <= 1e-9, residual);
                    rec.expect(verdict.deterministic_ccr == verdict.deterministic_qcr,
                               residual);
                }
            }
        }
    }
}

}  // namespace

CheckSummary run_property_checks(const CheckOptions& options) {
    CheckSummary summary;
    Rng rng(options.seed);
    check_petz_recovery(rng, options, summary);
    check_unitary_prior_independence(rng, options, summary);
    check_trace_duality(rng, options, summary);
    check_conditional_consistency(rng, options, summary);
    check_double_inversion(rng, options, summary);
    check_classical_reduction(rng, options, summary);
    check_permutation_agreement(rng, options, summary);
    return summary;
}

}  // namespace qbayes
