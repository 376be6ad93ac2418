// SPDX-License-Identifier: Apache-2.0

#include "qbayes/causal.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace qbayes {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

DimSpec input_dims(const Channel& channel, const DensityOperator& reference) {
    if (reference.dim() == channel.dim_in) return reference.dims();
    return DimSpec{std::vector<std::size_t>{channel.dim_in}};
}

}  // namespace

CheckResult check_prediction(const Channel& channel, const DensityOperator& cause,
                             const DensityOperator& effect, double tol) {
    if (cause.dim() != channel.dim_in || effect.dim() != channel.dim_out) {
        throw DimensionError("check_prediction: cause/effect dimensions do not match channel");
    }
    const ConditionalState p = causal_conditional_state(channel);
    DensityOperator image = propagate(p, cause);
    CheckResult result;
    result.trace_distance = trace_distance(image, effect);
    result.fidelity = fidelity(image, effect);
    result.holds = result.trace_distance <= tol;
    result.image = std::move(image);
    return result;
}

CheckResult check_inference(const Channel& channel, const Prior& prior,
                            const DensityOperator& effect, const DensityOperator& cause,
                            double tol) {
    if (effect.dim() != channel.dim_out || cause.dim() != channel.dim_in) {
        throw DimensionError("check_inference: cause/effect dimensions do not match channel");
    }
    const Channel recovery = petz_channel(channel, prior);
    const ComplexMatrix raw = apply_channel_matrix(recovery, effect.matrix());
    const double support_weight = raw.trace().real();
    if (support_weight < tol::kImpossible) {
        throw ImpossibleOutcomeError(
            "check_inference: effect lies outside the support of the channel output");
    }
    DensityOperator image(raw * Complex{1.0 / support_weight, 0.0},
                          input_dims(channel, cause));
    CheckResult result;
    result.trace_distance = trace_distance(image, cause);
    result.fidelity = fidelity(image, cause);
    result.holds = result.trace_distance <= tol;
    result.image = std::move(image);
    if (support_weight < 1.0 - tol) {
        result.note = "effect weight " + fmt(support_weight) +
                      " on the channel-output support; image renormalized";
    }
    return result;
}

namespace {

MeasurementRelationResult measurement_relation_unitary(const ComplexMatrix& u,
                                                       const PureState& ready,
                                                       const PureState& cause,
                                                       const PureState& effect, double tol) {
    const PureState composite = tensor_pure(cause, ready);
    const PureState evolved = apply_unitary(u, composite);

    MeasurementRelationResult result;
    result.forward_probability = born_probability(evolved, {1}, effect);
    result.forward_holds = result.forward_probability >= 1.0 - tol;
    if (result.forward_probability < tol::kImpossible) {
        throw ImpossibleOutcomeError(
            "check_measurement_relation: effect has zero Born probability");
    }
    const MeasurementOutcome collapsed = measure_project(evolved, {1}, effect);
    const PureState pullback = apply_unitary(u.adjoint(), collapsed.post);
    result.backward_fidelity = fidelity_pure(pullback, composite);
    result.backward_holds = result.backward_fidelity >= 1.0 - tol;
    result.pullback = pullback;
    result.holds = result.forward_holds && result.backward_holds;
    if (!result.forward_holds) {
        result.note = "cause reaches the effect with probability " +
                      fmt(result.forward_probability) + ", not certainty";
    } else if (!result.backward_holds) {
        result.note = "inverse image of the collapsed composite differs from cause (x) ready";
    }
    return result;
}

MeasurementRelationResult measurement_relation_general(const Channel& channel,
                                                       const PureState& ready,
                                                       const PureState& cause,
                                                       const PureState& effect, double tol) {
    const std::size_t d_sys = cause.dim();
    const std::size_t d_app = ready.dim();
    const DensityOperator composite = density_of(tensor_pure(cause, ready));
    const DensityOperator evolved = apply_channel(channel, composite);
    const DimSpec dims{{d_sys, d_app}};

    MeasurementRelationResult result;
    const ComplexMatrix apparatus = partial_trace(evolved.matrix(), dims, {1});
    const auto image_vec = apparatus.apply(effect.amplitudes());
    Complex weight{0.0, 0.0};
    for (std::size_t i = 0; i < image_vec.size(); ++i) {
        weight += std::conj(effect.amplitudes()[i]) * image_vec[i];
    }
    result.forward_probability = weight.real();
    result.forward_holds = result.forward_probability >= 1.0 - tol;
    if (result.forward_probability < tol::kImpossible) {
        throw ImpossibleOutcomeError(
            "check_measurement_relation: effect has zero Born probability");
    }

    const ComplexMatrix projector =
        tensor(ComplexMatrix::identity(d_sys),
               ComplexMatrix::outer(effect.amplitudes(), effect.amplitudes()));
    const ComplexMatrix collapsed =
        projector * evolved.matrix() * projector *
        Complex{1.0 / result.forward_probability, 0.0};

    const ComplexMatrix ready_proj = ComplexMatrix::outer(ready.amplitudes(), ready.amplitudes());
    const ComplexMatrix prior_matrix =
        tensor(ComplexMatrix::identity(d_sys) * Complex{1.0 / static_cast<double>(d_sys), 0.0},
               ready_proj);
    const Prior prior = Prior::explicit_state(DensityOperator(prior_matrix, dims));
    const Channel recovery = petz_channel(channel, prior);
    const ComplexMatrix raw = apply_channel_matrix(recovery, collapsed);
    const double support_weight = raw.trace().real();
    if (support_weight < tol::kImpossible) {
        throw ImpossibleOutcomeError(
            "check_measurement_relation: collapsed effect outside the recovery support");
    }
    const DensityOperator pullback(raw * Complex{1.0 / support_weight, 0.0}, dims);
    const DensityOperator target = density_of(tensor_pure(cause, ready));
    result.backward_fidelity = fidelity(pullback, target);
    result.backward_holds = trace_distance(pullback, target) <= tol;
    result.holds = result.forward_holds && result.backward_holds;
    if (!result.forward_holds) {
        result.note = "cause reaches the effect with probability " +
                      fmt(result.forward_probability) + ", not certainty";
    }
    return result;
}

}  // namespace

MeasurementRelationResult check_measurement_relation(const Channel& channel,
                                                     const PureState& apparatus_ready,
                                                     const PureState& cause_system,
                                                     const PureState& effect_apparatus,
                                                     double tol) {
    const std::size_t d_sys = cause_system.dim();
    const std::size_t d_app = apparatus_ready.dim();
    if (channel.dim_in != d_sys * d_app || channel.dim_out != channel.dim_in) {
        throw DimensionError(
            "check_measurement_relation: channel must act on the system-apparatus composite");
    }
    if (effect_apparatus.dim() != d_app) {
        throw DimensionError("check_measurement_relation: effect must live on the apparatus");
    }
    if (is_unitary_channel(channel)) {
        return measurement_relation_unitary(channel.kraus.front(), apparatus_ready, cause_system,
                                            effect_apparatus, tol);
    }
    return measurement_relation_general(channel, apparatus_ready, cause_system, effect_apparatus,
                                        tol);
}

InferenceVerdict compare_ccr_qcr(const CausalQuery& query) {
    if (!is_unitary_channel(query.channel)) {
        throw InvalidChannelError(
            "compare_ccr_qcr: the classical analog is derived from a unitary; wrap the "
            "evolution as a unitary channel");
    }
    const ComplexMatrix& u = query.channel.kraus.front();
    const StochasticMatrix t = classical_transition(u, query.basis_in, query.basis_out);

    std::vector<double> prior_probs;
    prior_probs.reserve(query.basis_in.states.size());
    for (const auto& b : query.basis_in.states) {
        prior_probs.push_back(fidelity_pure_mixed(b, query.prior.state));
    }

    const std::size_t effect_idx = query.basis_out.index_of_state(query.effect, query.tolerance);
    const std::string& effect_label = query.basis_out.labels[effect_idx];

    InferenceVerdict verdict;
    verdict.effect_probability =
        fidelity_pure_mixed(query.effect, apply_channel(query.channel, query.prior.state));

    if (query.direction == CausalQuery::Direction::Infer) {
        const auto posterior = classical_bayes(t, prior_probs, effect_label);
        const std::size_t cause_idx = query.basis_in.index_of_state(query.cause, query.tolerance);
        verdict.ccr_probability = posterior[cause_idx];

        const PureState image = apply_unitary(u.adjoint(), query.effect);
        verdict.qcr_match_fidelity = fidelity_pure(image, query.cause);
        verdict.qcr_state = image;
        verdict.narrative = "classical posterior " + fmt(verdict.ccr_probability) + " on '" +
                            query.basis_in.labels[cause_idx] + "' given '" + effect_label +
                            "'; inverse image overlap^2 with the cause " +
                            fmt(verdict.qcr_match_fidelity);
    } else {
        verdict.ccr_probability = classical_predict(t, prior_probs, effect_label);

        const PureState image = apply_unitary(u, query.cause);
        verdict.qcr_match_fidelity = fidelity_pure(image, query.effect);
        verdict.qcr_state = image;
        verdict.narrative = "classical prediction " + fmt(verdict.ccr_probability) + " for '" +
                            effect_label + "'; forward image overlap^2 with the effect " +
                            fmt(verdict.qcr_match_fidelity);
    }

    verdict.deterministic_ccr = verdict.ccr_probability >= 1.0 - query.tolerance;
    verdict.deterministic_qcr = verdict.qcr_match_fidelity >= 1.0 - query.tolerance;
    return verdict;
}

}  // namespace qbayes
