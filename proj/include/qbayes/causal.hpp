// SPDX-License-Identifier: Apache-2.0
//
// Deterministic quantum causal relations and paired classical/quantum
// verdicts for (cause, effect) queries.

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qbayes/conditional.hpp"

namespace qbayes {

// Outcome of a single deterministic-relation check.
struct CheckResult {
    bool holds = false;
    double trace_distance = 1.0;  // between image and target
    double fidelity = 0.0;        // Uhlmann fidelity of the same pair
    DensityOperator image;
    std::string note;
};

// Whether the cause pushed through the channel's conditional state equals
// the effect (trace distance <= tol).
CheckResult check_prediction(const Channel& channel, const DensityOperator& cause,
                             const DensityOperator& effect, double tol = tol::kDefault);

// Whether the Petz image of the observed effect equals the cause. Effects
// with no weight on the support of channel(prior) are impossible; partial
// support loss is renormalized and noted.
CheckResult check_inference(const Channel& channel, const Prior& prior,
                            const DensityOperator& effect, const DensityOperator& cause,
                            double tol = tol::kDefault);

// Deterministic relation between a cause in the system factor and an
// effect in the apparatus factor of a global evolution (factor 0 system,
// factor 1 apparatus; the composite starts as cause (x) ready).
// Forward: the evolved composite is a product whose apparatus factor is
// the effect. Backward: the inverse image of the collapsed composite is
// cause (x) ready. Both must hold.
struct MeasurementRelationResult {
    bool holds = false;
    bool forward_holds = false;
    bool backward_holds = false;
    double forward_probability = 0.0;  // Born weight of the effect after evolution
    double backward_fidelity = 0.0;    // pullback overlap^2 with cause (x) ready
    std::optional<PureState> pullback; // populated on the unitary pure path
    std::string note;
};
MeasurementRelationResult check_measurement_relation(const Channel& channel,
                                                     const PureState& apparatus_ready,
                                                     const PureState& cause_system,
                                                     const PureState& effect_apparatus,
                                                     double tol = tol::kDefault);

// One classical-vs-quantum causal question.
struct CausalQuery {
    enum class Direction { Predict, Infer };

    Channel channel;
    // Reference prior: its Born diagonal in basis_in is the classical
    // prior; the quantum side uses it only for non-unitary recovery.
    Prior prior;
    PureState cause;
    PureState effect;
    Direction direction = Direction::Infer;
    LabeledBasis basis_in;
    LabeledBasis basis_out;
    double tolerance = tol::kDefault;
};

// Paired verdict for one (cause, effect) query.
struct InferenceVerdict {
    double ccr_probability = 0.0;  // classical posterior / prediction mass
    std::variant<PureState, DensityOperator> qcr_state;  // image under the map
    double qcr_match_fidelity = 0.0;
    bool deterministic_ccr = false;
    bool deterministic_qcr = false;
    // Born weight of the effect in the channel image of the prior.
    double effect_probability = 0.0;
    std::string narrative;
};

// Runs the classical side (transition matrix + Bayes/total probability in
// the query's bases) and the quantum side (inverse or forward image plus
// the deterministic-relation check) and packages both.
InferenceVerdict compare_ccr_qcr(const CausalQuery& query);

}  // namespace qbayes
