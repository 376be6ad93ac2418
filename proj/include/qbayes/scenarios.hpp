// SPDX-License-Identifier: Apache-2.0
//
// The four worked scenarios: a system-apparatus isometry with a
// superposed cause (example1), an entangled pair under a local unitary
// (example2), the Frauchiger-Renner chain (fr) and Hardy's two-qubit
// setup (hardy). Each runs the full argument chain, producing a report
// with paired classical/quantum verdicts per step.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbayes/causal.hpp"

namespace qbayes {

struct LabeledState {
    std::string label;
    PureState state;
};

struct ScenarioStep {
    std::string label;
    InferenceVerdict verdict;
};

struct Headline {
    std::string ccr_conclusion;
    std::string qcr_conclusion;
    bool contradiction_resolved = false;
};

struct ScenarioReport {
    std::string scenario;
    std::map<std::string, double> parameters;
    std::vector<LabeledState> states;
    std::vector<ScenarioStep> steps;
    Headline headline;
    // Which product bases back the classical side (there is no canonical
    // choice; the report records the one used).
    std::string classical_bases;

    const ScenarioStep& step(const std::string& label) const;
    const PureState& state(const std::string& label) const;
};

struct ScenarioOptions {
    double tolerance = tol::kDefault;
    // Reference prior for channel inversion. All scenario evolutions are
    // unitary, so inversion is prior-independent; the choice is recorded.
    std::string prior_label = "uniform";
};

// --- Scenario models -----------------------------------------------------
// The constructed operators and states, exposed so tests can drive them
// directly.

struct Example1Model {
    double r = 0.5;
    ComplexMatrix v;      // completed 4x4 unitary, (S,A) -> (R,B)
    PureState phi_s;      // sqrt(1-r)|0> + sqrt(r)|1>
    PureState initial;    // phi_s (x) |0_A>
    PureState phi_rb;     // evolved composite
    LabeledBasis basis_s, basis_a, basis_r, basis_b;
};
Example1Model build_example1_model(double r);

struct Example2Model {
    ComplexMatrix u_a;    // 2x2 local unitary A -> B
    ComplexMatrix full;   // I_S (x) u_a
    PureState psi_sa;     // entangled initial state
    PureState phi_sb;     // evolved state
    LabeledBasis basis_s, basis_a, basis_b;
};
Example2Model build_example2_model();

struct FrModel {
    ComplexMatrix v11;    // 2x2 relabeling R -> Lbar
    ComplexMatrix v12;    // 4x4 unitary on (Lbar, S)
    ComplexMatrix v2;     // 2x2 unitary S -> L
    PureState psi_r;       // initial coin state
    PureState psi_pre;     // (v11 psi_r) (x) |down>, before v12
    PureState psi_lbar_s;  // after v12
    PureState psi_lbar_l;  // after I (x) v2
    // Single-qubit bases: Lbar in {hbar,tbar} and {fbar,obar}; S in
    // {down,up} and {right,left}; L in {f,o}.
    LabeledBasis basis_ht, basis_fo, basis_du, basis_rl, basis_l;
};
FrModel build_fr_model();

struct HardyModel {
    double alpha = 0.0, beta = 0.0;
    double a = 0.0, b = 0.0, n = 0.0;  // derived constants
    PureState u, v;                    // the rotated single-qubit basis
    ComplexMatrix local_unitary;       // W: {u,v} -> {c,d}, same on both sides
    PureState psi_mn, psi_rn, psi_ms, psi_rs;
    LabeledBasis basis_uv_m, basis_uv_n, basis_cd_r, basis_cd_s;
};
HardyModel build_hardy_model(double alpha, double beta);

// --- Scenario runners ----------------------------------------------------

// Requires 0 < r < 1.
ScenarioReport run_example1(double r, const ScenarioOptions& options = {});
ScenarioReport run_example2(const ScenarioOptions& options = {});
ScenarioReport run_frauchiger_renner(const ScenarioOptions& options = {});
// Requires alpha, beta > 0, alpha^2 + beta^2 = 1, alpha != beta.
ScenarioReport run_hardy(double alpha, double beta, const ScenarioOptions& options = {});

}  // namespace qbayes
