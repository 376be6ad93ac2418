// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qbayes/checks.hpp"
#include "qbayes/scenarios.hpp"

using namespace qbayes;
using qbayes::testing::close;
using qbayes::testing::matrices_close;

namespace {

PureState q2(Complex a0, Complex a1) { return make_pure({a0, a1}, DimSpec{{2}}); }

double raw_norm_squared(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

}  // namespace

TEST_CASE("example1 report carries the headline numbers") {
    const ScenarioReport report = run_example1(0.5);

    const auto& infer = report.step("infer").verdict;
    CHECK(close(infer.ccr_probability, 1.0));
    CHECK(close(infer.effect_probability, 0.25));
    CHECK(close(infer.qcr_match_fidelity, 0.5));
    CHECK(infer.deterministic_ccr);
    CHECK_FALSE(infer.deterministic_qcr);

    const auto& relation = report.step("relation-1B").verdict;
    CHECK(close(relation.ccr_probability, 1.0));
    CHECK(close(relation.effect_probability, 0.5));
    CHECK(close(relation.qcr_match_fidelity, 0.5));
    CHECK_FALSE(relation.deterministic_qcr);

    CHECK(report.headline.contradiction_resolved);
}

TEST_CASE("example1 classical certainty is independent of r") {
    for (double r : {0.1, 0.3, 0.7, 0.9}) {
        const ScenarioReport report = run_example1(r);
        CHECK(close(report.step("infer").verdict.ccr_probability, 1.0));
        CHECK(close(report.step("infer").verdict.effect_probability, r / 2.0));
        CHECK(close(report.step("infer").verdict.qcr_match_fidelity, 0.5));
    }
}

TEST_CASE("example1 states match the two expansions of the evolved composite") {
    const double r = 0.5;
    const ScenarioReport report = run_example1(r);
    const PureState expected = make_pure(
        {std::sqrt(1 - r), 0.0, std::sqrt(r / 2.0), std::sqrt(r / 2.0)}, DimSpec{{2, 2}});
    CHECK(close(fidelity_pure(report.state("phi_RB"), expected), 1.0));

    // Conditioning on |0_B> regroups the amplitudes.
    const PureState branch = report.state("phi_RB_given_0B");
    const PureState regrouped = make_pure(
        {std::sqrt(1 - r), 0.0, std::sqrt(r / 2.0), 0.0}, DimSpec{{2, 2}});
    CHECK(close(fidelity_pure(branch, regrouped), 1.0));
    CHECK(close(fidelity_pure(report.state("phi_RB_given_1B"),
                              make_pure({0, 0, 0, 1}, DimSpec{{2, 2}})),
                1.0));
}

TEST_CASE("example1 rejects out-of-range weights") {
    CHECK_THROWS_AS(run_example1(0.0), DegenerateParametersError);
    CHECK_THROWS_AS(run_example1(1.0), DegenerateParametersError);
    CHECK_THROWS_AS(run_example1(-0.3), DegenerateParametersError);
}

TEST_CASE("example2 report steps") {
    const ScenarioReport report = run_example2();

    const auto& retro = report.step("retrodict").verdict;
    CHECK(close(retro.ccr_probability, 1.0));
    CHECK(close(retro.effect_probability, 1.0 / 6.0));
    CHECK(close(retro.qcr_match_fidelity, 0.5));
    CHECK(retro.deterministic_ccr);
    CHECK_FALSE(retro.deterministic_qcr);

    const auto& predict = report.step("predict").verdict;
    CHECK(close(predict.ccr_probability, 1.0 / 3.0));
    CHECK(close(predict.qcr_match_fidelity, 0.0, 1e-12));
    CHECK(close(predict.effect_probability, 0.0, 1e-12));

    CHECK(close(report.state("phi_SB").amplitude(3), Complex{0.0, 0.0}, 1e-12));
    CHECK(report.headline.contradiction_resolved);
}

TEST_CASE("fr intermediate states match both printed expansions") {
    const FrModel m = build_fr_model();
    const double s3 = 1.0 / std::sqrt(3.0);

    // First form: (|hbar down> + |tbar down> + |tbar up>)/sqrt(3).
    const PureState form1 = make_pure({s3, 0.0, s3, s3}, DimSpec{{2, 2}});
    CHECK(max_abs_diff(ComplexMatrix(4, 1, m.psi_lbar_s.amplitudes()),
                       ComplexMatrix(4, 1, form1.amplitudes())) <= 1e-9);

    // Second form built in the observer basis.
    const double s2 = 1.0 / std::sqrt(2.0);
    const PureState fbar = q2(s2, s2);
    const PureState obar = q2(s2, -s2);
    const PureState down = q2(1, 0);
    const PureState up = q2(0, 1);
    std::vector<Complex> amps(4, Complex{0.0, 0.0});
    auto accumulate = [&](double coeff, const PureState& l, const PureState& s) {
        const PureState term = tensor_pure(l, s);
        for (std::size_t i = 0; i < 4; ++i) amps[i] += coeff * term.amplitude(i);
    };
    accumulate(std::sqrt(2.0 / 3.0), fbar, down);
    accumulate(1.0 / std::sqrt(6.0), fbar, up);
    accumulate(-1.0 / std::sqrt(6.0), obar, up);
    CHECK(max_abs_diff(ComplexMatrix(4, 1, m.psi_lbar_s.amplitudes()),
                       ComplexMatrix(4, 1, amps)) <= 1e-9);

    // Final state: (|hbar>(f+o) + 2|tbar f>)/sqrt(6).
    const double s6 = 1.0 / std::sqrt(6.0);
    const PureState final_expected = make_pure({s6, s6, 2 * s6, 0.0}, DimSpec{{2, 2}});
    CHECK(max_abs_diff(ComplexMatrix(4, 1, m.psi_lbar_l.amplitudes()),
                       ComplexMatrix(4, 1, final_expected.amplitudes())) <= 1e-9);
}

TEST_CASE("fr argument chain verdicts") {
    const ScenarioReport report = run_frauchiger_renner();

    const auto& a1 = report.step("A1").verdict;
    CHECK(close(a1.ccr_probability, 1.0));
    CHECK(close(a1.effect_probability, 1.0 / 6.0));
    CHECK(a1.deterministic_ccr);
    CHECK(a1.deterministic_qcr);

    const auto& a2 = report.step("A2").verdict;
    CHECK(close(a2.ccr_probability, 1.0));
    CHECK(close(a2.effect_probability, 1.0 / 3.0));
    CHECK(a2.deterministic_qcr);

    const auto& a3 = report.step("A3").verdict;
    CHECK(close(a3.ccr_probability, 1.0));
    CHECK(close(a3.qcr_match_fidelity, 0.5));
    CHECK(close(a3.effect_probability, 1.0 / 3.0));
    CHECK(a3.deterministic_ccr);
    CHECK_FALSE(a3.deterministic_qcr);

    CHECK(report.step("A4").verdict.deterministic_ccr);
    CHECK(report.step("A4").verdict.deterministic_qcr);
    CHECK(report.step("A5").verdict.deterministic_ccr);
    CHECK(report.step("A5").verdict.deterministic_qcr);

    const auto& a6 = report.step("A6").verdict;
    CHECK(close(a6.ccr_probability, 1.0 / 12.0));
    CHECK(close(a6.qcr_match_fidelity, 1.0 / 12.0));
    CHECK(close(a6.effect_probability, 1.0 / 12.0));

    CHECK(close(report.step("resolution").verdict.qcr_match_fidelity, 0.5));
    CHECK(report.headline.contradiction_resolved);
}

TEST_CASE("fr collapse chain multiplies out to the direct joint probability") {
    const FrModel m = build_fr_model();
    const double s2 = 1.0 / std::sqrt(2.0);
    const PureState obar = q2(s2, -s2);
    const PureState o_ket = q2(0, 1);

    const auto collapse = measure_project(m.psi_lbar_s, {0}, obar);
    CHECK(close(collapse.probability, 1.0 / 6.0));

    const PureState evolved =
        apply_unitary(tensor(ComplexMatrix::identity(2), m.v2), collapse.post);
    const double p_o = born_probability(evolved, {1}, o_ket);
    CHECK(close(p_o, 0.5));
    CHECK(close(collapse.probability * p_o, 1.0 / 12.0));

    // Direct value from the final state.
    CHECK(close(born_probability(m.psi_lbar_l, {0, 1}, tensor_pure(obar, o_ket)),
                1.0 / 12.0));
}

TEST_CASE("fr corrected cause maps to the reachable outcome") {
    const FrModel m = build_fr_model();
    const double s2 = 1.0 / std::sqrt(2.0);
    const PureState tbar = q2(0, 1);
    const PureState up = q2(0, 1);
    const PureState left = q2(s2, -s2);

    // The inverse image of |tbar up> under the second-stage unitary.
    const PureState image = apply_unitary(m.v12.adjoint(), tensor_pure(tbar, up));
    CHECK(close(fidelity_pure(image, tensor_pure(tbar, left)), 1.0));
    CHECK(close(fidelity_pure(image, tensor_pure(tbar, q2(1, 0))), 0.5));

    // Pushed through the last unitary it reaches |tbar o)>.
    const PureState forward =
        apply_unitary(tensor(ComplexMatrix::identity(2), m.v2), tensor_pure(tbar, left));
    CHECK(close(fidelity_pure(forward, tensor_pure(tbar, q2(0, 1))), 1.0));
}

TEST_CASE("hardy model constants and state expansion") {
    const HardyModel m = build_hardy_model(0.8, 0.6);
    CHECK(close(m.a * m.a, 0.48 / 0.52));
    CHECK(close(m.b * m.b, 0.04 / 0.52));
    CHECK(close(m.n, 0.52 / 0.2));
    CHECK(is_unitary(m.local_unitary));

    // Expansion coefficients of the initial state in the rotated basis.
    const PureState uu = tensor_pure(m.u, m.u);
    const PureState uv = tensor_pure(m.u, m.v);
    const PureState vu = tensor_pure(m.v, m.u);
    const PureState vv = tensor_pure(m.v, m.v);
    CHECK(close(uu.inner(m.psi_mn), Complex{0.0, 0.0}, 1e-12));
    CHECK(close(uv.inner(m.psi_mn), Complex{-std::sqrt(0.48), 0.0}));
    CHECK(close(vu.inner(m.psi_mn), Complex{-std::sqrt(0.48), 0.0}));
    CHECK(close(vv.inner(m.psi_mn), Complex{-0.2, 0.0}));
}

TEST_CASE("hardy evolved states carry the stated weights") {
    const HardyModel m = build_hardy_model(0.8, 0.6);
    const PureState d = q2(0, 1);

    const double na2b = m.n * m.a * m.a * m.b;
    const double na2b2 = na2b * m.b;
    CHECK(close(fidelity_pure(tensor_pure(d, m.u), m.psi_rn), na2b * na2b));
    CHECK(close(fidelity_pure(tensor_pure(m.u, d), m.psi_ms), na2b * na2b));
    CHECK(close(fidelity_pure(tensor_pure(d, d), m.psi_rs), na2b2 * na2b2));

    // No weight on |d_R v_N> or |v_M d_S|: the chain's hidden assumption.
    CHECK(close(fidelity_pure(tensor_pure(d, m.v), m.psi_rn), 0.0, 1e-12));
    CHECK(close(fidelity_pure(tensor_pure(m.v, d), m.psi_ms), 0.0, 1e-12));

    // Chain product: the corrected link strength |b|^2 times the weight of
    // the intermediate effect reproduces the directly computed joint weight.
    const double b2 = m.b * m.b;
    CHECK(close(fidelity_pure(tensor_pure(d, m.u), m.psi_rn) * b2,
                fidelity_pure(tensor_pure(d, d), m.psi_rs)));
}

TEST_CASE("hardy report steps") {
    const ScenarioReport report = run_hardy(0.8, 0.6);
    const double b2 = 0.04 / 0.52;

    CHECK(close(report.step("H0").verdict.effect_probability, 0.0, 1e-12));
    CHECK(close(report.step("H1").verdict.effect_probability, 144.0 / 4225.0));

    const auto& h2 = report.step("H2").verdict;
    CHECK(close(h2.ccr_probability, 1.0));
    CHECK(close(h2.qcr_match_fidelity, b2));
    CHECK(h2.deterministic_ccr);
    CHECK_FALSE(h2.deterministic_qcr);

    const auto& h3 = report.step("H3").verdict;
    CHECK(close(h3.ccr_probability, 1.0));
    CHECK(close(h3.qcr_match_fidelity, b2));

    const auto& h4 = report.step("H4").verdict;
    CHECK(close(h4.ccr_probability, 1.0));
    CHECK(close(h4.qcr_match_fidelity, b2));

    const auto& h5 = report.step("H5").verdict;
    CHECK(close(h5.ccr_probability, 1.0));
    CHECK(close(h5.qcr_match_fidelity, b2));

    const auto& resolution = report.step("resolution").verdict;
    CHECK(close(resolution.ccr_probability, 1.0));
    CHECK(close(resolution.qcr_match_fidelity, b2 * b2));
    CHECK(report.headline.contradiction_resolved);
}

TEST_CASE("hardy pullback of the full final state is the initial state") {
    const HardyModel m = build_hardy_model(0.8, 0.6);
    const PureState back = apply_unitary(
        tensor(m.local_unitary, m.local_unitary).adjoint(), m.psi_rs);
    CHECK(close(fidelity_pure(back, m.psi_mn), 1.0));
}

TEST_CASE("hardy orderings commute and states stay normalized") {
    Rng rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        const double theta = 0.15 + 0.55 * rng.uniform();  // keep away from alpha == beta
        const double alpha = std::cos(theta);
        const double beta = std::sin(theta);
        const HardyModel m = build_hardy_model(alpha, beta);

        const ComplexMatrix eye = ComplexMatrix::identity(2);
        const ComplexMatrix first = tensor(m.local_unitary, eye);
        const ComplexMatrix second = tensor(eye, m.local_unitary);
        const auto route_a = second.apply(first.apply(m.psi_mn.amplitudes()));
        const auto route_b = first.apply(second.apply(m.psi_mn.amplitudes()));
        CHECK(max_abs_diff(ComplexMatrix(4, 1, route_a), ComplexMatrix(4, 1, route_b)) <=
              1e-9);

        CHECK(close(raw_norm_squared(route_a), 1.0));
        CHECK(close(raw_norm_squared(first.apply(m.psi_mn.amplitudes())), 1.0));
        CHECK(close(raw_norm_squared(second.apply(m.psi_mn.amplitudes())), 1.0));
    }
}

TEST_CASE("hardy rejects degenerate parameters") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(build_hardy_model(s, s), DegenerateParametersError);
    CHECK_THROWS_AS(build_hardy_model(0.8, 0.7), DegenerateParametersError);
    CHECK_THROWS_AS(build_hardy_model(-0.8, 0.6), DegenerateParametersError);
    CHECK_THROWS_AS(build_hardy_model(0.8, 0.0), DegenerateParametersError);
}
