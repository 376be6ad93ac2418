// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qbayes/checks.hpp"
#include "qbayes/conditional.hpp"
#include "qbayes/scenarios.hpp"

using namespace qbayes;
using qbayes::testing::close;
using qbayes::testing::matrices_close;

namespace {

PureState q2(Complex a0, Complex a1) { return make_pure({a0, a1}, DimSpec{{2}}); }

LabeledBasis computational_qubit(const std::string& zero, const std::string& one) {
    LabeledBasis b;
    b.labels = {zero, one};
    b.states = {q2(1, 0), q2(0, 1)};
    return b;
}

Channel reset_channel() {
    return channel_from_kraus({ComplexMatrix::from_rows({{1, 0}, {0, 0}}),
                               ComplexMatrix::from_rows({{0, 1}, {0, 0}})},
                              2, 2);
}

Channel depolarizing(double p) {
    const double s0 = std::sqrt(1.0 - 3.0 * p / 4.0);
    const double s1 = std::sqrt(p / 4.0);
    const Complex i{0.0, 1.0};
    return channel_from_kraus(
        {ComplexMatrix::from_rows({{s0, 0}, {0, s0}}),
         ComplexMatrix::from_rows({{0, s1}, {s1, 0}}),
         ComplexMatrix::from_rows({{0, -i * s1}, {i * s1, 0}}),
         ComplexMatrix::from_rows({{s1, 0}, {0, -s1}})},
        2, 2);
}

}  // namespace

TEST_CASE("star product basics") {
    Rng rng(41);
    const ComplexMatrix x = random_hermitian(rng, 3);
    CHECK(matrices_close(star(x, ComplexMatrix::identity(3)), x, 1e-12));

    const ComplexMatrix y = random_density(rng, 3).matrix();
    CHECK(matrices_close(star(ComplexMatrix::identity(3), y), y, 1e-9));

    // Commuting diagonal case reduces to the plain product.
    ComplexMatrix rho = ComplexMatrix::zero(3, 3);
    ComplexMatrix sigma = ComplexMatrix::zero(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        rho(i, i) = rng.uniform();
        sigma(i, i) = rng.uniform();
    }
    CHECK(matrices_close(star(rho, sigma), rho * sigma, 1e-10));
}

TEST_CASE("star trace identity") {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix x = random_hermitian(rng, 4);
        const ComplexMatrix y = random_density(rng, 4).matrix();
        CHECK(close((star(x, y)).trace(), (x * y).trace(), 1e-9));
    }
}

TEST_CASE("conditional state of the identity channel is the swap operator") {
    const ConditionalState p =
        causal_conditional_state(channel_from_unitary(ComplexMatrix::identity(2)));
    const ComplexMatrix swap = ComplexMatrix::from_rows(
        {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    CHECK(matrices_close(p.matrix, swap));

    // Equals twice the input-side transpose of the Bell projector.
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix bell =
        ComplexMatrix::outer({s, 0.0, 0.0, s}, {s, 0.0, 0.0, s});
    ComplexMatrix partial_transpose(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d)
                    partial_transpose(a * 2 + b, c * 2 + d) = bell(c * 2 + b, a * 2 + d);
    CHECK(matrices_close(p.matrix, partial_transpose * Complex{2.0, 0.0}));
}

TEST_CASE("conditional state of a unitary matches the explicit summation") {
    Rng rng(43);
    const ComplexMatrix u = random_unitary(rng, 3);
    const ConditionalState p = causal_conditional_state(channel_from_unitary(u));

    ComplexMatrix oracle = ComplexMatrix::zero(9, 9);
    for (std::size_t m = 0; m < 3; ++m) {
        for (std::size_t n = 0; n < 3; ++n) {
            ComplexMatrix basis_op = ComplexMatrix::zero(3, 3);
            basis_op(m, n) = 1.0;
            const ComplexMatrix image = u * basis_op * u.adjoint();
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    oracle(n * 3 + r, m * 3 + c) += image(r, c);
        }
    }
    CHECK(matrices_close(p.matrix, oracle, 1e-12));
    CHECK(marginal_defect(p) <= 1e-9);
}

TEST_CASE("conditional state of the reset channel") {
    const ConditionalState p = causal_conditional_state(reset_channel());
    CHECK(matrices_close(p.matrix,
                         tensor(ComplexMatrix::identity(2),
                                ComplexMatrix::from_rows({{1, 0}, {0, 0}}))));
}

TEST_CASE("propagate pushes states through the conditional state") {
    Rng rng(44);
    const DensityOperator rho = random_density(rng, 2);
    const ConditionalState ident =
        causal_conditional_state(channel_from_unitary(ComplexMatrix::identity(2)));
    CHECK(matrices_close(propagate(ident, rho).matrix(), rho.matrix(), 1e-9));

    for (int trial = 0; trial < 10; ++trial) {
        const Channel channel = random_channel(rng, 3, 3, 2);
        const DensityOperator input = random_density(rng, 3);
        CHECK(matrices_close(propagate(causal_conditional_state(channel), input).matrix(),
                             apply_channel(channel, input).matrix(), 1e-9));
    }
}

TEST_CASE("propagate reproduces the evolved composite of the first example") {
    const Example1Model m = build_example1_model(0.5);
    const ConditionalState p = causal_conditional_state(channel_from_unitary(m.v));
    CHECK(matrices_close(propagate(p, density_of(m.initial)).matrix(),
                         density_of(m.phi_rb).matrix(), 1e-9));
}

TEST_CASE("bayes_invert of the identity channel mirrors the forward state") {
    const Channel ident = channel_from_unitary(ComplexMatrix::identity(2));
    const ConditionalState forward = causal_conditional_state(ident);
    const ConditionalState retro = bayes_invert(forward, Prior::uniform(2), ident);
    CHECK(matrices_close(retro.matrix, swap_factors(forward.matrix, 2, 2), 1e-9));
}

TEST_CASE("bayes_invert of a unitary is prior independent and matches the adjoint") {
    Rng rng(45);
    const ComplexMatrix u = random_unitary(rng, 2);
    const Channel channel = channel_from_unitary(u);
    const ConditionalState forward = causal_conditional_state(channel);
    const ConditionalState expected =
        causal_conditional_state(channel_from_unitary(u.adjoint()));

    for (int p = 0; p < 3; ++p) {
        const Prior prior = p == 0 ? Prior::uniform(2)
                                   : Prior::explicit_state(random_density(rng, 2));
        const ConditionalState retro = bayes_invert(forward, prior, channel);
        CHECK(matrices_close(retro.matrix, expected.matrix, 1e-8));
        // As operators laid out on (input, output) the retrodictive and
        // forward conditional states of a unitary coincide.
        CHECK(matrices_close(swap_factors(retro.matrix, 2, 2), forward.matrix, 1e-8));
    }
}

TEST_CASE("bayes_invert equals the conditional state of the recovery channel") {
    Rng rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        const Channel channel = random_channel(rng, 2, 2, 2);
        const Prior prior = Prior::uniform(2);
        const ConditionalState retro =
            bayes_invert(causal_conditional_state(channel), prior, channel);
        const ConditionalState oracle =
            causal_conditional_state(petz_channel(channel, prior));
        CHECK(matrices_close(retro.matrix, oracle.matrix, 1e-9));
    }
}

TEST_CASE("bayes_invert reconstructs the prior from the propagated state") {
    Rng rng(47);
    const Channel channel = random_channel(rng, 3, 3, 2);
    const Prior prior = Prior::explicit_state(random_density(rng, 3));
    const DensityOperator rho_out = apply_channel(channel, prior.state);
    const ConditionalState retro =
        bayes_invert(causal_conditional_state(channel), prior, channel);
    CHECK(matrices_close(propagate(retro, rho_out).matrix(), prior.state.matrix(), 1e-9));
}

TEST_CASE("petz_channel special cases") {
    SUBCASE("identity recovers identity") {
        const Channel ident = channel_from_unitary(ComplexMatrix::identity(2));
        const Channel recovery = petz_channel(ident, Prior::uniform(2));
        CHECK(matrices_close(recovery.kraus[0], ComplexMatrix::identity(2), 1e-10));
    }

    SUBCASE("unitary recovery is the adjoint for any prior") {
        Rng rng(48);
        const ComplexMatrix u = random_unitary(rng, 3);
        const Channel channel = channel_from_unitary(u);
        for (int p = 0; p < 3; ++p) {
            const Prior prior = Prior::explicit_state(random_density(rng, 3));
            const Channel recovery = petz_channel(channel, prior);
            CHECK(matrices_close(recovery.kraus[0], u.adjoint(), 1e-8));
        }
    }

    SUBCASE("depolarizing at p = 1/2 against the formula") {
        const Channel channel = depolarizing(0.5);
        const Prior prior = Prior::uniform(2);
        const Channel recovery = petz_channel(channel, prior);

        // Direct evaluation: with both marginals maximally mixed the
        // recovery Kraus operators are plain adjoints.
        const ComplexMatrix root_in = herm_sqrt(prior.state.matrix());
        const ComplexMatrix inv_root_out =
            pinv_sqrt_psd(apply_channel_matrix(channel, prior.state.matrix()));
        for (std::size_t k = 0; k < channel.kraus.size(); ++k) {
            const ComplexMatrix oracle = root_in * channel.kraus[k].adjoint() * inv_root_out;
            CHECK(matrices_close(recovery.kraus[k], oracle, 1e-12));
            CHECK(matrices_close(recovery.kraus[k], channel.kraus[k].adjoint(), 1e-9));
        }

        const DensityOperator recovered =
            apply_channel(recovery, apply_channel(channel, prior.state));
        CHECK(matrices_close(recovered.matrix(), prior.state.matrix(), 1e-9));
    }

    SUBCASE("recovery is trace preserving on the output support") {
        const Channel recovery = petz_channel(reset_channel(), Prior::uniform(2));
        // Output support is |0><0| only.
        CHECK(matrices_close(kraus_gram(recovery),
                             ComplexMatrix::from_rows({{1, 0}, {0, 0}}), 1e-9));
    }
}

TEST_CASE("steady_state finds channel fixed points") {
    Rng rng(49);
    const Channel unitary = channel_from_unitary(random_unitary(rng, 3));
    CHECK(matrices_close(steady_state(unitary).matrix(),
                         ComplexMatrix::identity(3) * Complex{1.0 / 3.0, 0.0}, 1e-9));

    CHECK(matrices_close(steady_state(reset_channel()).matrix(),
                         ComplexMatrix::from_rows({{1, 0}, {0, 0}}), 1e-9));

    for (int trial = 0; trial < 5; ++trial) {
        const Channel channel = random_channel(rng, 2, 2, 2);
        const DensityOperator gamma = steady_state(channel);
        CHECK(matrices_close(apply_channel(channel, gamma).matrix(), gamma.matrix(), 1e-9));
    }
}

TEST_CASE("steady_state reports non-convergence instead of a bogus prior") {
    // A barely-damped bit flip mixes at rate 1e-4 per step; the iterate
    // gap is still far above the fixed-point tolerance at the cap.
    const double gamma = 1e-4;
    const Channel leaky_flip = channel_from_kraus(
        {ComplexMatrix::from_rows({{0, 0}, {1, 0}}),
         ComplexMatrix::from_rows({{0, std::sqrt(1.0 - gamma)}, {0, 0}}),
         ComplexMatrix::from_rows({{0, 0}, {0, std::sqrt(gamma)}})},
        2, 2);
    CHECK_THROWS_AS(steady_state(leaky_flip), ConvergenceError);
}

TEST_CASE("classical_transition tabulates squared overlaps") {
    SUBCASE("first example") {
        const Example1Model m = build_example1_model(0.5);
        const StochasticMatrix t =
            classical_transition(m.v, product_basis(m.basis_s, m.basis_a),
                                 product_basis(m.basis_r, m.basis_b));
        CHECK(close(t(t.output_index("0_R 0_B"), t.input_index("0_S 0_A")), 1.0));
        CHECK(close(t(t.output_index("1_R 0_B"), t.input_index("1_S 0_A")), 0.5));
        CHECK(close(t(t.output_index("1_R 1_B"), t.input_index("1_S 0_A")), 0.5));
        for (std::size_t m_in = 0; m_in < 4; ++m_in) {
            double column = 0.0;
            for (std::size_t n = 0; n < 4; ++n) column += t(n, m_in);
            CHECK(close(column, 1.0));
        }
    }

    SUBCASE("second example has six one-half transitions") {
        const Example2Model m = build_example2_model();
        const StochasticMatrix t =
            classical_transition(m.full, product_basis(m.basis_s, m.basis_a),
                                 product_basis(m.basis_s, m.basis_b));
        for (const auto& [out, in] :
             std::vector<std::pair<std::string, std::string>>{{"0_S 0_B", "0_S 1_A"},
                                                              {"0_S 1_B", "0_S 1_A"},
                                                              {"1_S 0_B", "1_S 0_A"},
                                                              {"1_S 1_B", "1_S 0_A"},
                                                              {"1_S 0_B", "1_S 1_A"},
                                                              {"1_S 1_B", "1_S 1_A"}}) {
            CHECK(close(t(t.output_index(out), t.input_index(in)), 0.5));
        }
    }

    SUBCASE("identity gives the identity table") {
        const LabeledBasis b = computational_qubit("0", "1");
        const StochasticMatrix t = classical_transition(ComplexMatrix::identity(2), b, b);
        CHECK(close(t(0, 0), 1.0));
        CHECK(close(t(1, 1), 1.0));
        CHECK(close(t(0, 1), 0.0));
    }

    SUBCASE("incomplete bases are rejected") {
        LabeledBasis small;
        small.labels = {"0"};
        small.states = {q2(1, 0)};
        CHECK_THROWS_AS(
            classical_transition(ComplexMatrix::identity(2), small, small), DimensionError);
    }
}

TEST_CASE("classical_bayes retrodicts the stated causes") {
    SUBCASE("first example, any r") {
        for (double r : {0.2, 0.5, 0.8}) {
            const Example1Model m = build_example1_model(r);
            const LabeledBasis in = product_basis(m.basis_s, m.basis_a);
            const StochasticMatrix t =
                classical_transition(m.v, in, product_basis(m.basis_r, m.basis_b));
            const auto prior = born_distribution(m.initial, in);
            const auto posterior = classical_bayes(t, prior, "1_R 1_B");
            CHECK(close(posterior[in.index_of("1_S 0_A")], 1.0));
        }
    }

    SUBCASE("second example") {
        const Example2Model m = build_example2_model();
        const LabeledBasis in = product_basis(m.basis_s, m.basis_a);
        const StochasticMatrix t =
            classical_transition(m.full, in, product_basis(m.basis_s, m.basis_b));
        const auto prior = born_distribution(m.psi_sa, in);
        const auto posterior = classical_bayes(t, prior, "0_S 1_B");
        CHECK(close(posterior[in.index_of("0_S 1_A")], 1.0));
    }

    SUBCASE("hardy") {
        const HardyModel m = build_hardy_model(0.8, 0.6);
        const LabeledBasis in = product_basis(m.basis_cd_r, m.basis_uv_n);
        const StochasticMatrix t = classical_transition(
            tensor(ComplexMatrix::identity(2), m.local_unitary), in,
            product_basis(m.basis_cd_r, m.basis_cd_s));
        const auto prior = born_distribution(m.psi_rn, in);
        const auto posterior = classical_bayes(t, prior, "d_R d_S");
        CHECK(close(posterior[in.index_of("d_R u_N")], 1.0));
    }

    SUBCASE("impossible outcomes are flagged") {
        const LabeledBasis b = computational_qubit("0", "1");
        const StochasticMatrix t = classical_transition(ComplexMatrix::identity(2), b, b);
        CHECK_THROWS_AS(classical_bayes(t, {1.0, 0.0}, "1"), ImpossibleOutcomeError);
    }
}

TEST_CASE("classical_predict sums the total probability") {
    SUBCASE("second example predicts the forbidden effect with 1/3") {
        const Example2Model m = build_example2_model();
        const LabeledBasis in = product_basis(m.basis_s, m.basis_a);
        const StochasticMatrix t =
            classical_transition(m.full, in, product_basis(m.basis_s, m.basis_b));
        const auto prior = born_distribution(m.psi_sa, in);
        CHECK(close(classical_predict(t, prior, "1_S 1_B"), 1.0 / 3.0));
    }

    SUBCASE("identity transition returns the prior mass") {
        const LabeledBasis b = computational_qubit("0", "1");
        const StochasticMatrix t = classical_transition(ComplexMatrix::identity(2), b, b);
        CHECK(close(classical_predict(t, {0.3, 0.7}, "1"), 0.7));
    }

    SUBCASE("first example at r = 1/2 predicts the joint effect with 1/4") {
        const Example1Model m = build_example1_model(0.5);
        const LabeledBasis in = product_basis(m.basis_s, m.basis_a);
        const StochasticMatrix t =
            classical_transition(m.v, in, product_basis(m.basis_r, m.basis_b));
        const auto prior = born_distribution(m.initial, in);
        // Only the column '1_S 0_A' feeds '1_R 1_B': 1/2 * 1/2.
        CHECK(close(classical_predict(t, prior, "1_R 1_B"), 0.25));
    }
}

TEST_CASE("prior constructors") {
    const Prior uniform = Prior::uniform(4);
    CHECK(matrices_close(uniform.state.matrix(),
                         ComplexMatrix::identity(4) * Complex{0.25, 0.0}));

    const Prior steady = Prior::steady(reset_channel());
    CHECK(matrices_close(steady.state.matrix(), ComplexMatrix::from_rows({{1, 0}, {0, 0}}),
                         1e-9));
}
