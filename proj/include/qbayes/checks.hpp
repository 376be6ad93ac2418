// SPDX-License-Identifier: Apache-2.0
//
// Seeded randomized invariant checks: recovery identity, prior
// independence of unitary inversion, trace duality, conditional-state
// consistency and the classical reduction. Shared by the CLI `check`
// subcommand and the acceptance suite.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qbayes/conditional.hpp"

namespace qbayes {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double gauss() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);
// Random CPTP map with the given number of Kraus operators.
Channel random_channel(Rng& rng, std::size_t dim_in, std::size_t dim_out, std::size_t n_kraus);
// Full-rank random density operator.
DensityOperator random_density(Rng& rng, std::size_t dim);
PureState random_pure(Rng& rng, std::size_t dim);
// Strictly positive distribution over n outcomes.
std::vector<double> random_distribution(Rng& rng, std::size_t n);

struct CheckFailure {
    std::string check;
    std::string detail;
};

struct CheckSummary {
    int assertions = 0;
    std::vector<CheckFailure> failures;
    bool ok() const { return failures.empty(); }
};

struct CheckOptions {
    std::vector<std::size_t> dims{2, 3, 4};
    int trials = 100;
    std::uint64_t seed = 7;
};

// Runs every invariant check; per-check counts and failures land in the
// summary (first few failures only, to keep output readable).
CheckSummary run_property_checks(const CheckOptions& options);

}  // namespace qbayes
