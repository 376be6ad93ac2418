// SPDX-License-Identifier: Apache-2.0

#include "qbayes/states.hpp"

#include <cmath>
#include <string>

namespace qbayes {

namespace {

double norm_squared(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, DimSpec dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (dims_.total() != amplitudes_.size()) {
        throw DimensionError("PureState: dims product " + std::to_string(dims_.total()) +
                             " does not match vector length " +
                             std::to_string(amplitudes_.size()));
    }
    const double n2 = norm_squared(amplitudes_);
    if (n2 < tol::kImpossible) {
        throw DimensionError("PureState: zero vector cannot be normalized");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes_) a *= inv;
}

Complex PureState::inner(const PureState& other) const {
    if (dims_.factor_dims != other.dims_.factor_dims) {
        throw DimensionError("inner: subsystem dimensions differ");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return s;
}

DensityOperator::DensityOperator(ComplexMatrix matrix, DimSpec dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    if (!matrix_.is_square() || dims_.total() != matrix_.rows()) {
        throw DimensionError("DensityOperator: dims do not match matrix dimension");
    }
    if (!matrix_.is_hermitian(tol::kDefault)) {
        throw NotHermitianError("DensityOperator: matrix is not Hermitian");
    }
    const auto eig = eig_hermitian(matrix_);
    for (double v : eig.values) {
        if (v < -tol::kPsd) {
            throw NotPsdError("DensityOperator: eigenvalue " + std::to_string(v) + " below 0");
        }
    }
    if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > tol::kDefault) {
        throw std::invalid_argument("DensityOperator: trace differs from 1");
    }
}

PureState make_pure(const std::vector<Complex>& amplitudes, const DimSpec& dims) {
    return PureState(amplitudes, dims);
}

PureState tensor_pure(const PureState& a, const PureState& b) {
    std::vector<Complex> amps;
    amps.reserve(a.dim() * b.dim());
    for (const auto& x : a.amplitudes()) {
        for (const auto& y : b.amplitudes()) amps.push_back(x * y);
    }
    DimSpec dims;
    dims.factor_dims = a.dims().factor_dims;
    dims.factor_dims.insert(dims.factor_dims.end(), b.dims().factor_dims.begin(),
                            b.dims().factor_dims.end());
    return PureState(std::move(amps), std::move(dims));
}

DensityOperator density_of(const PureState& psi) {
    return DensityOperator(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()), psi.dims());
}

double fidelity_pure(const PureState& phi, const PureState& chi) {
    return std::norm(phi.inner(chi));
}

double fidelity_pure_mixed(const PureState& phi, const DensityOperator& rho) {
    if (phi.dim() != rho.dim()) {
        throw DimensionError("fidelity_pure_mixed: dimension mismatch");
    }
    const auto rv = rho.matrix().apply(phi.amplitudes());
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rv.size(); ++i) s += std::conj(phi.amplitudes()[i]) * rv[i];
    return s.real();
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
    const ComplexMatrix root = herm_sqrt(rho.matrix());
    const ComplexMatrix inner = root * sigma.matrix() * root;
    const auto eig = eig_hermitian(inner);
    double s = 0.0;
    for (double v : eig.values) s += std::sqrt(std::max(v, 0.0));
    return s * s;
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("trace_distance: dimension mismatch");
    const auto eig = eig_hermitian(rho.matrix() - sigma.matrix());
    double s = 0.0;
    for (double v : eig.values) s += std::abs(v);
    return 0.5 * s;
}

namespace {

struct ProjectionSplit {
    // Strides mapping (target-part index, rest-part index) -> composite index.
    std::vector<std::size_t> target_factors;
    std::vector<std::size_t> rest_factors;
    std::size_t target_dim;
    std::size_t rest_dim;
};

ProjectionSplit split_factors(const DimSpec& dims, const std::set<std::size_t>& targets) {
    ProjectionSplit s;
    s.target_dim = 1;
    s.rest_dim = 1;
    for (std::size_t f = 0; f < dims.count(); ++f) {
        if (targets.count(f)) {
            s.target_factors.push_back(f);
            s.target_dim *= dims.factor_dims[f];
        } else {
            s.rest_factors.push_back(f);
            s.rest_dim *= dims.factor_dims[f];
        }
    }
    return s;
}

std::size_t compose_index(const DimSpec& dims, const ProjectionSplit& s, std::size_t target_idx,
                          std::size_t rest_idx) {
    std::size_t idx = 0;
    // Walk target digits from the last factor up, likewise rest digits.
    std::size_t t = target_idx;
    for (auto it = s.target_factors.rbegin(); it != s.target_factors.rend(); ++it) {
        const std::size_t d = dims.factor_dims[*it];
        idx += (t % d) * dims.stride(*it);
        t /= d;
    }
    std::size_t r = rest_idx;
    for (auto it = s.rest_factors.rbegin(); it != s.rest_factors.rend(); ++it) {
        const std::size_t d = dims.factor_dims[*it];
        idx += (r % d) * dims.stride(*it);
        r /= d;
    }
    return idx;
}

// Overlap coefficients c_r = sum_t conj(e_t) psi[(t, r)] for each rest index.
std::vector<Complex> effect_overlaps(const PureState& psi, const ProjectionSplit& s,
                                     const PureState& effect) {
    std::vector<Complex> coeffs(s.rest_dim, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < s.rest_dim; ++r) {
        for (std::size_t t = 0; t < s.target_dim; ++t) {
            coeffs[r] += std::conj(effect.amplitudes()[t]) *
                         psi.amplitudes()[compose_index(psi.dims(), s, t, r)];
        }
    }
    return coeffs;
}

ProjectionSplit checked_split(const PureState& psi, const std::set<std::size_t>& target_factors,
                              const PureState& effect) {
    for (auto f : target_factors) {
        if (f >= psi.dims().count()) {
            throw DimensionError("measure_project: target factor out of range");
        }
    }
    const ProjectionSplit s = split_factors(psi.dims(), target_factors);
    if (effect.dim() != s.target_dim) {
        throw DimensionError("measure_project: effect dimension " + std::to_string(effect.dim()) +
                             " does not match targeted factors " + std::to_string(s.target_dim));
    }
    return s;
}

}  // namespace

MeasurementOutcome measure_project(const PureState& psi,
                                   const std::set<std::size_t>& target_factors,
                                   const PureState& effect) {
    const ProjectionSplit s = checked_split(psi, target_factors, effect);
    const auto coeffs = effect_overlaps(psi, s, effect);

    double probability = 0.0;
    for (const auto& c : coeffs) probability += std::norm(c);
    if (probability < tol::kImpossible) {
        throw ImpossibleOutcomeError("measure_project: outcome has zero probability");
    }

    std::vector<Complex> post(psi.dim(), Complex{0.0, 0.0});
    for (std::size_t r = 0; r < s.rest_dim; ++r) {
        if (coeffs[r] == Complex{0.0, 0.0}) continue;
        for (std::size_t t = 0; t < s.target_dim; ++t) {
            post[compose_index(psi.dims(), s, t, r)] = effect.amplitudes()[t] * coeffs[r];
        }
    }
    return MeasurementOutcome{probability, PureState(std::move(post), psi.dims())};
}

double born_probability(const PureState& psi, const std::set<std::size_t>& target_factors,
                        const PureState& effect) {
    const ProjectionSplit s = checked_split(psi, target_factors, effect);
    const auto coeffs = effect_overlaps(psi, s, effect);
    double probability = 0.0;
    for (const auto& c : coeffs) probability += std::norm(c);
    return probability;
}

}  // namespace qbayes
