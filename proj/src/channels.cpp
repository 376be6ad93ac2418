// SPDX-License-Identifier: Apache-2.0

#include "qbayes/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qbayes {

ComplexMatrix kraus_gram(const Channel& channel) {
    ComplexMatrix gram = ComplexMatrix::zero(channel.dim_in, channel.dim_in);
    for (const auto& k : channel.kraus) gram = gram + k.adjoint() * k;
    return gram;
}

double trace_preserving_defect(const Channel& channel) {
    return max_abs_diff(kraus_gram(channel), ComplexMatrix::identity(channel.dim_in));
}

Channel channel_from_kraus(std::vector<ComplexMatrix> kraus, std::size_t dim_in,
                           std::size_t dim_out) {
    if (kraus.empty()) throw InvalidChannelError("channel_from_kraus: empty Kraus set");
    for (const auto& k : kraus) {
        if (k.rows() != dim_out || k.cols() != dim_in) {
            throw DimensionError("channel_from_kraus: Kraus operator is " +
                                 std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                                 ", expected " + std::to_string(dim_out) + "x" +
                                 std::to_string(dim_in));
        }
    }
    Channel channel{std::move(kraus), dim_in, dim_out};
    const double defect = trace_preserving_defect(channel);
    if (defect > tol::kDefault) {
        throw InvalidChannelError("channel_from_kraus: sum K^dag K deviates from identity by " +
                                  std::to_string(defect));
    }
    return channel;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (!u.is_square()) return false;
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

bool is_unitary_channel(const Channel& channel, double tol) {
    return channel.kraus.size() == 1 && is_unitary(channel.kraus.front(), tol);
}

Channel channel_from_unitary(const ComplexMatrix& u) {
    if (!is_unitary(u)) {
        throw InvalidChannelError("channel_from_unitary: matrix is not unitary");
    }
    return Channel{{u}, u.cols(), u.rows()};
}

namespace {

Complex vector_inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double vector_norm(const std::vector<Complex>& a) {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
}

// Orthogonalize the standard basis against `span`, appending each
// surviving direction. Residuals below the threshold are dropped.
std::vector<std::vector<Complex>> extend_to_basis(std::vector<std::vector<Complex>> span,
                                                  std::size_t dim) {
    std::vector<std::vector<Complex>> basis = std::move(span);
    for (std::size_t e = 0; e < dim && basis.size() < dim; ++e) {
        std::vector<Complex> candidate(dim, Complex{0.0, 0.0});
        candidate[e] = 1.0;
        // Two Gram-Schmidt passes for orthogonality at machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const Complex overlap = vector_inner(b, candidate);
                for (std::size_t i = 0; i < dim; ++i) candidate[i] -= overlap * b[i];
            }
        }
        const double norm = vector_norm(candidate);
        if (norm <= 1e-9) continue;
        for (auto& v : candidate) v /= norm;
        basis.push_back(std::move(candidate));
    }
    return basis;
}

}  // namespace

ComplexMatrix complete_isometry(const PartialIsometrySpec& spec) {
    if (spec.dim_in != spec.dim_out) {
        throw DimensionError("complete_isometry: dim_in != dim_out (relabel spaces first)");
    }
    const std::size_t dim = spec.dim_in;
    if (spec.pairs.size() > dim) {
        throw InvalidIsometryError("complete_isometry: more pairs than dimensions");
    }

    std::vector<std::vector<Complex>> ins;
    std::vector<std::vector<Complex>> outs;
    for (const auto& [in, out] : spec.pairs) {
        if (in.dim() != dim || out.dim() != dim) {
            throw DimensionError("complete_isometry: pair dimension mismatch");
        }
        ins.push_back(in.amplitudes());
        outs.push_back(out.amplitudes());
    }
    // Isometry consistency: pairwise inner products preserved. Mutually
    // orthogonal inputs with orthogonal outputs are the expected case.
    for (std::size_t i = 0; i < ins.size(); ++i) {
        for (std::size_t j = 0; j < ins.size(); ++j) {
            const Complex gi = vector_inner(ins[i], ins[j]);
            const Complex go = vector_inner(outs[i], outs[j]);
            if (std::abs(gi - go) > tol::kDefault) {
                throw InvalidIsometryError(
                    "complete_isometry: pair inner products not preserved (non-isometric spec)");
            }
            if (i != j && std::abs(gi) > tol::kDefault) {
                throw InvalidIsometryError("complete_isometry: specified inputs not orthogonal");
            }
        }
    }

    const auto in_basis = extend_to_basis(ins, dim);
    const auto out_basis = extend_to_basis(outs, dim);
    if (in_basis.size() != dim || out_basis.size() != dim) {
        throw InvalidIsometryError("complete_isometry: span completion failed");
    }

    // U = sum_k |out_k><in_k| over specified and leftover pairs alike.
    ComplexMatrix u = ComplexMatrix::zero(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        u = u + ComplexMatrix::outer(out_basis[k], in_basis[k]);
    }
    if (!is_unitary(u)) {
        throw InvalidIsometryError("complete_isometry: completion is not unitary");
    }
    return u;
}

ComplexMatrix apply_channel_matrix(const Channel& channel, const ComplexMatrix& rho) {
    if (rho.rows() != channel.dim_in || rho.cols() != channel.dim_in) {
        throw DimensionError("apply_channel: state dimension " + std::to_string(rho.rows()) +
                             " does not match channel input " + std::to_string(channel.dim_in));
    }
    ComplexMatrix out = ComplexMatrix::zero(channel.dim_out, channel.dim_out);
    for (const auto& k : channel.kraus) out = out + k * rho * k.adjoint();
    return out;
}

DensityOperator apply_channel(const Channel& channel, const DensityOperator& rho) {
    ComplexMatrix out = apply_channel_matrix(channel, rho.matrix());
    DimSpec dims = rho.dims();
    if (channel.dim_out != channel.dim_in || dims.total() != channel.dim_out) {
        dims = DimSpec{std::vector<std::size_t>{channel.dim_out}};
    }
    return DensityOperator(std::move(out), std::move(dims));
}

PureState apply_unitary(const ComplexMatrix& u, const PureState& psi) {
    if (u.cols() != psi.dim()) {
        throw DimensionError("apply_unitary: dimension mismatch");
    }
    DimSpec dims = psi.dims();
    if (u.rows() != psi.dim()) dims = DimSpec{std::vector<std::size_t>{u.rows()}};
    return PureState(u.apply(psi.amplitudes()), std::move(dims));
}

Channel adjoint_channel(const Channel& channel) {
    Channel dual;
    dual.dim_in = channel.dim_out;
    dual.dim_out = channel.dim_in;
    for (const auto& k : channel.kraus) dual.kraus.push_back(k.adjoint());
    return dual;
}

ComplexMatrix coherent_copy_unitary(std::size_t d) {
    ComplexMatrix u = ComplexMatrix::zero(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            u(i * d + (j + i) % d, i * d + j) = 1.0;
        }
    }
    return u;
}

}  // namespace qbayes
