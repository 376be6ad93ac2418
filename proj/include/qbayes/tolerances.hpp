// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace qbayes::tol {

// Default max-entry absolute tolerance for comparisons.
inline constexpr double kDefault = 1e-9;

// Absolute eigenvalue clipping threshold for PSD checks and square roots.
inline constexpr double kPsd = 1e-10;

// Relative cutoff for the support-restricted pseudo-inverse:
// eigenvalues <= kPinvRel * lambda_max are treated as zero.
inline constexpr double kPinvRel = 1e-12;

// A projective outcome with probability below this is impossible.
inline constexpr double kImpossible = 1e-12;

// Determinism threshold: a probability or fidelity >= 1 - kDeterministic
// counts as certain.
inline constexpr double kDeterministic = 1e-9;

// Fixed-point iteration: successive-iterate tolerance and iteration cap.
inline constexpr double kFixedPoint = 1e-12;
inline constexpr int kFixedPointMaxIters = 100000;

}  // namespace qbayes::tol
