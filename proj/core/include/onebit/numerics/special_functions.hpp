// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace onebit {

/// Standard normal density phi(x).
double std_normal_pdf(double x) noexcept;

/// Standard normal distribution function Phi(x).
double std_normal_cdf(double x) noexcept;

/// phi(w) / Phi(w).
///
/// For w >= -8 the direct quotient is used. Below that, Phi(w) loses relative
/// precision and eventually underflows (near w = -37), so the ratio is taken
/// from the continued fraction of the upper-tail Mills ratio, which stays
/// finite and converges fast for large |w|. Positive and strictly decreasing.
double mills_ratio(double w) noexcept;

/// Signature of a Mills-ratio evaluator; lets callers swap in a perturbed
/// version for negative controls.
using MillsRatioFn = double (*)(double);

}  // namespace onebit
