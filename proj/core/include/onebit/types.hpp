// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace onebit {

using cd = std::complex<double>;
using Index = Eigen::Index;

/// Stacked (column-major vectorized) complex vector, e.g. vec{Y[n]}.
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Bits stored one per byte, values 0 or 1.
using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace onebit
