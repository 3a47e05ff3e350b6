// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

namespace driftbeam {

struct DpssBasis {
  MatrixXd S;        // M x L, orthonormal columns
  VectorXd lambdas;  // concentration in [-W, W], decreasing
  int M = 0, L = 0;
  double W = 0.0;
};

DpssBasis dpss_basis(int M, double W, int L);

// Dense M x M kernel sin(2 pi W (m - m')) / (pi (m - m')), diagonal 2W.
MatrixXd sinc_kernel(int M, double W);

// ||(I - S S^T) a(f)||_2
double residual_projection(const DpssBasis& b, double f);

}  // namespace driftbeam
