// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

#include <cstdint>

namespace driftbeam {

struct IvdstParams {
  double eta = 4.0;
  double decay = 0.99;    // eta multiplier ...
  int decay_every = 50;   // ... applied after every this many iterations
  int iters = 200;
  std::uint64_t seed = 0;
};

struct IvdstState {
  Tensor3 Q, Q_prev;
  std::vector<MatrixXcd> H, H_prev;  // M x M per slice
  double t = 1.0;                    // momentum scalar of the last completed step
  int iter = 0;
};

struct IvdstTraceRow {
  int iter;
  double objective, constraint_drift;
};

struct IvdstResult {
  Tensor3 Q;
  std::vector<IvdstTraceRow> trace;
};

IvdstState ivdst_init(int M, int L, int N, std::uint64_t seed);

double ivdst_next_t(double t);

// H~ from H_g: diagonals divided by the total trace, each superdiagonal made zero-mean.
std::vector<MatrixXcd> ivdst_reproject_H(const std::vector<MatrixXcd>& Hg);

// One smoothing / gradient / proximal step. Returns the post-truncation constraint drift.
double ivdst_iterate(IvdstState& s, const Tensor3& Xstar_adj, double eta);

// Runs the full schedule; trace objective is Re<X*, L(Q_i)>.
IvdstResult ivdst_solve(const MatrixXcd& Xstar, const MatrixXd& S, const IvdstParams& p = {});

}  // namespace driftbeam
