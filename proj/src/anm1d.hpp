// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

namespace driftbeam {

struct AdmmParams {
  double rho = 1.0;
  int max_iters = 20000;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  double eps = 0.0;       // fidelity radius
  int adapt_every = 50;   // residual balancing cadence
  double adapt_ratio = 10.0;
};

struct AdmmTraceRow {
  int iter;
  double primal_res, dual_res, objective;
};

struct Sdp1dSolution {
  Tensor3 X_hat;
  Tensor3 Q_star;
  std::vector<VectorXcd> u;     // first row of Toep(u_n), u[n][0] shared
  std::vector<MatrixXcd> Wcal;  // L x L per slice
  double objective = 0.0;
  double dual_objective = 0.0;  // Re<Gamma, X*> - eps ||Gamma||, Gamma = (LL*)^-1 L(Q)
  double uncorrected_dual_objective = 0.0;  // Re<X*, L(Q)>
  double min_block_eig = 0.0;
  double fidelity = 0.0;  // ||X* - L(X_hat)||_F
  int iterations = 0;
  bool converged = false;
  std::vector<AdmmTraceRow> trace;
};

// Projection of C onto {X : ||X* - L(X)||_F <= eps}.
Tensor3 project_fidelity(const Tensor3& C, const MatrixXcd& Xstar, const MatrixXd& S, double eps);

Sdp1dSolution solve_sdp_1d(const MatrixXcd& Xstar, const MatrixXd& S, const AdmmParams& params = {});

// max over an f-grid of q(f)
double dual_feasibility_check(const Tensor3& Q, int grid_size);

}  // namespace driftbeam
