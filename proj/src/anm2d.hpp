// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anm1d.hpp"
#include "array_model.hpp"
#include "types.hpp"

namespace driftbeam {

struct Sdp2dSolution {
  Tensor3 X_hat;
  Tensor3 Q_star;
  std::vector<MatrixXcd> T;  // (2M-1) x (2L-1) generator per slice
  VectorXd t;                // length N
  double objective = 0.0;
  double min_block_eig = 0.0;
  double fidelity = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<AdmmTraceRow> trace;
};

// x_n = vec(X_n^T), so entry m*L + l of x_n is X_n(m, l).
VectorXcd vec_rows(const MatrixXcd& Xn);

Sdp2dSolution solve_sdp_2d(const MatrixXcd& Xstar, const MatrixXd& S, const ArrayConfig& cfg,
                           const AdmmParams& params = {});

// rows follow f_grid, columns follow theta_grid (degrees)
MatrixXd dual_polynomial_2d(const Tensor3& Q, const VectorXd& f_grid, const VectorXd& theta_grid,
                            const ArrayConfig& cfg);

// theta grid uniform in sin(theta), n points from -90 to 90 degrees
VectorXd sine_uniform_angles(int n);

struct Atom2d {
  double c = 1.0;
  double f = 0.0;
  VectorXcd alpha;  // unit norm, length L
  double theta_deg = 0.0;
};

struct Sdp2dFeasiblePoint {
  Tensor3 X;
  std::vector<MatrixXcd> blocks;  // ML x ML, sum_k c_k v_k v_k^H
  VectorXd t;
  double objective = 0.0;         // evaluated with the SDP objective
  double toeplitz_defect = 0.0;   // relative distance of the blocks from block-Toeplitz form
};

// Builds the decomposition-based point; returns sum_k c_k.
double atomic_decomposition_cost(const std::vector<Atom2d>& atoms, const ArrayConfig& cfg, int M,
                                 Sdp2dFeasiblePoint* point = nullptr);

// ||A - P(A)||_F / ||A||_F with P the averaging onto block-Toeplitz Hermitian matrices.
double block_toeplitz_defect(const MatrixXcd& A, int M, int L);

}  // namespace driftbeam
