// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "array_model.hpp"
#include "dpss.hpp"
#include "types.hpp"

namespace driftbeam {

// slice n = A.col(n) * B.col(n)^T
Tensor3 khatri_rao_reshaped(const MatrixXcd& A, const MatrixXcd& B);

// column n = rowsum(S .* X_n)
MatrixXcd apply_L(const Tensor3& X, const MatrixXd& S);

// slice n = S .* (y_n 1^T)
Tensor3 apply_L_adjoint(const MatrixXcd& Y, const MatrixXd& S);

// T(i,k) = u[k-i] above the diagonal, conj(u[i-k]) below.
MatrixXcd toeplitz_hermitian(const VectorXcd& u);

// Generator T is (2M-1) x (2L-1); T(m + M - 1, l + L - 1) holds T_{m,l}.
// Block (i,k) is the L x L Toeplitz matrix with entries T_{i-k, p-r}.
MatrixXcd block_toeplitz(const MatrixXcd& T, int M, int L);

struct LiftResult {
  Tensor3 X;
  std::vector<VectorXcd> alpha;  // DPSS coefficients of each demodulated source
  double residual = 0.0;         // worst relative fit error over sources
};

// X = sum_k a(f_k) alpha_k^T asv_n(theta_k); throws model_mismatch when a source does not
// fit span(S) within tol.
LiftResult lift_exact(const std::vector<SourceSpec>& specs, const ArrayConfig& cfg, const MatrixXd& S,
                      double tol = 1e-3, bool instantaneous = false);

}  // namespace driftbeam
