// SPDX-License-Identifier: Apache-2.0
#include "tensor_ops.hpp"

#include <sstream>

namespace driftbeam {

Tensor3 khatri_rao_reshaped(const MatrixXcd& A, const MatrixXcd& B) {
  if (A.cols() != B.cols()) fail(Errc::dimension, "khatri_rao_reshaped: column counts differ");
  Tensor3 T(A.rows(), B.rows(), A.cols());
  for (int n = 0; n < T.N; ++n) T[n] = A.col(n) * B.col(n).transpose();
  return T;
}

MatrixXcd apply_L(const Tensor3& X, const MatrixXd& S) {
  if (X.M != S.rows() || X.L != S.cols()) fail(Errc::dimension, "apply_L: tensor and basis shapes differ");
  MatrixXcd Y(X.M, X.N);
  for (int n = 0; n < X.N; ++n) Y.col(n) = X[n].cwiseProduct(S.cast<cplx>()).rowwise().sum();
  return Y;
}

Tensor3 apply_L_adjoint(const MatrixXcd& Y, const MatrixXd& S) {
  if (Y.rows() != S.rows()) fail(Errc::dimension, "apply_L_adjoint: row counts differ");
  Tensor3 X(S.rows(), S.cols(), Y.cols());
  for (int n = 0; n < X.N; ++n) X[n] = S.cast<cplx>().array().colwise() * Y.col(n).array();
  return X;
}

MatrixXcd toeplitz_hermitian(const VectorXcd& u) {
  const int M = u.size();
  MatrixXcd T(M, M);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k) T(i, k) = k >= i ? u[k - i] : std::conj(u[i - k]);
  return T;
}

MatrixXcd block_toeplitz(const MatrixXcd& T, int M, int L) {
  if (T.rows() != 2 * M - 1 || T.cols() != 2 * L - 1)
    fail(Errc::dimension, "block_toeplitz: generator must be (2M-1) x (2L-1)");
  MatrixXcd B(M * L, M * L);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k)
      for (int p = 0; p < L; ++p)
        for (int r = 0; r < L; ++r) B(i * L + p, k * L + r) = T(i - k + M - 1, p - r + L - 1);
  return B;
}

LiftResult lift_exact(const std::vector<SourceSpec>& specs, const ArrayConfig& cfg, const MatrixXd& S,
                      double tol, bool instantaneous) {
  const int M = S.rows(), L = S.cols(), N = cfg.N();
  LiftResult out;
  out.X = Tensor3(M, L, N);
  for (const auto& sp : specs) {
    VectorXcd s = synthesize_source(sp, M, instantaneous);
    VectorXcd demod = s.cwiseProduct(tone(sp.carrier, M).conjugate());
    VectorXcd alpha = S.transpose().cast<cplx>() * demod;
    double res = (demod - S.cast<cplx>() * alpha).norm() / std::max(demod.norm(), 1e-300);
    out.residual = std::max(out.residual, res);
    if (res > tol) {
      std::ostringstream os;
      os << "source at " << sp.theta_deg << " deg does not fit the DPSS span: residual " << res;
      fail(Errc::model_mismatch, os.str());
    }
    Eigen::RowVectorXcd b = steering_vector(sp.theta_deg, cfg);
    VectorXcd a = tone(sp.carrier, M);
    for (int n = 0; n < N; ++n) out.X[n] += b[n] * (a * alpha.transpose());
    out.alpha.push_back(alpha);
  }
  return out;
}

}  // namespace driftbeam
