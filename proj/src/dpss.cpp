// SPDX-License-Identifier: Apache-2.0
#include "dpss.hpp"

#include "array_model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace driftbeam {

MatrixXd sinc_kernel(int M, double W) {
  MatrixXd K(M, M);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k) {
      int d = i - k;
      K(i, k) = d == 0 ? 2.0 * W : std::sin(2.0 * kPi * W * d) / (kPi * d);
    }
  return K;
}

DpssBasis dpss_basis(int M, double W, int L) {
  if (!(W > 0.0 && W < 0.5)) fail(Errc::invalid_argument, "DPSS half-bandwidth W must lie in (0, 1/2)");
  if (L < 1 || L > M) fail(Errc::invalid_argument, "DPSS order L must satisfy 1 <= L <= M");

  VectorXd diag(M), off(std::max(M - 1, 0));
  const double c = std::cos(2.0 * kPi * W);
  for (int m = 0; m < M; ++m) {
    double h = (M - 1 - 2.0 * m) / 2.0;
    diag[m] = h * h * c;
  }
  for (int m = 1; m < M; ++m) off[m - 1] = m * (M - m) / 2.0;

  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) fail(Errc::numerical, "tridiagonal eigensolver failed");

  // eigenvalues ascending; the largest L are the most concentrated
  MatrixXd V = es.eigenvectors().rightCols(L).rowwise().reverse();
  for (int j = 0; j < L; ++j) {
    for (int m = 0; m < M; ++m) {
      if (std::abs(V(m, j)) > 1e-12) {
        if (V(m, j) < 0) V.col(j) = -V.col(j);
        break;
      }
    }
  }

  // concentration via Rayleigh quotient of the sinc kernel, computed as
  // v^T K v = sum_d r_v(d) k(d) with the autocorrelation r_v
  VectorXd lam(L);
  for (int j = 0; j < L; ++j) {
    double s = 0;
    for (int d = -(M - 1); d < M; ++d) {
      double r = 0;
      for (int m = std::max(0, -d); m < M - std::max(0, d); ++m) r += V(m, j) * V(m + d, j);
      double k = d == 0 ? 2.0 * W : std::sin(2.0 * kPi * W * d) / (kPi * d);
      s += r * k;
    }
    lam[j] = s;
  }
  std::vector<int> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lam[a] > lam[b]; });

  DpssBasis out;
  out.M = M;
  out.L = L;
  out.W = W;
  out.S.resize(M, L);
  out.lambdas.resize(L);
  for (int j = 0; j < L; ++j) {
    out.S.col(j) = V.col(order[j]);
    out.lambdas[j] = lam[order[j]];
  }
  return out;
}

double residual_projection(const DpssBasis& b, double f) {
  VectorXcd a = tone(f, b.M);
  VectorXcd c = b.S.transpose().cast<cplx>() * a;
  return (a - b.S.cast<cplx>() * c).norm();
}

}  // namespace driftbeam
