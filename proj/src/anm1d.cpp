// SPDX-License-Identifier: Apache-2.0
#include "anm1d.hpp"

#include "beamform.hpp"
#include "psd.hpp"
#include "tensor_ops.hpp"

#include <algorithm>
#include <cmath>

namespace driftbeam {

Tensor3 project_fidelity(const Tensor3& C, const MatrixXcd& Xstar, const MatrixXd& S, double eps) {
  const VectorXd d = S.rowwise().squaredNorm();
  const MatrixXcd r = Xstar - apply_L(C, S);
  const double nr = r.norm();
  if (nr <= eps) return C;

  // X = C + L*(G) with G = lam r / (1 + lam d); eps = 0 is the lam -> inf limit.
  MatrixXcd G(r.rows(), r.cols());
  if (eps <= 0.0) {
    G = r.array().colwise() / d.cast<cplx>().array();
  } else {
    const VectorXd rr = r.rowwise().squaredNorm();
    auto excess = [&](double lam) {
      double s = 0;
      for (int m = 0; m < d.size(); ++m) s += rr[m] / ((1 + lam * d[m]) * (1 + lam * d[m]));
      return std::sqrt(s) - eps;
    };
    double lo = 0.0, hi = 1.0;
    while (excess(hi) > 0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      (excess(mid) > 0 ? lo : hi) = mid;
    }
    for (int m = 0; m < d.size(); ++m) G.row(m) = r.row(m) * (hi / (1 + hi * d[m]));
  }
  Tensor3 X = C;
  Tensor3 corr = apply_L_adjoint(G, S);
  for (int n = 0; n < X.N; ++n) X[n] += corr[n];
  return X;
}

Sdp1dSolution solve_sdp_1d(const MatrixXcd& Xstar_in, const MatrixXd& S, const AdmmParams& p) {
  const int M = Xstar_in.rows(), N = Xstar_in.cols(), L = S.cols(), D = M + L;
  if (S.rows() != M) fail(Errc::dimension, "solve_sdp_1d: basis rows differ from snapshot count");
  if (!(p.rho > 0) || p.tol_primal <= 0 || p.tol_dual <= 0 || p.eps < 0)
    fail(Errc::invalid_argument, "solve_sdp_1d: invalid ADMM parameters");

  Sdp1dSolution sol;
  const double scale = Xstar_in.norm();
  if (scale == 0.0) {
    sol.X_hat = Tensor3(M, L, N);
    sol.Q_star = Tensor3(M, L, N);
    sol.u.assign(N, VectorXcd::Zero(M));
    sol.Wcal.assign(N, MatrixXcd::Zero(L, L));
    sol.converged = true;
    return sol;
  }
  const MatrixXcd Xs = Xstar_in / scale;
  const double eps = p.eps / scale;

  double rho = p.rho;
  std::vector<MatrixXcd> Z(N, MatrixXcd::Zero(D, D)), U(N, MatrixXcd::Zero(D, D)), Y(N, MatrixXcd::Zero(D, D));
  Tensor3 C(M, L, N), X(M, L, N);
  double u0 = 0.0;

  int it = 0;
  for (; it < p.max_iters; ++it) {
    // shared u: all N*M diagonal entries of the Toeplitz blocks
    double dsum = 0;
    for (int n = 0; n < N; ++n) dsum += (Z[n] - U[n]).topLeftCorner(M, M).diagonal().real().sum();
    u0 = dsum / (N * M) - 1.0 / (2.0 * rho * N * M);

    for (int n = 0; n < N; ++n) {
      const MatrixXcd G = Z[n] - U[n];
      auto T = Y[n].topLeftCorner(M, M);
      for (int k = 1; k < M; ++k) {
        cplx s = 0;
        for (int i = 0; i + k < M; ++i) s += G(i, i + k) + std::conj(G(i + k, i));
        cplx v = s / (2.0 * (M - k));
        for (int i = 0; i + k < M; ++i) {
          T(i, i + k) = v;
          T(i + k, i) = std::conj(v);
        }
      }
      for (int i = 0; i < M; ++i) T(i, i) = u0;
      Y[n].bottomRightCorner(L, L) =
          herm_part(G.bottomRightCorner(L, L)) - MatrixXcd::Identity(L, L) / (2.0 * rho);
      C[n] = 0.5 * (G.topRightCorner(M, L) + G.bottomLeftCorner(L, M).adjoint());
    }
    X = project_fidelity(C, Xs, S, eps);

    double ny = 0, nz = 0, nu = 0, rp2 = 0, rd2 = 0;
    for (int n = 0; n < N; ++n) {
      Y[n].topRightCorner(M, L) = X[n];
      Y[n].bottomLeftCorner(L, M) = X[n].adjoint();
      MatrixXcd Znew = psd_project(Y[n] + U[n]);
      rd2 += (Znew - Z[n]).squaredNorm();
      Z[n] = std::move(Znew);
      U[n] += Y[n] - Z[n];
      rp2 += (Y[n] - Z[n]).squaredNorm();
      ny += Y[n].squaredNorm();
      nz += Z[n].squaredNorm();
      nu += U[n].squaredNorm();
    }
    const double rp = std::sqrt(rp2), rd = rho * std::sqrt(rd2);
    const double epri = p.tol_primal * std::max(std::sqrt(ny), std::sqrt(nz));
    const double edual = p.tol_dual * rho * std::sqrt(nu);

    double obj = 0.5 * u0;
    for (int n = 0; n < N; ++n) obj += 0.5 * Y[n].bottomRightCorner(L, L).trace().real();
    sol.trace.push_back({it, rp * scale, rd * scale, obj * scale});

    if (rp < epri && rd < edual) {
      sol.converged = true;
      ++it;
      break;
    }
    if (it > 0 && it % p.adapt_every == 0) {
      const double a = rp / epri, b = rd / edual;
      if (a > p.adapt_ratio * b) {
        rho *= 2.0;
        for (auto& x : U) x /= 2.0;
      } else if (b > p.adapt_ratio * a) {
        rho /= 2.0;
        for (auto& x : U) x *= 2.0;
      }
    }
  }
  sol.iterations = it;

  sol.X_hat = Tensor3(M, L, N);
  sol.Q_star = Tensor3(M, L, N);
  sol.objective = 0.5 * u0;
  sol.min_block_eig = 0.0;
  bool first = true;
  for (int n = 0; n < N; ++n) {
    sol.X_hat[n] = X[n] * scale;
    sol.Q_star[n] = 2.0 * rho * U[n].topRightCorner(M, L);
    VectorXcd un = Y[n].topLeftCorner(M, M).row(0).transpose() * scale;
    sol.u.push_back(un);
    sol.Wcal.push_back(Y[n].bottomRightCorner(L, L) * scale);
    sol.objective += 0.5 * Y[n].bottomRightCorner(L, L).trace().real();
    double me = min_eigenvalue(Y[n]) * scale;
    sol.min_block_eig = first ? me : std::min(sol.min_block_eig, me);
    first = false;
  }
  sol.objective *= scale;
  sol.fidelity = (Xstar_in - apply_L(sol.X_hat, S)).norm();

  const MatrixXcd LQ = apply_L(sol.Q_star, S);
  const VectorXd d = S.rowwise().squaredNorm();
  const MatrixXcd Gam = LQ.array().colwise() / d.cast<cplx>().array();
  sol.dual_objective = (Gam.conjugate().cwiseProduct(Xstar_in)).sum().real() - p.eps * Gam.norm();
  sol.uncorrected_dual_objective = (LQ.conjugate().cwiseProduct(Xstar_in)).sum().real();
  return sol;
}

double dual_feasibility_check(const Tensor3& Q, int grid_size) {
  if (grid_size < 4 * Q.M) fail(Errc::invalid_argument, "dual_feasibility_check: grid needs at least 4M points");
  VectorXd q = dual_polynomial_1d(Q, uniform_grid(grid_size));
  return q.size() ? q.maxCoeff() : 0.0;
}

}  // namespace driftbeam
