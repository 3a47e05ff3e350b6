// SPDX-License-Identifier: Apache-2.0
#include "anm2d.hpp"

#include "psd.hpp"
#include "tensor_ops.hpp"

#include <algorithm>
#include <cmath>

namespace driftbeam {

namespace {

// flat generator index of entry (i*L+p, k*L+r); the mirror index (-m,-l) is K-1-key
struct KeyMap {
  int M, L, K;
  std::vector<int> key;
  std::vector<int> cnt;

  KeyMap(int m, int l) : M(m), L(l), K((2 * m - 1) * (2 * l - 1)) {
    const int D = M * L;
    key.resize(D * D);
    cnt.assign(K, 0);
    for (int i = 0; i < M; ++i)
      for (int p = 0; p < L; ++p)
        for (int k = 0; k < M; ++k)
          for (int r = 0; r < L; ++r) {
            int g = (i - k + M - 1) * (2 * L - 1) + (p - r + L - 1);
            key[(i * L + p) * D + (k * L + r)] = g;
            ++cnt[g];
          }
  }

  // Hermitian block-Toeplitz average of the top-left D x D corner of G.
  VectorXcd average(const MatrixXcd& G) const {
    const int D = M * L;
    VectorXcd s = VectorXcd::Zero(K);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) s[key[a * D + b]] += G(a, b);
    VectorXcd v(K);
    for (int g = 0; g < K; ++g) v[g] = (s[g] + std::conj(s[K - 1 - g])) / (2.0 * cnt[g]);
    return v;
  }

  template <class Out>
  void fill(const VectorXcd& v, Out&& B) const {
    const int D = M * L;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) B(a, b) = v[key[a * D + b]];
  }

  MatrixXcd generator(const VectorXcd& v) const {
    MatrixXcd T(2 * M - 1, 2 * L - 1);
    for (int m = 0; m < 2 * M - 1; ++m)
      for (int l = 0; l < 2 * L - 1; ++l) T(m, l) = v[m * (2 * L - 1) + l];
    return T;
  }
};

}  // namespace

VectorXcd vec_rows(const MatrixXcd& Xn) {
  VectorXcd x(Xn.size());
  for (int m = 0; m < Xn.rows(); ++m)
    for (int l = 0; l < Xn.cols(); ++l) x[m * Xn.cols() + l] = Xn(m, l);
  return x;
}

Sdp2dSolution solve_sdp_2d(const MatrixXcd& Xstar_in, const MatrixXd& S, const ArrayConfig& cfg,
                           const AdmmParams& p) {
  const int M = Xstar_in.rows(), N = Xstar_in.cols(), L = S.cols(), ML = M * L, D = ML + 1;
  if (S.rows() != M) fail(Errc::dimension, "solve_sdp_2d: basis rows differ from snapshot count");
  if (cfg.N() != N) fail(Errc::dimension, "solve_sdp_2d: array size differs from data columns");
  if (!cfg.equispaced()) fail(Errc::invalid_argument, "solve_sdp_2d: the 2D method needs an equispaced array");
  if (!(p.rho > 0) || p.tol_primal <= 0 || p.tol_dual <= 0 || p.eps < 0)
    fail(Errc::invalid_argument, "solve_sdp_2d: invalid ADMM parameters");

  Sdp2dSolution sol;
  const double scale = Xstar_in.norm();
  const KeyMap km(M, L);
  const int c0 = (M - 1) * (2 * L - 1) + (L - 1);
  if (scale == 0.0) {
    sol.X_hat = Tensor3(M, L, N);
    sol.Q_star = Tensor3(M, L, N);
    sol.T.assign(N, MatrixXcd::Zero(2 * M - 1, 2 * L - 1));
    sol.t = VectorXd::Zero(N);
    sol.converged = true;
    return sol;
  }
  const MatrixXcd Xs = Xstar_in / scale;
  const double eps = p.eps / scale;

  double rho = p.rho;
  std::vector<MatrixXcd> Z(N, MatrixXcd::Zero(D, D)), U(N, MatrixXcd::Zero(D, D)), Y(N, MatrixXcd::Zero(D, D));
  std::vector<VectorXcd> gen(N);
  Tensor3 C(M, L, N), X(M, L, N);

  int it = 0;
  for (; it < p.max_iters; ++it) {
    for (int n = 0; n < N; ++n) {
      const MatrixXcd G = Z[n] - U[n];
      VectorXcd v = km.average(G);
      v[c0] = v[c0].real() - 1.0 / (2.0 * N * M * rho);
      km.fill(v, Y[n].topLeftCorner(ML, ML));
      gen[n] = std::move(v);
      Y[n](ML, ML) = G(ML, ML).real() - 1.0 / (2.0 * N * rho);
      VectorXcd cx = 0.5 * (G.col(ML).head(ML) + G.row(ML).head(ML).adjoint());
      for (int m = 0; m < M; ++m)
        for (int l = 0; l < L; ++l) C[n](m, l) = cx[m * L + l];
    }
    X = project_fidelity(C, Xs, S, eps);

    double ny = 0, nz = 0, nu = 0, rp2 = 0, rd2 = 0, obj = 0;
    for (int n = 0; n < N; ++n) {
      VectorXcd x = vec_rows(X[n]);
      Y[n].col(ML).head(ML) = x;
      Y[n].row(ML).head(ML) = x.adjoint();
      obj += Y[n].topLeftCorner(ML, ML).trace().real() / (2.0 * M * N) + Y[n](ML, ML).real() / (2.0 * N);
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
    sol.trace.push_back({it, rp * scale, rd * scale, obj * scale});
    sol.objective = obj * scale;

    if (rp < epri && rd < edual) {
      sol.converged = true;
      ++it;
      break;
    }
    if (it > 0 && it % p.adapt_every == 0) {
      const double a = rp / epri, b = rd / edual;
      if (a > p.adapt_ratio * b) {
        rho *= 2.0;
        for (auto& u : U) u /= 2.0;
      } else if (b > p.adapt_ratio * a) {
        rho /= 2.0;
        for (auto& u : U) u *= 2.0;
      }
    }
  }
  sol.iterations = it;
  sol.X_hat = Tensor3(M, L, N);
  sol.Q_star = Tensor3(M, L, N);
  sol.t = VectorXd(N);
  for (int n = 0; n < N; ++n) {
    sol.X_hat[n] = X[n] * scale;
    for (int m = 0; m < M; ++m)
      for (int l = 0; l < L; ++l) sol.Q_star[n](m, l) = 2.0 * rho * U[n](m * L + l, ML);
    sol.T.push_back(km.generator(gen[n]) * scale);
    sol.t[n] = Y[n](ML, ML).real() * scale;
    double me = min_eigenvalue(Y[n]) * scale;
    sol.min_block_eig = n == 0 ? me : std::min(sol.min_block_eig, me);
  }
  sol.fidelity = (Xstar_in - apply_L(sol.X_hat, S)).norm();
  return sol;
}

MatrixXd dual_polynomial_2d(const Tensor3& Q, const VectorXd& f_grid, const VectorXd& theta_grid,
                            const ArrayConfig& cfg) {
  if (cfg.N() != Q.N) fail(Errc::dimension, "dual_polynomial_2d: array size differs from tensor slices");
  const int F = f_grid.size(), A = theta_grid.size(), L = Q.L, N = Q.N;
  MatrixXcd V(N, A);
  for (int j = 0; j < A; ++j) V.col(j) = steering_vector(theta_grid[j], cfg).transpose();
  MatrixXd out(F, A);
  MatrixXcd P(L, N);
  for (int i = 0; i < F; ++i) {
    VectorXcd a = tone(f_grid[i], Q.M);
    for (int n = 0; n < N; ++n) P.col(n) = Q[n].adjoint() * a;
    out.row(i) = (P * V).colwise().norm();
  }
  return out;
}

VectorXd sine_uniform_angles(int n) {
  if (n < 2) fail(Errc::invalid_argument, "angle grid needs at least two points");
  VectorXd th(n);
  for (int k = 0; k < n; ++k) {
    double s = std::clamp(-1.0 + 2.0 * k / (n - 1), -1.0, 1.0);
    th[k] = std::asin(s) * 180.0 / kPi;
  }
  return th;
}

double atomic_decomposition_cost(const std::vector<Atom2d>& atoms, const ArrayConfig& cfg, int M,
                                 Sdp2dFeasiblePoint* point) {
  const int N = cfg.N();
  const int L = atoms.empty() ? 1 : atoms[0].alpha.size();
  double cost = 0.0;
  Tensor3 X(M, L, N);
  MatrixXcd B = MatrixXcd::Zero(M * L, M * L);
  for (const auto& at : atoms) {
    if (at.c < 0) fail(Errc::invalid_argument, "atom weight must be nonnegative");
    if (at.alpha.size() != L) fail(Errc::dimension, "atoms disagree on L");
    if (std::abs(at.alpha.norm() - 1.0) > 1e-9) fail(Errc::invalid_argument, "atom coefficient vector must have unit norm");
    VectorXcd a = tone(at.f, M);
    Eigen::RowVectorXcd b = steering_vector(at.theta_deg, cfg);
    MatrixXcd Xa = a * at.alpha.transpose();
    for (int n = 0; n < N; ++n) X[n] += at.c * b[n] * Xa;
    VectorXcd v = vec_rows(Xa);
    B += at.c * v * v.adjoint();
    cost += at.c;
  }
  if (point) {
    point->X = X;
    point->blocks.assign(N, B);
    point->t = VectorXd::Constant(N, cost);
    point->objective = N * (B.trace().real() / (2.0 * M * N) + cost / (2.0 * N));
    point->toeplitz_defect = atoms.empty() ? 0.0 : block_toeplitz_defect(B, M, L);
  }
  return cost;
}

double block_toeplitz_defect(const MatrixXcd& A, int M, int L) {
  const KeyMap km(M, L);
  MatrixXcd P(M * L, M * L);
  km.fill(km.average(A), P);
  const double na = A.norm();
  return na == 0.0 ? 0.0 : (A - P).norm() / na;
}

}  // namespace driftbeam
