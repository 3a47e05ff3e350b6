// SPDX-License-Identifier: Apache-2.0
#include "ivdst.hpp"

#include "psd.hpp"
#include "tensor_ops.hpp"

#include <cmath>
#include <random>

namespace driftbeam {

namespace {

double constraint_drift(const std::vector<MatrixXcd>& H) {
  double tr = 0.0, worst = 0.0;
  for (const auto& h : H) {
    tr += h.diagonal().real().sum();
    const int M = h.rows();
    for (int j = 1; j < M; ++j) {
      cplx s = 0;
      for (int m = 0; m + j < M; ++m) s += h(m, m + j);
      worst = std::max(worst, std::abs(s));
    }
  }
  return std::max(std::abs(tr - 1.0), worst);
}

}  // namespace

IvdstState ivdst_init(int M, int L, int N, std::uint64_t seed) {
  if (M < 1 || L < 1 || N < 1) fail(Errc::invalid_argument, "ivdst_init: dimensions must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  IvdstState s;
  s.Q = Tensor3(M, L, N);
  for (int n = 0; n < N; ++n)
    for (int l = 0; l < L; ++l)
      for (int m = 0; m < M; ++m) {
        double re = g(gen);
        double im = g(gen);
        s.Q[n](m, l) = cplx(re, im);
      }
  s.Q_prev = s.Q;
  for (int n = 0; n < N; ++n) s.H.push_back(s.Q[n] * s.Q[n].adjoint());
  s.H_prev = s.H;
  return s;
}

double ivdst_next_t(double t) { return (1.0 + std::sqrt(4.0 * t * t + 1.0)) / 2.0; }

std::vector<MatrixXcd> ivdst_reproject_H(const std::vector<MatrixXcd>& Hg) {
  double tot = 0.0;
  for (const auto& h : Hg) tot += h.diagonal().real().sum();
  if (!(std::abs(tot) > 0.0)) fail(Errc::numerical, "IVDST: H has zero total trace");
  std::vector<MatrixXcd> out;
  for (const auto& h : Hg) {
    const int M = h.rows();
    MatrixXcd t(M, M);
    for (int m = 0; m < M; ++m) t(m, m) = h(m, m).real() / tot;
    for (int j = 1; j < M; ++j) {
      cplx mu = 0;
      for (int m = 0; m + j < M; ++m) mu += h(m, m + j);
      mu /= double(M - j);
      for (int m = 0; m + j < M; ++m) {
        t(m, m + j) = h(m, m + j) - mu;
        t(m + j, m) = std::conj(t(m, m + j));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

double ivdst_iterate(IvdstState& s, const Tensor3& Xadj, double eta) {
  const int M = s.Q.M, L = s.Q.L, N = s.Q.N;
  const double t_new = ivdst_next_t(s.t);
  const double beta = (s.t - 1.0) / t_new;

  Tensor3 Qg(M, L, N);
  std::vector<MatrixXcd> Hg(N);
  for (int n = 0; n < N; ++n) {
    Qg[n] = s.Q[n] + beta * (s.Q[n] - s.Q_prev[n]) + eta * Xadj[n];
    Hg[n] = s.H[n] + beta * (s.H[n] - s.H_prev[n]);
  }
  std::vector<MatrixXcd> Ht = ivdst_reproject_H(Hg);

  Tensor3 Qn(M, L, N);
  std::vector<MatrixXcd> Hn(N);
  MatrixXcd Z(M + L, M + L);
  for (int n = 0; n < N; ++n) {
    Z.topLeftCorner(M, M) = Ht[n];
    Z.topRightCorner(M, L) = -Qg[n];
    Z.bottomLeftCorner(L, M) = -Qg[n].adjoint();
    Z.bottomRightCorner(L, L).setIdentity();
    MatrixXcd Zt = psd_project(Z);
    Hn[n] = Zt.topLeftCorner(M, M);
    Qn[n] = -Zt.topRightCorner(M, L);
  }
  s.Q_prev = std::move(s.Q);
  s.Q = std::move(Qn);
  s.H_prev = std::move(s.H);
  s.H = std::move(Hn);
  s.t = t_new;
  ++s.iter;
  return constraint_drift(s.H);
}

IvdstResult ivdst_solve(const MatrixXcd& Xstar, const MatrixXd& S, const IvdstParams& p) {
  if (!(p.eta > 0) || p.iters < 1 || p.decay_every < 1)
    fail(Errc::invalid_argument, "ivdst_solve: invalid parameters");
  if (S.rows() != Xstar.rows()) fail(Errc::dimension, "ivdst_solve: basis rows differ from snapshot count");
  const Tensor3 Xadj = apply_L_adjoint(Xstar, S);
  IvdstState s = ivdst_init(Xstar.rows(), S.cols(), Xstar.cols(), p.seed);
  IvdstResult r;
  double eta = p.eta;
  for (int i = 1; i <= p.iters; ++i) {
    if (i > 1 && (i - 1) % p.decay_every == 0) eta *= p.decay;
    double drift = ivdst_iterate(s, Xadj, eta);
    double obj = inner(Xadj, s.Q);  // Re<X*, L(Q)> = Re<L*(X*), Q>
    r.trace.push_back({i, obj, drift});
  }
  r.Q = std::move(s.Q);
  return r;
}

}  // namespace driftbeam
