// SPDX-License-Identifier: Apache-2.0
#include "beamform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace driftbeam {

namespace {

double circ_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace

VectorXd uniform_grid(int n) {
  VectorXd f(n);
  for (int k = 0; k < n; ++k) f[k] = static_cast<double>(k) / n;
  return f;
}

VectorXd dual_polynomial_1d(const Tensor3& Q, const VectorXd& f_grid) {
  const int F = f_grid.size(), M = Q.M, L = Q.L, N = Q.N;
  MatrixXcd Qc(M, L * N);
  for (int n = 0; n < N; ++n) Qc.middleCols(n * L, L) = Q[n].conjugate();
  VectorXd q(F);
  const int block = 1024;
  for (int f0 = 0; f0 < F; f0 += block) {
    const int nb = std::min(block, F - f0);
    MatrixXcd A(nb, M);
    for (int i = 0; i < nb; ++i)
      for (int m = 0; m < M; ++m) A(i, m) = std::exp(kJ * (2.0 * kPi * f_grid[f0 + i] * m));
    MatrixXcd P = A * Qc;
    q.segment(f0, nb) = P.rowwise().norm();
  }
  return q;
}

std::vector<double> cluster_frequencies(const VectorXd& f_grid, const VectorXd& q, double gamma0, int K,
                                        double min_sep) {
  const int F = f_grid.size();
  if (K < 1) fail(Errc::invalid_argument, "cluster_frequencies: K must be positive");
  if (q.size() != F) fail(Errc::dimension, "cluster_frequencies: grid and values differ in length");

  Eigen::Index imin;
  q.minCoeff(&imin);
  // walk the circle starting at the minimum; unwrapped frequency keeps runs contiguous
  std::vector<double> pts;
  struct Run { double peak_f, peak_q; };
  std::vector<Run> runs;
  bool in_run = false;
  for (int s = 0; s < F; ++s) {
    int i = (static_cast<int>(imin) + s) % F;
    double f = f_grid[i] + (i < imin ? 1.0 : 0.0);
    if (q[i] >= gamma0) {
      pts.push_back(f);
      if (!in_run) runs.push_back({f, q[i]});
      else if (q[i] > runs.back().peak_q) runs.back() = {f, q[i]};
      in_run = true;
    } else {
      in_run = false;
    }
  }
  if (static_cast<int>(pts.size()) < K)
    fail(Errc::threshold, "fewer than K grid points reach gamma0; lower the threshold");

  std::stable_sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.peak_q > b.peak_q; });
  std::vector<double> c;
  for (const Run& r : runs) {
    if (static_cast<int>(c.size()) == K) break;
    bool apart = std::all_of(c.begin(), c.end(), [&](double x) { return circ_dist(x, r.peak_f) >= min_sep; });
    if (apart) c.push_back(r.peak_f);
  }
  const int Kd = c.size();

  std::vector<int> assign(pts.size(), -1);
  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      int best = 0;
      for (int k = 1; k < Kd; ++k)
        if (std::abs(pts[i] - c[k]) < std::abs(pts[i] - c[best])) best = k;
      if (best != assign[i]) {
        assign[i] = best;
        changed = true;
      }
    }
    std::vector<double> sum(Kd, 0.0);
    std::vector<int> cnt(Kd, 0);
    for (size_t i = 0; i < pts.size(); ++i) {
      sum[assign[i]] += pts[i];
      ++cnt[assign[i]];
    }
    for (int k = 0; k < Kd; ++k)
      if (cnt[k]) c[k] = sum[k] / cnt[k];
    if (!changed) break;
  }
  // unresolved sources repeat the strongest center
  while (static_cast<int>(c.size()) < K) c.push_back(c[0]);
  for (auto& x : c) x = std::fmod(x, 1.0);
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<double> order_desired_first(std::vector<double> f, std::optional<double> hint) {
  if (f.empty()) return f;
  size_t best = 0;
  for (size_t k = 1; k < f.size(); ++k) {
    bool better = hint ? circ_dist(f[k], *hint) < circ_dist(f[best], *hint) : f[k] < f[best];
    if (better) best = k;
  }
  std::rotate(f.begin(), f.begin() + best, f.begin() + best + 1);
  return f;
}

VectorXcd estimate_sign_alpha1(const MatrixXcd& X1, const std::vector<double>& f, double min_sep) {
  const int M = X1.rows(), K = f.size();
  if (K == 0) fail(Errc::invalid_argument, "estimate_sign_alpha1: no frequencies");
  for (int a = 0; a < K; ++a)
    for (int b = a + 1; b < K; ++b)
      if (circ_dist(f[a], f[b]) <= min_sep)
        fail(Errc::duplicate_frequency,
             "estimated frequencies coincide; the 1D pipeline cannot separate them (use the 2D method)");
  MatrixXcd A(M, K);
  for (int k = 0; k < K; ++k) A.col(k) = tone(f[k], M);
  Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(A);
  cod.setThreshold(1e-10);
  if (cod.rank() < K)
    fail(Errc::duplicate_frequency, "frequency matrix is rank deficient; use the 2D method");
  MatrixXcd coef = cod.solve(X1);
  VectorXcd r = coef.row(0).transpose();
  double nr = r.norm();
  if (nr == 0.0) fail(Errc::numerical, "estimate_sign_alpha1: zero coefficient row");
  return r / nr;
}

VectorXcd reconstruct_s1(double f1, const VectorXcd& sign_alpha1, const MatrixXd& S) {
  if (S.cols() != sign_alpha1.size()) fail(Errc::dimension, "reconstruct_s1: coefficient length differs from L");
  return tone(f1, S.rows()).cwiseProduct(S.cast<cplx>() * sign_alpha1);
}

VectorXcd smi_weights(const MatrixXcd& X, const VectorXcd& s, bool* rank_deficient) {
  if (X.rows() != s.size()) fail(Errc::dimension, "smi_weights: pilot length differs from snapshot count");
  Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(X);
  if (rank_deficient) *rank_deficient = cod.rank() < X.cols();
  return cod.solve(s);
}

VectorXcd smi_baseline_weights(const MatrixXcd& X, double f1) { return smi_weights(X, tone(f1, X.rows())); }

double pattern_gain(const VectorXcd& w, const ArrayConfig& cfg, double theta_deg) {
  return std::abs((steering_vector(theta_deg, cfg) * w)(0));
}

std::vector<std::pair<double, double>> radiation_pattern(const VectorXcd& w, const ArrayConfig& cfg,
                                                         const VectorXd& theta_grid) {
  if (w.size() != cfg.N()) fail(Errc::dimension, "radiation_pattern: weight length differs from N");
  if (w.norm() == 0.0) fail(Errc::invalid_argument, "radiation_pattern: zero weight vector");
  std::vector<double> g(theta_grid.size());
  double gmax = 0.0;
  for (int i = 0; i < theta_grid.size(); ++i) {
    g[i] = pattern_gain(w, cfg, theta_grid[i]);
    gmax = std::max(gmax, g[i]);
  }
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < theta_grid.size(); ++i)
    out.emplace_back(theta_grid[i], 20.0 * std::log10(std::max(g[i], 1e-300) / gmax));
  return out;
}

double relative_gain_db(const VectorXcd& w, const ArrayConfig& cfg, double theta_deg, double theta_ref_deg) {
  return 20.0 * std::log10(std::max(pattern_gain(w, cfg, theta_deg), 1e-300) /
                           std::max(pattern_gain(w, cfg, theta_ref_deg), 1e-300));
}

}  // namespace driftbeam
