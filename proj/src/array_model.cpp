// SPDX-License-Identifier: Apache-2.0
#include "array_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace driftbeam {

ArrayConfig ArrayConfig::ula(int N, double spacing) {
  if (N < 2) fail(Errc::invalid_argument, "array needs at least 2 elements");
  ArrayConfig c;
  c.positions.resize(N);
  for (int n = 0; n < N; ++n) c.positions[n] = n * spacing - (N - 1) * spacing / 2.0;
  return c;
}

bool ArrayConfig::equispaced(double tol) const {
  if (N() < 2) return false;
  double d = positions[1] - positions[0];
  for (int n = 2; n < N(); ++n)
    if (std::abs(positions[n] - positions[n - 1] - d) > tol) return false;
  return std::abs(d) > tol;
}

void ArrayConfig::validate() const {
  if (N() < 2) fail(Errc::invalid_argument, "array needs at least 2 elements");
  for (int n = 0; n < N(); ++n) {
    if (!std::isfinite(positions[n])) fail(Errc::invalid_argument, "non-finite element position");
    for (int k = 0; k < n; ++k)
      if (positions[k] == positions[n]) fail(Errc::invalid_argument, "duplicate element position");
  }
  if (!(k0 > 0) || !std::isfinite(k0)) fail(Errc::invalid_argument, "wavenumber must be positive");
}

const char* to_string(OffsetKind k) {
  switch (k) {
    case OffsetKind::Static: return "static";
    case OffsetKind::Linear: return "linear";
    case OffsetKind::Zigzag: return "zigzag";
    case OffsetKind::Random: return "random";
  }
  return "?";
}

OffsetKind offset_kind_from_string(const std::string& s) {
  if (s == "static") return OffsetKind::Static;
  if (s == "linear") return OffsetKind::Linear;
  if (s == "zigzag") return OffsetKind::Zigzag;
  if (s == "random") return OffsetKind::Random;
  fail(Errc::config, "unknown offset kind '" + s + "'");
}

VectorXcd tone(double f, int M) {
  VectorXcd a(M);
  for (int m = 0; m < M; ++m) a[m] = std::exp(kJ * (2.0 * kPi * f * m));
  return a;
}

Eigen::RowVectorXcd steering_vector(double theta_deg, const ArrayConfig& cfg) {
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
    fail(Errc::domain, "angle " + std::to_string(theta_deg) + " outside [-90, 90] degrees");
  const double s = std::sin(theta_deg * kPi / 180.0);
  Eigen::RowVectorXcd v(cfg.N());
  for (int n = 0; n < cfg.N(); ++n) v[n] = std::exp(kJ * (cfg.k0 * s * cfg.positions[n]));
  return v;
}

OffsetTrajectory make_offset(const OffsetParams& p, int M) {
  if (M < 2) fail(Errc::invalid_argument, "offset trajectory needs M >= 2");
  OffsetTrajectory t;
  t.params = p;
  t.delta = VectorXd::Zero(M);
  switch (p.kind) {
    case OffsetKind::Static:
      t.delta.setConstant(p.value);
      break;
    case OffsetKind::Linear:
      for (int m = 0; m < M; ++m) t.delta[m] = p.slope * m;
      break;
    case OffsetKind::Zigzag: {
      if (p.half_period < 1) fail(Errc::invalid_argument, "zigzag half-period must be >= 1");
      const int P = p.half_period;
      for (int m = 0; m < M; ++m) {
        int r = m % (2 * P);
        t.delta[m] = p.slope * (r <= P ? r : 2 * P - r);
      }
      break;
    }
    case OffsetKind::Random: {
      if (!(p.bound > 0)) fail(Errc::invalid_argument, "random offset bound must be positive");
      std::mt19937_64 gen(p.seed);
      std::normal_distribution<double> g(0.0, 1.0);
      const double sigma = 2.0 * p.bound / std::sqrt(static_cast<double>(M));
      for (int m = 1; m < M; ++m)
        t.delta[m] = std::clamp(t.delta[m - 1] + sigma * g(gen), -p.bound, p.bound);
      break;
    }
  }
  if (t.delta.cwiseAbs().maxCoeff() >= 1.0)
    fail(Errc::invalid_argument, "offset magnitude reaches 1 cycle/sample");
  return t;
}

VectorXcd synthesize_source(const SourceSpec& spec, int M, bool instantaneous) {
  // an empty trajectory means no offset
  const VectorXd d = spec.offset.delta.size() ? spec.offset.delta : VectorXd::Zero(M);
  if (d.size() != M) fail(Errc::dimension, "offset length does not match M");
  for (int m = 0; m < M; ++m)
    if (std::abs(spec.carrier + d[m]) >= 1.0)
      fail(Errc::invalid_argument, "carrier plus offset leaves (-1, 1)");
  VectorXcd s(M);
  double phi = 0.0;
  for (int m = 0; m < M; ++m) {
    double ph = instantaneous ? (spec.carrier + d[m]) * m : spec.carrier * m + phi;
    s[m] = spec.amplitude * std::exp(kJ * (2.0 * kPi * ph));
    phi += d[m];
  }
  return s;
}

MatrixXcd build_data_matrix(const std::vector<SourceSpec>& specs, const ArrayConfig& cfg, int M,
                            bool instantaneous) {
  if (specs.empty()) fail(Errc::invalid_argument, "no sources");
  cfg.validate();
  MatrixXcd X = MatrixXcd::Zero(M, cfg.N());
  for (const auto& sp : specs)
    X.noalias() += synthesize_source(sp, M, instantaneous) * steering_vector(sp.theta_deg, cfg);
  return X;
}

int numerical_rank(const MatrixXcd& X, double tol) {
  Eigen::JacobiSVD<MatrixXcd> svd(X);
  const VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++r;
  return r;
}

}  // namespace driftbeam
