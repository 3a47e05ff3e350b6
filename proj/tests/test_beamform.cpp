#include "array_model.hpp"
#include "beamform.hpp"
#include "dpss.hpp"
#include "tensor_ops.hpp"

#include <doctest.h>

#include <random>

using namespace driftbeam;

TEST_CASE("uniform grid") {
  VectorXd f = uniform_grid(8);
  CHECK(f[0] == 0.0);
  CHECK(f[7] == doctest::Approx(0.875));
}

TEST_CASE("1D dual polynomial matches its definition") {
  std::mt19937_64 g(9);
  std::normal_distribution<double> n;
  Tensor3 Q(7, 2, 3);
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 7; ++m)
      for (int l = 0; l < 2; ++l) Q[k](m, l) = {n(g), n(g)};
  VectorXd fg = uniform_grid(2500);  // crosses the block boundary
  VectorXd q = dual_polynomial_1d(Q, fg);
  for (int i : {0, 17, 1023, 1024, 2499}) {
    VectorXcd a = tone(fg[i], 7);
    double s = 0;
    for (int k = 0; k < 3; ++k) s += (Q[k].adjoint() * a).squaredNorm();
    CHECK(q[i] == doctest::Approx(std::sqrt(s)));
  }
}

TEST_CASE("clustering plateaus of different widths") {
  const int F = 100;
  VectorXd fg = uniform_grid(F), q = VectorXd::Zero(F);
  // plateaus centered at 20, 50, 80 with widths 3, 5, 7
  for (int i = 19; i <= 21; ++i) q[i] = 1.0;
  for (int i = 48; i <= 52; ++i) q[i] = 1.0;
  for (int i = 77; i <= 83; ++i) q[i] = 1.0;
  auto c = cluster_frequencies(fg, q, 0.9, 3);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(0.20));
  CHECK(c[1] == doctest::Approx(0.50));
  CHECK(c[2] == doctest::Approx(0.80));
}

TEST_CASE("clustering across the wrap point") {
  const int F = 100;
  VectorXd fg = uniform_grid(F), q = VectorXd::Constant(F, 0.1);
  for (int i : {98, 99, 0, 1, 2}) q[i] = 1.0;
  for (int i = 40; i <= 42; ++i) q[i] = 1.0;
  q[60] = 0.0;
  auto c = cluster_frequencies(fg, q, 0.9, 2);
  REQUIRE(c.size() == 2);
  auto near = [&](double t) {
    for (double x : c)
      if (std::min(std::abs(x - t), 1.0 - std::abs(x - t)) < 1e-9) return true;
    return false;
  };
  CHECK(near(0.0));
  CHECK(near(0.41));
}

TEST_CASE("a single run with K = 2 gives duplicate centers") {
  VectorXd fg = uniform_grid(50), q = VectorXd::Zero(50);
  for (int i = 10; i <= 14; ++i) q[i] = 1.0 - 0.01 * std::abs(i - 12);
  auto c = cluster_frequencies(fg, q, 0.9, 2);
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(estimate_sign_alpha1(MatrixXcd::Ones(16, 2), c, 1.0 / 32), Error);
  CHECK_THROWS_AS(cluster_frequencies(fg, q, 2.0, 1), Error);
}

TEST_CASE("seeds closer than min_sep come from one source") {
  // two ripple peaks around 0.2 and one at 0.6
  VectorXd fg = uniform_grid(100), q = VectorXd::Zero(100);
  q[18] = 1.0;
  q[22] = 0.99;
  q[60] = 0.98;
  auto c = cluster_frequencies(fg, q, 0.9, 2, 0.1);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(0.2));
  CHECK(c[1] == doctest::Approx(0.6));
}

TEST_CASE("ordering by hint") {
  auto f = order_desired_first({0.1, 0.3, 0.95}, 0.02);
  CHECK(f[0] == 0.95);
  f = order_desired_first({0.5, 0.3, 0.7}, std::nullopt);
  CHECK(f[0] == 0.3);
  CHECK(f.size() == 3);
  f = order_desired_first({0.5, 0.3, 0.7}, 0.69);
  CHECK(f[0] == 0.7);
}

TEST_CASE("sign estimate recovers the first coefficient vector") {
  const int M = 60, L = 3;
  auto S = dpss_basis(M, double(L) / (2 * M), L).S;
  std::vector<double> f = {0.1, 0.35, 0.7};
  std::mt19937_64 g(10);
  std::normal_distribution<double> n;
  MatrixXcd X = MatrixXcd::Zero(M, L);
  VectorXcd a1(L);
  for (int l = 0; l < L; ++l) a1[l] = {n(g), n(g)};
  for (int k = 0; k < 3; ++k) {
    VectorXcd row(L);
    for (int l = 0; l < L; ++l) row[l] = {n(g), n(g)};
    if (k == 0) row = a1;
    X += tone(f[k], M) * row.transpose();
  }
  VectorXcd est = estimate_sign_alpha1(X, f);
  CHECK((est - a1 / a1.norm()).norm() < 1e-10);
  VectorXcd s1 = reconstruct_s1(0.1, est, S);
  CHECK(s1.size() == M);
  CHECK((s1 - tone(0.1, M).cwiseProduct(S.cast<cplx>() * est)).norm() == 0.0);
  CHECK_THROWS_AS(reconstruct_s1(0.1, VectorXcd::Ones(2), S), Error);
}

TEST_CASE("duplicate frequencies are rejected") {
  MatrixXcd X = MatrixXcd::Ones(20, 2);
  try {
    estimate_sign_alpha1(X, {0.3, 0.3});
    FAIL("expected duplicate_frequency");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_frequency);
  }
  try {
    estimate_sign_alpha1(X, {0.3, 0.31}, 0.025);
    FAIL("expected duplicate_frequency");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_frequency);
  }
  CHECK_NOTHROW(estimate_sign_alpha1(X, {0.3, 0.4}, 0.025));
}

TEST_CASE("least-squares weights place nulls on interferers") {
  auto cfg = ArrayConfig::ula(4);
  const int M = 200;
  std::vector<SourceSpec> v;
  const double th[3] = {0, 30, -30}, f[3] = {0.1, 0.37, 0.62};
  for (int k = 0; k < 3; ++k) {
    SourceSpec s;
    s.theta_deg = th[k];
    s.carrier = f[k];
    v.push_back(s);
  }
  MatrixXcd X = build_data_matrix(v, cfg, M);
  bool rd = true;
  VectorXcd w = smi_weights(X, tone(0.1, M), &rd);
  CHECK_FALSE(rd);
  CHECK(relative_gain_db(w, cfg, 30, 0) < -40);
  CHECK(relative_gain_db(w, cfg, -30, 0) < -40);
  VectorXcd wb = smi_baseline_weights(X, 0.1);
  CHECK((w - wb).norm() == 0.0);
  // normal equations
  CHECK((X.adjoint() * (X * w - tone(0.1, M))).norm() < 1e-8 * M);

  MatrixXcd Xr(5, 3);
  Xr.col(0) = tone(0.1, 5);
  Xr.col(1) = Xr.col(0);
  Xr.col(2) = tone(0.3, 5);
  smi_weights(Xr, tone(0.1, 5), &rd);
  CHECK(rd);
  CHECK_THROWS_AS(smi_weights(X, tone(0.1, M - 1)), Error);
}

TEST_CASE("radiation pattern") {
  auto cfg = ArrayConfig::ula(4);
  VectorXcd w = steering_vector(0, cfg).adjoint();
  VectorXd th(3);
  th << -30, 0, 30;
  auto p = radiation_pattern(w, cfg, th);
  CHECK(p[1].second == doctest::Approx(0.0));
  CHECK(p[0].second < 0.0);
  CHECK(p[0].second == doctest::Approx(p[2].second));
  CHECK(pattern_gain(w, cfg, 0) == doctest::Approx(4.0));
  // broadside null of a 4-element half-wave array at sin(theta) = 1/2
  CHECK(relative_gain_db(w, cfg, 30, 0) < -200);
  CHECK_THROWS_AS(radiation_pattern(VectorXcd::Zero(4), cfg, th), Error);
  CHECK_THROWS_AS(radiation_pattern(VectorXcd::Ones(3), cfg, th), Error);
}

TEST_CASE("time reversal conjugates the frequency estimate") {
  const int M = 32;
  Tensor3 Q(M, 1, 1);
  Q[0].col(0) = tone(0.2, M) / double(M);
  VectorXd fg = uniform_grid(1000);
  VectorXd q = dual_polynomial_1d(Q, fg);
  Tensor3 R(M, 1, 1);
  R[0].col(0) = Q[0].col(0).conjugate();
  VectorXd r = dual_polynomial_1d(R, fg);
  Eigen::Index i, j;
  q.maxCoeff(&i);
  r.maxCoeff(&j);
  CHECK(fg[i] == doctest::Approx(0.2));
  CHECK(fg[j] == doctest::Approx(0.8));
}
