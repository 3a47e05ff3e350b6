#include "array_model.hpp"

#include <doctest.h>

#include <random>

using namespace driftbeam;

TEST_CASE("steering vector at broadside is all ones") {
  auto cfg = ArrayConfig::ula(5);
  auto v = steering_vector(0.0, cfg);
  for (int n = 0; n < 5; ++n) CHECK(std::abs(v[n] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("steering vector is conjugate symmetric in angle") {
  auto cfg = ArrayConfig::ula(4);
  auto a = steering_vector(-20.0, cfg), b = steering_vector(20.0, cfg);
  CHECK((a - b.conjugate()).norm() < 1e-14);
}

TEST_CASE("steering vector at 30 degrees") {
  auto cfg = ArrayConfig::ula(4);
  CHECK(cfg.positions[0] == doctest::Approx(-0.75));
  CHECK(cfg.positions[3] == doctest::Approx(0.75));
  auto v = steering_vector(30.0, cfg);
  for (int n = 0; n < 4; ++n) {
    cplx want = std::exp(kJ * (kPi * cfg.positions[n]));
    CHECK(std::abs(v[n] - want) < 1e-12);
    CHECK(std::abs(std::abs(v[n]) - 1.0) < 1e-12);
  }
}

TEST_CASE("steering vector rejects angles outside [-90, 90]") {
  auto cfg = ArrayConfig::ula(4);
  CHECK_THROWS_AS(steering_vector(91.0, cfg), Error);
  try {
    steering_vector(-95.0, cfg);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::domain);
  }
}

TEST_CASE("array config validation") {
  ArrayConfig c;
  c.positions = VectorXd::Zero(1);
  CHECK_THROWS_AS(c.validate(), Error);
  c.positions = (VectorXd(3) << 0.0, 0.5, 0.5).finished();
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(ArrayConfig::ula(4).equispaced());
  c.positions = (VectorXd(3) << 0.0, 0.5, 1.5).finished();
  CHECK_FALSE(c.equispaced());
}

TEST_CASE("offset trajectories") {
  OffsetParams p;
  SUBCASE("static zero") {
    auto t = make_offset(p, 120);
    CHECK(t.delta.size() == 120);
    CHECK(t.delta.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("linear") {
    p.kind = OffsetKind::Linear;
    p.slope = 0.0005;
    auto t = make_offset(p, 120);
    CHECK(t.delta[119] == doctest::Approx(0.0595).epsilon(1e-12));
    CHECK(t.delta[0] == 0.0);
  }
  SUBCASE("zigzag") {
    p.kind = OffsetKind::Zigzag;
    p.slope = 0.001;
    p.half_period = 30;
    auto t = make_offset(p, 120);
    CHECK(t.delta[30] == doctest::Approx(0.030));
    CHECK(std::abs(t.delta[60]) < 1e-15);
    CHECK(t.delta[15] == doctest::Approx(0.015));
    CHECK(t.delta[45] == doctest::Approx(0.015));
    CHECK(t.delta[90] == doctest::Approx(0.030));
  }
  SUBCASE("random walk is bounded and seeded") {
    p.kind = OffsetKind::Random;
    p.bound = 0.01;
    p.seed = 7;
    auto a = make_offset(p, 200), b = make_offset(p, 200);
    CHECK(a.delta.cwiseAbs().maxCoeff() <= 0.01);
    CHECK((a.delta - b.delta).norm() == 0.0);
    p.seed = 8;
    CHECK((make_offset(p, 200).delta - a.delta).norm() > 0.0);
    // smooth: steps far smaller than the bound on average
    double mean_step = (a.delta.tail(199) - a.delta.head(199)).cwiseAbs().mean();
    CHECK(mean_step < 0.01);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(make_offset(p, 1), Error);
    p.kind = OffsetKind::Linear;
    p.slope = 0.01;
    CHECK_THROWS_AS(make_offset(p, 120), Error);
  }
}

TEST_CASE("source synthesis") {
  const int M = 64;
  SourceSpec s;
  s.carrier = 0.13;
  s.offset = make_offset(OffsetParams{}, M);
  SUBCASE("zero offset reproduces a(f)") {
    CHECK((synthesize_source(s, M) - tone(0.13, M)).norm() < 1e-12);
  }
  SUBCASE("static offset shifts the carrier") {
    OffsetParams p;
    p.value = 0.004;
    s.offset = make_offset(p, M);
    VectorXcd x = synthesize_source(s, M), y = tone(0.134, M);
    cplx ph = x[0] / y[0];
    CHECK(std::abs(std::abs(ph) - 1.0) < 1e-12);
    CHECK((x - ph * y).norm() < 1e-10);
  }
  SUBCASE("amplitude sets the modulus") {
    s.amplitude = {0.0, 2.0};
    CHECK(synthesize_source(s, M).cwiseAbs().maxCoeff() == doctest::Approx(2.0));
    CHECK(synthesize_source(s, M).cwiseAbs().minCoeff() == doctest::Approx(2.0));
  }
  SUBCASE("instantaneous convention differs from cumulative phase") {
    OffsetParams p;
    p.kind = OffsetKind::Linear;
    p.slope = 1e-4;
    s.offset = make_offset(p, M);
    VectorXcd fm = synthesize_source(s, M), inst = synthesize_source(s, M, true);
    // cumulative phase at m is sum_{i<m} 1e-4 i = 1e-4 m (m - 1) / 2
    const int m = 40;
    double want = 2 * kPi * (0.13 * m + 1e-4 * m * (m - 1) / 2.0);
    CHECK(std::abs(fm[m] - std::exp(kJ * want)) < 1e-10);
    CHECK(std::abs(inst[m] - std::exp(kJ * (2 * kPi * (0.13 + 1e-4 * m) * m))) < 1e-10);
  }
}

TEST_CASE("linear drift stays concentrated in the DPSS band") {
  const int M = 120, L = 10;
  const double W = L / (2.0 * M);
  SourceSpec s;
  s.carrier = 0.1;
  OffsetParams p;
  p.kind = OffsetKind::Linear;
  p.slope = 1.2e-4;
  s.offset = make_offset(p, M);
  VectorXcd x = synthesize_source(s, M);
  // DTFT energy on a dense grid; Parseval gives the total
  const int G = 1 << 14;
  double in = 0, tot = 0;
  for (int g = 0; g < G; ++g) {
    double f = double(g) / G;
    cplx X = 0;
    for (int m = 0; m < M; ++m) X += x[m] * std::exp(-kJ * (2 * kPi * f * m));
    double e = std::norm(X);
    tot += e;
    double d = std::fmod(f - 0.1 + 1.5, 1.0) - 0.5;
    if (std::abs(d) <= W) in += e;
  }
  CHECK(tot / G == doctest::Approx(M).epsilon(1e-9));
  CHECK(in / tot >= 0.95);
}

TEST_CASE("data matrix") {
  auto cfg = ArrayConfig::ula(4);
  const int M = 120;
  SUBCASE("single broadside source is s 1^T") {
    SourceSpec s;
    s.carrier = 0.2;
    s.offset = make_offset(OffsetParams{}, M);
    MatrixXcd X = build_data_matrix({s}, cfg, M);
    for (int n = 0; n < 4; ++n) CHECK((X.col(n) - tone(0.2, M)).norm() < 1e-12);
    CHECK(numerical_rank(X) == 1);
  }
  SUBCASE("three-source setup has rank 3") {
    std::vector<SourceSpec> v;
    const double th[3] = {-20, -60, 20}, f[3] = {0.1, 0.3, 0.5};
    for (int k = 0; k < 3; ++k) {
      SourceSpec s;
      s.theta_deg = th[k];
      s.carrier = f[k];
      s.offset = make_offset(OffsetParams{}, M);
      v.push_back(s);
    }
    CHECK(numerical_rank(build_data_matrix(v, cfg, M)) == 3);
  }
  SUBCASE("identical sources collapse to rank 1") {
    SourceSpec s;
    s.theta_deg = 10;
    s.carrier = 0.3;
    s.offset = make_offset(OffsetParams{}, M);
    CHECK(numerical_rank(build_data_matrix({s, s}, cfg, M)) == 1);
  }
  SUBCASE("linear in amplitude") {
    SourceSpec a, b;
    a.theta_deg = -30;
    a.carrier = 0.1;
    a.offset = make_offset(OffsetParams{}, M);
    b = a;
    b.theta_deg = 40;
    b.carrier = 0.6;
    MatrixXcd X1 = build_data_matrix({a, b}, cfg, M);
    a.amplitude *= 2.0;
    MatrixXcd X2 = build_data_matrix({a, b}, cfg, M);
    a.amplitude = 1.0;
    MatrixXcd Xa = build_data_matrix({a}, cfg, M);
    CHECK((X2 - X1 - Xa).norm() < 1e-12);
  }
  SUBCASE("empty source list") { CHECK_THROWS_AS(build_data_matrix({}, cfg, M), Error); }
}

TEST_CASE("numerical rank matches distinct sources on small random instances") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> U(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 8 + trial % 25, N = 2 + trial % 3, K = 1 + trial % std::min(3, N);
    auto cfg = ArrayConfig::ula(N);
    std::vector<SourceSpec> v;
    for (int k = 0; k < K; ++k) {
      SourceSpec s;
      s.theta_deg = -80 + 160 * U(gen);
      s.carrier = U(gen) * 0.9;
      s.offset = make_offset(OffsetParams{}, M);
      v.push_back(s);
    }
    CHECK(numerical_rank(build_data_matrix(v, cfg, M)) == K);
  }
}
