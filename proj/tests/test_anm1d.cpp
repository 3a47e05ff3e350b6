#include "anm1d.hpp"
#include "array_model.hpp"
#include "beamform.hpp"
#include "dpss.hpp"
#include "psd.hpp"
#include "tensor_ops.hpp"

#include <doctest.h>

#include <random>

using namespace driftbeam;

namespace {

struct Fixture {
  MatrixXcd X;
  MatrixXd S;
};

Fixture single_source(int M, int L, int N, double f, double delta) {
  auto cfg = ArrayConfig::ula(N);
  SourceSpec s;
  s.theta_deg = 25;
  s.carrier = f;
  OffsetParams p;
  p.value = delta;
  s.offset = make_offset(p, M);
  return {build_data_matrix({s}, cfg, M), dpss_basis(M, double(L) / (2 * M), L).S};
}

}  // namespace

TEST_CASE("fidelity projection with eps = 0 is exact") {
  std::mt19937_64 g(5);
  std::normal_distribution<double> n;
  const int M = 12, L = 3, N = 2;
  auto S = dpss_basis(M, 0.1, L).S;
  Tensor3 C(M, L, N);
  MatrixXcd Xs(M, N);
  for (int k = 0; k < N; ++k) {
    for (int m = 0; m < M; ++m) {
      Xs(m, k) = {n(g), n(g)};
      for (int l = 0; l < L; ++l) C[k](m, l) = {n(g), n(g)};
    }
  }
  Tensor3 X = project_fidelity(C, Xs, S, 0.0);
  CHECK((apply_L(X, S) - Xs).norm() < 1e-10);
  // idempotent
  Tensor3 X2 = project_fidelity(X, Xs, S, 0.0);
  Tensor3 D = X2;
  for (int k = 0; k < N; ++k) D[k] -= X[k];
  CHECK(D.norm() < 1e-10);
  // the correction lies in the range of L*, so the result is the closest feasible point
  Tensor3 C2 = C;
  for (int k = 0; k < N; ++k) C2[k] += 0.1 * (X[k] - C[k]);
  Tensor3 Xb = project_fidelity(C2, Xs, S, 0.0);
  for (int k = 0; k < N; ++k) D[k] = Xb[k] - X[k];
  CHECK(D.norm() < 1e-10);
}

TEST_CASE("fidelity projection with eps > 0 lands on the ball") {
  std::mt19937_64 g(6);
  std::normal_distribution<double> n;
  const int M = 10, L = 2, N = 3;
  auto S = dpss_basis(M, 0.1, L).S;
  Tensor3 C(M, L, N);
  MatrixXcd Xs(M, N);
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < M; ++m) Xs(m, k) = {n(g), n(g)};
  const double r0 = Xs.norm();
  for (double eps : {0.1 * r0, 0.5 * r0}) {
    Tensor3 X = project_fidelity(C, Xs, S, eps);
    CHECK((Xs - apply_L(X, S)).norm() == doctest::Approx(eps).epsilon(1e-8));
  }
  Tensor3 X = project_fidelity(C, Xs, S, 2 * r0);
  CHECK(X.norm() == 0.0);
}

TEST_CASE("zero data gives the zero solution") {
  auto S = dpss_basis(8, 0.1, 2).S;
  auto sol = solve_sdp_1d(MatrixXcd::Zero(8, 2), S);
  CHECK(sol.X_hat.norm() == 0.0);
  CHECK(sol.Q_star.norm() == 0.0);
  CHECK(sol.objective == 0.0);
  CHECK(sol.converged);
}

TEST_CASE("single source: dual polynomial peaks at the carrier") {
  const int M = 16, L = 2, N = 3;
  const double f = 0.3;
  auto fx = single_source(M, L, N, f, 0.0);
  auto sol = solve_sdp_1d(fx.X, fx.S);
  CHECK(sol.converged);
  CHECK(sol.fidelity / fx.X.norm() < 1e-4);
  auto grid = uniform_grid(4096);
  VectorXd q = dual_polynomial_1d(sol.Q_star, grid);
  Eigen::Index i;
  double qmax = q.maxCoeff(&i);
  // the atom frequency is identified up to the DPSS half bandwidth
  CHECK(std::abs(grid[i] - f) <= double(L) / (2 * M));
  CHECK(qmax <= 1.0 + 1e-2);
  CHECK(qmax >= 1.0 - 1e-2);
  CHECK(dual_feasibility_check(sol.Q_star, 4 * M) <= 1.0 + 1e-2);
}

TEST_CASE("single source: duality gap, PSD blocks and Toeplitz structure") {
  const int M = 16, L = 2, N = 3;
  auto fx = single_source(M, L, N, 0.12, 0.001);
  auto sol = solve_sdp_1d(fx.X, fx.S);
  REQUIRE(sol.converged);
  CHECK(std::abs(sol.objective - sol.dual_objective) <= 1e-3 * sol.objective);
  CHECK(sol.min_block_eig >= -1e-4 * fx.X.norm());
  for (int n = 1; n < N; ++n) CHECK(sol.u[n][0] == sol.u[0][0]);
  for (int n = 0; n < N; ++n) {
    CHECK(sol.u[n].size() == M);
    CHECK((sol.Wcal[n] - sol.Wcal[n].adjoint()).norm() < 1e-10 * fx.X.norm());
    MatrixXcd Y(M + L, M + L);
    Y.topLeftCorner(M, M) = toeplitz_hermitian(sol.u[n]);
    Y.topRightCorner(M, L) = sol.X_hat[n];
    Y.bottomLeftCorner(L, M) = sol.X_hat[n].adjoint();
    Y.bottomRightCorner(L, L) = sol.Wcal[n];
    CHECK(min_eigenvalue(Y) >= -1e-4 * fx.X.norm());
  }
  // objective from the returned blocks
  double obj = 0.5 * sol.u[0][0].real();
  for (const auto& w : sol.Wcal) obj += 0.5 * w.trace().real();
  CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-9));
}

TEST_CASE("objective scales linearly with the data") {
  const int M = 12, L = 2, N = 2;
  auto fx = single_source(M, L, N, 0.2, 0.0);
  auto a = solve_sdp_1d(fx.X, fx.S);
  auto b = solve_sdp_1d(3.0 * fx.X, fx.S);
  CHECK(b.objective == doctest::Approx(3.0 * a.objective).epsilon(1e-4));
}

TEST_CASE("two sources at M = 32: the data is reproduced") {
  const int M = 32, L = 2, N = 4;
  auto cfg = ArrayConfig::ula(N);
  std::vector<SourceSpec> v;
  const double th[2] = {-20, 40}, f[2] = {0.1, 0.45};
  for (int k = 0; k < 2; ++k) {
    SourceSpec s;
    s.theta_deg = th[k];
    s.carrier = f[k];
    v.push_back(s);
  }
  MatrixXcd X = build_data_matrix(v, cfg, M);
  auto S = dpss_basis(M, double(L) / (2 * M), L).S;
  auto sol = solve_sdp_1d(X, S);
  CHECK(sol.fidelity / X.norm() <= 1e-4);
}

TEST_CASE("fidelity radius is respected") {
  const int M = 12, L = 2, N = 2;
  auto fx = single_source(M, L, N, 0.2, 0.0);
  AdmmParams p;
  p.eps = 0.2 * fx.X.norm();
  auto sol = solve_sdp_1d(fx.X, fx.S, p);
  CHECK(sol.fidelity <= p.eps * (1 + 1e-6));
  auto exact = solve_sdp_1d(fx.X, fx.S);
  CHECK(sol.objective < exact.objective);
}

TEST_CASE("invalid inputs") {
  auto S = dpss_basis(8, 0.1, 2).S;
  CHECK_THROWS_AS(solve_sdp_1d(MatrixXcd::Ones(9, 2), S), Error);
  AdmmParams p;
  p.rho = 0;
  CHECK_THROWS_AS(solve_sdp_1d(MatrixXcd::Ones(8, 2), S, p), Error);
  Tensor3 Q(8, 2, 1);
  CHECK_THROWS_AS(dual_feasibility_check(Q, 31), Error);
}
