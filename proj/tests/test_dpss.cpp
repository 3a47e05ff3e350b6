#include "array_model.hpp"
#include "dpss.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace driftbeam;

TEST_CASE("full DPSS basis is orthonormal") {
  auto b = dpss_basis(8, 0.25, 8);
  CHECK((b.S.transpose() * b.S - MatrixXd::Identity(8, 8)).norm() < 1e-10);
  CHECK(residual_projection(b, 0.0) < 1e-10);
  CHECK(residual_projection(b, 0.37) < 1e-10);
}

TEST_CASE("concentration eigenvalues match the dense sinc kernel") {
  const int M = 120;
  const double W = 0.05;
  const int L = 12;
  auto b = dpss_basis(M, W, L);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sinc_kernel(M, W));
  VectorXd ref = es.eigenvalues().reverse().head(L);
  CHECK(b.lambdas[0] > 0.999);
  for (int j = 0; j < L; ++j) CHECK(b.lambdas[j] == doctest::Approx(ref[j]).epsilon(1e-8));
  for (int j = 1; j < L; ++j) CHECK(b.lambdas[j] < b.lambdas[j - 1]);
  for (int j = 0; j < L; ++j) {
    CHECK(b.lambdas[j] > 0.0);
    CHECK(b.lambdas[j] <= 1.0 + 1e-12);
  }
}

TEST_CASE("tridiagonal and dense routes span the same subspace") {
  for (int M : {16, 64, 128}) {
    const double W = 0.04;
    const int L = std::max(2, static_cast<int>(2 * M * W));
    auto b = dpss_basis(M, W, L);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sinc_kernel(M, W));
    MatrixXd V = es.eigenvectors().rightCols(L);
    // cosines of principal angles are the singular values of S^T V
    Eigen::JacobiSVD<MatrixXd> svd(b.S.transpose() * V);
    double smin = svd.singularValues().minCoeff();
    CHECK(std::acos(std::min(1.0, smin)) <= 1e-6);
  }
}

TEST_CASE("columns follow the sign convention") {
  auto b = dpss_basis(50, 0.1, 6);
  for (int j = 0; j < 6; ++j) {
    int m = 0;
    while (std::abs(b.S(m, j)) <= 1e-12) ++m;
    CHECK(b.S(m, j) > 0);
  }
}

TEST_CASE("in-band tones are captured, out-of-band tones are not") {
  const int M = 120;
  const double W = 0.05;
  const double rootM = std::sqrt(double(M));
  auto b = dpss_basis(M, W, static_cast<int>(2 * M * W) + 6);
  CHECK(residual_projection(b, 0.02) / rootM < 1e-3);
  CHECK(residual_projection(b, -0.03) / rootM < 1e-3);
  CHECK(residual_projection(b, W) / rootM < 1e-2);
  CHECK(residual_projection(dpss_basis(M, W, 12), 0.4) / rootM > 0.9);
}

TEST_CASE("residual is monotone in L") {
  const int M = 64;
  for (double f : {0.0, 0.02, 0.05, 0.1, 0.3}) {
    double prev = 1e300;
    for (int L = 1; L <= 16; ++L) {
      double r = residual_projection(dpss_basis(M, 0.06, L), f);
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(dpss_basis(10, 0.0, 2), Error);
  CHECK_THROWS_AS(dpss_basis(10, 0.5, 2), Error);
  CHECK_THROWS_AS(dpss_basis(10, 0.1, 0), Error);
  CHECK_THROWS_AS(dpss_basis(10, 0.1, 11), Error);
}

TEST_CASE("residuals at L = 2MW match an external DPSS implementation") {
  // reference values from scipy.signal.windows.dpss(120, 6, 12)
  auto b = dpss_basis(120, 0.05, 12);
  const double rootM = std::sqrt(120.0);
  CHECK(residual_projection(b, 0.02) / rootM == doctest::Approx(0.0794814376).epsilon(1e-6));
  CHECK(residual_projection(b, 0.05) / rootM == doctest::Approx(0.7106235423).epsilon(1e-6));
}
