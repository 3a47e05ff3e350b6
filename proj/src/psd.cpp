// SPDX-License-Identifier: Apache-2.0
#include "psd.hpp"

#include <Eigen/Eigenvalues>

namespace driftbeam {

MatrixXcd psd_project(const MatrixXcd& A, double* min_eig) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm_part(A));
  if (es.info() != Eigen::Success) fail(Errc::numerical, "Hermitian eigendecomposition failed");
  const VectorXd& ev = es.eigenvalues();
  if (min_eig) *min_eig = ev.size() ? ev[0] : 0.0;
  int first = 0;
  while (first < ev.size() && ev[first] <= 0.0) ++first;
  const int k = static_cast<int>(ev.size()) - first;
  if (k == 0) return MatrixXcd::Zero(A.rows(), A.cols());
  auto V = es.eigenvectors().rightCols(k);
  return V * ev.tail(k).asDiagonal() * V.adjoint();
}

double min_eigenvalue(const MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm_part(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace driftbeam
