// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

namespace driftbeam {

// Projection onto the PSD cone: eigendecompose, drop negative eigenvalues.
// The input is symmetrized first. min_eig receives the smallest eigenvalue before truncation.
MatrixXcd psd_project(const MatrixXcd& A, double* min_eig = nullptr);

inline MatrixXcd herm_part(const MatrixXcd& A) { return 0.5 * (A + A.adjoint()); }

double min_eigenvalue(const MatrixXcd& A);

}  // namespace driftbeam
