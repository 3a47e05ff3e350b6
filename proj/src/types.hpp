// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftbeam {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kJ{0.0, 1.0};

enum class Errc {
  invalid_argument = 1,
  domain = 2,
  dimension = 3,
  model_mismatch = 4,
  threshold = 5,
  duplicate_frequency = 6,
  numerical = 7,
  io = 8,
  config = 9,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// M x L x N, stored as N frontal slices of size M x L.
struct Tensor3 {
  int M = 0, L = 0, N = 0;
  std::vector<MatrixXcd> slices;

  Tensor3() = default;
  Tensor3(int m, int l, int n) : M(m), L(l), N(n), slices(n, MatrixXcd::Zero(m, l)) {}

  MatrixXcd& operator[](int n) { return slices[n]; }
  const MatrixXcd& operator[](int n) const { return slices[n]; }

  double norm() const {
    double s = 0;
    for (const auto& x : slices) s += x.squaredNorm();
    return std::sqrt(s);
  }
};

// Re<A, B> summed over all slices.
inline double inner(const Tensor3& a, const Tensor3& b) {
  double s = 0;
  for (int n = 0; n < a.N; ++n) s += (a[n].conjugate().cwiseProduct(b[n])).sum().real();
  return s;
}

}  // namespace driftbeam
