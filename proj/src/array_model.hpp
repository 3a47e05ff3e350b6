// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "types.hpp"

#include <cstdint>

namespace driftbeam {

struct ArrayConfig {
  VectorXd positions;  // wavelengths
  double k0 = 2.0 * kPi;

  int N() const { return static_cast<int>(positions.size()); }
  static ArrayConfig ula(int N, double spacing = 0.5);
  bool equispaced(double tol = 1e-9) const;
  void validate() const;
};

enum class OffsetKind { Static, Linear, Zigzag, Random };

const char* to_string(OffsetKind k);
OffsetKind offset_kind_from_string(const std::string& s);

struct OffsetParams {
  OffsetKind kind = OffsetKind::Static;
  double value = 0.0;     // static
  double slope = 0.0;     // linear, zigzag
  int half_period = 30;   // zigzag
  double bound = 0.01;    // random
  std::uint64_t seed = 0; // random
};

struct OffsetTrajectory {
  OffsetParams params;
  VectorXd delta;  // cycles/sample; empty means zero
};

struct SourceSpec {
  double theta_deg = 0.0;
  double carrier = 0.0;
  OffsetTrajectory offset;
  cplx amplitude{1.0, 0.0};
};

// a(f) = exp(j 2 pi f m), m = 0..M-1
VectorXcd tone(double f, int M);

// Row vector, entry n = exp(j k0 sin(theta) q_n).
Eigen::RowVectorXcd steering_vector(double theta_deg, const ArrayConfig& cfg);

OffsetTrajectory make_offset(const OffsetParams& p, int M);

// Cumulative (FM) phase by default; instantaneous = exp(j 2 pi (f + d[m]) m).
VectorXcd synthesize_source(const SourceSpec& spec, int M, bool instantaneous = false);

MatrixXcd build_data_matrix(const std::vector<SourceSpec>& specs, const ArrayConfig& cfg, int M,
                            bool instantaneous = false);

int numerical_rank(const MatrixXcd& X, double tol = 1e-8);

}  // namespace driftbeam
