// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "array_model.hpp"
#include "types.hpp"

#include <optional>
#include <utility>

namespace driftbeam {

// n points k/n on [0, 1)
VectorXd uniform_grid(int n);

// q(f) = ||[Q_1^H a(f), ..., Q_N^H a(f)]||_F
VectorXd dual_polynomial_1d(const Tensor3& Q, const VectorXd& f_grid);

// 1D k-means on {f : q(f) >= gamma0}. The grid is treated as circular and cut at the
// global minimum of q. Each contiguous above-threshold run offers a seed at its peak,
// strongest first; seeds closer than min_sep (circular) to an accepted one are skipped.
// With fewer seeds than K the strongest center is repeated, which leaves duplicate
// centers that estimate_sign_alpha1 rejects. Returns sorted centers.
std::vector<double> cluster_frequencies(const VectorXd& f_grid, const VectorXd& q, double gamma0, int K,
                                        double min_sep = 0.0);

// Moves the frequency nearest the hint (circular distance) to the front; without a hint,
// the smallest frequency.
std::vector<double> order_desired_first(std::vector<double> f, std::optional<double> hint);

// First row of A_f^+ X_slice, normalized. Frequencies closer than min_sep (circular) or an
// ill-conditioned A_f raise duplicate_frequency.
VectorXcd estimate_sign_alpha1(const MatrixXcd& X_slice1, const std::vector<double>& f_tilde,
                               double min_sep = 0.0);

VectorXcd reconstruct_s1(double f1, const VectorXcd& sign_alpha1, const MatrixXd& S);

// w = X^+ s (minimum-norm least squares)
VectorXcd smi_weights(const MatrixXcd& X, const VectorXcd& s, bool* rank_deficient = nullptr);

VectorXcd smi_baseline_weights(const MatrixXcd& X, double f1);

// |asv(theta) w|
double pattern_gain(const VectorXcd& w, const ArrayConfig& cfg, double theta_deg);

// (theta, gain dB) normalized to 0 dB peak over the grid
std::vector<std::pair<double, double>> radiation_pattern(const VectorXcd& w, const ArrayConfig& cfg,
                                                         const VectorXd& theta_grid);

// 20 log10 |g(theta_k)| / |g(theta_ref)|
double relative_gain_db(const VectorXcd& w, const ArrayConfig& cfg, double theta_deg, double theta_ref_deg);

}  // namespace driftbeam
