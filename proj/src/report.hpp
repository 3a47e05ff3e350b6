// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "scenario.hpp"

#include <string>
#include <vector>

namespace driftbeam {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

void write_text(const std::string& path, const std::string& text);

// Polyline chart; written only as a view of data that is also in CSV.
std::string svg_lines(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series);

std::string svg_heatmap(const std::string& title, const VectorXd& x, const VectorXd& y, const MatrixXd& z);

// offsets.csv, dual_polynomial.csv or dual2d.csv, pattern.csv, pattern_smi.csv, trace CSV,
// result.json and optional SVGs.
void write_run(const RunResult& r, const std::string& dir, bool svg);

void write_offsets_csv(const std::vector<OffsetTrajectory>& offs, const std::string& path);

void write_pattern(const VectorXcd& w, const ArrayConfig& cfg, const std::string& dir, const std::string& stem,
                   bool svg);

}  // namespace driftbeam
