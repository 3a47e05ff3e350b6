// SPDX-License-Identifier: Apache-2.0
#include "report.hpp"

#include "beamform.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace driftbeam {

namespace fs = std::filesystem;

void write_text(const std::string& path, const std::string& text) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::io, "cannot write " + path);
  os << text;
  if (!os) fail(Errc::io, "write failed for " + path);
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace

std::string svg_lines(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series) {
  const double W = 640, H = 400, l = 60, r = 20, t = 30, b = 45;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  auto X = [&](double v) { return l + (v - x0) / (x1 - x0) * (W - l - r); };
  auto Y = [&](double v) { return H - b - (v - y0) / (y1 - y0) * (H - t - b); };
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
  os << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << W - l - r << "\" height=\"" << H - t - b
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    os << "<text x=\"" << X(xv) << "\" y=\"" << H - b + 15 << "\" text-anchor=\"middle\" font-size=\"10\">" << xv
       << "</text>\n";
    os << "<text x=\"" << l - 5 << "\" y=\"" << Y(yv) + 3 << "\" text-anchor=\"end\" font-size=\"10\">" << yv
       << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" text-anchor=\"middle\" font-size=\"12\">" << esc(xlabel)
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
     << H / 2 << ")\">" << esc(ylabel) << "</text>\n";
  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << kColors[k % 5] << "\" stroke-width=\"1.2\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.y[i])) os << X(s.x[i]) << "," << Y(s.y[i]) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - r - 5 << "\" y=\"" << t + 15 + 14 * k << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
       << kColors[k % 5] << "\">" << esc(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::string& title, const VectorXd& x, const VectorXd& y, const MatrixXd& z) {
  const double W = 640, H = 420, l = 60, r = 20, t = 30, b = 45;
  const double zmax = z.size() ? z.maxCoeff() : 1.0, zmin = z.size() ? z.minCoeff() : 0.0;
  const double cw = (W - l - r) / std::max<Eigen::Index>(x.size(), 1);
  const double ch = (H - t - b) / std::max<Eigen::Index>(y.size(), 1);
  std::ostringstream os;
  os << std::setprecision(5);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j) {
      double v = zmax > zmin ? (z(i, j) - zmin) / (zmax - zmin) : 0.0;
      int c = static_cast<int>(std::lround(255 * v));
      os << "<rect x=\"" << l + i * cw << "\" y=\"" << H - b - (j + 1) * ch << "\" width=\"" << cw + 0.3
         << "\" height=\"" << ch + 0.3 << "\" fill=\"rgb(" << c << "," << c / 3 << "," << 255 - c << ")\"/>\n";
    }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" text-anchor=\"middle\" font-size=\"12\">f (" << x.minCoeff()
     << " to " << x.maxCoeff() << ")</text>\n";
  os << "<text x=\"14\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
     << H / 2 << ")\">theta deg (" << y.minCoeff() << " to " << y.maxCoeff() << ")</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_offsets_csv(const std::vector<OffsetTrajectory>& offs, const std::string& path) {
  std::ostringstream os;
  os << "m";
  for (size_t k = 0; k < offs.size(); ++k) os << ",delta_" << k + 1;
  os << "\n";
  const int M = offs.empty() ? 0 : offs[0].delta.size();
  for (int m = 0; m < M; ++m) {
    os << m;
    for (const auto& o : offs) os << "," << num(o.delta[m]);
    os << "\n";
  }
  write_text(path, os.str());
}

void write_pattern(const VectorXcd& w, const ArrayConfig& cfg, const std::string& dir, const std::string& stem,
                   bool svg) {
  VectorXd th = VectorXd::LinSpaced(721, -90.0, 90.0);
  auto pat = radiation_pattern(w, cfg, th);
  std::ostringstream os;
  os << "theta_deg,gain_db\n";
  Series s{stem, {}, {}};
  for (const auto& [a, g] : pat) {
    os << num(a) << "," << num(g) << "\n";
    s.x.push_back(a);
    s.y.push_back(std::max(g, -80.0));
  }
  write_text(dir + "/" + stem + ".csv", os.str());
  if (svg) write_text(dir + "/" + stem + ".svg", svg_lines("Radiation pattern", "theta (deg)", "gain (dB)", {s}));
}

void write_run(const RunResult& r, const std::string& dir, bool svg) {
  fs::create_directories(dir);
  write_offsets_csv(r.offsets, dir + "/offsets.csv");
  if (svg) {
    std::vector<Series> ss;
    for (size_t k = 0; k < r.offsets.size(); ++k) {
      Series s{"source " + std::to_string(k + 1), {}, {}};
      for (int m = 0; m < r.offsets[k].delta.size(); ++m) {
        s.x.push_back(m);
        s.y.push_back(r.offsets[k].delta[m]);
      }
      ss.push_back(std::move(s));
    }
    write_text(dir + "/offsets.svg", svg_lines("Frequency offsets", "m", "delta", ss));
  }

  if (r.q.size()) {
    std::ostringstream os;
    os << "f,q\n";
    Series s{"q(f)", {}, {}};
    for (int i = 0; i < r.q.size(); ++i) {
      os << num(r.f_grid[i]) << "," << num(r.q[i]) << "\n";
      s.x.push_back(r.f_grid[i]);
      s.y.push_back(r.q[i]);
    }
    write_text(dir + "/dual_polynomial.csv", os.str());
    if (svg) write_text(dir + "/dual_polynomial.svg", svg_lines("Dual polynomial", "f", "q(f)", {s}));
  }
  if (r.q2d.size()) {
    std::ostringstream os;
    os << "f,theta_deg,value\n";
    for (int i = 0; i < r.q2d.rows(); ++i)
      for (int j = 0; j < r.q2d.cols(); ++j)
        os << num(r.f_grid[i]) << "," << num(r.theta2d[j]) << "," << num(r.q2d(i, j)) << "\n";
    write_text(dir + "/dual2d.csv", os.str());
    if (svg) write_text(dir + "/dual2d.svg", svg_heatmap("2D dual polynomial", r.f_grid, r.theta2d, r.q2d));
  }
  if (r.w.size() && r.w.norm() > 0) write_pattern(r.w, r.config.array, dir, "pattern", svg);
  if (r.w_smi.size() && r.w_smi.norm() > 0) write_pattern(r.w_smi, r.config.array, dir, "pattern_smi", svg);

  if (!r.admm_trace.empty()) {
    std::ostringstream os;
    os << "iter,primal_res,dual_res,objective\n";
    for (const auto& t : r.admm_trace)
      os << t.iter << "," << num(t.primal_res) << "," << num(t.dual_res) << "," << num(t.objective) << "\n";
    write_text(dir + "/admm_trace.csv", os.str());
  }
  if (!r.ivdst_trace.empty()) {
    std::ostringstream os;
    os << "iter,objective,constraint_drift\n";
    for (const auto& t : r.ivdst_trace) os << t.iter << "," << num(t.objective) << "," << num(t.constraint_drift) << "\n";
    write_text(dir + "/ivdst_trace.csv", os.str());
  }
  write_text(dir + "/result.json", result_to_json(r).dump(2) + "\n");
}

}  // namespace driftbeam
