// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "anm1d.hpp"
#include "anm2d.hpp"
#include "array_model.hpp"
#include "dpss.hpp"
#include "ivdst.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace driftbeam {

using json = nlohmann::ordered_json;

enum class Method { Smi, Anm1d, Ivdst, Anm2d };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct SolverConfig {
  int L = 0;            // 0 = derive from W
  double W = 0.0;       // 0 = L / (2M)
  double eta = 4.0;
  double decay = 0.99;
  int decay_every = 50;
  int iters = 200;
  double rho = 1.0;
  double eps = 0.0;
  double tol = 1e-6;
  int max_iters = 20000;
  double gamma0_ratio = 0.0;  // 0 = 0.999 for anm1d, 0.9 otherwise
  int grid = 8192;
  int grid_f2d = 256;
  int grid_theta2d = 181;
  std::optional<double> hint;  // coarse desired-carrier hint
};

struct SourceConfig {
  double theta_deg = 0.0;
  double carrier = 0.0;
  OffsetParams offset;
  bool offset_seed_set = false;
  cplx amplitude{1.0, 0.0};
};

struct ScenarioConfig {
  std::string name = "custom";
  int M = 120;
  ArrayConfig array = ArrayConfig::ula(4);
  std::vector<SourceConfig> sources;
  Method method = Method::Ivdst;
  SolverConfig solver;
  std::uint64_t seed = 0;
  bool instantaneous = false;

  void validate() const;
  double W() const;
  int L() const;
  double gamma0_ratio() const;
};

ScenarioConfig scenario_from_json(const json& j);
json scenario_to_json(const ScenarioConfig& c);

std::vector<SourceSpec> realize_sources(const ScenarioConfig& c);

struct RunResult {
  ScenarioConfig config;
  std::vector<OffsetTrajectory> offsets;
  MatrixXcd X;
  std::vector<double> f_tilde;       // desired first
  std::vector<double> theta_tilde;   // 2D only
  VectorXcd sign_alpha1, s1, w, w_smi;
  std::vector<double> null_db, null_db_smi;  // interferers relative to source 0
  double s1_correlation = 0.0;
  double seconds = 0.0;              // solver wall clock
  int iterations = 0;
  bool converged = true;
  double objective = 0.0;
  double dual_objective = 0.0;
  double fidelity = 0.0;
  double max_dual = 0.0;
  std::string error;
  int error_code = 0;
  VectorXd f_grid, q;
  VectorXd theta2d;
  MatrixXd q2d;
  std::vector<AdmmTraceRow> admm_trace;
  std::vector<IvdstTraceRow> ivdst_trace;

  bool ok() const { return error.empty(); }
};

// Runs the configured method end to end. Solver-side failures (duplicate frequencies, threshold)
// are recorded in the result; configuration errors throw.
RunResult run_scenario(const ScenarioConfig& c);

json result_to_json(const RunResult& r);

int table_L(Method m, int kind_index);

// names: exp1-<kind>, exp2-m300-<kind>, exp3-2d-<kind>
std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

// 2D local maxima check used by the coincident-frequency experiment
bool has_local_max_near(const MatrixXd& q2d, const VectorXd& f_grid, const VectorXd& theta_grid, double f,
                        double theta_deg, int cells = 1);

struct ExperimentOptions {
  int trials = 20;
  int anm_M = 0;      // 0 = preset M; otherwise L is rescaled to keep L/(2M)
  bool svg = false;
  bool run_anm = true;
  std::uint64_t seed = 1;
};

// Runs a named experiment, writes artifacts under dir and returns a JSON summary.
json run_experiment(const std::string& name, const ExperimentOptions& opt, const std::string& dir);

json run_benchmark(const ScenarioConfig& c, const std::string& dir);

}  // namespace driftbeam
