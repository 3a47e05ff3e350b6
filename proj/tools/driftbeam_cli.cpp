// SPDX-License-Identifier: Apache-2.0
// Command line front end over the C API.
#include "driftbeam/driftbeam.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::ordered_json;

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { drb_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

[[noreturn]] void die(drb_status st, const std::string& where) {
  std::cerr << "driftbeam: " << where << ": " << drb_last_error() << " (code " << st << ")\n";
  std::exit(st == DRB_OK ? 1 : static_cast<int>(st));
}

void check(drb_status st, const std::string& where) {
  if (st != DRB_OK) die(st, where);
}

std::string out_root() {
  const char* e = std::getenv("DRIFTBEAM_OUT");
  return e && *e ? e : "out";
}

struct ScenarioArgs {
  std::string config, preset;
  std::optional<std::string> method;
  std::optional<int> M, L, iters;
  std::optional<double> eta, gamma0, hint, tol;
  std::optional<unsigned long long> seed;

  void add(CLI::App* app) {
    auto* g = app->add_option_group("source");
    g->add_option("--config", config, "scenario JSON file");
    g->add_option("--preset", preset, "named preset (see `driftbeam presets`)");
    g->require_option(1);
    app->add_option("--method", method, "smi, anm1d, ivdst or anm2d");
    app->add_option("--M", M, "snapshots");
    app->add_option("--L", L, "DPSS order");
    app->add_option("--iters", iters, "IVDST iterations");
    app->add_option("--eta", eta, "IVDST stepsize");
    app->add_option("--gamma0", gamma0, "threshold as a fraction of max q");
    app->add_option("--hint", hint, "coarse desired-carrier hint");
    app->add_option("--tol", tol, "ADMM tolerance");
    app->add_option("--seed", seed, "random seed");
  }

  drb_scenario* load() const {
    json j;
    if (!preset.empty()) {
      drb_scenario* s = nullptr;
      check(drb_scenario_from_preset(preset.c_str(), &s), "preset");
      Owned t;
      check(drb_scenario_to_json(s, &t.p), "preset");
      drb_scenario_free(s);
      j = json::parse(t.str());
    } else {
      std::ifstream is(config);
      if (!is) {
        std::cerr << "driftbeam: cannot read " << config << "\n";
        std::exit(DRB_E_IO);
      }
      try {
        j = json::parse(is);
      } catch (const std::exception& e) {
        std::cerr << "driftbeam: " << config << ": " << e.what() << "\n";
        std::exit(DRB_E_CONFIG);
      }
    }
    if (method) j["method"] = *method;
    if (M) j["M"] = *M;
    if (L) {
      j["solver"]["L"] = *L;
      j["solver"].erase("W");
    }
    if (iters) j["solver"]["iters"] = *iters;
    if (eta) j["solver"]["eta"] = *eta;
    if (gamma0) j["solver"]["gamma0_ratio"] = *gamma0;
    if (hint) j["solver"]["hint"] = *hint;
    if (tol) j["solver"]["tol"] = *tol;
    if (seed) j["seed"] = *seed;
    drb_scenario* s = nullptr;
    check(drb_scenario_from_json(j.dump().c_str(), &s), "scenario");
    return s;
  }

  std::string name() const { return preset.empty() ? "custom" : preset; }
};

void print_summary(const json& r) {
  std::cout << "status: " << r.value("status", "?") << "\n";
  if (r.contains("error")) std::cout << "error: " << r["error"].get<std::string>() << "\n";
  std::cout << "estimated frequencies:";
  for (const auto& f : r["estimated_frequencies"]) std::cout << " " << f.get<double>();
  std::cout << "\n";
  for (const auto& n : r["null_depths"])
    std::cout << "gain at " << n["theta_deg"].get<double>() << " deg: " << n["gain_db"].get<double>()
              << " dB (SMI " << n["gain_db_smi"].get<double>() << " dB)\n";
  std::cout << "solver time: " << r["wall_clock_s"].get<double>() << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driftbeam: beamforming under time-varying carrier frequency offset"};
  app.require_subcommand(1);
  std::string out;
  bool svg = false;

  auto* sim = app.add_subcommand("simulate", "synthesize X* and offsets");
  ScenarioArgs sim_args;
  sim_args.add(sim);
  sim->add_option("--out", out, "output directory");

  auto* solve = app.add_subcommand("solve", "run one scenario end to end");
  ScenarioArgs solve_args;
  solve_args.add(solve);
  solve->add_option("--out", out, "output directory");
  solve->add_flag("--svg", svg, "also write SVG plots");

  auto* pat = app.add_subcommand("pattern", "radiation pattern from a result.json");
  std::string result_path;
  pat->add_option("--result", result_path, "result.json")->required();
  pat->add_option("--out", out, "output directory");
  pat->add_flag("--svg", svg, "also write SVG plots");

  auto* bench = app.add_subcommand("benchmark", "IVDST against ADMM on identical data");
  ScenarioArgs bench_args;
  bench_args.add(bench);
  bench->add_option("--out", out, "output directory");

  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  std::string exp_name;
  int trials = 20, anm_m = 0;
  unsigned long long exp_seed = 1;
  bool no_anm = false;
  exp->add_option("preset", exp_name, "exp1[-kind], exp2-m300[-kind], exp3-2d[-kind], exp4-hist")->required();
  exp->add_option("--trials", trials, "trials for exp4-hist")->check(CLI::PositiveNumber);
  exp->add_option("--anm-M", anm_m, "snapshots for the ADMM route, L rescaled (0 = preset)");
  exp->add_option("--seed", exp_seed, "trial seed for exp4-hist");
  exp->add_flag("--no-anm", no_anm, "skip the ADMM route in exp1");
  exp->add_option("--out", out, "output directory");
  exp->add_flag("--svg", svg, "also write SVG plots");

  auto* list = app.add_subcommand("presets", "list preset names");

  CLI11_PARSE(app, argc, argv);

  if (*list) {
    Owned t;
    check(drb_preset_names(&t.p), "presets");
    for (const auto& n : json::parse(t.str())) std::cout << n.get<std::string>() << "\n";
    return 0;
  }
  if (*sim) {
    drb_scenario* s = sim_args.load();
    std::string dir = out.empty() ? out_root() + "/" + sim_args.name() : out;
    check(drb_simulate(s, dir.c_str()), "simulate");
    drb_scenario_free(s);
    std::cout << "wrote " << dir << "\n";
    return 0;
  }
  if (*solve) {
    drb_scenario* s = solve_args.load();
    std::string dir = out.empty() ? out_root() + "/" + solve_args.name() : out;
    drb_result* r = nullptr;
    check(drb_run(s, &r), "solve");
    check(drb_result_write(r, dir.c_str(), svg), "write");
    Owned t;
    check(drb_result_to_json(r, &t.p), "result");
    print_summary(json::parse(t.str()));
    drb_status st = drb_result_status(r);
    drb_result_free(r);
    drb_scenario_free(s);
    std::cout << "wrote " << dir << "\n";
    return st == DRB_OK ? 0 : static_cast<int>(st);
  }
  if (*pat) {
    std::string dir = out.empty() ? out_root() + "/pattern" : out;
    check(drb_pattern_from_result(result_path.c_str(), dir.c_str(), svg), "pattern");
    std::cout << "wrote " << dir << "/pattern.csv\n";
    return 0;
  }
  if (*bench) {
    drb_scenario* s = bench_args.load();
    std::string dir = out.empty() ? out_root() + "/benchmark-" + bench_args.name() : out;
    Owned t;
    check(drb_benchmark(s, dir.c_str(), &t.p), "benchmark");
    drb_scenario_free(s);
    json j = json::parse(t.str());
    std::cout << "ivdst: " << j["ivdst"]["wall_clock_s"].get<double>() << " s, anm1d: "
              << j["anm1d"]["wall_clock_s"].get<double>() << " s, ratio " << j["time_ratio"] << "\n";
    return 0;
  }
  if (*exp) {
    std::string dir = out.empty() ? out_root() + "/" + exp_name : out;
    json o = {{"trials", trials}, {"anm_M", anm_m}, {"svg", svg}, {"run_anm", !no_anm}, {"seed", exp_seed}};
    Owned t;
    check(drb_experiment(exp_name.c_str(), o.dump().c_str(), dir.c_str(), &t.p), "experiment");
    std::cout << json::parse(t.str()).dump(2) << "\n";
    return 0;
  }
  return 0;
}
