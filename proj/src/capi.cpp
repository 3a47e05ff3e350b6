// SPDX-License-Identifier: Apache-2.0
#include "driftbeam/driftbeam.h"

#include "beamform.hpp"
#include "dpss.hpp"
#include "report.hpp"
#include "scenario.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

using namespace driftbeam;

struct drb_scenario {
  ScenarioConfig cfg;
};

struct drb_result {
  RunResult run;
};

namespace {

thread_local std::string g_last_error;

drb_status set_error(drb_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

template <class F>
drb_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return DRB_OK;
  } catch (const Error& e) {
    return set_error(static_cast<drb_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return set_error(DRB_E_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DRB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DRB_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(DRB_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) fail(Errc::invalid_argument, std::string(what) + " is NULL");
}

void copy_out(const std::vector<double>& v, double* out, size_t cap, size_t* n) {
  if (n) *n = v.size();
  if (out) std::memcpy(out, v.data(), std::min(cap, v.size()) * sizeof(double));
}

}  // namespace

extern "C" {

const char* drb_last_error(void) { return g_last_error.c_str(); }

const char* drb_version(void) { return "1.0.0"; }

void drb_string_free(char* s) { std::free(s); }

drb_status drb_scenario_from_json(const char* text, drb_scenario** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = nullptr;
    auto s = std::make_unique<drb_scenario>();
    s->cfg = scenario_from_json(json::parse(text));
    *out = s.release();
  });
}

drb_status drb_scenario_from_preset(const char* name, drb_scenario** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    auto s = std::make_unique<drb_scenario>();
    s->cfg = preset(name);
    *out = s.release();
  });
}

drb_status drb_scenario_to_json(const drb_scenario* s, char** out) {
  return guard([&] {
    need(s, "scenario");
    need(out, "out");
    *out = dup_string(scenario_to_json(s->cfg).dump(2));
  });
}

void drb_scenario_free(drb_scenario* s) { delete s; }

drb_status drb_preset_names(char** out) {
  return guard([&] {
    need(out, "out");
    json j = preset_names();
    for (const char* e : {"exp1", "exp2-m300", "exp3-2d", "exp4-hist"}) j.push_back(e);
    *out = dup_string(j.dump());
  });
}

drb_status drb_simulate(const drb_scenario* s, const char* dir) {
  return guard([&] {
    need(s, "scenario");
    need(dir, "dir");
    s->cfg.validate();
    auto specs = realize_sources(s->cfg);
    std::vector<OffsetTrajectory> offs;
    for (const auto& sp : specs) offs.push_back(sp.offset);
    MatrixXcd X = build_data_matrix(specs, s->cfg.array, s->cfg.M, s->cfg.instantaneous);
    write_offsets_csv(offs, std::string(dir) + "/offsets.csv");
    std::ostringstream os;
    os << std::setprecision(17) << "m,n,re,im\n";
    for (int m = 0; m < X.rows(); ++m)
      for (int n = 0; n < X.cols(); ++n) os << m << "," << n << "," << X(m, n).real() << "," << X(m, n).imag() << "\n";
    write_text(std::string(dir) + "/data.csv", os.str());
    json j;
    j["scenario"] = scenario_to_json(s->cfg);
    j["numerical_rank"] = numerical_rank(X);
    j["frobenius_norm"] = X.norm();
    write_text(std::string(dir) + "/simulation.json", j.dump(2) + "\n");
  });
}

drb_status drb_run(const drb_scenario* s, drb_result** out) {
  return guard([&] {
    need(s, "scenario");
    need(out, "out");
    *out = nullptr;
    auto r = std::make_unique<drb_result>();
    r->run = run_scenario(s->cfg);
    *out = r.release();
  });
}

drb_status drb_result_status(const drb_result* r) {
  if (!r) return set_error(DRB_E_INVALID_ARGUMENT, "result is NULL");
  if (r->run.ok()) return DRB_OK;
  return set_error(static_cast<drb_status>(r->run.error_code), r->run.error);
}

drb_status drb_result_to_json(const drb_result* r, char** out) {
  return guard([&] {
    need(r, "result");
    need(out, "out");
    *out = dup_string(result_to_json(r->run).dump(2));
  });
}

drb_status drb_result_write(const drb_result* r, const char* dir, int svg) {
  return guard([&] {
    need(r, "result");
    need(dir, "dir");
    write_run(r->run, dir, svg != 0);
  });
}

drb_status drb_result_frequencies(const drb_result* r, double* out, size_t cap, size_t* n) {
  return guard([&] {
    need(r, "result");
    copy_out(r->run.f_tilde, out, cap, n);
  });
}

drb_status drb_result_weights(const drb_result* r, double* out, size_t cap, size_t* n) {
  return guard([&] {
    need(r, "result");
    std::vector<double> v;
    for (int i = 0; i < r->run.w.size(); ++i) {
      v.push_back(r->run.w[i].real());
      v.push_back(r->run.w[i].imag());
    }
    copy_out(v, out, cap, n);
  });
}

drb_status drb_result_null_depths(const drb_result* r, double* out, size_t cap, size_t* n) {
  return guard([&] {
    need(r, "result");
    copy_out(r->run.null_db, out, cap, n);
  });
}

void drb_result_free(drb_result* r) { delete r; }

drb_status drb_benchmark(const drb_scenario* s, const char* dir, char** json_out) {
  return guard([&] {
    need(s, "scenario");
    json j = run_benchmark(s->cfg, dir ? dir : "");
    if (json_out) *json_out = dup_string(j.dump(2));
  });
}

drb_status drb_experiment(const char* name, const char* options_json, const char* dir, char** json_out) {
  return guard([&] {
    need(name, "name");
    need(dir, "dir");
    ExperimentOptions opt;
    if (options_json) {
      json o = json::parse(options_json);
      for (auto it = o.begin(); it != o.end(); ++it) {
        const std::string& k = it.key();
        if (k == "trials") opt.trials = it->get<int>();
        else if (k == "anm_M") opt.anm_M = it->get<int>();
        else if (k == "svg") opt.svg = it->get<bool>();
        else if (k == "run_anm") opt.run_anm = it->get<bool>();
        else if (k == "seed") opt.seed = it->get<std::uint64_t>();
        else fail(Errc::config, "unknown experiment option '" + k + "'");
      }
      if (opt.trials < 1) fail(Errc::config, "trials must be positive");
    }
    json j = run_experiment(name, opt, dir);
    if (json_out) *json_out = dup_string(j.dump(2));
  });
}

drb_status drb_pattern_from_result(const char* path, const char* dir, int svg) {
  return guard([&] {
    need(path, "path");
    need(dir, "dir");
    std::ifstream is(path);
    if (!is) fail(Errc::io, std::string("cannot read ") + path);
    json j = json::parse(is);
    ScenarioConfig c = scenario_from_json(j.at("scenario"));
    const json& w = j.at("weights");
    VectorXcd wv(w.size());
    for (size_t i = 0; i < w.size(); ++i) wv[i] = {w[i].at(0).get<double>(), w[i].at(1).get<double>()};
    if (wv.size() != c.array.N()) fail(Errc::dimension, "weights do not match the array size");
    write_pattern(wv, c.array, dir, "pattern", svg != 0);
  });
}

drb_status drb_dpss(int M, double W, int L, double* S, double* lambdas) {
  return guard([&] {
    need(S, "S");
    DpssBasis b = dpss_basis(M, W, L);
    Eigen::Map<MatrixXd>(S, M, L) = b.S;
    if (lambdas) Eigen::Map<VectorXd>(lambdas, L) = b.lambdas;
  });
}

drb_status drb_steering_vector(double theta_deg, const double* positions, int N, double k0, double* re_im) {
  return guard([&] {
    need(positions, "positions");
    need(re_im, "re_im");
    ArrayConfig c;
    c.positions = Eigen::Map<const VectorXd>(positions, N);
    c.k0 = k0;
    c.validate();
    auto v = steering_vector(theta_deg, c);
    for (int n = 0; n < N; ++n) {
      re_im[2 * n] = v[n].real();
      re_im[2 * n + 1] = v[n].imag();
    }
  });
}

}  // extern "C"
