// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"

#include "beamform.hpp"
#include "psd.hpp"
#include "report.hpp"
#include "tensor_ops.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

namespace driftbeam {

namespace fs = std::filesystem;

const char* to_string(Method m) {
  switch (m) {
    case Method::Smi: return "smi";
    case Method::Anm1d: return "anm1d";
    case Method::Ivdst: return "ivdst";
    case Method::Anm2d: return "anm2d";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "smi") return Method::Smi;
  if (s == "anm1d") return Method::Anm1d;
  if (s == "ivdst") return Method::Ivdst;
  if (s == "anm2d") return Method::Anm2d;
  fail(Errc::config, "unknown method '" + s + "'");
}

double ScenarioConfig::W() const {
  if (solver.W > 0) return solver.W;
  return static_cast<double>(solver.L) / (2.0 * M);
}

// an exact SDP certificate reaches 1 on the support; IVDST and 2D maxima are not normalized
double ScenarioConfig::gamma0_ratio() const {
  if (solver.gamma0_ratio > 0) return solver.gamma0_ratio;
  return method == Method::Anm1d ? 0.999 : 0.9;
}

int ScenarioConfig::L() const {
  if (solver.L > 0) return solver.L;
  return std::max(1, static_cast<int>(std::ceil(2.0 * M * solver.W)));
}

void ScenarioConfig::validate() const {
  if (M < 2) fail(Errc::config, "M must be at least 2");
  array.validate();
  if (sources.empty()) fail(Errc::config, "at least one source is required");
  if (solver.L <= 0 && solver.W <= 0) fail(Errc::config, "solver needs L or W");
  if (!(W() > 0 && W() < 0.5)) fail(Errc::config, "DPSS half-bandwidth W must lie in (0, 1/2)");
  if (L() < 1 || L() > M) fail(Errc::config, "L must lie in [1, M]");
  if (solver.grid < 8 * M) fail(Errc::config, "frequency grid needs at least 8M points");
  if (!(solver.gamma0_ratio >= 0 && solver.gamma0_ratio <= 1)) fail(Errc::config, "gamma0_ratio must lie in [0, 1]");
  if (!(solver.eta > 0) || solver.iters < 1 || solver.decay_every < 1) fail(Errc::config, "invalid IVDST settings");
  if (!(solver.rho > 0) || !(solver.tol > 0) || solver.eps < 0 || solver.max_iters < 1)
    fail(Errc::config, "invalid ADMM settings");
  if (solver.grid_f2d < 4 || solver.grid_theta2d < 2) fail(Errc::config, "2D scan grid too small");
  for (const auto& s : sources)
    if (!(s.theta_deg >= -90 && s.theta_deg <= 90)) fail(Errc::config, "source angle outside [-90, 90]");
  if (method == Method::Anm2d && !array.equispaced())
    fail(Errc::config, "the 2D method needs an equispaced array");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

void allow(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) fail(Errc::config, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) fail(Errc::config, "unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
void get(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(Errc::config, std::string("bad value for '") + key + "': " + e.what());
  }
}

OffsetParams offset_from_json(const json& j, bool& seed_set) {
  allow(j, {"kind", "value", "slope", "half_period", "bound", "seed"}, "offset");
  OffsetParams p;
  std::string kind = "static";
  get(j, "kind", kind);
  p.kind = offset_kind_from_string(kind);
  get(j, "value", p.value);
  get(j, "slope", p.slope);
  get(j, "half_period", p.half_period);
  get(j, "bound", p.bound);
  seed_set = j.contains("seed");
  get(j, "seed", p.seed);
  return p;
}

json offset_to_json(const OffsetParams& p, bool seed_set) {
  json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case OffsetKind::Static: j["value"] = p.value; break;
    case OffsetKind::Linear: j["slope"] = p.slope; break;
    case OffsetKind::Zigzag:
      j["slope"] = p.slope;
      j["half_period"] = p.half_period;
      break;
    case OffsetKind::Random:
      j["bound"] = p.bound;
      if (seed_set) j["seed"] = p.seed;
      break;
  }
  return j;
}

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
  allow(j, {"name", "M", "array", "sources", "method", "solver", "seed", "instantaneous"}, "scenario");
  ScenarioConfig c;
  get(j, "name", c.name);
  get(j, "M", c.M);
  if (j.contains("array")) {
    const json& a = j.at("array");
    allow(a, {"N", "spacing", "positions", "k0"}, "array");
    if (a.contains("positions")) {
      if (a.contains("N") || a.contains("spacing")) fail(Errc::config, "array: give either positions or N/spacing");
      std::vector<double> q;
      get(a, "positions", q);
      c.array.positions = Eigen::Map<VectorXd>(q.data(), q.size());
    } else {
      int N = 4;
      double d = 0.5;
      get(a, "N", N);
      get(a, "spacing", d);
      c.array = ArrayConfig::ula(N, d);
    }
    get(a, "k0", c.array.k0);
  }
  if (j.contains("sources")) {
    if (!j.at("sources").is_array()) fail(Errc::config, "sources must be an array");
    for (const auto& s : j.at("sources")) {
      allow(s, {"theta_deg", "carrier", "offset", "amplitude"}, "source");
      SourceConfig sc;
      get(s, "theta_deg", sc.theta_deg);
      get(s, "carrier", sc.carrier);
      if (s.contains("offset")) sc.offset = offset_from_json(s.at("offset"), sc.offset_seed_set);
      if (s.contains("amplitude")) {
        std::vector<double> a;
        get(s, "amplitude", a);
        if (a.size() != 2) fail(Errc::config, "amplitude must be [re, im]");
        sc.amplitude = {a[0], a[1]};
      }
      c.sources.push_back(sc);
    }
  }
  std::string method = "ivdst";
  get(j, "method", method);
  c.method = method_from_string(method);
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    allow(s, {"L", "W", "eta", "decay", "decay_every", "iters", "rho", "eps", "tol", "max_iters", "gamma0_ratio",
              "grid", "grid_f2d", "grid_theta2d", "hint"},
          "solver");
    auto& v = c.solver;
    get(s, "L", v.L);
    get(s, "W", v.W);
    get(s, "eta", v.eta);
    get(s, "decay", v.decay);
    get(s, "decay_every", v.decay_every);
    get(s, "iters", v.iters);
    get(s, "rho", v.rho);
    get(s, "eps", v.eps);
    get(s, "tol", v.tol);
    get(s, "max_iters", v.max_iters);
    get(s, "gamma0_ratio", v.gamma0_ratio);
    get(s, "grid", v.grid);
    get(s, "grid_f2d", v.grid_f2d);
    get(s, "grid_theta2d", v.grid_theta2d);
    if (s.contains("hint") && !s.at("hint").is_null()) {
      double h = 0;
      get(s, "hint", h);
      v.hint = h;
    }
  }
  get(j, "seed", c.seed);
  get(j, "instantaneous", c.instantaneous);
  c.validate();
  return c;
}

json scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["M"] = c.M;
  j["array"]["positions"] = std::vector<double>(c.array.positions.data(), c.array.positions.data() + c.array.N());
  j["array"]["k0"] = c.array.k0;
  j["sources"] = json::array();
  for (const auto& s : c.sources) {
    json js;
    js["theta_deg"] = s.theta_deg;
    js["carrier"] = s.carrier;
    js["offset"] = offset_to_json(s.offset, s.offset_seed_set);
    js["amplitude"] = {s.amplitude.real(), s.amplitude.imag()};
    j["sources"].push_back(js);
  }
  j["method"] = to_string(c.method);
  const auto& v = c.solver;
  json s;
  s["L"] = c.L();
  s["W"] = c.W();
  s["eta"] = v.eta;
  s["decay"] = v.decay;
  s["decay_every"] = v.decay_every;
  s["iters"] = v.iters;
  s["rho"] = v.rho;
  s["eps"] = v.eps;
  s["tol"] = v.tol;
  s["max_iters"] = v.max_iters;
  s["gamma0_ratio"] = v.gamma0_ratio;
  s["grid"] = v.grid;
  s["grid_f2d"] = v.grid_f2d;
  s["grid_theta2d"] = v.grid_theta2d;
  s["hint"] = v.hint ? json(*v.hint) : json(nullptr);
  j["solver"] = s;
  j["seed"] = c.seed;
  j["instantaneous"] = c.instantaneous;
  return j;
}

std::vector<SourceSpec> realize_sources(const ScenarioConfig& c) {
  std::vector<SourceSpec> out;
  for (size_t k = 0; k < c.sources.size(); ++k) {
    const auto& s = c.sources[k];
    OffsetParams p = s.offset;
    if (p.kind == OffsetKind::Random && !s.offset_seed_set) p.seed = c.seed * 1000003ULL + k;
    SourceSpec sp;
    sp.theta_deg = s.theta_deg;
    sp.carrier = s.carrier;
    sp.amplitude = s.amplitude;
    sp.offset = make_offset(p, c.M);
    out.push_back(sp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// pipelines

namespace {

double circ_diff(double a, double b) {
  double d = std::fmod(a - b, 1.0);
  if (d >= 0.5) d -= 1.0;
  if (d < -0.5) d += 1.0;
  return d;
}

struct Peak2d {
  double f, theta;
};

// Connected above-threshold regions seed a 2D k-means on (f, sin(theta)/2); f is circular.
std::vector<Peak2d> cluster_2d(const MatrixXd& q, const VectorXd& fg, const VectorXd& tg, double gamma0, int K) {
  const int F = q.rows(), A = q.cols();
  std::vector<int> comp(F * A, -1);
  struct Seed { int i, j; double v; };
  std::vector<Seed> seeds;
  std::vector<std::pair<int, int>> pts;
  for (int i0 = 0; i0 < F; ++i0)
    for (int j0 = 0; j0 < A; ++j0) {
      if (q(i0, j0) < gamma0 || comp[i0 * A + j0] >= 0) continue;
      const int id = seeds.size();
      seeds.push_back({i0, j0, q(i0, j0)});
      std::vector<std::pair<int, int>> stack{{i0, j0}};
      comp[i0 * A + j0] = id;
      while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        pts.emplace_back(i, j);
        if (q(i, j) > seeds[id].v) seeds[id] = {i, j, q(i, j)};
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            int ii = (i + di + F) % F, jj = j + dj;
            if (jj < 0 || jj >= A || q(ii, jj) < gamma0 || comp[ii * A + jj] >= 0) continue;
            comp[ii * A + jj] = id;
            stack.emplace_back(ii, jj);
          }
      }
    }
  if (static_cast<int>(pts.size()) < K) fail(Errc::threshold, "fewer than K grid points reach gamma0 in the 2D scan");
  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.v > b.v; });
  std::vector<double> cf(K), cs(K);
  for (int k = 0; k < K; ++k) {
    const Seed& s = seeds[k < static_cast<int>(seeds.size()) ? k : 0];
    cf[k] = fg[s.i];
    cs[k] = 0.5 * std::sin(tg[s.j] * kPi / 180.0);
  }
  std::vector<int> assign(pts.size(), -1);
  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    for (size_t p = 0; p < pts.size(); ++p) {
      double f = fg[pts[p].first], s = 0.5 * std::sin(tg[pts[p].second] * kPi / 180.0);
      int best = 0;
      double bd = 1e300;
      for (int k = 0; k < K; ++k) {
        double df = circ_diff(f, cf[k]), ds = s - cs[k], d = df * df + ds * ds;
        if (d < bd) {
          bd = d;
          best = k;
        }
      }
      if (best != assign[p]) {
        assign[p] = best;
        changed = true;
      }
    }
    std::vector<double> sf(K, 0), ss(K, 0);
    std::vector<int> n(K, 0);
    for (size_t p = 0; p < pts.size(); ++p) {
      int k = assign[p];
      sf[k] += circ_diff(fg[pts[p].first], cf[k]);
      ss[k] += 0.5 * std::sin(tg[pts[p].second] * kPi / 180.0);
      ++n[k];
    }
    for (int k = 0; k < K; ++k)
      if (n[k]) {
        cf[k] = cf[k] + sf[k] / n[k];
        cf[k] -= std::floor(cf[k]);
        cs[k] = ss[k] / n[k];
      }
    if (!changed) break;
  }
  std::vector<Peak2d> out;
  for (int k = 0; k < K; ++k) out.push_back({cf[k], std::asin(std::clamp(2.0 * cs[k], -1.0, 1.0)) * 180.0 / kPi});
  std::sort(out.begin(), out.end(), [](const Peak2d& a, const Peak2d& b) {
    return a.f < b.f || (a.f == b.f && a.theta < b.theta);
  });
  return out;
}

// Least squares of each DPSS column of X_hat on the joint atoms a(f_k) asv(theta_k)^T.
VectorXcd sign_alpha1_2d(const Tensor3& Xh, const std::vector<Peak2d>& pk, const ArrayConfig& cfg) {
  const int M = Xh.M, L = Xh.L, N = Xh.N, K = pk.size();
  MatrixXcd A(M * N, K);
  for (int k = 0; k < K; ++k) {
    VectorXcd a = tone(pk[k].f, M);
    Eigen::RowVectorXcd b = steering_vector(pk[k].theta, cfg);
    for (int n = 0; n < N; ++n) A.col(k).segment(n * M, M) = a * b[n];
  }
  Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(A);
  cod.setThreshold(1e-10);
  if (cod.rank() < K) fail(Errc::duplicate_frequency, "2D atoms are not distinct");
  MatrixXcd B(M * N, L);
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n) B.col(l).segment(n * M, M) = Xh[n].col(l);
  MatrixXcd coef = cod.solve(B);
  VectorXcd r = coef.row(0).transpose();
  if (r.norm() == 0) fail(Errc::numerical, "zero coefficient row in 2D sign estimate");
  return r / r.norm();
}

double now_seconds() {
  using clk = std::chrono::steady_clock;
  return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& c) {
  c.validate();
  RunResult r;
  r.config = c;
  const auto specs = realize_sources(c);
  for (const auto& s : specs) r.offsets.push_back(s.offset);
  r.X = build_data_matrix(specs, c.array, c.M, c.instantaneous);
  const int K = specs.size();
  const VectorXcd s1_true = synthesize_source(specs[0], c.M, c.instantaneous);

  bool rd = false;
  r.w_smi = smi_weights(r.X, tone(specs[0].carrier, c.M), &rd);
  for (int k = 1; k < K; ++k) r.null_db_smi.push_back(relative_gain_db(r.w_smi, c.array, specs[k].theta_deg, specs[0].theta_deg));
  if (c.method == Method::Smi) {
    r.w = r.w_smi;
    r.null_db = r.null_db_smi;
    return r;
  }

  const DpssBasis basis = dpss_basis(c.M, c.W(), c.L());
  const MatrixXd& S = basis.S;
  const double gamma_ratio = c.gamma0_ratio();
  AdmmParams ap;
  ap.rho = c.solver.rho;
  ap.eps = c.solver.eps;
  ap.tol_primal = ap.tol_dual = c.solver.tol;
  ap.max_iters = c.solver.max_iters;

  try {
    MatrixXcd X1;
    if (c.method == Method::Anm2d) {
      const double t0 = now_seconds();
      Sdp2dSolution sol = solve_sdp_2d(r.X, S, c.array, ap);
      r.seconds = now_seconds() - t0;
      r.iterations = sol.iterations;
      r.converged = sol.converged;
      r.objective = sol.objective;
      r.fidelity = sol.fidelity;
      r.admm_trace = std::move(sol.trace);
      r.f_grid = uniform_grid(c.solver.grid_f2d);
      r.theta2d = sine_uniform_angles(c.solver.grid_theta2d);
      r.q2d = dual_polynomial_2d(sol.Q_star, r.f_grid, r.theta2d, c.array);
      r.max_dual = r.q2d.maxCoeff();
      auto pk = cluster_2d(r.q2d, r.f_grid, r.theta2d, gamma_ratio * r.max_dual, K);
      // desired atom: nearest the hint in f, else smallest f
      size_t best = 0;
      for (size_t k = 1; k < pk.size(); ++k) {
        bool better = c.solver.hint ? std::abs(circ_diff(pk[k].f, *c.solver.hint)) <
                                          std::abs(circ_diff(pk[best].f, *c.solver.hint))
                                    : pk[k].f < pk[best].f;
        if (better) best = k;
      }
      std::rotate(pk.begin(), pk.begin() + best, pk.begin() + best + 1);
      for (const auto& p : pk) {
        r.f_tilde.push_back(p.f);
        r.theta_tilde.push_back(p.theta);
      }
      r.sign_alpha1 = sign_alpha1_2d(sol.X_hat, pk, c.array);
    } else {
      Tensor3 Q;
      if (c.method == Method::Ivdst) {
        IvdstParams ip;
        ip.eta = c.solver.eta;
        ip.decay = c.solver.decay;
        ip.decay_every = c.solver.decay_every;
        ip.iters = c.solver.iters;
        ip.seed = c.seed;
        const double t0 = now_seconds();
        IvdstResult res = ivdst_solve(r.X, S, ip);
        r.seconds = now_seconds() - t0;
        r.iterations = ip.iters;
        r.objective = res.trace.back().objective;
        r.ivdst_trace = std::move(res.trace);
        Q = std::move(res.Q);
        X1 = apply_L_adjoint(r.X.col(0), S)[0];
      } else {
        const double t0 = now_seconds();
        Sdp1dSolution sol = solve_sdp_1d(r.X, S, ap);
        r.seconds = now_seconds() - t0;
        r.iterations = sol.iterations;
        r.converged = sol.converged;
        r.objective = sol.objective;
        r.dual_objective = sol.dual_objective;
        r.fidelity = sol.fidelity;
        r.admm_trace = std::move(sol.trace);
        Q = std::move(sol.Q_star);
        X1 = sol.X_hat[0];
      }
      r.f_grid = uniform_grid(c.solver.grid);
      r.q = dual_polynomial_1d(Q, r.f_grid);
      r.max_dual = r.q.maxCoeff();
      r.f_tilde = order_desired_first(cluster_frequencies(r.f_grid, r.q, gamma_ratio * r.max_dual, K, 2.0 * c.W()), c.solver.hint);
      r.sign_alpha1 = estimate_sign_alpha1(X1, r.f_tilde, 1.0 / (2.0 * c.M));
    }
    r.s1 = reconstruct_s1(r.f_tilde[0], r.sign_alpha1, S);
    r.w = smi_weights(r.X, r.s1);
    for (int k = 1; k < K; ++k) r.null_db.push_back(relative_gain_db(r.w, c.array, specs[k].theta_deg, specs[0].theta_deg));
    r.s1_correlation = std::abs(r.s1.dot(s1_true)) / (r.s1.norm() * s1_true.norm());
  } catch (const Error& e) {
    if (e.code() == Errc::config || e.code() == Errc::dimension || e.code() == Errc::invalid_argument) throw;
    r.error = e.what();
    r.error_code = static_cast<int>(e.code());
  }
  return r;
}

json result_to_json(const RunResult& r) {
  auto cvec = [](const VectorXcd& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
    return a;
  };
  json j;
  j["scenario"] = scenario_to_json(r.config);
  j["status"] = r.ok() ? "ok" : "error";
  if (!r.ok()) {
    j["error"] = r.error;
    j["error_code"] = r.error_code;
  }
  j["true_frequencies"] = json::array();
  for (const auto& s : r.config.sources) j["true_frequencies"].push_back(s.carrier);
  j["estimated_frequencies"] = r.f_tilde;
  if (!r.theta_tilde.empty()) j["estimated_angles_deg"] = r.theta_tilde;
  j["weights"] = cvec(r.w);
  j["weights_smi"] = cvec(r.w_smi);
  j["sign_alpha1"] = cvec(r.sign_alpha1);
  json nd = json::array();
  for (size_t k = 0; k < r.null_db.size(); ++k)
    nd.push_back({{"theta_deg", r.config.sources[k + 1].theta_deg}, {"gain_db", r.null_db[k]},
                  {"gain_db_smi", r.null_db_smi[k]}});
  j["null_depths"] = nd;
  j["s1_correlation"] = r.s1_correlation;
  j["max_dual_polynomial"] = r.max_dual;
  j["solver"] = {{"iterations", r.iterations}, {"converged", r.converged}, {"objective", r.objective},
                 {"dual_objective", r.dual_objective}, {"fidelity", r.fidelity}};
  if (!r.admm_trace.empty())
    j["solver"]["final_residuals"] = {r.admm_trace.back().primal_res, r.admm_trace.back().dual_res};
  j["wall_clock_s"] = r.seconds;
  return j;
}

// ---------------------------------------------------------------------------
// presets

namespace {

struct Kind {
  const char* name;
  OffsetKind kind;
};
constexpr Kind kKinds[] = {{"static", OffsetKind::Static},
                           {"linear", OffsetKind::Linear},
                           {"zigzag", OffsetKind::Zigzag},
                           {"random", OffsetKind::Random}};

int kind_index(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kKinds[i].name) return i;
  fail(Errc::config, "unknown offset kind '" + s + "'");
}

OffsetParams off_static(double v) {
  OffsetParams p;
  p.kind = OffsetKind::Static;
  p.value = v;
  return p;
}
OffsetParams off_linear(double s) {
  OffsetParams p;
  p.kind = OffsetKind::Linear;
  p.slope = s;
  return p;
}
OffsetParams off_zigzag(double s, int P) {
  OffsetParams p;
  p.kind = OffsetKind::Zigzag;
  p.slope = s;
  p.half_period = P;
  return p;
}
OffsetParams off_random(double b, std::uint64_t seed) {
  OffsetParams p;
  p.kind = OffsetKind::Random;
  p.bound = b;
  p.seed = seed;
  return p;
}

std::array<OffsetParams, 3> exp1_offsets(int k) {
  switch (k) {
    case 0: return {off_static(0.002), off_static(-0.003), off_static(0.0025)};
    case 1: return {off_linear(1.2e-4), off_linear(-1.0e-4), off_linear(1.5e-4)};
    case 2: return {off_zigzag(5.5e-4, 30), off_zigzag(-3.0e-4, 30), off_zigzag(4.0e-4, 20)};
    default: return {off_random(0.01, 631), off_random(0.01, 632), off_random(0.01, 633)};
  }
}

ScenarioConfig base(const std::string& name, int M, const double f[3], const OffsetParams off[3]) {
  ScenarioConfig c;
  c.name = name;
  c.M = M;
  c.array = ArrayConfig::ula(4, 0.5);
  const double th[3] = {-20.0, -60.0, 20.0};
  for (int k = 0; k < 3; ++k) {
    SourceConfig s;
    s.theta_deg = th[k];
    s.carrier = f[k];
    s.offset = off[k];
    s.offset_seed_set = off[k].kind == OffsetKind::Random;
    c.sources.push_back(s);
  }
  c.solver.hint = f[0];
  return c;
}

}  // namespace

// Table I of the experiments: L per method and offset type
int table_L(Method m, int kind) {
  static const int ivdst[4] = {7, 2, 2, 13};
  static const int anm[4] = {7, 10, 10, 13};
  static const int two_d[4] = {4, 4, 5, 4};
  switch (m) {
    case Method::Ivdst: return ivdst[kind];
    case Method::Anm1d: return anm[kind];
    case Method::Anm2d: return two_d[kind];
    default: return 2;
  }
}

std::vector<std::string> preset_names() {
  std::vector<std::string> v;
  for (const char* e : {"exp1-", "exp2-m300-", "exp3-2d-"})
    for (const auto& k : kKinds) v.push_back(std::string(e) + k.name);
  return v;
}

ScenarioConfig preset(const std::string& name) {
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
  if (starts("exp1-")) {
    const int k = kind_index(name.substr(5));
    const double f[3] = {0.1, 0.3, 0.5};
    ScenarioConfig c = base(name, 120, f, exp1_offsets(k).data());
    c.method = Method::Ivdst;
    c.solver.L = table_L(Method::Ivdst, k);
    return c;
  }
  if (starts("exp2-m300-")) {
    const int k = kind_index(name.substr(10));
    const double f[3] = {0.2, 0.24, 0.3};
    OffsetParams off[4][3] = {
        {off_static(0.001), off_static(-0.001), off_static(0.0015)},
        {off_linear(6.0e-5), off_linear(-3.0e-5), off_linear(3.0e-5)},
        {off_zigzag(2.0e-4, 60), off_zigzag(-2.0e-4, 60), off_zigzag(2.0e-4, 40)},
        {off_random(0.005, 118), off_random(0.005, 119), off_random(0.005, 120)},
    };
    ScenarioConfig c = base(name, 300, f, off[k]);
    c.method = Method::Ivdst;
    c.solver.L = 2;
    return c;
  }
  if (starts("exp3-2d-")) {
    const int k = kind_index(name.substr(8));
    const double f[3] = {0.2, 0.7, 0.7};
    // same offsets as exp1, shorter record
    ScenarioConfig c = base(name, k == 2 ? 30 : 15, f, exp1_offsets(k).data());
    c.method = Method::Anm2d;
    c.solver.L = table_L(Method::Anm2d, k);
    c.solver.grid = 8192;
    return c;
  }
  fail(Errc::config, "unknown preset '" + name + "'");
}

bool has_local_max_near(const MatrixXd& q, const VectorXd& fg, const VectorXd& tg, double f, double theta,
                        int cells) {
  const int F = q.rows(), A = q.cols();
  int fi = 0, tj = 0;
  for (int i = 1; i < F; ++i)
    if (std::abs(circ_diff(fg[i], f)) < std::abs(circ_diff(fg[fi], f))) fi = i;
  for (int j = 1; j < A; ++j)
    if (std::abs(tg[j] - theta) < std::abs(tg[tj] - theta)) tj = j;
  for (int di = -cells; di <= cells; ++di)
    for (int dj = -cells; dj <= cells; ++dj) {
      int i = (fi + di + F) % F, j = tj + dj;
      if (j < 0 || j >= A) continue;
      bool peak = true, above = false;
      for (int a = -1; a <= 1 && peak; ++a)
        for (int b = -1; b <= 1 && peak; ++b) {
          int ii = (i + a + F) % F, jj = j + b;
          if (!(a || b) || jj < 0 || jj >= A) continue;
          if (q(ii, jj) > q(i, j)) peak = false;
          if (q(ii, jj) < q(i, j)) above = true;
        }
      if (peak && above) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// experiments

namespace {

json brief(const RunResult& r) {
  json j;
  j["method"] = to_string(r.config.method);
  j["M"] = r.config.M;
  j["L"] = r.config.L();
  j["status"] = r.ok() ? "ok" : "error";
  if (!r.ok()) j["error"] = r.error;
  j["estimated_frequencies"] = r.f_tilde;
  if (!r.theta_tilde.empty()) j["estimated_angles_deg"] = r.theta_tilde;
  j["null_db"] = r.null_db;
  j["null_db_smi"] = r.null_db_smi;
  j["iterations"] = r.iterations;
  j["wall_clock_s"] = r.seconds;
  return j;
}

std::vector<std::string> expand(const std::string& name, const char* prefix) {
  std::vector<std::string> v;
  if (name == std::string(prefix).substr(0, std::string(prefix).size() - 1))
    for (const auto& k : kKinds) v.push_back(std::string(prefix) + k.name);
  else
    v.push_back(name);
  return v;
}

}  // namespace

json run_experiment(const std::string& name, const ExperimentOptions& opt, const std::string& dir) {
  json summary;
  summary["experiment"] = name;
  summary["runs"] = json::array();
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };

  if (starts("exp1")) {
    for (const auto& pn : expand(name, "exp1-")) {
      ScenarioConfig c = preset(pn);
      const int k = kind_index(pn.substr(5));
      RunResult ri = run_scenario(c);
      write_run(ri, dir + "/" + pn + "/ivdst", opt.svg);
      json e = {{"preset", pn}, {"ivdst", brief(ri)}};
      if (opt.run_anm) {
        ScenarioConfig ca = c;
        ca.method = Method::Anm1d;
        ca.solver.L = table_L(Method::Anm1d, k);
        if (opt.anm_M > 0) {
          // keep the DPSS bandwidth L / (2M) of the full-length run
          ca.solver.L = std::max(2, static_cast<int>(std::lround(ca.solver.L * double(opt.anm_M) / c.M)));
          ca.M = opt.anm_M;
        }
        RunResult ra = run_scenario(ca);
        write_run(ra, dir + "/" + pn + "/anm1d", opt.svg);
        e["anm1d"] = brief(ra);
      }
      summary["runs"].push_back(e);
    }
  } else if (starts("exp2")) {
    for (const auto& pn : expand(name, "exp2-m300-")) {
      RunResult r = run_scenario(preset(pn));
      write_run(r, dir + "/" + pn, opt.svg);
      summary["runs"].push_back({{"preset", pn}, {"ivdst", brief(r)}});
    }
  } else if (starts("exp3")) {
    for (const auto& pn : expand(name, "exp3-2d-")) {
      ScenarioConfig c = preset(pn);
      RunResult r2 = run_scenario(c);
      write_run(r2, dir + "/" + pn + "/anm2d", opt.svg);
      ScenarioConfig c1 = c;
      c1.method = Method::Ivdst;
      RunResult r1 = run_scenario(c1);
      write_run(r1, dir + "/" + pn + "/ivdst", opt.svg);
      json e = {{"preset", pn}, {"anm2d", brief(r2)}, {"ivdst_1d", brief(r1)}};
      e["peak_near_interferer_2"] = has_local_max_near(r2.q2d, r2.f_grid, r2.theta2d, c.sources[1].carrier, c.sources[1].theta_deg);
      e["peak_near_interferer_3"] = has_local_max_near(r2.q2d, r2.f_grid, r2.theta2d, c.sources[2].carrier, c.sources[2].theta_deg);
      summary["runs"].push_back(e);
    }
  } else if (name == "exp4-hist") {
    std::ostringstream csv;
    csv << "trial,kind,method,gain_db_m60,gain_db_20\n";
    std::mt19937_64 gen(opt.seed);
    std::uniform_int_distribution<int> die(1, 6), coin(0, 1);
    for (int k = 0; k < 4; ++k) {
      for (int t = 0; t < opt.trials; ++t) {
        ScenarioConfig c = preset(std::string("exp3-2d-") + kKinds[k].name);
        for (auto& s : c.sources) {
          const double sign = coin(gen) ? 1.0 : -1.0;
          const int v = die(gen);
          switch (c.sources[0].offset.kind) {
            case OffsetKind::Static: s.offset.value = sign * 0.01 * v; break;
            case OffsetKind::Linear:
            case OffsetKind::Zigzag: s.offset.slope = sign * 0.001 * v; break;
            case OffsetKind::Random:
              s.offset.seed = gen();
              break;
          }
        }
        c.name = std::string("exp4-") + kKinds[k].name + "-" + std::to_string(t);
        RunResult r = run_scenario(c);
        auto g = [](const std::vector<double>& v, size_t i) { return i < v.size() ? v[i] : std::nan(""); };
        csv << t << "," << kKinds[k].name << ",anm2d," << g(r.null_db, 0) << "," << g(r.null_db, 1) << "\n";
        csv << t << "," << kKinds[k].name << ",smi," << g(r.null_db_smi, 0) << "," << g(r.null_db_smi, 1) << "\n";
        summary["runs"].push_back({{"trial", t}, {"kind", kKinds[k].name}, {"anm2d", brief(r)}});
      }
    }
    write_text(dir + "/histogram.csv", csv.str());
  } else {
    fail(Errc::config, "unknown experiment '" + name + "'");
  }
  write_text(dir + "/summary.json", summary.dump(2) + "\n");
  return summary;
}

json run_benchmark(const ScenarioConfig& c, const std::string& dir) {
  ScenarioConfig ci = c, ca = c;
  ci.method = Method::Ivdst;
  ca.method = Method::Anm1d;
  RunResult ri = run_scenario(ci);
  RunResult ra = run_scenario(ca);
  json j;
  j["scenario"] = c.name;
  j["ivdst"] = brief(ri);
  j["anm1d"] = brief(ra);
  j["time_ratio"] = ra.seconds > 0 ? ri.seconds / ra.seconds : std::nan("");
  if (!dir.empty()) write_text(dir + "/benchmark.json", j.dump(2) + "\n");
  return j;
}

}  // namespace driftbeam
