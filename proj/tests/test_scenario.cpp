#include "scenario.hpp"

#include <doctest.h>

using namespace driftbeam;

namespace {

json small_config() {
  return json::parse(R"({
    "name": "small",
    "M": 40,
    "array": {"N": 4, "spacing": 0.5},
    "sources": [
      {"theta_deg": -20, "carrier": 0.1, "offset": {"kind": "static", "value": 0.002}},
      {"theta_deg": 40, "carrier": 0.4, "offset": {"kind": "linear", "slope": 1e-4}},
      {"theta_deg": 10, "carrier": 0.7, "offset": {"kind": "random", "bound": 0.005}}
    ],
    "method": "ivdst",
    "solver": {"L": 2, "iters": 40},
    "seed": 3
  })");
}

Errc code_of(const json& j) {
  try {
    scenario_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc{};
}

}  // namespace

TEST_CASE("scenario parsing and round trip") {
  auto c = scenario_from_json(small_config());
  CHECK(c.M == 40);
  CHECK(c.sources.size() == 3);
  CHECK(c.L() == 2);
  CHECK(c.W() == doctest::Approx(2.0 / 80));
  CHECK(c.sources[2].offset.kind == OffsetKind::Random);
  CHECK_FALSE(c.sources[2].offset_seed_set);
  auto back = scenario_from_json(scenario_to_json(c));
  CHECK(scenario_to_json(back) == scenario_to_json(c));
}

TEST_CASE("unknown keys and bad values are rejected") {
  json j = small_config();
  j["extra"] = 1;
  CHECK(code_of(j) == Errc::config);
  j = small_config();
  j["solver"]["etaa"] = 2;
  CHECK(code_of(j) == Errc::config);
  j = small_config();
  j["sources"][0]["offset"]["slop"] = 1;
  CHECK(code_of(j) == Errc::config);
  j = small_config();
  j["array"]["Nn"] = 4;
  CHECK(code_of(j) == Errc::config);
  j = small_config();
  j["method"] = "music";
  CHECK(code_of(j) != Errc{});
  j = small_config();
  j["sources"][0]["offset"]["kind"] = "sawtooth";
  CHECK(code_of(j) != Errc{});
  j = small_config();
  j["M"] = "forty";
  CHECK(code_of(j) != Errc{});
  j = small_config();
  j["sources"][0]["theta_deg"] = 120;
  CHECK(code_of(j) != Errc{});
}

TEST_CASE("random offsets are reproducible from the scenario seed") {
  auto c = scenario_from_json(small_config());
  auto a = realize_sources(c), b = realize_sources(c);
  CHECK((a[2].offset.delta - b[2].offset.delta).norm() == 0.0);
  c.seed = 4;
  auto d = realize_sources(c);
  CHECK((a[2].offset.delta - d[2].offset.delta).norm() > 0.0);
  CHECK(a[2].offset.delta.cwiseAbs().maxCoeff() <= 0.005 + 1e-15);
}

TEST_CASE("end-to-end run is deterministic") {
  auto c = scenario_from_json(small_config());
  auto r1 = run_scenario(c), r2 = run_scenario(c);
  REQUIRE(r1.ok());
  CHECK(r1.f_tilde == r2.f_tilde);
  CHECK((r1.w - r2.w).norm() == 0.0);
  CHECK(r1.f_tilde.size() == 3);
  CHECK(r1.null_db.size() == 2);
  CHECK(r1.ivdst_trace.size() == 40);
  json j = result_to_json(r1);
  CHECK(j.contains("estimated_frequencies"));
  CHECK(j.contains("null_depths"));
}

TEST_CASE("SMI method runs without a solver") {
  auto j = small_config();
  j["method"] = "smi";
  auto r = run_scenario(scenario_from_json(j));
  REQUIRE(r.ok());
  CHECK(r.w_smi.size() == 4);
  CHECK(r.null_db_smi.size() == 2);
}

TEST_CASE("presets") {
  auto names = preset_names();
  CHECK(names.size() == 12);
  for (const auto& n : names) CHECK_NOTHROW(preset(n).validate());
  CHECK_THROWS_AS(preset("exp9-nothing"), Error);
  auto p = preset("exp1-zigzag");
  CHECK(p.M == 120);
  CHECK(p.sources.size() == 3);
  CHECK(p.L() == table_L(Method::Ivdst, 2));
}

TEST_CASE("local maxima in a 2D map") {
  VectorXd fg(5), tg(4);
  fg << 0, 0.2, 0.4, 0.6, 0.8;
  tg << -60, -20, 20, 60;
  MatrixXd q = MatrixXd::Zero(5, 4);
  q(2, 1) = 1.0;
  q(4, 3) = 0.5;
  CHECK(has_local_max_near(q, fg, tg, 0.4, -20));
  CHECK(has_local_max_near(q, fg, tg, 0.6, 20));
  CHECK_FALSE(has_local_max_near(q, fg, tg, 0.0, -60, 0));
  CHECK(has_local_max_near(q, fg, tg, 0.0, 60));  // wraps in f
}
