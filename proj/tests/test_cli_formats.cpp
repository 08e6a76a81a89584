#include <doctest.h>

#include <sstream>

#include "srpt/serialize.hpp"

using namespace srpt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("law spec JSON round trip and strictness") {
  for (const auto& spec :
       {DistributionSpec::exponential(1.5), DistributionSpec::weibull(1.0, 2.0),
        DistributionSpec::pareto(2.0, 1.0), DistributionSpec::uniform(0.0, 2.0),
        DistributionSpec::deterministic(0.7)}) {
    const auto j = spec_to_json(spec);
    const auto back = spec_from_json(j);
    CHECK(spec_to_json(back) == j);
  }
  const auto j = nlohmann::json::parse(R"({"kind":"exponential","rate":1.0})");
  CHECK(spec_from_json(j).rate == 1.0);

  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(
                      R"({"kind":"exponential","rate":1.0,"bogus":2})")),
                  ConfigInvalid);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"exponential"})")),
                  ConfigInvalid);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"cauchy"})")),
                  ConfigInvalid);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"pareto","index":0.5,"x_m":1})")),
                  ConfigInvalid);
}

TEST_CASE("experiment config JSON: defaults, round trip, unknown-field rejection") {
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::exponential(1.0);
  cfg.r_list = {20.0, 40.0};
  cfg.kappa = -0.5;
  const auto j = config_to_json(cfg);
  const auto back = config_from_json(j);
  CHECK(config_to_json(back) == j);

  auto j2 = j;
  j2["not_a_field"] = 1;
  CHECK_THROWS_AS(config_from_json(j2), ConfigInvalid);

  nlohmann::json minimal;
  minimal["law"] = {{"kind", "exponential"}, {"rate", 1.0}};
  const auto c = config_from_json(minimal);
  CHECK(c.reps == 100);
  CHECK(c.T == 1.0);
  CHECK(c.a_grid.size() == 9);  // default straddles a=1

  CHECK_THROWS_AS(config_from_json(nlohmann::json::object()), ConfigInvalid);
}

TEST_CASE("trajectory CSV: header, coupled Z columns, determinism") {
  PrimitiveStream prims;
  prims.arrival_times = {1.0, 2.5};
  prims.sizes = {2.0, 0.5};
  prims.horizon = 5.0;
  SimulateOptions opt;
  opt.snapshot_dt = 1.0;
  opt.a_grid = {1.0};
  opt.event_log = true;
  const auto full = simulate(prims, kInf, opt);
  SimulateOptions topt;
  topt.snapshot_dt = 1.0;
  const auto trunc = simulate(prims, 1.0, topt);

  std::ostringstream os1, os2;
  write_trajectory_csv(os1, full, {{1.0, &trunc}});
  write_trajectory_csv(os2, full, {{1.0, &trunc}});
  CHECK(os1.str() == os2.str());
  const std::string out = os1.str();
  CHECK(out.find("t,Q,W,Q_a@1,W_a@1,Z_a@1,tau@1") == 0);
  // row at t=3: post-completion, Q=1 W=0.5, Z=0 (truncated queue done at 3)
  CHECK(out.find("\n3,1,0.5,1,0.5,0,2\n") != std::string::npos);

  // a coupled run at a cutoff outside the grid lands in a trailing column
  std::ostringstream os3;
  const auto trunc2 = simulate(prims, 0.75, topt);
  write_trajectory_csv(os3, full, {{0.75, &trunc2}});
  CHECK(os3.str().find("t,Q,W,Q_a@1,W_a@1,tau@1,Z_a@0.75") == 0);

  std::ostringstream ev;
  write_events_jsonl(ev, full);
  CHECK(ev.str().find("{\"t\":1,\"kind\":\"arrival\",\"task\":1}") != std::string::npos);
}

TEST_CASE("scaled CSV header block") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  const auto p = make_params(exp1, 10.0, -0.5);
  PrimitiveStream prims;
  prims.initial_tasks = {p.c_r};
  prims.horizon = 100.0;
  SimulateOptions opt;
  opt.snapshot_dt = 10.0;
  opt.a_grid = {p.c_r};
  const auto traj = simulate(prims, kInf, opt);
  const auto st = tilde_processes(traj, p, 1.0);
  std::ostringstream os;
  write_scaled_csv(os, st);
  CHECK(os.str().find("# scaled\n# r=10\n") == 0);
  CHECK(os.str().find("# kappa=-0.5\n") != std::string::npos);
  CHECK(os.str().find("t,Q,W,Q_a@1,W_a@1,theta@1") != std::string::npos);
}

TEST_CASE("path serialization") {
  auto p = PiecewiseLinearPath::Builder(1.0)
               .piece_until(-1.0, 1.0)
               .jump(0.5)
               .piece_until(0.0, 2.0)
               .finish();
  const auto j = path_to_json(p);
  CHECK(j["horizon"] == 2.0);
  CHECK(j["segments"].size() == 2);

  std::ostringstream os;
  write_path_csv(os, p, 0.5);
  CHECK(os.str() == "t,value\n0,1\n0.5,0.5\n1,0.5\n1.5,0.5\n2,0.5\n");
}

TEST_CASE("fmt_double is lossless and stable") {
  for (double v : {0.1, 1.0 / 3.0, 3.8898, 1e-17, 123456.789}) {
    CHECK(std::stod(fmt_double(v)) == v);
    CHECK(fmt_double(v) == fmt_double(v));
  }
}
