#include <doctest.h>

#include <cmath>

#include "srpt/harness.hpp"
#include "srpt/serialize.hpp"

using namespace srpt;

TEST_CASE("ks_two_sample") {
  std::vector<double> x = {1.0, 2.0, 3.0};
  CHECK(ks_two_sample(x, x) == 0.0);

  std::vector<double> zero = {0.0}, one = {1.0};
  CHECK(ks_two_sample(zero, one) == 1.0);

  std::vector<double> empty;
  CHECK_THROWS_AS(ks_two_sample(empty, x), EmptySample);

  // i.i.d. same law, n = 1e4 each: below the 0.99 null quantile
  // c(0.01)·sqrt(2/n) = 1.6276·0.01414 ≈ 0.023 < 0.03
  Rng rng(12);
  std::vector<double> a(10000), b(10000);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal();
  CHECK(ks_two_sample(a, b) < 0.03);

  // mixed sizes and duplicated points
  std::vector<double> c = {0.0, 0.0, 1.0};
  std::vector<double> d = {0.0, 1.0};
  CHECK(ks_two_sample(c, d) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("interarrival laws by kind") {
  CHECK(interarrival_law("exponential", 2.0).mean() == doctest::Approx(0.5));
  CHECK(interarrival_law("deterministic", 2.0).mean() == doctest::Approx(0.5));
  CHECK(interarrival_law("uniform", 2.0).mean() == doctest::Approx(0.5));
  CHECK(interarrival_sigma("deterministic", 2.0) == 0.0);
  CHECK(interarrival_sigma("exponential", 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(interarrival_law("gamma", 1.0), ConfigInvalid);
}

TEST_CASE("run_ensemble: degenerate deterministic config is replication-exact") {
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::deterministic(0.5);
  cfg.interarrival_kind = "deterministic";
  cfg.kappa = -1.0;
  cfg.r_list = {8.0};
  cfg.reps = 2;
  cfg.T = 1.0;
  cfg.a_grid = {0.5};
  cfg.eps_list = {0.5};
  cfg.functionals = {"WT", "supQminusW"};
  cfg.snapshots = 20;
  cfg.threads = 1;
  cfg.reference_paths = 50;
  cfg.reference_steps = 64;
  const auto report = run_ensemble(cfg);
  REQUIRE(report.per_r.size() == 1);
  // all replications identical -> zero variance, KS between halves = 0
  CHECK(report.per_r[0].stats.at("WT").summary.variance == 0.0);
  const double wt = report.per_r[0].stats.at("WT").summary.mean;
  std::vector<double> h1 = {wt}, h2 = {wt};
  CHECK(ks_two_sample(h1, h2) == 0.0);
  CHECK(!report.hard_fail);
}

TEST_CASE("run_ensemble: coupled checks and trends at small scale") {
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::exponential(1.0);
  cfg.kappa = -0.5;
  cfg.r_list = {8.0, 16.0};
  cfg.reps = 40;
  cfg.T = 1.0;
  cfg.a_grid = {0.5, 2.0};
  cfg.eps_list = {0.5};
  cfg.seed = 2026;
  cfg.snapshots = 40;
  cfg.threads = 1;
  cfg.reference_paths = 200;
  cfg.reference_steps = 512;
  const auto report = run_ensemble(cfg);
  REQUIRE(report.per_r.size() == 2);
  for (const auto& b : report.per_r) {
    CHECK(b.sandwich_workload_violations == 0);
    CHECK(b.sandwich_integer_violations == 0);
    CHECK(b.reflection_violations == 0);
    CHECK(b.two_sided_violations == 0);
    CHECK(b.stats.count("WT") == 1);
    CHECK(b.stats.count("supW_a@0.5") == 1);
    CHECK(b.stats.count("supQ_a@0.5") == 1);
    CHECK(b.stats.count("theta@0.5") == 1);
    CHECK(b.stats.count("conc@0.5") == 1);
    CHECK(b.ks_step.count("a@2") == 1);
    CHECK(b.ks_reference >= 0.0);
    CHECK(b.ks_reference <= 1.0);
  }
  CHECK(!report.hard_fail);
  // supQ_a exists only below 1; theta only below 1
  CHECK(report.per_r[0].stats.count("supQ_a@2") == 0);
  CHECK(report.per_r[0].stats.count("theta@2") == 0);

  // serial/parallel equality at identical seeds
  ExperimentConfig cfg2 = cfg;
  cfg2.threads = 2;
  const auto report2 = run_ensemble(cfg2);
  CHECK(report_to_json(report).dump() == report_to_json(report2).dump());
}

TEST_CASE("run_ensemble: atom-near-one initial regime") {
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::exponential(1.0);
  cfg.kappa = -0.5;
  cfg.r_list = {12.0};
  cfg.reps = 30;
  cfg.T = 0.5;
  cfg.a_grid = {0.5, 2.0};
  cfg.eps_list = {0.5};
  cfg.seed = 99;
  cfg.snapshots = 20;
  cfg.threads = 1;
  cfg.initial = "atom_near_one";
  cfg.initial_w = 1.5;
  cfg.functionals = {"WT", "conc"};
  cfg.reference_paths = 100;
  cfg.reference_steps = 256;
  const auto report = run_ensemble(cfg);
  CHECK(!report.hard_fail);
  CHECK(report.per_r[0].reflection_violations == 0);

  // the scaled initial measure approximates w·δ₁: floor(w·r/c_r) atoms of
  // size c_r, mass floor(w·r/c_r)·c_r/r ∈ (w - c_r/r, w]
  const LawHandle law(cfg.law);
  const auto p = make_params(law, 12.0, -0.5);
  PrimitiveStream prims = generate_primitives(
      law, interarrival_law("exponential", p.lambda_r),
      interarrival_law("exponential", p.lambda_r),
      InitialCondition::atom_near_one(1.5, p.r, p.c_r), 10.0, 1);
  const auto st = state_at(prims, std::numeric_limits<double>::infinity(), 0.0);
  const auto sm = dd_scale_measure(measure_snapshot(st), p);
  for (double loc : sm.locations) CHECK(loc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sm.total_mass() <= 1.5 + 1e-12);
  CHECK(sm.total_mass() > 1.5 - p.c_r / p.r - 1e-12);
}

TEST_CASE("run_ensemble: config validation") {
  ExperimentConfig cfg;
  cfg.r_list = {};
  CHECK_THROWS_AS(run_ensemble(cfg), ConfigInvalid);
  cfg.r_list = {10.0, 5.0};
  CHECK_THROWS_AS(run_ensemble(cfg), ConfigInvalid);
  cfg.r_list = {10.0};
  cfg.reps = 1;
  CHECK_THROWS_AS(run_ensemble(cfg), ConfigInvalid);
  cfg.reps = 2;
  cfg.law = DistributionSpec::exponential(1.0);
  cfg.r_list = {0.5};  // below 1/E[v]
  CHECK_THROWS_AS(run_ensemble(cfg), ConfigInvalid);
}

TEST_CASE("fclt_check: deterministic sizes and exponential/exponential") {
  // Deterministic(1) sizes, Exponential interarrivals: Var[Vhat(1)] -> λσ_A² = 1
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::deterministic(1.0);
  cfg.interarrival_kind = "exponential";
  cfg.kappa = 0.0;
  cfg.r_list = {30.0};
  cfg.reps = 600;
  cfg.seed = 5;
  const auto rep = fclt_check(cfg);
  CHECK(rep.sigma2_theory == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[1].t == 1.0);
  CHECK(rep.points[1].var_v_hat == doctest::Approx(1.0).epsilon(0.15));
  CHECK(std::abs(rep.points[1].mean_v_hat) <
        3.0 * std::sqrt(rep.points[1].var_v_hat / cfg.reps));

  // Exponential(1)/Exponential(1): σ² = 2
  ExperimentConfig cfg2;
  cfg2.law = DistributionSpec::exponential(1.0);
  cfg2.r_list = {30.0};
  cfg2.reps = 600;
  cfg2.seed = 6;
  const auto rep2 = fclt_check(cfg2);
  CHECK(rep2.sigma2_theory == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep2.points[1].var_v_hat == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rep2.points[0].var_v_hat == doctest::Approx(1.0).epsilon(0.2));
  // Var[Ehat(1)] vs λ³σ_A²
  CHECK(rep2.points[1].var_e_hat ==
        doctest::Approx(rep2.e_var_rate_theory).epsilon(0.2));
}
