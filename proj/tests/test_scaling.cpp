#include <doctest.h>

#include <cmath>

#include "srpt/scaling.hpp"

using namespace srpt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// closed-form S for Exponential(lambda)
double exp_s(double lambda, double x) {
  return lambda * std::exp(lambda * x) / (lambda * x + 1.0);
}
}  // namespace

TEST_CASE("make_params: canonical parameterization") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));

  const auto p0 = make_params(exp1, 10.0, 0.0);
  CHECK(p0.lambda_r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p0.c_r == doctest::Approx(3.8898).epsilon(1e-4));
  CHECK(exp1.big_s(p0.c_r) == doctest::Approx(10.0).epsilon(1e-9));

  const auto pm = make_params(exp1, 10.0, -1.0);
  CHECK(pm.lambda_r == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(pm.rho_r() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(10.0 * (pm.rho_r() - 1.0) == doctest::Approx(-1.0).epsilon(1e-12));

  // kappa = 0 gives rho^r = 1 for every law and r
  const LawHandle weib(DistributionSpec::weibull(1.0, 2.0));
  for (double r : {5.0, 20.0, 80.0}) {
    const auto p = make_params(weib, r, 0.0);
    CHECK(p.rho_r() == 1.0);
    CHECK(p.lambda_r * weib.mean() == doctest::Approx(1.0).epsilon(1e-14));
  }

  CHECK_THROWS_AS(make_params(exp1, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("dd_scale_measure") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  const auto p = make_params(exp1, 10.0, 0.0);

  MeasureSnapshot empty;
  const auto se = dd_scale_measure(empty, p);
  CHECK(se.total_mass() == 0.0);

  MeasureSnapshot one;
  one.locations = {p.c_r};
  one.weights = {1.0};
  const auto s1 = dd_scale_measure(one, p);
  CHECK(s1.locations[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s1.weights[0] == doctest::Approx(p.c_r / 10.0).epsilon(1e-15));
  CHECK(s1.weights[0] == doctest::Approx(0.389).epsilon(2e-3));

  // <chi, dd_scale(m)> * r = <chi, m> for a random measure
  Rng rng(3);
  MeasureSnapshot m;
  for (int i = 0; i < 40; ++i) {
    m.locations.push_back(rng.uniform01() * 7.0);
    m.weights.push_back(1.0);
  }
  const auto sm = dd_scale_measure(m, p);
  CHECK(sm.total_work() * p.r == doctest::Approx(m.total_work()).epsilon(1e-12));
}

TEST_CASE("tilde_processes: one-task algebra and grid checks") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  const auto p = make_params(exp1, 10.0, 0.0);

  PrimitiveStream prims;
  prims.initial_tasks = {p.c_r};
  prims.horizon = p.r * p.r * 1.0;
  SimulateOptions opt;
  opt.snapshot_dt = prims.horizon / 100.0;
  opt.a_grid = {0.5 * p.c_r, p.c_r};
  const auto traj = simulate(prims, kInf, opt);
  const auto st = tilde_processes(traj, p, 1.0);

  CHECK(st.a_grid[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(st.a_grid[1] == doctest::Approx(1.0).epsilon(1e-12));
  // before completion (t < c_r/r²): Qtilde = c_r/r, Wtilde = (c_r - r²t)/r
  const double t1 = st.times[1];
  REQUIRE(t1 * p.r * p.r < p.c_r);
  CHECK(st.q_tilde[1] == doctest::Approx(p.c_r / p.r).epsilon(1e-12));
  CHECK(st.w_tilde[1] ==
        doctest::Approx((p.c_r - p.r * p.r * t1) / p.r).epsilon(1e-9));
  // after completion: exactly zero
  CHECK(st.w_tilde.back() == 0.0);
  CHECK(st.q_tilde.back() == 0.0);

  // horizon too short for the requested T
  CHECK_THROWS_AS(tilde_processes(traj, p, 2.0), GridMismatch);
  CHECK_THROWS_AS(find_scaled_a(traj, p, 0.75), GridMismatch);
  CHECK(find_scaled_a(traj, p, 0.5) == 0);
}

TEST_CASE("drift identity and limits") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));

  // a = 1: exact cancellation, drift = kappa - lambda_r
  for (double r : {10.0, 25.0, 60.0}) {
    for (double kappa : {0.0, -0.5, 0.7}) {
      const auto p = make_params(exp1, r, kappa);
      CHECK(drift(p, 1.0) == kappa - p.lambda_r);
    }
  }

  // Exponential(1), kappa=0, r=10: drift(2) from the closed form
  const auto p10 = make_params(exp1, 10.0, 0.0);
  const double expect2 = -p10.lambda_r * exp_s(1.0, p10.c_r) / exp_s(1.0, 2.0 * p10.c_r);
  CHECK(drift(p10, 2.0) == doctest::Approx(expect2).epsilon(1e-9));
  CHECK(drift(p10, 2.0) == doctest::Approx(-0.0367).epsilon(2e-3));

  // a = 0.5 diverges monotonically to -infinity over r in {10, 100, 1000}
  double prev = 0.0;
  for (double r : {10.0, 100.0, 1000.0}) {
    const auto p = make_params(exp1, r, 0.0);
    const double d = drift(p, 0.5);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < -50.0);
  // value at r=10 from the formula: -S(c)/S(c/2) with c = S^{-1}(10)
  CHECK(drift(p10, 0.5) ==
        doctest::Approx(-10.0 / exp_s(1.0, 0.5 * p10.c_r)).epsilon(1e-6));
  CHECK(drift(p10, 0.5) == doctest::Approx(-4.211).epsilon(1e-3));

  // drift_limit table
  CHECK(drift_limit(0.5, 1.0, 0.0) == -kInf);
  CHECK(drift_limit(1.0, 1.0, 0.0) == -1.0);
  CHECK(drift_limit(3.0, 1.0, -0.5) == -0.5);

  // monotone in a
  double d_prev = -kInf;
  for (double a = 0.1; a < 5.0; a += 0.1) {
    const double d = drift(p10, a);
    CHECK(d >= d_prev - 1e-12);
    d_prev = d;
  }
}

TEST_CASE("concentration_ratio") {
  ScaledMeasure one;
  one.locations = {1.0};
  one.weights = {0.7};
  CHECK(concentration_ratio(one, 0.25).value() == doctest::Approx(1.0));

  ScaledMeasure two;
  two.locations = {0.2, 1.0};
  two.weights = {0.3, 0.3};
  CHECK(concentration_ratio(two, 0.5).value() == doctest::Approx(0.5).epsilon(1e-12));

  ScaledMeasure empty;
  CHECK(!concentration_ratio(empty, 0.5).has_value());

  // window is half-open: (1-eps, 1+eps]
  ScaledMeasure edge;
  edge.locations = {0.5, 1.5};
  edge.weights = {1.0, 1.0};
  CHECK(concentration_ratio(edge, 0.5).value() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("c_r/r decreases to zero") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  double prev = kInf;
  for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
    const double v = exp1.s_inverse(r) / r;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("sup functionals from event samples") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  const auto p = make_params(exp1, 5.0, 0.0);
  const LawHandle inter(DistributionSpec::exponential(p.lambda_r));
  const auto prims = generate_primitives(exp1, inter, inter, InitialCondition::empty(),
                                         p.r * p.r, 31);
  SimulateOptions opt;
  opt.snapshot_dt = p.r * p.r / 200.0;
  opt.a_grid = {0.5 * p.c_r, 2.0 * p.c_r};
  opt.event_samples = true;
  const auto traj = simulate(prims, kInf, opt);

  // sup over rows must dominate sup over snapshots for every functional
  double snap_sup_w = 0.0, snap_sup_qmw = 0.0, snap_sup_wa = 0.0, snap_sup_diff = 0.0;
  for (std::size_t s = 0; s < traj.n_snapshots(); ++s) {
    snap_sup_w = std::max(snap_sup_w, traj.w[s] / p.r);
    snap_sup_qmw =
        std::max(snap_sup_qmw, std::abs(p.c_r * traj.q[s] - traj.w[s]) / p.r);
    snap_sup_wa = std::max(snap_sup_wa, traj.w_a_at(s, 0) / p.r);
    snap_sup_diff = std::max(snap_sup_diff, (traj.w[s] - traj.w_a_at(s, 1)) / p.r);
  }
  CHECK(sup_w_tilde(traj, p, 1.0) >= snap_sup_w - 1e-12);
  CHECK(sup_q_tilde_minus_w_tilde(traj, p, 1.0) >= snap_sup_qmw - 1e-12);
  CHECK(sup_w_tilde_a(traj, p, 0.5, 1.0) >= snap_sup_wa - 1e-12);
  CHECK(sup_w_tilde_minus_w_tilde_a(traj, p, 2.0, 1.0) >= snap_sup_diff - 1e-12);

  // crossing contribution: the cutoff workload touches a·c_r exactly
  if (traj.first_crossing_a[0] < traj.horizon)
    CHECK(sup_w_tilde_a(traj, p, 0.5, 1.0) >= 0.5 * p.c_r / p.r - 1e-12);

  SimulateOptions no_samples;
  no_samples.snapshot_dt = opt.snapshot_dt;
  const auto bare = simulate(prims, kInf, no_samples);
  CHECK_THROWS_AS(sup_w_tilde(bare, p, 1.0), std::invalid_argument);
}
