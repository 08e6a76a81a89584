#include "srpt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srpt/distributions.hpp"
#include "srpt/engine.hpp"
#include "srpt/harness.hpp"
#include "srpt/paths.hpp"
#include "srpt/reference.hpp"
#include "srpt/scaling.hpp"
#include "srpt/serialize.hpp"
#include "srpt/stats.hpp"

namespace srpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Recorder {
  std::vector<CheckResult> results;

  void add(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }
};

// ---- shared generators -----------------------------------------------------

PiecewiseLinearPath random_path(Rng& rng, bool nonneg_jumps, double horizon = 10.0) {
  const int n = 1 + static_cast<int>(rng.uniform01() * 30);
  // keep f(0) >= 0 even if the first jump (at t=0) is negative
  PiecewiseLinearPath::Builder b(0.8 + rng.uniform01() * 2.2);
  const double dt = horizon / n;
  for (int i = 0; i < n; ++i) {
    if (rng.uniform01() < 0.6) {
      const double j = rng.uniform01() * 2.0;
      b.jump(nonneg_jumps ? j : j - 0.8);
    }
    b.piece(4.0 * rng.uniform01() - 2.5, dt * (0.5 + rng.uniform01()));
  }
  return b.finish();
}

PrimitiveStream random_stream(Rng& rng, double horizon) {
  const LawHandle proc(DistributionSpec::exponential(0.5 + rng.uniform01()));
  const LawHandle inter(DistributionSpec::exponential(0.5 + rng.uniform01()));
  InitialCondition init = InitialCondition::empty();
  PrimitiveStream s =
      generate_primitives(proc, inter, inter, init, horizon, rng.next_u64());
  const int n_init = static_cast<int>(rng.uniform01() * 4);
  for (int i = 0; i < n_init; ++i) s.initial_tasks.push_back(0.2 + 2.0 * rng.uniform01());
  return s;
}

std::string num(double v) { return fmt_double(v); }

// ---- distributions ----------------------------------------------------------

void check_distributions(Recorder& rec, std::uint64_t seed) {
  Rng rng(substream(seed, 1));
  const std::vector<LawHandle> light = {LawHandle(DistributionSpec::exponential(1.0)),
                                        LawHandle(DistributionSpec::weibull(1.0, 2.0)),
                                        LawHandle(DistributionSpec::exponential(2.0))};
  const LawHandle pareto(DistributionSpec::pareto(2.0, 1.0));

  {
    bool ok = true;
    for (const auto& law : light) {
      double prev = -kInf;
      for (double x = 0.0; x <= 12.0; x += 0.25) {
        const double s = law.big_s(x);
        if (s < prev) ok = false;
        prev = s;
      }
    }
    rec.add("distributions/monotonicity", ok, "big_s nondecreasing on x-grid");
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto& law = light[i % light.size()];
      const double s0 = law.big_s(0.0);
      const double r = (s0 + 0.01) * std::pow(10.0, 4.0 * rng.uniform01());
      const double err = std::abs(law.big_s(law.s_inverse(r)) - r) / r;
      worst = std::max(worst, err);
      if (err > 1e-9) ok = false;
    }
    rec.add("distributions/inverse-consistency", ok,
            "max rel |S(S^-1(r))-r|/r = " + num(worst) + " over 100 random r");
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (const LawHandle* law : {&light[0], &pareto}) {
      for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double err = std::abs(law->tail_work(x) - law->tail_work_numeric(x));
        worst = std::max(worst, err);
        if (err > 1e-8) ok = false;
      }
    }
    rec.add("distributions/closed-form-vs-quadrature", ok,
            "max |closed - quadrature| = " + num(worst));
  }
  {
    bool ok = true;
    for (const LawHandle* law : {&light[0], &light[1]}) {
      double prev = kInf;
      double last = kInf;
      const double scale =
          law->spec().kind == LawKind::Exponential ? 1.0 / law->spec().rate
                                                   : 1.0 / law->spec().scale;
      for (int k = 1; k <= 20; ++k) {
        const double ratio = law->ratio_tail(2.0, k * scale);
        if (ratio > prev) ok = false;
        prev = ratio;
        last = ratio;
      }
      if (!(last < 1e-6)) ok = false;
    }
    for (double x : {1.0, 2.0, 7.0}) {
      if (std::abs(pareto.ratio_tail(2.0, x) - std::pow(2.0, -3.0)) > 1e-12) ok = false;
    }
    rec.add("distributions/rapid-variation-trend", ok,
            "light tails decay below 1e-6; Pareto ratio = t^{-p-1}");
  }
  {
    bool ok = true;
    for (const auto& law : light) {
      if (law.tail_work(0.0) != law.mean() &&
          std::abs(law.tail_work(0.0) - law.mean()) > 1e-12)
        ok = false;
      if (std::abs(law.tail_work_numeric(0.0) - law.mean()) > law.quadrature_tol())
        ok = false;
    }
    rec.add("distributions/mean-equals-tail-work-at-zero", ok, "H(0) = E[v]");
  }
}

// ---- paths -------------------------------------------------------------------

void check_paths(Recorder& rec, std::uint64_t seed) {
  Rng rng(substream(seed, 2));
  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      const auto f = random_path(rng, false);
      const auto g = skorokhod_map(f);
      for (const auto& s : g.segments())
        if (s.value < 0) ok = false;
    }
    rec.add("paths/nonnegativity", ok, "Gamma[f] >= 0 at breakpoints, 200 paths");
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto f1 = random_path(rng, false);
      const auto f2 = random_path(rng, false);
      const double T = std::min(f1.horizon(), f2.horizon());
      const double lhs = sup_norm_diff(skorokhod_map(f1), skorokhod_map(f2), T);
      const double rhs = 2.0 * sup_norm_diff(f1, f2, T);
      worst = std::max(worst, lhs - rhs);
      if (lhs > rhs + 1e-12) ok = false;
    }
    rec.add("paths/lipschitz", ok,
            "max (|Gamma f1-Gamma f2| - 2|f1-f2|) = " + num(worst) + " over 500 pairs");
  }
  {
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
      const auto f2 = random_path(rng, true);
      // f1: same breakpoints, shrunken increments and initial value
      const double shrink = rng.uniform01();
      PiecewiseLinearPath::Builder b(f2.initial_value() * shrink);
      const auto& segs = f2.segments();
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (k > 0) {
          const auto& p = segs[k - 1];
          const double jump =
              segs[k].value - (p.value + p.slope * (segs[k].start - p.start));
          b.jump(jump * shrink);
        }
        const double end = k + 1 < segs.size() ? segs[k + 1].start : f2.horizon();
        b.piece_until(segs[k].slope * shrink, end);
      }
      const auto f1 = b.finish();
      const auto g1 = skorokhod_map(f1), g2 = skorokhod_map(f2);
      for (int k = 0; k <= 64; ++k) {
        const double t = f2.horizon() * k / 64.0;
        if (g1.value_at(t) > g2.value_at(t) + 1e-12) ok = false;
      }
    }
    rec.add("paths/monotonicity", ok,
            "Gamma[f1] <= Gamma[f2] under dominated increments, 500 trials");
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto f = random_path(rng, false);
      const auto g = skorokhod_map(f);
      const double s = rng.uniform01() * f.horizon() * 0.9;
      const auto shifted =
          with_offset(time_shift(f, s), g.value_at(s) - f.value_at(s));
      const auto lhs = skorokhod_map(shifted);
      for (int k = 0; k <= 32; ++k) {
        const double t = shifted.horizon() * k / 32.0;
        const double err =
            std::abs(g.value_at(std::min(s + t, f.horizon())) - lhs.value_at(t));
        worst = std::max(worst, err);
        if (err > 1e-12) ok = false;
      }
    }
    rec.add("paths/shift", ok, "max shift-identity error = " + num(worst));
  }
  {
    bool ok = true;
    int found = 0;
    for (int i = 0; i < 500 && found < 100; ++i) {
      auto f = with_offset(random_path(rng, true), 5.0);
      if (f.inf_on(f.horizon()) < 0) continue;
      ++found;
      const auto g = skorokhod_map(f);
      for (const auto& s : f.segments()) {
        if (g.value_at(s.start) != f.value_at(s.start)) ok = false;
      }
    }
    rec.add("paths/identity-on-nonnegative", ok && found >= 50,
            "Gamma[f] == f exactly on " + std::to_string(found) + " nonnegative paths");
  }
}

// ---- engine ------------------------------------------------------------------

void check_engine(Recorder& rec, std::uint64_t seed, int threads) {
  (void)threads;
  Rng rng(substream(seed, 3));
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto prims = random_stream(rng, 50.0);
      SimulateOptions opt;
      opt.snapshot_dt = 1.0;
      opt.event_log = true;
      const auto traj = simulate(prims, kInf, opt);
      const auto idle = idle_time(traj);
      const auto x = netput_path(prims, kInf, initial_truncated_workload(prims, kInf));
      // W(t) = X(t) + I(t) at event times
      const auto& tab = *traj.events;
      for (std::size_t k = 0; k < tab.size(); k += std::max<std::size_t>(1, tab.size() / 16)) {
        const double t = tab[k].t;
        const auto st = state_at(prims, kInf, t);
        const auto m = measure_snapshot(st);
        const double err =
            std::abs(m.total_work() - (x.value_at(t) + idle.value_at(t)));
        worst = std::max(worst, err);
        if (err > 1e-10) ok = false;
      }
    }
    rec.add("engine/work-conservation", ok,
            "max |W - (W0+V-t+I)| at event times = " + num(worst));
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto prims = random_stream(rng, 30.0 + 50.0 * rng.uniform01());
      SimulateOptions opt;
      opt.snapshot_dt = prims.horizon / 40.0;
      const auto traj = simulate(prims, kInf, opt);
      const auto w = workload_from_reflection(prims, kInf,
                                              initial_truncated_workload(prims, kInf));
      for (std::size_t s = 0; s < traj.n_snapshots(); ++s) {
        const double err = std::abs(w.value_at(traj.snapshot_times[s]) - traj.w[s]);
        worst = std::max(worst, err);
        if (err > 1e-9) ok = false;
      }
    }
    rec.add("engine/reflection-identity", ok,
            "max |W - Gamma[X]| over 200 streams = " + num(worst));
  }
  {
    bool ok = true;
    long checks = 0;
    for (int i = 0; i < 40; ++i) {
      auto prims = random_stream(rng, 40.0);
      const std::vector<double> cuts = {0.5, 1.0, 2.0};
      SimulateOptions opt;
      opt.snapshot_dt = 0.5;
      opt.a_grid = cuts;
      const auto full = simulate(prims, kInf, opt);
      for (std::size_t j = 0; j < cuts.size(); ++j) {
        SimulateOptions topt;
        topt.snapshot_dt = 0.5;
        const auto trunc = simulate(prims, cuts[j], topt);
        const auto y = workload_from_reflection(
            prims, cuts[j], initial_truncated_workload(prims, cuts[j]));
        for (std::size_t s = 0; s < full.n_snapshots(); ++s) {
          const double t = full.snapshot_times[s];
          const double ya = y.value_at(t);
          const double wa = full.w_a_at(s, j);
          const long z = std::lround(trunc.q[s]);
          const long qa = std::lround(full.q_a_at(s, j));
          ++checks;
          if (wa < ya - 1e-9 || wa > ya + cuts[j] + 1e-9) ok = false;
          if (qa < z || qa > z + 1) ok = false;
          if (std::abs(trunc.w[s] - ya) > 1e-9) ok = false;
        }
      }
    }
    rec.add("engine/cutoff-sandwich", ok,
            std::to_string(checks) + " sandwich checks (Y_a<=W_a<=Y_a+a, Z<=Q_a<=Z+1)");
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      auto prims = random_stream(rng, 40.0);
      SimulateOptions topt;
      topt.snapshot_dt = 0.5;
      const auto zx = simulate(prims, 0.7, topt);
      const auto zy = simulate(prims, 1.8, topt);
      for (std::size_t s = 0; s < zx.n_snapshots(); ++s)
        if (std::lround(zy.q[s]) < std::lround(zx.q[s])) ok = false;
    }
    rec.add("engine/two-sided-truncated", ok, "Z_y >= Z_x pathwise for x < y");
  }
  {
    bool ok = true;
    double worst = -kInf;
    for (int i = 0; i < 25; ++i) {
      auto prims = random_stream(rng, 30.0);
      const std::vector<double> cuts = {0.5, 1.0, 2.0};
      SimulateOptions opt;
      opt.snapshot_dt = 1.0;
      opt.a_grid = cuts;
      const auto traj = simulate(prims, kInf, opt);
      for (std::size_t j = 0; j < cuts.size(); ++j) {
        const double wa0 = initial_truncated_workload(prims, cuts[j]);
        for (std::size_t s = 0; s < traj.n_snapshots(); ++s) {
          const double tau = traj.tau_a_at(s, j);
          const auto st = state_at(prims, kInf, tau);
          const auto m = measure_snapshot(st);
          const double watau = m.work_below(cuts[j]);
          worst = std::max(worst, watau - (wa0 + cuts[j]));
          if (watau > wa0 + cuts[j] + 1e-9) ok = false;
        }
      }
    }
    rec.add("engine/tau-tracking", ok,
            "max W_a(tau) - (W_a(0)+a) = " + num(worst) + " (must be <= 0)");
  }
  {
    // FIFO reference: non-preemptive, arrival order; completion times by
    // busy-period recursion
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      auto prims = random_stream(rng, 20.0);
      std::vector<std::pair<double, double>> jobs;  // (arrival, size)
      for (double v : prims.initial_tasks) jobs.emplace_back(0.0, v);
      for (std::size_t k = 0; k < prims.arrival_times.size(); ++k)
        jobs.emplace_back(prims.arrival_times[k], prims.sizes[k]);
      std::vector<double> completion(jobs.size());
      double free_at = 0.0;
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        free_at = std::max(free_at, jobs[k].first) + jobs[k].second;
        completion[k] = free_at;
      }
      auto q_fifo = [&](double t) {
        long q = 0;
        for (std::size_t k = 0; k < jobs.size(); ++k)
          if (jobs[k].first <= t && completion[k] > t) ++q;
        return q;
      };
      SimulateOptions opt;
      opt.snapshot_dt = 1.0;
      opt.event_log = true;
      const auto traj = simulate(prims, kInf, opt);
      for (const auto& ev : *traj.events) {
        const auto st = state_at(prims, kInf, ev.t);
        if (static_cast<long>(st.tasks.size()) > q_fifo(ev.t)) ok = false;
      }
    }
    rec.add("engine/srpt-optimality-vs-fifo", ok,
            "Q_srpt(t) <= Q_fifo(t) at event times, 100 streams");
  }
  {
    auto prims = random_stream(rng, 60.0);
    SimulateOptions opt;
    opt.snapshot_dt = 0.25;
    opt.a_grid = {0.5, 1.0, 2.0};
    opt.event_samples = true;
    const auto t1 = simulate(prims, kInf, opt);
    const auto t2 = simulate(prims, kInf, opt);
    const bool ok = t1.w == t2.w && t1.q == t2.q && t1.w_a == t2.w_a &&
                    t1.tau_a == t2.tau_a && t1.samples.w == t2.samples.w;
    rec.add("engine/determinism", ok, "identical stream -> bit-identical trajectory");
  }
}

// ---- scaling -----------------------------------------------------------------

void check_scaling(Recorder& rec, std::uint64_t seed) {
  Rng rng(substream(seed, 4));
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  {
    bool ok = true;
    double worst = 0.0;
    const auto p = make_params(exp1, 15.0, -0.25);
    const auto prims = random_stream(rng, 50.0);
    SimulateOptions opt;
    opt.snapshot_dt = 5.0;
    opt.measures = SimulateOptions::Measures::All;
    const auto traj = simulate(prims, kInf, opt);
    for (std::size_t s = 0; s < traj.measures.size(); ++s) {
      const auto sm = dd_scale_measure(traj.measures[s], p);
      const double err = std::abs(sm.total_work() - traj.w[s] / p.r);
      worst = std::max(worst, err);
      if (err > 1e-12) ok = false;
    }
    rec.add("scaling/workload-scale-identity", ok,
            "max |<chi, dd_scale(m)> - W/r| = " + num(worst));
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const double r = 5.0 + 100.0 * rng.uniform01();
      const double kappa = 2.0 * rng.uniform01() - 1.0;
      const auto p = make_params(i % 2 == 0 ? exp1
                                            : LawHandle(DistributionSpec::weibull(1.0, 2.0)),
                                 r, kappa);
      if (std::abs(drift(p, 1.0) + p.lambda_r - p.kappa) > 1e-9) ok = false;
    }
    rec.add("scaling/s-cancellation", ok, "drift(p,1) + lambda_r - kappa = 0");
  }
  {
    bool ok = true;
    const auto p = make_params(exp1, 25.0, -0.5);
    double prev = -kInf;
    for (double a = 0.2; a <= 4.0; a += 0.2) {
      const double d = drift(p, a);
      if (d < prev - 1e-12) ok = false;
      prev = d;
    }
    rec.add("scaling/monotone-drift", ok, "drift nondecreasing in a");
  }
  {
    bool ok = true;
    double prev = kInf;
    for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
      const double v = exp1.s_inverse(r) / r;
      if (!(v < prev)) ok = false;
      prev = v;
    }
    rec.add("scaling/cr-over-r-to-zero", ok, "c_r/r strictly decreasing in r");
  }
  {
    bool ok = true;
    const auto p = make_params(exp1, 12.0, -0.5);
    const LawHandle inter(DistributionSpec::exponential(p.lambda_r));
    for (int i = 0; i < 10; ++i) {
      const auto prims =
          generate_primitives(exp1, inter, inter, InitialCondition::empty(),
                              p.r * p.r, substream(seed, 41, i));
      const std::vector<double> scaled_a = {0.5, 1.0, 2.0};
      std::vector<double> cuts;
      for (double a : scaled_a) cuts.push_back(a * p.c_r);
      SimulateOptions opt;
      opt.snapshot_dt = p.r * p.r / 50.0;
      opt.a_grid = cuts;
      const auto full = simulate(prims, kInf, opt);
      for (std::size_t j = 0; j < cuts.size(); ++j) {
        SimulateOptions topt;
        topt.snapshot_dt = opt.snapshot_dt;
        const auto trunc = simulate(prims, cuts[j], topt);
        const auto y = workload_from_reflection(
            prims, cuts[j], initial_truncated_workload(prims, cuts[j]));
        for (std::size_t s = 0; s < full.n_snapshots(); ++s) {
          const double t = full.snapshot_times[s];
          const double w_diff = (full.w_a_at(s, j) - y.value_at(t)) / p.r;
          if (w_diff < -1e-9 || w_diff > scaled_a[j] * p.c_r / p.r + 1e-9) ok = false;
          const long dq = std::lround(full.q_a_at(s, j)) - std::lround(trunc.q[s]);
          if (dq < 0 || dq > 1) ok = false;
        }
      }
    }
    rec.add("scaling/scaled-sandwiches", ok,
            "scaled W/Q sandwiches hold in coupled runs");
  }
}

// ---- reference ----------------------------------------------------------------

void check_reference(Recorder& rec, std::uint64_t seed) {
  {
    bool ok = true;
    for (int l = 3; l <= 10; ++l) {
      double prev = -1.0;
      for (int j = 1; j <= l; ++j) {
        const double h = biased_walk_hit(j, l);
        if (h <= prev && !(j == 1 && h == 0.0)) ok = false;
        prev = h;
      }
    }
    for (int j = 2; j <= 5; ++j) {
      double prev = 2.0;
      for (int l = j; l <= 12; ++l) {
        const double h = biased_walk_hit(j, l);
        if (h > prev) ok = false;
        prev = h;
      }
    }
    rec.add("reference/hit-monotonicity", ok,
            "h_j^l increasing in j, decreasing in l");
  }
  {
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      LimitParams p0{1.0, 0.0, 1.0, 0.0, false};
      LimitParams pneg{1.0, -0.8, 1.0, 0.0, false};
      Rng r1(substream(seed, 50, i));
      Rng r2(substream(seed, 50, i));
      const auto w0 = rbm_sample(p0, 1.0, 256, r1);
      const auto wneg = rbm_sample(pneg, 1.0, 256, r2);
      for (std::size_t k = 0; k < w0.values.size(); ++k)
        if (wneg.values[k] > w0.values[k] + 1e-12) ok = false;
    }
    rec.add("reference/rbm-drift-domination", ok,
            "kappa<=0 paths dominated by kappa=0 on coupled noise");
  }
  {
    LimitParams p{1.0, 0.0, 1.0, 0.0, false};
    const long n = 20000;
    const auto a = rbm_terminal_ensemble(p, 1.0, 512, n, substream(seed, 51), 1);
    const auto b = rbm_terminal_ensemble(p, 1.0, 1024, n, substream(seed, 52), 1);
    const double se = std::sqrt(variance_of(a) / n + variance_of(b) / n);
    const double diff = std::abs(mean_of(a) - mean_of(b));
    rec.add("reference/grid-refinement", diff < 2.0 * se + 0.01,
            "mean shift under step doubling = " + num(diff) + " (2se=" + num(2 * se) + ")");
  }
}

// ---- harness -------------------------------------------------------------------

void check_harness(Recorder& rec, std::uint64_t seed, int threads) {
  ExperimentConfig cfg;
  cfg.law = DistributionSpec::exponential(1.0);
  cfg.kappa = -0.5;
  cfg.r_list = {10.0, 20.0, 40.0};
  cfg.reps = 200;
  cfg.T = 1.0;
  cfg.a_grid = {0.5, 2.0, 4.0};
  cfg.eps_list = {0.5};
  cfg.seed = seed;
  cfg.snapshots = 50;
  cfg.threads = threads;
  cfg.reference_paths = 1000;
  cfg.reference_steps = 4096;
  const auto report = run_ensemble(cfg);

  long viols = 0;
  for (const auto& b : report.per_r)
    viols += b.sandwich_workload_violations + b.sandwich_integer_violations +
             b.reflection_violations + b.two_sided_violations;
  rec.add("harness/coupling-integrity", viols == 0 && !report.hard_fail,
          std::to_string(viols) + " violations across the ensemble");

  {
    ExperimentConfig small = cfg;
    small.r_list = {10.0};
    small.reps = 16;
    small.threads = 1;
    const auto r1 = run_ensemble(small);
    small.threads = 2;
    const auto r2 = run_ensemble(small);
    rec.add("harness/seed-parallel-independence",
            report_to_json(r1).dump() == report_to_json(r2).dump(),
            "serial vs 2-thread reports byte-identical");
  }

  auto trend = [&](const std::string& key) {
    auto it = report.trends.find(key);
    return it != report.trends.end() && it->second;
  };
  rec.add("harness/step-field-shape",
          trend("stepfield_ks@2_improves") && trend("supWdiff_a@2_median_decreasing"),
          "KS(W_a(T),W(T)) improves and median |W-W_a| decreasing (a=2)");
  rec.add("harness/theta-trend", trend("theta@0.5_median_decreasing"),
          "median theta(T, a=0.5) decreasing in r");
  rec.add("harness/concentration-trend", trend("conc@0.5_mean_nondecreasing"),
          "mean concentration_ratio(eps=0.5) nondecreasing in r");
  rec.add("harness/supQminusW-trend", trend("supQminusW_median_decreasing"),
          "median sup|Qtilde-Wtilde| decreasing in r");
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, int threads) {
  Recorder rec;
  check_distributions(rec, seed);
  check_paths(rec, seed);
  check_engine(rec, seed, threads);
  check_scaling(rec, seed);
  check_reference(rec, seed);
  check_harness(rec, seed, threads);
  return rec.results;
}

}  // namespace srpt
