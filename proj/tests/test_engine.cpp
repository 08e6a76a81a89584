#include <doctest.h>

#include <cmath>

#include "srpt/engine.hpp"

using namespace srpt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// arrivals at t=1 (size 2) and t=2.5 (size 0.5), no initial tasks
PrimitiveStream two_arrival_stream(double horizon = 5.0) {
  PrimitiveStream s;
  s.arrival_times = {1.0, 2.5};
  s.sizes = {2.0, 0.5};
  s.horizon = horizon;
  return s;
}

double q_at(const PrimitiveStream& prims, double truncation, double t) {
  return static_cast<double>(state_at(prims, truncation, t).tasks.size());
}

}  // namespace

TEST_CASE("generate_primitives") {
  const LawHandle det1(DistributionSpec::deterministic(1.0));
  const LawHandle exp1(DistributionSpec::exponential(1.0));

  // horizon before the first arrival: empty
  auto s0 = generate_primitives(exp1, det1, det1, InitialCondition::empty(), 0.5, 1);
  CHECK(s0.arrival_times.empty());
  CHECK(s0.sizes.empty());

  // deterministic interarrivals: arrivals at 1, 2, 3
  auto s1 = generate_primitives(exp1, det1, det1, InitialCondition::empty(), 3.5, 1);
  REQUIRE(s1.arrival_times.size() == 3);
  CHECK(s1.arrival_times[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s1.arrival_times[2] == doctest::Approx(3.0).epsilon(1e-13));

  // renewal-count sanity: Exponential(2) interarrivals over horizon 1e4;
  // CLT window 4·sd with sd² = λ³σ_A²t = 2·1e4 (rate 2, σ_A = 1/2)
  const LawHandle exp2(DistributionSpec::exponential(2.0));
  auto s2 = generate_primitives(exp1, exp2, exp2, InitialCondition::empty(), 1e4, 99);
  const double n = static_cast<double>(s2.arrival_times.size());
  CHECK(std::abs(n - 2e4) < 4.0 * std::sqrt(2e4));

  // determinism and size-stream independence from the horizon
  auto a = generate_primitives(exp1, exp1, exp1, InitialCondition::empty(), 100.0, 7);
  auto b = generate_primitives(exp1, exp1, exp1, InitialCondition::empty(), 100.0, 7);
  CHECK(a.arrival_times == b.arrival_times);
  CHECK(a.sizes == b.sizes);
  auto c = generate_primitives(exp1, exp1, exp1, InitialCondition::empty(), 50.0, 7);
  for (std::size_t i = 0; i < c.sizes.size(); ++i) CHECK(c.sizes[i] == a.sizes[i]);

  // atom initial condition: floor(w·r/c_r) tasks of size c_r
  auto s3 = generate_primitives(exp1, exp1, exp1,
                                InitialCondition::atom_near_one(2.0, 10.0, 3.9), 10.0, 1);
  CHECK(s3.initial_tasks.size() == 5);  // floor(20/3.9)
  CHECK(s3.initial_tasks[0] == 3.9);
}

TEST_CASE("simulate: hand-traced two-arrival stream") {
  const auto prims = two_arrival_stream();
  SimulateOptions opt;
  opt.snapshot_dt = 0.25;
  opt.a_grid = {1.0};
  opt.event_log = true;
  const auto traj = simulate(prims, kInf, opt);

  // Q = 0 on [0,1), 1 on [1,2.5), 2 on [2.5,3), 1 on [3,3.5), 0 after
  CHECK(q_at(prims, kInf, 0.5) == 0.0);
  CHECK(q_at(prims, kInf, 1.0) == 1.0);
  CHECK(q_at(prims, kInf, 2.4) == 1.0);
  CHECK(q_at(prims, kInf, 2.5) == 2.0);
  CHECK(q_at(prims, kInf, 2.99) == 2.0);
  CHECK(q_at(prims, kInf, 3.0) == 1.0);
  CHECK(q_at(prims, kInf, 3.49) == 1.0);
  CHECK(q_at(prims, kInf, 3.5) == 0.0);

  // W(2.5) = 0.5 remaining of the first task + 0.5 new
  const auto st = state_at(prims, kInf, 2.5);
  const auto m = measure_snapshot(st);
  CHECK(m.total_work() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.total_mass() == 2.0);
  // the tie rule keeps the first task in service: completions at 3.0 and 3.5
  REQUIRE(traj.events);
  std::vector<std::pair<double, std::int64_t>> completions;
  for (const auto& ev : *traj.events)
    if (ev.kind == EventRecord::Kind::Completion)
      completions.emplace_back(ev.t, ev.task);
  REQUIRE(completions.size() == 2);
  CHECK(completions[0].first == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(completions[0].second == 1);  // first arrival finishes first
  CHECK(completions[1].first == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(completions[1].second == 2);

  // measure at 2.5: atoms at 0.5 and 0.5, <chi 1_[0,1]> = 1.0 = W_1(2.5)
  CHECK(m.work_below(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  // empty stream: Q == 0, W == 0
  PrimitiveStream empty;
  empty.horizon = 2.0;
  SimulateOptions eopt;
  eopt.snapshot_dt = 0.5;
  const auto etraj = simulate(empty, kInf, eopt);
  for (double w : etraj.w) CHECK(w == 0.0);
  for (double q : etraj.q) CHECK(q == 0.0);
}

TEST_CASE("simulate: truncation drops oversized tasks entirely") {
  const auto prims = two_arrival_stream();
  SimulateOptions opt;
  opt.snapshot_dt = 0.25;
  opt.event_log = true;
  const auto traj = simulate(prims, 1.0, opt);

  // Z_1 = 1 on [2.5, 3.0), 0 after (first task size 2 skipped)
  CHECK(q_at(prims, 1.0, 1.0) == 0.0);
  CHECK(q_at(prims, 1.0, 2.5) == 1.0);
  CHECK(q_at(prims, 1.0, 2.99) == 1.0);
  CHECK(q_at(prims, 1.0, 3.0) == 0.0);

  bool saw_skip = false;
  for (const auto& ev : *traj.events)
    if (ev.kind == EventRecord::Kind::TruncatedSkip && ev.task == 1) saw_skip = true;
  CHECK(saw_skip);

  // truncated initial tasks are dropped too
  PrimitiveStream with_init = prims;
  with_init.initial_tasks = {0.4, 3.0};
  CHECK(q_at(with_init, 1.0, 0.0) == 1.0);
  CHECK(q_at(with_init, kInf, 0.0) == 2.0);
}

TEST_CASE("netput and reflection identities on the hand trace") {
  const auto prims = two_arrival_stream(4.0);

  auto x = netput_path(prims, kInf, 0.0);
  CHECK(x.value_at(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x.value_at(2.5) == doctest::Approx(0.0).epsilon(1e-14));

  auto x1 = netput_path(prims, 1.0, 0.0);  // only the 0.5 jump at 2.5
  CHECK(x1.value_at(2.5) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(x1.segments().size() == 2);  // [0,2.5), then jump+slope from 2.5

  // no arrivals: pure drain
  PrimitiveStream none;
  none.horizon = 3.0;
  auto xd = netput_path(none, kInf, 0.0);
  CHECK(xd.value_at(2.0) == doctest::Approx(-2.0).epsilon(1e-15));
  auto wd = workload_from_reflection(none, kInf, 1.0);
  CHECK(wd.value_at(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wd.value_at(2.5) == 0.0);

  // W(1) = Gamma[X](1) = 2 on the hand trace
  auto w = workload_from_reflection(prims, kInf, 0.0);
  CHECK(w.value_at(1.0) == doctest::Approx(2.0).epsilon(1e-12));

  // truncated: Y_1(2.5) = 0.5, Y_1(3.0) = 0; Y_1 <= W_1 <= Y_1 + 1
  auto y1 = workload_from_reflection(prims, 1.0, 0.0);
  CHECK(y1.value_at(2.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(y1.value_at(3.0) == doctest::Approx(0.0).epsilon(1e-12));
  SimulateOptions opt;
  opt.snapshot_dt = 0.25;
  opt.a_grid = {1.0};
  const auto full = simulate(prims, kInf, opt);
  for (std::size_t s = 0; s < full.n_snapshots(); ++s) {
    const double t = full.snapshot_times[s];
    CHECK(full.w_a_at(s, 0) >= y1.value_at(t) - 1e-12);
    CHECK(full.w_a_at(s, 0) <= y1.value_at(t) + 1.0 + 1e-12);
  }
}

TEST_CASE("idle_time reconstruction") {
  const auto prims = two_arrival_stream();
  SimulateOptions opt;
  opt.snapshot_dt = 0.5;
  opt.event_log = true;
  const auto traj = simulate(prims, kInf, opt);
  const auto idle = idle_time(traj);
  CHECK(idle.value_at(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(idle.value_at(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(idle.value_at(3.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(idle.value_at(4.5) == doctest::Approx(2.0).epsilon(1e-13));

  SimulateOptions no_log;
  no_log.snapshot_dt = 0.5;
  const auto t2 = simulate(prims, kInf, no_log);
  CHECK_THROWS_AS(idle_time(t2), EventLogMissing);

  // no arrivals, no initial: I(t) = t
  PrimitiveStream none;
  none.horizon = 2.0;
  SimulateOptions lopt;
  lopt.snapshot_dt = 0.5;
  lopt.event_log = true;
  const auto t3 = simulate(none, kInf, lopt);
  CHECK(idle_time(t3).value_at(1.7) == doctest::Approx(1.7).epsilon(1e-15));
}

TEST_CASE("tau tracking on the hand trace") {
  const auto prims = two_arrival_stream();
  SimulateOptions opt;
  opt.snapshot_dt = 0.25;
  opt.a_grid = {1.0};
  const auto traj = simulate(prims, kInf, opt);

  // W_1(t) = 0 until the serving task's remaining crosses 1 at t = 2:
  // tau(t, 1) = t before then, = 2.0 afterwards while W_1 > 0
  auto tau_at = [&](double t) {
    for (std::size_t s = 0; s < traj.n_snapshots(); ++s)
      if (traj.snapshot_times[s] == t) return traj.tau_a_at(s, 0);
    REQUIRE(false);
    return 0.0;
  };
  CHECK(tau_at(0.5) == 0.5);
  CHECK(tau_at(1.5) == 1.5);   // serving remaining 1.5 > 1: W_1 = 0
  CHECK(tau_at(2.0) == 2.0);   // crossing instant: W_1(2) = 1 > 0... tau = 2
  CHECK(tau_at(2.25) == 2.0);  // W_1(2.25) = 0.75 > 0, last zero at 2
  CHECK(tau_at(3.25) == 2.0);
  CHECK(tau_at(3.75) == 3.75);  // queue empty again
  CHECK(traj.first_crossing_a[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("preemption strictness and service order on ties") {
  PrimitiveStream s;
  s.arrival_times = {1.0, 1.5};
  s.sizes = {2.0, 1.5};  // second task ties the serving task's remaining at 1.5
  s.horizon = 6.0;
  SimulateOptions opt;
  opt.snapshot_dt = 0.5;
  opt.event_log = true;
  const auto traj = simulate(s, kInf, opt);
  std::vector<std::int64_t> order;
  for (const auto& ev : *traj.events)
    if (ev.kind == EventRecord::Kind::Completion) order.push_back(ev.task);
  // tie: task 1 (earlier index) keeps the server and finishes first
  CHECK(order == std::vector<std::int64_t>{1, 2});

  // strictly smaller: preempts
  PrimitiveStream p;
  p.arrival_times = {1.0, 1.5};
  p.sizes = {2.0, 1.4999};
  p.horizon = 6.0;
  const auto traj2 = simulate(p, kInf, opt);
  std::vector<std::int64_t> order2;
  for (const auto& ev : *traj2.events)
    if (ev.kind == EventRecord::Kind::Completion) order2.push_back(ev.task);
  CHECK(order2 == std::vector<std::int64_t>{2, 1});
}

TEST_CASE("simultaneous completion and arrival: completion first") {
  PrimitiveStream s;
  s.arrival_times = {1.0, 3.0};
  s.sizes = {2.0, 1.0};  // first completes exactly at t=3
  s.horizon = 5.0;
  SimulateOptions opt;
  opt.snapshot_dt = 1.0;
  opt.event_log = true;
  const auto traj = simulate(s, kInf, opt);
  REQUIRE(traj.events);
  // at t=3: completion logged before arrival
  std::vector<EventRecord::Kind> at3;
  for (const auto& ev : *traj.events)
    if (ev.t == 3.0) at3.push_back(ev.kind);
  REQUIRE(at3.size() == 2);
  CHECK(at3[0] == EventRecord::Kind::Completion);
  CHECK(at3[1] == EventRecord::Kind::Arrival);
  CHECK(q_at(s, kInf, 3.0) == 1.0);  // right-continuous: old task gone, new present
}

TEST_CASE("work conservation at event times") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  const LawHandle exp09(DistributionSpec::exponential(0.9));
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto prims = generate_primitives(exp1, exp09, exp09, InitialCondition::empty(),
                                     80.0, seed);
    prims.initial_tasks = {0.7, 1.3};
    SimulateOptions opt;
    opt.snapshot_dt = 1.0;
    opt.event_log = true;
    const auto traj = simulate(prims, kInf, opt);
    const auto idle = idle_time(traj);
    const auto x = netput_path(prims, kInf, 2.0);
    for (std::size_t k = 0; k < traj.events->size(); k += 7) {
      const double t = (*traj.events)[k].t;
      const auto m = measure_snapshot(state_at(prims, kInf, t));
      CHECK(std::abs(m.total_work() - (x.value_at(t) + idle.value_at(t))) < 1e-10);
    }
  }
}

TEST_CASE("determinism: same stream, bit-identical trajectories") {
  const LawHandle exp1(DistributionSpec::exponential(1.0));
  auto prims = generate_primitives(exp1, exp1, exp1, InitialCondition::empty(), 60.0, 5);
  SimulateOptions opt;
  opt.snapshot_dt = 0.25;
  opt.a_grid = {0.5, 1.0, 2.0};
  opt.event_samples = true;
  const auto t1 = simulate(prims, kInf, opt);
  const auto t2 = simulate(prims, kInf, opt);
  CHECK(t1.w == t2.w);
  CHECK(t1.q == t2.q);
  CHECK(t1.w_a == t2.w_a);
  CHECK(t1.q_a == t2.q_a);
  CHECK(t1.tau_a == t2.tau_a);
  CHECK(t1.samples.t == t2.samples.t);
  CHECK(t1.samples.w == t2.samples.w);
}
