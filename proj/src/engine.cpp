#include "srpt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace srpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using TaskKey = std::pair<double, std::int64_t>;  // (remaining, arrival index)

// Event-driven SRPT core. The task in service is kept outside the ordered
// multiset; between events only its remaining time changes (rate 1), so the
// per-a cutoff aggregates over the waiting tasks stay valid and the serving
// task is folded in analytically. Snapshot rows are recomputed from the
// sorted multiset so they carry no incremental rounding drift.
class Simulator {
 public:
  Simulator(const PrimitiveStream& prims, double truncation, const SimulateOptions& opt)
      : prims_(prims), trunc_(truncation), opt_(opt) {
    if (!std::is_sorted(opt_.a_grid.begin(), opt_.a_grid.end()))
      throw std::invalid_argument("simulate: a_grid must be sorted ascending");
    if (opt_.snapshot_dt <= 0)
      throw std::invalid_argument("simulate: snapshot_dt must be > 0");
    const std::size_t na = opt_.a_grid.size();
    scnt_.assign(na, 0);
    ssum_gt_.assign(na, 0.0);
    last_zero_.assign(na, 0.0);

    traj_.horizon = prims_.horizon;
    traj_.truncation = trunc_;
    traj_.a_grid = opt_.a_grid;
    traj_.first_crossing_a.assign(na, kInf);
    traj_.samples.n_a = na;
    if (opt_.event_log) traj_.events.emplace();

    for (long k = 0;; ++k) {
      const double t = static_cast<double>(k) * opt_.snapshot_dt;
      if (t > prims_.horizon) break;
      snap_times_.push_back(t);
    }
    if (snap_times_.empty() || snap_times_.back() != prims_.horizon)
      snap_times_.push_back(prims_.horizon);
    traj_.snapshot_times = snap_times_;
  }

  Trajectory run(double stop_at, QueueState* state_out) {
    seed_initial_tasks();
    record_row(0.0, busy_ ? srem_ : -1.0);
    while (next_snap_ < snap_times_.size() && snap_times_[next_snap_] == 0.0) {
      record_snapshot_exact(0.0);
      ++next_snap_;
    }

    while (clock_ < stop_at) {
      const double completion_t = busy_ ? clock_ + srem_ : kInf;
      const double arrival_t =
          next_arr_ < prims_.arrival_times.size() ? prims_.arrival_times[next_arr_] : kInf;
      const double t1 = std::min({completion_t, arrival_t, stop_at});
      const bool completes = busy_ && completion_t == t1;

      advance(t1, completes);

      if (completes) process_completion(t1);
      if (arrival_t == t1) {
        process_arrival(t1);
        ++next_arr_;
      }
      record_row(t1, busy_ ? srem_ : -1.0);
      while (next_snap_ < snap_times_.size() && snap_times_[next_snap_] == t1) {
        record_snapshot_exact(t1);
        ++next_snap_;
      }
      if (t1 >= stop_at) break;
    }
    // snapshots past the stopping point (state_at with t < horizon)
    if (state_out) {
      state_out->clock = clock_;
      state_out->tasks.clear();
      if (busy_) state_out->tasks.emplace_back(srem_, sidx_);
      for (const auto& k : statics_) state_out->tasks.push_back(k);
    }
    if (opt_.measures != SimulateOptions::Measures::None && !traj_.measures.empty()) {
      traj_.final_measure = traj_.measures.back();
      if (opt_.measures == SimulateOptions::Measures::Final) traj_.measures.clear();
    }
    return std::move(traj_);
  }

 private:
  void seed_initial_tasks() {
    const std::int64_t n = static_cast<std::int64_t>(prims_.initial_tasks.size());
    for (std::int64_t i = 0; i < n; ++i) {
      const double v = prims_.initial_tasks[static_cast<std::size_t>(i)];
      const std::int64_t idx = i - (n - 1);  // ..., -1, 0
      if (v > trunc_) {
        log_event(0.0, EventRecord::Kind::TruncatedSkip, idx);
        continue;
      }
      add_waiting(v, idx);
    }
    promote_min();
  }

  // The per-a workload aggregate is kept as the complement (waiting work
  // strictly above the cutoff): it is identically zero while no task exceeds
  // the cutoff, so the row value W - W_a is exact in the common case instead
  // of carrying accumulator dust.
  void add_waiting(double rem, std::int64_t idx) {
    statics_.emplace(rem, idx);
    static_total_.add(rem);
    ++static_count_;
    const std::size_t split = lower_a(rem);
    for (std::size_t j = split; j < opt_.a_grid.size(); ++j) ++scnt_[j];
    for (std::size_t j = 0; j < split; ++j) ssum_gt_[j] += rem;
  }

  void remove_waiting_value(double rem) {
    static_total_.add(-rem);
    --static_count_;
    const std::size_t split = lower_a(rem);
    for (std::size_t j = split; j < opt_.a_grid.size(); ++j) --scnt_[j];
    for (std::size_t j = 0; j < split; ++j) ssum_gt_[j] -= rem;
  }

  // smallest j with a_grid[j] >= rem
  std::size_t lower_a(double rem) const {
    return static_cast<std::size_t>(
        std::lower_bound(opt_.a_grid.begin(), opt_.a_grid.end(), rem) -
        opt_.a_grid.begin());
  }

  void promote_min() {
    if (statics_.empty()) {
      busy_ = false;
      return;
    }
    auto it = statics_.begin();
    srem_ = it->first;
    sidx_ = it->second;
    remove_waiting_value(srem_);
    statics_.erase(it);
    busy_ = true;
  }

  // Advance the clock from clock_ to t1; the serving task (if any) drains at
  // rate 1. Handles interior snapshots, cutoff-crossing bookkeeping and the
  // last-zero tracking for tau, then the pre-event (left limit) sample row.
  void advance(double t1, bool completes) {
    const double t0 = clock_;
    const double delta = t1 - t0;
    if (delta <= 0) {
      clock_ = t1;
      return;
    }
    const double m0 = busy_ ? srem_ : kInf;
    const double m1 = busy_ ? (completes ? 0.0 : srem_ - delta) : kInf;

    // interior snapshots (strictly between events)
    while (next_snap_ < snap_times_.size() && snap_times_[next_snap_] < t1) {
      const double s = snap_times_[next_snap_];
      if (busy_) srem_ = m0 - (s - t0);
      record_snapshot_exact(s, /*interval_t0=*/t0, /*interval_m0=*/m0);
      ++next_snap_;
    }
    if (busy_) srem_ = m1;

    // last-zero / crossing bookkeeping over [t0, t1)
    const std::size_t na = opt_.a_grid.size();
    if (!busy_) {
      for (std::size_t j = 0; j < na; ++j) last_zero_[j] = t1;
    } else {
      for (std::size_t j = 0; j < na; ++j) {
        const double a = opt_.a_grid[j];
        if (a < m1) {
          last_zero_[j] = t1;
        } else if (a < m0) {
          const double t_cross = t0 + (m0 - a);
          last_zero_[j] = t_cross;
          if (t_cross < traj_.first_crossing_a[j]) traj_.first_crossing_a[j] = t_cross;
        }
      }
    }

    clock_ = t1;
    // pre-event row: left limit at t1 (a completing task still counts, with
    // remaining 0)
    record_row(t1, busy_ ? m1 : -1.0);
  }

  void process_completion(double t1) {
    log_event(t1, EventRecord::Kind::Completion, sidx_);
    promote_min();
  }

  void process_arrival(double t1) {
    const double v = prims_.sizes[next_arr_];
    const std::int64_t idx = static_cast<std::int64_t>(next_arr_) + 1;
    if (v > trunc_) {
      log_event(t1, EventRecord::Kind::TruncatedSkip, idx);
      return;
    }
    log_event(t1, EventRecord::Kind::Arrival, idx);
    if (!busy_) {
      busy_ = true;
      srem_ = v;
      sidx_ = idx;
    } else if (v < srem_) {
      // strict preemption; ties keep the task in service
      add_waiting(srem_, sidx_);
      srem_ = v;
      sidx_ = idx;
    } else {
      add_waiting(v, idx);
    }
  }

  void log_event(double t, EventRecord::Kind kind, std::int64_t idx) {
    if (traj_.events) traj_.events->push_back({t, kind, idx});
  }

  // Incremental (waiting aggregates + serving task) values; used for the
  // event-level sample rows. serving_rem < 0 encodes an idle server.
  void record_row(double t, double serving_rem) {
    const double q = static_cast<double>(static_count_) + (serving_rem >= 0 ? 1.0 : 0.0);
    const double w = static_total_.value() + (serving_rem >= 0 ? serving_rem : 0.0);
    if (q > traj_.q_max) traj_.q_max = q;
    if (w > traj_.w_max) traj_.w_max = w;
    if (!opt_.event_samples) return;
    auto& tab = traj_.samples;
    tab.t.push_back(t);
    tab.q.push_back(q);
    tab.w.push_back(w);
    for (std::size_t j = 0; j < opt_.a_grid.size(); ++j) {
      const bool in = serving_rem >= 0 && serving_rem <= opt_.a_grid[j];
      tab.q_a.push_back(static_cast<double>(scnt_[j]) + (in ? 1.0 : 0.0));
      const double above = ssum_gt_[j] + (serving_rem >= 0 && !in ? serving_rem : 0.0);
      tab.w_a.push_back(w - above);
    }
  }

  // Exact snapshot: one ascending pass over the multiset (plus the serving
  // task, which is never above any waiting task).
  void record_snapshot_exact(double s, double interval_t0 = -1.0,
                             double interval_m0 = kInf) {
    const std::size_t na = opt_.a_grid.size();
    std::vector<double> qa(na, 0.0), wa(na, 0.0);
    long cnt = 0;
    KahanSum sum;
    std::size_t j = 0;
    auto feed = [&](double rem) {
      while (j < na && opt_.a_grid[j] < rem) {
        qa[j] = static_cast<double>(cnt);
        wa[j] = sum.value();
        ++j;
      }
      ++cnt;
      sum.add(rem);
    };
    if (busy_) feed(srem_);
    for (const auto& k : statics_) feed(k.first);
    while (j < na) {
      qa[j] = static_cast<double>(cnt);
      wa[j] = sum.value();
      ++j;
    }
    const double q_total = static_cast<double>(cnt);
    const double w_total = sum.value();

    traj_.q.push_back(q_total);
    traj_.w.push_back(w_total);
    for (std::size_t k = 0; k < na; ++k) {
      traj_.q_a.push_back(qa[k]);
      traj_.w_a.push_back(wa[k]);
      // tau(s, a): s itself if the cutoff workload vanishes at s; else the
      // crossing inside the current inter-event interval, if any; else the
      // stored last-zero time.
      const double a = opt_.a_grid[k];
      double tau;
      const bool wa_zero = !busy_ || srem_ > a;
      if (wa_zero) {
        tau = s;
      } else if (interval_t0 >= 0 && interval_m0 > a) {
        tau = interval_t0 + (interval_m0 - a);
      } else {
        tau = last_zero_[k];
      }
      traj_.tau_a.push_back(tau);
    }
    if (q_total > traj_.q_max) traj_.q_max = q_total;
    if (w_total > traj_.w_max) traj_.w_max = w_total;

    if (opt_.measures != SimulateOptions::Measures::None) {
      MeasureSnapshot m;
      if (busy_ && srem_ > 0) {
        m.locations.push_back(srem_);
        m.weights.push_back(1.0);
      }
      for (const auto& k : statics_) {
        if (k.first > 0) {
          m.locations.push_back(k.first);
          m.weights.push_back(1.0);
        }
      }
      traj_.measures.push_back(std::move(m));
    }
  }

  const PrimitiveStream& prims_;
  double trunc_;
  const SimulateOptions& opt_;
  Trajectory traj_;

  std::multiset<TaskKey> statics_;
  bool busy_ = false;
  double srem_ = 0.0;
  std::int64_t sidx_ = 0;
  double clock_ = 0.0;

  KahanSum static_total_;
  long static_count_ = 0;
  std::vector<long> scnt_;
  std::vector<double> ssum_gt_;
  std::vector<double> last_zero_;

  std::vector<double> snap_times_;
  std::size_t next_snap_ = 0;
  std::size_t next_arr_ = 0;
};

}  // namespace

PrimitiveStream generate_primitives(const LawHandle& processing,
                                    const LawHandle& interarrival,
                                    const LawHandle& first_arrival,
                                    const InitialCondition& initial, double horizon,
                                    std::uint64_t seed) {
  if (horizon <= 0) throw std::invalid_argument("generate_primitives: horizon must be > 0");
  PrimitiveStream s;
  s.horizon = horizon;

  if (initial.mode == InitialCondition::Mode::AtomNearOne) {
    if (initial.c_r <= 0 || initial.r <= 0)
      throw std::invalid_argument("generate_primitives: atom regime needs r and c_r");
    const auto n = static_cast<std::size_t>(std::floor(initial.w * initial.r / initial.c_r));
    s.initial_tasks.assign(n, initial.c_r);
  }

  Rng arr_rng(substream(seed, 0xA001));
  Rng size_rng(substream(seed, 0xA002));

  KahanSum t;
  t.add(first_arrival.sample(arr_rng));
  while (t.value() <= horizon) {
    s.arrival_times.push_back(t.value());
    s.sizes.push_back(processing.sample(size_rng));
    t.add(interarrival.sample(arr_rng));
  }
  return s;
}

double MeasureSnapshot::total_mass() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

double MeasureSnapshot::total_work() const {
  KahanSum s;
  for (std::size_t i = 0; i < locations.size(); ++i) s.add(locations[i] * weights[i]);
  return s.value();
}

double MeasureSnapshot::mass_below(double a) const {
  KahanSum s;
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i] <= a) s.add(weights[i]);
  return s.value();
}

double MeasureSnapshot::work_below(double a) const {
  KahanSum s;
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i] <= a) s.add(locations[i] * weights[i]);
  return s.value();
}

MeasureSnapshot measure_snapshot(const QueueState& state) {
  MeasureSnapshot m;
  for (const auto& [rem, idx] : state.tasks) {
    if (rem > 0) {
      m.locations.push_back(rem);
      m.weights.push_back(1.0);
    }
  }
  return m;
}

Trajectory simulate(const PrimitiveStream& primitives, double truncation,
                    const SimulateOptions& options) {
  Simulator sim(primitives, truncation, options);
  return sim.run(primitives.horizon, nullptr);
}

QueueState state_at(const PrimitiveStream& primitives, double truncation, double t) {
  if (t < 0 || t > primitives.horizon)
    throw OutOfHorizon("state_at: t outside [0, horizon]");
  SimulateOptions opt;
  opt.snapshot_dt = std::max(primitives.horizon, 1.0);  // snapshots irrelevant here
  Simulator sim(primitives, truncation, opt);
  QueueState state;
  sim.run(t, &state);
  state.clock = t;
  return state;
}

double initial_truncated_workload(const PrimitiveStream& primitives, double a) {
  KahanSum s;
  for (double v : primitives.initial_tasks)
    if (v <= a) s.add(v);
  return s.value();
}

PiecewiseLinearPath netput_path(const PrimitiveStream& primitives, double a, double w0) {
  PiecewiseLinearPath::Builder b(w0);
  for (std::size_t i = 0; i < primitives.arrival_times.size(); ++i) {
    const double u = primitives.arrival_times[i];
    if (u > primitives.horizon) break;
    if (primitives.sizes[i] <= a) {
      b.piece_until(-1.0, u);
      b.jump(primitives.sizes[i]);
    }
  }
  b.piece_until(-1.0, primitives.horizon);
  return b.finish();
}

PiecewiseLinearPath workload_from_reflection(const PrimitiveStream& primitives,
                                             double a, double w0) {
  return skorokhod_map(netput_path(primitives, a, w0));
}

PiecewiseLinearPath idle_time(const Trajectory& trajectory) {
  if (!trajectory.events)
    throw EventLogMissing("idle_time: trajectory was produced without event_log");
  long count = trajectory.q.empty() ? 0 : static_cast<long>(trajectory.q.front());
  PiecewiseLinearPath::Builder b(0.0);
  for (const auto& ev : *trajectory.events) {
    b.piece_until(count == 0 ? 1.0 : 0.0, ev.t);
    switch (ev.kind) {
      case EventRecord::Kind::Arrival: ++count; break;
      case EventRecord::Kind::Completion: --count; break;
      case EventRecord::Kind::TruncatedSkip: break;
    }
  }
  b.piece_until(count == 0 ? 1.0 : 0.0, trajectory.horizon);
  return b.finish();
}

}  // namespace srpt
