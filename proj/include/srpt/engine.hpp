#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "srpt/distributions.hpp"
#include "srpt/paths.hpp"
#include "srpt/rng.hpp"

namespace srpt {

// One realization of initial tasks, arrival times, and processing times.
// Shared across coupled engines (full and a-truncated) so pathwise
// inequalities can be checked per realization.
struct PrimitiveStream {
  std::vector<double> initial_tasks;  // remaining times at t=0
  std::vector<double> arrival_times;  // strictly increasing, first > 0
  std::vector<double> sizes;          // same length as arrival_times
  double horizon = 0.0;
};

struct InitialCondition {
  enum class Mode { Empty, AtomNearOne };
  Mode mode = Mode::Empty;
  // atom regime: floor(w·r/c_r) tasks, each of size c_r, so the scaled
  // initial measure approximates w·δ₁
  double w = 0.0;
  double r = 0.0;
  double c_r = 0.0;

  static InitialCondition empty() { return {}; }
  static InitialCondition atom_near_one(double w, double r, double c_r) {
    InitialCondition ic;
    ic.mode = Mode::AtomNearOne;
    ic.w = w;
    ic.r = r;
    ic.c_r = c_r;
    return ic;
  }
};

// Arrival times are the partial sums T1 + sum T_i with T1 from the
// first-arrival (delay) law and T_i i.i.d. interarrivals; sizes are i.i.d.
// from the processing law, independent of the arrival process. Deterministic
// given the seed (separate substreams for arrivals and sizes, so the size
// sequence does not depend on how many arrivals fit in the horizon).
PrimitiveStream generate_primitives(const LawHandle& processing,
                                    const LawHandle& interarrival,
                                    const LawHandle& first_arrival,
                                    const InitialCondition& initial, double horizon,
                                    std::uint64_t seed);

// Finite point measure: unit atom at each task's remaining time (> 0).
struct MeasureSnapshot {
  std::vector<double> locations;
  std::vector<double> weights;

  double total_mass() const;
  double total_work() const;  // <χ, ·>
  double mass_below(double a) const;
  double work_below(double a) const;  // <χ·1_{[0,a]}, ·>
};

// Queue contents at a given clock: (remaining, arrival_index) pairs.
struct QueueState {
  std::vector<std::pair<double, std::int64_t>> tasks;
  double clock = 0.0;
};

MeasureSnapshot measure_snapshot(const QueueState& state);

struct EventRecord {
  enum class Kind { Arrival, Completion, TruncatedSkip };
  double t;
  Kind kind;
  std::int64_t task;
};

// Flat table of pre-/post-event values; between events Q and the cutoff
// counts are constant and the workloads are linear, so exact path suprema of
// any combination of these series are computable downstream from this table
// plus the cutoff-crossing flags.
struct EventSampleTable {
  std::size_t n_a = 0;
  std::vector<double> t;
  std::vector<double> q, w;
  std::vector<double> q_a;  // row-major [sample][a]
  std::vector<double> w_a;

  std::size_t rows() const { return t.size(); }
  double q_a_at(std::size_t row, std::size_t j) const { return q_a[row * n_a + j]; }
  double w_a_at(std::size_t row, std::size_t j) const { return w_a[row * n_a + j]; }
};

struct SimulateOptions {
  std::vector<double> a_grid;     // sorted cutoff levels, unscaled units
  double snapshot_dt = 1.0;
  bool event_log = false;
  bool event_samples = false;
  enum class Measures { None, Final, All } measures = Measures::None;
};

struct Trajectory {
  double horizon = 0.0;
  double truncation = std::numeric_limits<double>::infinity();
  std::vector<double> a_grid;

  std::vector<double> snapshot_times;
  std::vector<double> q, w;            // per snapshot
  std::vector<double> q_a, w_a, tau_a; // row-major [snapshot][a]

  double w_max = 0.0, q_max = 0.0;     // event-level extrema over [0, horizon]
  // first time the serving task's remaining crossed down to level a (the
  // cutoff workload jumps to exactly a there); +inf if never
  std::vector<double> first_crossing_a;

  std::optional<std::vector<EventRecord>> events;
  EventSampleTable samples;            // empty unless event_samples requested
  std::optional<MeasureSnapshot> final_measure;
  std::vector<MeasureSnapshot> measures;  // per snapshot if requested

  std::size_t n_snapshots() const { return snapshot_times.size(); }
  std::size_t n_a() const { return a_grid.size(); }
  double q_a_at(std::size_t s, std::size_t j) const { return q_a[s * n_a() + j]; }
  double w_a_at(std::size_t s, std::size_t j) const { return w_a[s * n_a() + j]; }
  double tau_a_at(std::size_t s, std::size_t j) const { return tau_a[s * n_a() + j]; }
};

// Event-driven preemptive SRPT over [0, horizon]. The task with the least
// remaining time is served at rate 1; an arrival preempts only if its size is
// strictly smaller than the minimum remaining; a completion that coincides
// with an arrival is processed first. Tasks whose size exceeds `truncation`
// (at arrival, or at time zero) are discarded entirely.
Trajectory simulate(const PrimitiveStream& primitives, double truncation,
                    const SimulateOptions& options);

// Queue contents at time t (right-continuous), same dynamics as simulate.
QueueState state_at(const PrimitiveStream& primitives, double truncation, double t);

// Total remaining work at t=0 of initial tasks with size <= a.
double initial_truncated_workload(const PrimitiveStream& primitives, double a);

// Netput X_a(t) = w0 + V_a(t) - t: slope -1 with an upward jump v_i at each
// u_i having v_i <= a. Pass a = +inf for the untruncated netput.
PiecewiseLinearPath netput_path(const PrimitiveStream& primitives, double a, double w0);

// Γ[netput]. For a = +inf this is the workload W(t); for finite a it is the
// truncated workload Y_a(t), which also equals the workload of the
// a-truncated engine on the same stream.
PiecewiseLinearPath workload_from_reflection(const PrimitiveStream& primitives,
                                             double a, double w0);

// Cumulative idle time I(t) reconstructed from the event log; requires the
// trajectory to have been produced with event_log enabled (EventLogMissing
// otherwise). Satisfies W(t) = W(0) + V(t) - t + I(t) at event times.
PiecewiseLinearPath idle_time(const Trajectory& trajectory);

}  // namespace srpt
