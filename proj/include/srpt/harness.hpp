#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "srpt/distributions.hpp"
#include "srpt/scaling.hpp"
#include "srpt/stats.hpp"

namespace srpt {

// Config for a coupled ensemble over the r-sequence. All randomness flows
// from `seed` via substream(seed, r_index, rep, stream).
struct ExperimentConfig {
  DistributionSpec law = DistributionSpec::exponential(1.0);  // processing
  std::string interarrival_kind = "exponential";  // exponential|deterministic|uniform
  std::string first_arrival_kind;                 // empty: same as interarrival
  double kappa = 0.0;
  std::vector<double> r_list = {20.0, 40.0, 80.0};
  int reps = 100;
  double T = 1.0;  // scaled horizon; unscaled horizon is r²T
  std::vector<double> a_grid = {0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.5, 2.0, 4.0};
  std::vector<double> eps_list = {0.25, 0.5};
  std::uint64_t seed = 1;
  // subset of {WT, supW_a, supQ_a, supQminusW, supWdiff_a, theta, conc, Z_sandwich}
  std::vector<std::string> functionals = {"WT",        "supW_a", "supQ_a",
                                          "supQminusW", "supWdiff_a", "theta",
                                          "conc",      "Z_sandwich"};
  int snapshots = 200;
  int threads = 0;  // 0: SRPT_THREADS env var, else hardware
  std::string initial = "empty";  // empty | atom_near_one
  double initial_w = 0.0;
  long reference_paths = 2000;
  int reference_steps = 1 << 14;  // per unit scaled time
};

struct FunctionalStats {
  SampleSummary summary;
  int missing = 0;  // replications where the functional was undefined
};

struct RBlock {
  double r = 0.0, c_r = 0.0, lambda_r = 0.0;
  std::map<std::string, FunctionalStats> stats;
  double ks_reference = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> ks_step;  // "a=2" -> KS(W̃_a(T) vs W̃(T))
  long sandwich_workload_violations = 0;
  long sandwich_integer_violations = 0;
  long reflection_violations = 0;
  long two_sided_violations = 0;
};

struct ConvergenceReport {
  std::vector<RBlock> per_r;
  std::map<std::string, bool> trends;  // derived only from reported numbers
  bool hard_fail = false;              // any sandwich/coupling violation
};

// Runs the coupled ensemble: per (r, rep) one primitive stream feeds the full
// engine plus one truncated engine per cutoff (when Z_sandwich is requested),
// scaled functionals are evaluated at horizon T, and pathwise sandwiches are
// checked per replication. Bounded-support processing laws fall back to
// c_r = 1 (pure diffusion scaling); see the header note in the repo README.
ConvergenceReport run_ensemble(const ExperimentConfig& cfg);

// Interarrival law of the given kind with rate `rate` (mean 1/rate).
LawHandle interarrival_law(const std::string& kind, double rate);
// Its standard deviation.
double interarrival_sigma(const std::string& kind, double rate);

struct FcltPoint {
  double t = 0.0;
  double mean_v_hat = 0.0;
  double var_v_hat = 0.0;
  double var_e_hat = 0.0;
};

struct FcltReport {
  double r = 0.0;
  int reps = 0;
  double sigma2_theory = 0.0;       // λ(σ_S² + σ_A²)
  double e_var_rate_theory = 0.0;   // λ³σ_A²
  std::vector<FcltPoint> points;    // t ∈ {0.5, 1}
};

// Estimates Var[V̂ʳ(t)] and Var[Êʳ(t)] at t ∈ {0.5, 1} over cfg.reps
// replications at r = cfg.r_list.front().
FcltReport fclt_check(const ExperimentConfig& cfg);

int resolve_threads(int requested);

}  // namespace srpt
