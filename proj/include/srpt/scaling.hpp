#pragma once

#include <optional>
#include <vector>

#include "srpt/distributions.hpp"
#include "srpt/engine.hpp"

namespace srpt {

// Heavy-traffic parameters for the r-th system. Canonical parameterization:
// lambda_r = (1 + kappa/r)/E[v], so r(rho^r - 1) = kappa holds with equality.
struct ScalingParams {
  double r = 0.0;
  double c_r = 0.0;       // S^{-1}(r)
  double lambda_r = 0.0;  // arrival rate of system r
  double kappa = 0.0;
  LawHandle law;          // processing law

  double rho_r() const { return 1.0 + kappa / r; }
};

ScalingParams make_params(const LawHandle& law, double r, double kappa);

// Atoms of the distribution-dependent scaled measure: (x, 1) -> (x/c_r, c_r/r).
struct ScaledMeasure {
  std::vector<double> locations;
  std::vector<double> weights;

  double total_mass() const;
  double total_work() const;
};

ScaledMeasure dd_scale_measure(const MeasureSnapshot& m, const ScalingParams& p);

// The trajectory under distribution-dependent scaling: time/r², workload/r,
// queue length ×c_r/r, cutoff levels /c_r.
struct ScaledTrajectory {
  double r = 0.0, c_r = 0.0, lambda_r = 0.0, kappa = 0.0;
  double T = 0.0;
  std::vector<double> times;        // scaled snapshot grid
  std::vector<double> w_tilde, q_tilde;
  std::vector<double> a_grid;       // scaled cutoffs (= unscaled grid / c_r)
  std::vector<double> w_tilde_a, q_tilde_a, theta_tilde_a;  // row-major

  std::size_t n_a() const { return a_grid.size(); }
  double w_a_at(std::size_t s, std::size_t j) const { return w_tilde_a[s * n_a() + j]; }
  double q_a_at(std::size_t s, std::size_t j) const { return q_tilde_a[s * n_a() + j]; }
  double theta_at(std::size_t s, std::size_t j) const {
    return theta_tilde_a[s * n_a() + j];
  }
};

// Requires the trajectory's horizon to cover r²T; GridMismatch otherwise.
ScaledTrajectory tilde_processes(const Trajectory& traj, const ScalingParams& p, double T);

// Index of the unscaled cutoff a·c_r in the trajectory's a_grid;
// GridMismatch when absent.
std::size_t find_scaled_a(const Trajectory& traj, const ScalingParams& p, double a);

// Exact sup functionals over scaled time [0, T], computed from the
// event-level sample table (between events the queue length is constant and
// workloads are linear, so path suprema live on the recorded rows; the cutoff
// workload additionally peaks at exactly a·c_r when the serving task crosses
// the cutoff, which the crossing flags account for).
double sup_w_tilde(const Trajectory& traj, const ScalingParams& p, double T);
double sup_q_tilde_minus_w_tilde(const Trajectory& traj, const ScalingParams& p, double T);
double sup_w_tilde_a(const Trajectory& traj, const ScalingParams& p, double a, double T);
double sup_q_tilde_a(const Trajectory& traj, const ScalingParams& p, double a, double T);
double sup_w_tilde_minus_w_tilde_a(const Trajectory& traj, const ScalingParams& p,
                                   double a, double T);
// ‖Z̃_a‖ from an a·c_r-truncated run (its own queue length is Z_a).
double sup_z_tilde(const Trajectory& truncated_traj, const ScalingParams& p, double T);

// θ̃(t, a) = t - τ(r²t, a·c_r)/r² at the last snapshot covered by T.
double theta_tilde_at(const Trajectory& traj, const ScalingParams& p, double a, double T);

// Drift of the a·c_r-truncated netput in scaled units:
// -lambda_r·S(c_r)/S(a·c_r) + kappa. At a = 1 the ratio cancels exactly.
double drift(const ScalingParams& p, double a);

// Limit of the drift as r -> ∞: -inf for a < 1, kappa - lambda for a = 1,
// kappa for a > 1.
double drift_limit(double a, double lambda, double kappa);

// Mass of (1-eps, 1+eps] over total mass; empty when total mass < 1e-12.
std::optional<double> concentration_ratio(const ScaledMeasure& m, double eps);

}  // namespace srpt
