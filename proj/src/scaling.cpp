#include "srpt/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srpt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ScalingParams make_params(const LawHandle& law, double r, double kappa) {
  if (r <= 1.0 / law.mean())
    throw std::invalid_argument("make_params: need r > 1/E[v]");
  ScalingParams p{r, law.s_inverse(r), (1.0 + kappa / r) / law.mean(), kappa, law};
  return p;
}

ScaledMeasure dd_scale_measure(const MeasureSnapshot& m, const ScalingParams& p) {
  ScaledMeasure out;
  out.locations.reserve(m.locations.size());
  out.weights.reserve(m.weights.size());
  const double boost = p.c_r / p.r;
  for (std::size_t i = 0; i < m.locations.size(); ++i) {
    out.locations.push_back(m.locations[i] / p.c_r);
    out.weights.push_back(m.weights[i] * boost);
  }
  return out;
}

double ScaledMeasure::total_mass() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

double ScaledMeasure::total_work() const {
  KahanSum s;
  for (std::size_t i = 0; i < locations.size(); ++i) s.add(locations[i] * weights[i]);
  return s.value();
}

std::size_t find_scaled_a(const Trajectory& traj, const ScalingParams& p, double a) {
  const double target = a * p.c_r;
  for (std::size_t j = 0; j < traj.a_grid.size(); ++j) {
    const double g = traj.a_grid[j];
    if (std::abs(g - target) <= 1e-9 * std::max(1.0, std::abs(target))) return j;
  }
  throw GridMismatch("find_scaled_a: cutoff " + std::to_string(target) +
                     " absent from the trajectory's a_grid");
}

namespace {

std::size_t last_snapshot_covered(const Trajectory& traj, const ScalingParams& p,
                                  double T) {
  const double t_un = p.r * p.r * T;
  if (traj.horizon < t_un * (1.0 - 1e-12))
    throw GridMismatch("scaled horizon exceeds the simulated horizon");
  std::size_t last = 0;
  for (std::size_t s = 0; s < traj.n_snapshots(); ++s)
    if (traj.snapshot_times[s] <= t_un * (1.0 + 1e-12)) last = s;
  return last;
}

}  // namespace

ScaledTrajectory tilde_processes(const Trajectory& traj, const ScalingParams& p,
                                 double T) {
  const std::size_t last = last_snapshot_covered(traj, p, T);
  const double r2 = p.r * p.r;
  ScaledTrajectory out;
  out.r = p.r;
  out.c_r = p.c_r;
  out.lambda_r = p.lambda_r;
  out.kappa = p.kappa;
  out.T = T;
  out.a_grid.reserve(traj.a_grid.size());
  for (double a : traj.a_grid) out.a_grid.push_back(a / p.c_r);
  for (std::size_t s = 0; s <= last; ++s) {
    const double t = traj.snapshot_times[s] / r2;
    out.times.push_back(t);
    out.w_tilde.push_back(traj.w[s] / p.r);
    out.q_tilde.push_back(p.c_r * traj.q[s] / p.r);
    for (std::size_t j = 0; j < traj.n_a(); ++j) {
      out.w_tilde_a.push_back(traj.w_a_at(s, j) / p.r);
      out.q_tilde_a.push_back(p.c_r * traj.q_a_at(s, j) / p.r);
      out.theta_tilde_a.push_back(t - traj.tau_a_at(s, j) / r2);
    }
  }
  return out;
}

namespace {

const EventSampleTable& samples_or_throw(const Trajectory& traj) {
  if (traj.samples.rows() == 0)
    throw std::invalid_argument("sup functional: trajectory lacks event samples");
  return traj.samples;
}

template <typename F>
double sup_over_rows(const Trajectory& traj, const ScalingParams& p, double T, F&& row_value) {
  const auto& tab = samples_or_throw(traj);
  const double t_max = p.r * p.r * T * (1.0 + 1e-12);
  if (traj.horizon < p.r * p.r * T * (1.0 - 1e-12))
    throw GridMismatch("sup functional: horizon shorter than r^2 T");
  double sup = -kInf;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.t[i] > t_max) break;
    sup = std::max(sup, row_value(tab, i));
  }
  return sup;
}

}  // namespace

double sup_w_tilde(const Trajectory& traj, const ScalingParams& p, double T) {
  return sup_over_rows(traj, p, T, [](const EventSampleTable& tab, std::size_t i) {
    return tab.w[i];
  }) / p.r;
}

double sup_q_tilde_minus_w_tilde(const Trajectory& traj, const ScalingParams& p,
                                 double T) {
  const double c = p.c_r;
  return sup_over_rows(traj, p, T, [c](const EventSampleTable& tab, std::size_t i) {
    return std::abs(c * tab.q[i] - tab.w[i]);
  }) / p.r;
}

double sup_w_tilde_a(const Trajectory& traj, const ScalingParams& p, double a, double T) {
  const std::size_t j = find_scaled_a(traj, p, a);
  double sup = sup_over_rows(traj, p, T, [j](const EventSampleTable& tab, std::size_t i) {
    return tab.w_a_at(i, j);
  });
  // the cutoff workload touches exactly the cutoff level when the serving
  // task crosses it, which happens between event rows
  if (traj.first_crossing_a[j] <= p.r * p.r * T * (1.0 + 1e-12))
    sup = std::max(sup, traj.a_grid[j]);
  return sup / p.r;
}

double sup_q_tilde_a(const Trajectory& traj, const ScalingParams& p, double a, double T) {
  const std::size_t j = find_scaled_a(traj, p, a);
  return p.c_r *
         sup_over_rows(traj, p, T,
                       [j](const EventSampleTable& tab, std::size_t i) {
                         return tab.q_a_at(i, j);
                       }) /
         p.r;
}

double sup_w_tilde_minus_w_tilde_a(const Trajectory& traj, const ScalingParams& p,
                                   double a, double T) {
  const std::size_t j = find_scaled_a(traj, p, a);
  return sup_over_rows(traj, p, T,
                       [j](const EventSampleTable& tab, std::size_t i) {
                         return tab.w[i] - tab.w_a_at(i, j);
                       }) /
         p.r;
}

double sup_z_tilde(const Trajectory& truncated_traj, const ScalingParams& p, double T) {
  return p.c_r *
         sup_over_rows(truncated_traj, p, T,
                       [](const EventSampleTable& tab, std::size_t i) {
                         return tab.q[i];
                       }) /
         p.r;
}

double theta_tilde_at(const Trajectory& traj, const ScalingParams& p, double a, double T) {
  const std::size_t j = find_scaled_a(traj, p, a);
  const std::size_t s = last_snapshot_covered(traj, p, T);
  const double r2 = p.r * p.r;
  return traj.snapshot_times[s] / r2 - traj.tau_a_at(s, j) / r2;
}

double drift(const ScalingParams& p, double a) {
  if (a <= 0) throw std::invalid_argument("drift: a must be > 0");
  const double ratio = p.law.big_s(p.c_r) / p.law.big_s(a * p.c_r);
  return -p.lambda_r * ratio + p.kappa;
}

double drift_limit(double a, double lambda, double kappa) {
  if (a <= 0) throw std::invalid_argument("drift_limit: a must be > 0");
  if (a < 1) return -kInf;
  if (a == 1) return kappa - lambda;
  return kappa;
}

std::optional<double> concentration_ratio(const ScaledMeasure& m, double eps) {
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("concentration_ratio: eps must be in (0,1)");
  const double total = m.total_mass();
  if (total < 1e-12) return std::nullopt;
  KahanSum in_window;
  for (std::size_t i = 0; i < m.locations.size(); ++i) {
    const double x = m.locations[i];
    if (x > 1.0 - eps && x <= 1.0 + eps) in_window.add(m.weights[i]);
  }
  return in_window.value() / total;
}

}  // namespace srpt
