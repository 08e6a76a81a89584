#include "srpt/reference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "srpt/errors.hpp"

namespace srpt {

double sigma_squared(double lambda, double sigma_s, double sigma_a) {
  if (lambda <= 0 || sigma_s <= 0 || sigma_a <= 0)
    throw std::invalid_argument("sigma_squared: all arguments must be > 0");
  return lambda * (sigma_s * sigma_s + sigma_a * sigma_a);
}

namespace {

double draw_w0(const LimitParams& p, Rng& rng) {
  if (p.w0_exponential) return -p.w0 * std::log1p(-rng.uniform01());
  return p.w0;
}

GridPath netput_grid(const LimitParams& p, double T, int n_steps, Rng& rng,
                     double extra_drift) {
  if (n_steps < 1) throw std::invalid_argument("need n_steps >= 1");
  const double dt = T / n_steps;
  const double sdt = p.sigma * std::sqrt(dt);
  const double drift = (p.kappa + extra_drift) * dt;
  GridPath x;
  x.t0 = 0.0;
  x.dt = dt;
  x.values.resize(static_cast<std::size_t>(n_steps) + 1);
  double v = draw_w0(p, rng);
  x.values[0] = v;
  for (int k = 1; k <= n_steps; ++k) {
    v += sdt * rng.normal() + drift;
    x.values[static_cast<std::size_t>(k)] = v;
  }
  return x;
}

}  // namespace

GridPath rbm_sample(const LimitParams& p, double T, int n_steps, Rng& rng) {
  return reflect_grid(netput_grid(p, T, n_steps, rng, 0.0));
}

GridPath limit_field_sample(const LimitParams& p, double a, double T, int n_steps,
                            Rng& rng) {
  if (a < 0) throw std::invalid_argument("limit_field_sample: a must be >= 0");
  if (a > 1.0) return rbm_sample(p, T, n_steps, rng);
  if (a == 1.0) return reflect_grid(netput_grid(p, T, n_steps, rng, -p.lambda));
  // a < 1: identically zero, but consume the same draws so regimes couple
  GridPath x = netput_grid(p, T, n_steps, rng, 0.0);
  std::fill(x.values.begin(), x.values.end(), 0.0);
  return x;
}

double rbm_terminal(const LimitParams& p, double T, int n_steps, Rng& rng) {
  if (n_steps < 1) throw std::invalid_argument("need n_steps >= 1");
  const double dt = T / n_steps;
  const double sdt = p.sigma * std::sqrt(dt);
  const double drift = p.kappa * dt;
  double v = draw_w0(p, rng);
  double run_min = std::min(0.0, v);
  for (int k = 0; k < n_steps; ++k) {
    v += sdt * rng.normal() + drift;
    if (v < run_min) run_min = v;
  }
  return v - run_min;
}

std::vector<double> rbm_terminal_ensemble(const LimitParams& p, double T, int n_steps,
                                          long n_paths, std::uint64_t seed,
                                          int n_threads) {
  std::vector<double> out(static_cast<std::size_t>(n_paths));
  const int workers = std::max(1, n_threads);
  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      Rng rng(substream(seed, 0xB0, static_cast<std::uint64_t>(i)));
      out[static_cast<std::size_t>(i)] = rbm_terminal(p, T, n_steps, rng);
    }
  };
  if (workers == 1) {
    work(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n_paths + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long b = w * chunk;
      const long e = std::min<long>(n_paths, b + chunk);
      if (b >= e) break;
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

double biased_walk_hit(int j, int l) {
  if (j < 1 || l < j) throw InvalidLevels("biased_walk_hit: need 1 <= j <= l");
  if (j == l) return 1.0;
  if (j == 1) return 0.0;
  return (std::ldexp(1.0, j) - 2.0) / (std::ldexp(1.0, l) - 2.0);
}

McEstimate biased_walk_mc(int j, int l, long n_paths, Rng& rng) {
  if (j < 1 || l < j) throw InvalidLevels("biased_walk_mc: need 1 <= j <= l");
  long hits = 0;
  for (long i = 0; i < n_paths; ++i) {
    int level = j;
    while (level > 1 && level < l) {
      level += rng.uniform01() < 1.0 / 3.0 ? 1 : -1;
    }
    if (level == l) ++hits;
  }
  McEstimate e;
  e.n = n_paths;
  e.estimate = static_cast<double>(hits) / static_cast<double>(n_paths);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) /
                          static_cast<double>(n_paths));
  return e;
}

}  // namespace srpt
