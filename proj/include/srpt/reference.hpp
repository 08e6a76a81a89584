#pragma once

#include <cstdint>
#include <vector>

#include "srpt/paths.hpp"
#include "srpt/rng.hpp"

namespace srpt {

// σ² = λ(σ_S² + σ_A²).
double sigma_squared(double lambda, double sigma_s, double sigma_a);

// Parameters of the limiting processes X*(t) = W*(0) + σB(t) + κt and
// W* = Γ[X*]. lambda enters only the a=1 limit field (X₁* = X* − λt).
struct LimitParams {
  double sigma = 1.0;
  double kappa = 0.0;
  double lambda = 1.0;
  double w0 = 0.0;
  bool w0_exponential = false;  // if set, W*(0) ~ Exponential(mean w0)
};

// Euler path of W* = Γ[X*] on an n_steps grid over [0, T]. Consumes one
// uniform for W*(0) when w0_exponential, then n_steps normals.
GridPath rbm_sample(const LimitParams& p, double T, int n_steps, Rng& rng);

// Limit field W_a*: the zero path for a < 1, Γ[X* − λ·t] at a = 1, Γ[X*] for
// a > 1. Consumes exactly the same number of draws for every a, so calls with
// the same rng position share one Brownian path across regimes.
GridPath limit_field_sample(const LimitParams& p, double a, double T, int n_steps,
                            Rng& rng);

// Terminal value W*(T) without materializing the path.
double rbm_terminal(const LimitParams& p, double T, int n_steps, Rng& rng);

// n_paths terminal samples; deterministic given the seed regardless of
// n_threads (path i uses substream(seed, i)).
std::vector<double> rbm_terminal_ensemble(const LimitParams& p, double T, int n_steps,
                                          long n_paths, std::uint64_t seed,
                                          int n_threads);

// Exact probability that the biased walk (up 1/3, down 2/3) started at level j
// hits level l before level 1: (2^j - 2)/(2^l - 2).
double biased_walk_hit(int j, int l);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long n = 0;
};

// Monte-Carlo oracle for biased_walk_hit.
McEstimate biased_walk_mc(int j, int l, long n_paths, Rng& rng);

}  // namespace srpt
