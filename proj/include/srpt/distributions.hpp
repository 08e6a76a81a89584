#pragma once

#include <string>

#include "srpt/errors.hpp"
#include "srpt/rng.hpp"

namespace srpt {

enum class LawKind { Exponential, Weibull, Pareto, Uniform, Deterministic };

// Parameterizations:
//   Exponential(rate):        F̄(x) = exp(-rate·x)
//   Weibull(scale, shape):    F̄(x) = exp(-(scale·x)^shape)
//   Pareto(index, x_m):       F̄(x) = (x_m/x)^(index+1) for x ≥ x_m, index > 1
//   Uniform(lo, hi):          uniform on [lo, hi], 0 ≤ lo < hi
//   Deterministic(value):     point mass at value > 0
struct DistributionSpec {
  LawKind kind = LawKind::Exponential;
  double rate = 0.0;
  double scale = 0.0, shape = 0.0;
  double index = 0.0, x_m = 0.0;
  double lo = 0.0, hi = 0.0;
  double value = 0.0;

  static DistributionSpec exponential(double rate);
  static DistributionSpec weibull(double scale, double shape);
  static DistributionSpec pareto(double index, double x_m);
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec deterministic(double value);

  std::string describe() const;  // e.g. "exponential:1"
};

// Shorthand "kind:p1[:p2]" as accepted by the CLI, e.g. "exponential:1",
// "weibull:1:2", "pareto:2:1", "uniform:0:2", "deterministic:2".
DistributionSpec parse_law_shorthand(const std::string& s);

// A processing-time or interarrival law together with its moments, tail
// quantities, the scale function S and its inverse. Immutable after
// construction; safe for concurrent shared reads. Sampling takes an explicit
// caller-owned Rng.
class LawHandle {
 public:
  explicit LawHandle(const DistributionSpec& spec, double quadrature_tol = 1e-10);

  const DistributionSpec& spec() const { return spec_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double std_dev() const;
  double quadrature_tol() const { return tol_; }
  bool unbounded_support() const;

  // F̄(x) = P(v > x), closed form for all kinds.
  double tail(double x) const;

  // H(x) = E[v·1{v>x}]. Closed form except Weibull with shape != 1, which
  // uses adaptive Gauss-Kronrod quadrature of x·F̄(x) + ∫ₓ F̄ with an
  // analytic remainder bound. Throws QuadratureNotConverged if the error
  // estimate cannot be brought under quadrature_tol.
  double tail_work(double x) const;

  // The quadrature route for any kind, regardless of a closed form being
  // available; serves as the numeric cross-check path.
  double tail_work_numeric(double x) const;

  // S(x) = 1 / H(x); requires unbounded support.
  double big_s(double x) const;

  // Right-continuous inverse S⁻¹(r) = inf{x : S(x) > r} by bracketed
  // bisection to absolute tolerance 1e-12 on x (at most 200 iterations).
  double s_inverse(double r) const;

  // F̄(tx)/F̄(x) for t > 1; DivisionByZeroTail when F̄(x) vanishes at
  // working precision.
  double ratio_tail(double t, double x) const;

  // S⁻¹(tr)/S⁻¹(r); slow-variation diagnostic.
  double ratio_s_inverse(double t, double r) const;

  // Quantile F⁻¹(u), u in (0,1).
  double quantile(double u) const;

  // One variate by inversion of the closed-form CDF.
  double sample(Rng& rng) const { return quantile(rng.uniform01()); }

 private:
  DistributionSpec spec_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double tol_ = 1e-10;
};

}  // namespace srpt
