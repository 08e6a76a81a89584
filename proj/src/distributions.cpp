#include "srpt/distributions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace srpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

DistributionSpec DistributionSpec::exponential(double rate) {
  require(rate > 0, "exponential: rate must be > 0");
  DistributionSpec s;
  s.kind = LawKind::Exponential;
  s.rate = rate;
  return s;
}

DistributionSpec DistributionSpec::weibull(double scale, double shape) {
  require(scale > 0 && shape > 0, "weibull: scale and shape must be > 0");
  DistributionSpec s;
  s.kind = LawKind::Weibull;
  s.scale = scale;
  s.shape = shape;
  return s;
}

DistributionSpec DistributionSpec::pareto(double index, double x_m) {
  require(index > 1, "pareto: index must be > 1");
  require(x_m > 0, "pareto: x_m must be > 0");
  DistributionSpec s;
  s.kind = LawKind::Pareto;
  s.index = index;
  s.x_m = x_m;
  return s;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  require(lo >= 0 && hi > lo, "uniform: need 0 <= lo < hi");
  DistributionSpec s;
  s.kind = LawKind::Uniform;
  s.lo = lo;
  s.hi = hi;
  return s;
}

DistributionSpec DistributionSpec::deterministic(double value) {
  require(value > 0, "deterministic: value must be > 0");
  DistributionSpec s;
  s.kind = LawKind::Deterministic;
  s.value = value;
  return s;
}

std::string DistributionSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case LawKind::Exponential: os << "exponential:" << rate; break;
    case LawKind::Weibull: os << "weibull:" << scale << ":" << shape; break;
    case LawKind::Pareto: os << "pareto:" << index << ":" << x_m; break;
    case LawKind::Uniform: os << "uniform:" << lo << ":" << hi; break;
    case LawKind::Deterministic: os << "deterministic:" << value; break;
  }
  return os.str();
}

DistributionSpec parse_law_shorthand(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  auto num = [&](size_t i) -> double {
    if (i >= parts.size()) throw ConfigInvalid("law shorthand '" + s + "': missing parameter");
    try {
      size_t pos = 0;
      double v = std::stod(parts[i], &pos);
      if (pos != parts[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigInvalid("law shorthand '" + s + "': bad number '" + parts[i] + "'");
    }
  };
  auto arity = [&](size_t n) {
    if (parts.size() != n + 1)
      throw ConfigInvalid("law shorthand '" + s + "': wrong number of parameters");
  };
  try {
    const std::string& kind = parts[0];
    if (kind == "exponential") { arity(1); return DistributionSpec::exponential(num(1)); }
    if (kind == "weibull") { arity(2); return DistributionSpec::weibull(num(1), num(2)); }
    if (kind == "pareto") { arity(2); return DistributionSpec::pareto(num(1), num(2)); }
    if (kind == "uniform") { arity(2); return DistributionSpec::uniform(num(1), num(2)); }
    if (kind == "deterministic") { arity(1); return DistributionSpec::deterministic(num(1)); }
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid("law shorthand '" + s + "': " + e.what());
  }
  throw ConfigInvalid("law shorthand '" + s + "': unknown kind");
}

LawHandle::LawHandle(const DistributionSpec& spec, double quadrature_tol)
    : spec_(spec), tol_(quadrature_tol) {
  require(tol_ > 0, "quadrature_tol must be > 0");
  switch (spec_.kind) {
    case LawKind::Exponential:
      mean_ = 1.0 / spec_.rate;
      variance_ = 1.0 / (spec_.rate * spec_.rate);
      break;
    case LawKind::Weibull: {
      const double m1 = std::tgamma(1.0 + 1.0 / spec_.shape) / spec_.scale;
      const double m2 = std::tgamma(1.0 + 2.0 / spec_.shape) / (spec_.scale * spec_.scale);
      mean_ = m1;
      variance_ = m2 - m1 * m1;
      break;
    }
    case LawKind::Pareto: {
      const double beta = spec_.index + 1.0;  // tail exponent, > 2
      mean_ = spec_.x_m * beta / (beta - 1.0);
      const double m2 = spec_.x_m * spec_.x_m * beta / (beta - 2.0);
      variance_ = m2 - mean_ * mean_;
      break;
    }
    case LawKind::Uniform:
      mean_ = 0.5 * (spec_.lo + spec_.hi);
      variance_ = (spec_.hi - spec_.lo) * (spec_.hi - spec_.lo) / 12.0;
      break;
    case LawKind::Deterministic:
      mean_ = spec_.value;
      variance_ = 0.0;
      break;
  }
}

double LawHandle::std_dev() const { return std::sqrt(variance_); }

bool LawHandle::unbounded_support() const {
  return spec_.kind == LawKind::Exponential || spec_.kind == LawKind::Weibull ||
         spec_.kind == LawKind::Pareto;
}

double LawHandle::tail(double x) const {
  require(x >= 0, "tail: x must be >= 0");
  switch (spec_.kind) {
    case LawKind::Exponential:
      return std::exp(-spec_.rate * x);
    case LawKind::Weibull:
      return std::exp(-std::pow(spec_.scale * x, spec_.shape));
    case LawKind::Pareto:
      if (x <= spec_.x_m) return 1.0;
      return std::pow(spec_.x_m / x, spec_.index + 1.0);
    case LawKind::Uniform:
      if (x <= spec_.lo) return 1.0;
      if (x >= spec_.hi) return 0.0;
      return (spec_.hi - x) / (spec_.hi - spec_.lo);
    case LawKind::Deterministic:
      return x < spec_.value ? 1.0 : 0.0;
  }
  return 0.0;
}

namespace {

// Upper bound for ∫_z^∞ exp(-(mu·y)^alpha) dy, valid once u0 = (mu·z)^alpha
// satisfies u0 >= max(1, 2c) with c = 1/alpha - 1. Substituting u = (mu·y)^alpha
// gives (1/(alpha·mu)) ∫_{u0}^∞ u^c e^{-u} du and u^c e^{-u} decays at least
// like e^{-u/2} past that point.
double weibull_tail_integral_remainder(double mu, double alpha, double z) {
  const double c = 1.0 / alpha - 1.0;
  const double u0 = std::pow(mu * z, alpha);
  if (u0 < std::max(1.0, 2.0 * c)) return kInf;
  return 2.0 / (alpha * mu) * std::pow(u0, std::max(c, 0.0)) * std::exp(-u0);
}

}  // namespace

double LawHandle::tail_work_numeric(double x) const {
  require(x >= 0, "tail_work: x must be >= 0");
  // H(x) = x·F̄(x) + G(x), G(x) = ∫ₓ^∞ F̄(y) dy (integration by parts).
  // The integral runs over geometrically growing windows so each Gauss-Kronrod
  // pass sees a well-scaled interval; the analytic tail remainder decides when
  // to stop, first against the absolute tolerance and then relative to the
  // running estimate (S must stay accurate when H is tiny).
  const double head = x * tail(x);
  if (spec_.kind == LawKind::Deterministic) return spec_.value > x ? spec_.value : 0.0;

  if (spec_.kind == LawKind::Weibull && spec_.shape < 1.0) {
    // substitute u = (mu·y)^alpha: G(x) = (1/(alpha·mu)) ∫ u^{1/alpha-1} e^{-u} du,
    // an analytic integrand (the y-space one has an unbounded derivative at 0)
    const double mu = spec_.scale, al = spec_.shape;
    const double c = 1.0 / al - 1.0;
    auto g = [c](double u) { return std::pow(u, c) * std::exp(-u); };
    auto rem_from = [&](double u) {
      if (u < std::max(1.0, 2.0 * c)) return std::numeric_limits<double>::infinity();
      return 2.0 * std::pow(u, c) * std::exp(-u) / (al * mu);
    };
    double a = std::pow(mu * x, al);
    double integral = 0.0, err = 0.0;
    const double w = std::max(1.0, c);
    for (int i = 0; i < 5000; ++i) {
      double werr = 0.0;
      integral += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          g, a, a + w, 15, 1e-13, &werr);
      err += werr;
      a += w;
      const double value_so_far = head + integral / (al * mu);
      if (rem_from(a) <= std::min(0.25 * tol_, 1e-12 * std::max(value_so_far, 1e-300)))
        break;
    }
    const double value = head + integral / (al * mu);
    if (!(err / (al * mu) <= tol_ || err / (al * mu) <= 1e-10 * std::max(value, 1e-300)))
      throw QuadratureNotConverged("tail_work: quadrature error estimate too large");
    return value;
  }

  auto remainder = [this](double z) -> double {
    switch (spec_.kind) {
      case LawKind::Exponential:
        return std::exp(-spec_.rate * z) / spec_.rate;
      case LawKind::Weibull:
        return weibull_tail_integral_remainder(spec_.scale, spec_.shape, z);
      case LawKind::Pareto: {
        const double beta = spec_.index + 1.0;
        return std::pow(spec_.x_m, beta) * std::pow(z, 1.0 - beta) / (beta - 1.0);
      }
      case LawKind::Uniform:
        return z >= spec_.hi ? 0.0 : (spec_.hi - z);  // coarse bound, F̄ <= 1
      case LawKind::Deterministic:
        return 0.0;
    }
    return 0.0;
  };
  double scale0 = 1.0;
  switch (spec_.kind) {
    case LawKind::Exponential: scale0 = 1.0 / spec_.rate; break;
    case LawKind::Weibull: scale0 = 1.0 / spec_.scale; break;
    case LawKind::Pareto: scale0 = spec_.x_m; break;
    case LawKind::Uniform: scale0 = spec_.hi; break;
    case LawKind::Deterministic: break;
  }

  auto f = [this](double y) { return tail(y); };
  double integral = 0.0, err = 0.0;
  double a = x;
  double b = std::max(x + scale0, 2.0 * x);
  if (spec_.kind == LawKind::Uniform) b = std::min(b, spec_.hi);
  int windows = 0;
  while (a < b) {
    double werr = 0.0;
    integral += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, 1e-13, &werr);
    err += werr;
    if (spec_.kind == LawKind::Uniform && b >= spec_.hi) break;
    const double target =
        std::min(0.25 * tol_, 1e-12 * std::max(head + integral, 1e-300));
    if (remainder(b) <= target) break;
    a = b;
    b = 2.0 * b;
    if (spec_.kind == LawKind::Uniform) b = std::min(b, spec_.hi);
    if (++windows > 2000)
      throw QuadratureNotConverged("tail_work: remainder bound stalled");
  }
  const double value = head + integral;
  if (!(err <= tol_ || err <= 1e-10 * std::max(value, 1e-300)))
    throw QuadratureNotConverged("tail_work: quadrature error estimate too large");
  return value;
}

double LawHandle::tail_work(double x) const {
  require(x >= 0, "tail_work: x must be >= 0");
  switch (spec_.kind) {
    case LawKind::Exponential:
      return (x + 1.0 / spec_.rate) * std::exp(-spec_.rate * x);
    case LawKind::Weibull:
      if (spec_.shape == 1.0)
        return (x + 1.0 / spec_.scale) * std::exp(-spec_.scale * x);
      return tail_work_numeric(x);
    case LawKind::Pareto: {
      const double beta = spec_.index + 1.0;
      if (x <= spec_.x_m) return mean_;
      return std::pow(spec_.x_m, beta) * std::pow(x, 1.0 - beta) * beta / (beta - 1.0);
    }
    case LawKind::Uniform:
      if (x <= spec_.lo) return mean_;
      if (x >= spec_.hi) return 0.0;
      return (spec_.hi * spec_.hi - x * x) / (2.0 * (spec_.hi - spec_.lo));
    case LawKind::Deterministic:
      return x < spec_.value ? spec_.value : 0.0;
  }
  return 0.0;
}

double LawHandle::big_s(double x) const {
  if (!unbounded_support())
    throw UnboundedSupportRequired("big_s: " + spec_.describe() + " has bounded support");
  return 1.0 / tail_work(x);
}

double LawHandle::s_inverse(double r) const {
  if (!unbounded_support())
    throw UnboundedSupportRequired("s_inverse: " + spec_.describe() + " has bounded support");
  require(r > 0, "s_inverse: r must be > 0");
  if (big_s(0.0) > r) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (big_s(hi) <= r) {
    hi *= 2.0;
    if (hi > 1e290) throw QuadratureNotConverged("s_inverse: bracket did not close");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (big_s(mid) > r) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double LawHandle::ratio_tail(double t, double x) const {
  require(t > 1, "ratio_tail: t must be > 1");
  const double denom = tail(x);
  if (denom <= 0.0)
    throw DivisionByZeroTail("ratio_tail: tail vanishes at x=" + std::to_string(x));
  return tail(t * x) / denom;
}

double LawHandle::ratio_s_inverse(double t, double r) const {
  require(t > 0, "ratio_s_inverse: t must be > 0");
  const double denom = s_inverse(r);
  if (denom <= 0.0)
    throw std::invalid_argument("ratio_s_inverse: S^{-1}(r)=0; r too small");
  return s_inverse(t * r) / denom;
}

double LawHandle::quantile(double u) const {
  require(u > 0 && u < 1, "quantile: u must be in (0,1)");
  switch (spec_.kind) {
    case LawKind::Exponential:
      return -std::log1p(-u) / spec_.rate;
    case LawKind::Weibull:
      return std::pow(-std::log1p(-u), 1.0 / spec_.shape) / spec_.scale;
    case LawKind::Pareto:
      return spec_.x_m * std::pow(1.0 - u, -1.0 / (spec_.index + 1.0));
    case LawKind::Uniform:
      return spec_.lo + u * (spec_.hi - spec_.lo);
    case LawKind::Deterministic:
      return spec_.value;
  }
  return 0.0;
}

}  // namespace srpt
