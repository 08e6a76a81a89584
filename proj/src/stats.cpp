#include "srpt/stats.hpp"

#include <algorithm>
#include <cmath>

namespace srpt {

double ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw EmptySample("ks_two_sample: empty sample");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= v) ++i;
    while (j < ys.size() && ys[j] <= v) ++j;
    stat = std::max(stat, std::abs(static_cast<double>(i) / nx -
                                   static_cast<double>(j) / ny));
  }
  return stat;
}

double mean_of(std::span<const double> v) {
  if (v.empty()) throw EmptySample("mean_of: empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v) {
  if (v.size() < 2) throw EmptySample("variance_of: need at least 2 points");
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double quantile_of(std::span<const double> v, double q) {
  if (v.empty()) throw EmptySample("quantile_of: empty sample");
  if (q < 0 || q > 1) throw std::invalid_argument("quantile_of: q outside [0,1]");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  if (s.size() == 1) return s[0];
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

SampleSummary summarize(std::span<const double> v) {
  SampleSummary out;
  out.n = static_cast<int>(v.size());
  if (v.empty()) return out;
  out.mean = mean_of(v);
  out.variance = v.size() >= 2 ? variance_of(v) : 0.0;
  out.q10 = quantile_of(v, 0.10);
  out.q25 = quantile_of(v, 0.25);
  out.median = quantile_of(v, 0.50);
  out.q75 = quantile_of(v, 0.75);
  out.q90 = quantile_of(v, 0.90);
  return out;
}

}  // namespace srpt
