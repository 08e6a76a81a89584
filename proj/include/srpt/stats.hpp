#pragma once

#include <span>
#include <vector>

#include "srpt/errors.hpp"

namespace srpt {

// Two-sample Kolmogorov-Smirnov statistic: sup over pooled points of
// |F̂_x - F̂_y|. EmptySample if either input is empty.
double ks_two_sample(std::span<const double> x, std::span<const double> y);

double mean_of(std::span<const double> v);
double variance_of(std::span<const double> v);  // unbiased

// Empirical quantile (linear interpolation on the sorted sample).
double quantile_of(std::span<const double> v, double q);

struct SampleSummary {
  int n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double q10 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q90 = 0.0;
};

SampleSummary summarize(std::span<const double> v);

}  // namespace srpt
