#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace srpt {

// splitmix64 finalizer; used to derive independent substream seeds from a
// single experiment seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Splitting rule seed -> (a, b, c). Every consumer of randomness in the
// project derives its stream through this chain, so a single 64-bit seed
// reproduces an experiment across machines regardless of thread count.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(seed ^ 0x53525054ULL);  // "SRPT"
  s = mix64(s + 0x9e3779b97f4a7c15ULL * a);
  s = mix64(s + 0xc2b2ae3d27d4eb4fULL * b);
  s = mix64(s + 0x165667b19e3779f9ULL * c);
  return s;
}

// Deterministic variate stream. std::mt19937_64 output is fully specified by
// the standard; the transforms below are done by hand because the standard
// distributions are not reproducible across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on (0, 1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal, Marsaglia polar method with a cached spare.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Compensated (Neumaier) accumulator for long sums of path increments.
class KahanSum {
 public:
  KahanSum() = default;
  explicit KahanSum(double v) : sum_(v) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace srpt
