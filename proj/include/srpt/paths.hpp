#pragma once

#include <vector>

#include "srpt/errors.hpp"

namespace srpt {

// Right-continuous piecewise-linear path on [0, horizon]. Segment i covers
// [start[i], start[i+1]) (the last one is closed at horizon); value(start[i])
// already includes the jump attached to the segment start, so evaluation is
// càdlàg by construction. Immutable value type.
class PiecewiseLinearPath {
 public:
  struct Segment {
    double start;   // segment start time
    double value;   // f(start), post-jump
    double slope;
  };

  double initial_value() const { return segs_.front().value; }
  double horizon() const { return horizon_; }
  const std::vector<Segment>& segments() const { return segs_; }

  // Right-continuous evaluation; OutOfHorizon outside [0, horizon].
  double value_at(double t) const;

  // Left limit f(t-) for t in (0, horizon].
  double left_limit(double t) const;

  double end_value() const { return value_at(horizon_); }

  // Infimum of f over [0, T], including left limits at jump points.
  double inf_on(double T) const;

  class Builder {
   public:
    explicit Builder(double initial_value);
    // Appends an (upward or signed) jump at the current time.
    Builder& jump(double delta);
    // Appends a linear piece of the given duration.
    Builder& piece(double slope, double duration);
    // Appends a linear piece ending exactly at t_end (>= current time).
    Builder& piece_until(double slope, double t_end);
    double current_time() const { return t_; }
    double current_value() const { return value_ + comp_; }
    // Overrides the running value without recording a jump; used where the
    // exact value is known analytically (e.g. the reflected path is pinned
    // at zero) and accumulated rounding must not leak into it.
    Builder& snap_value(double v);
    PiecewiseLinearPath finish();

   private:
    std::vector<Segment> segs_;
    double t_ = 0.0;
    double value_ = 0.0;      // running value, compensated
    double comp_ = 0.0;
    double pending_slope_ = 0.0;
    bool open_piece_ = false;
    void close_piece(double t_end);
    void add(double x);
  };

 private:
  friend class Builder;
  PiecewiseLinearPath(std::vector<Segment> segs, double horizon)
      : segs_(std::move(segs)), horizon_(horizon) {}
  // index of the segment whose half-open interval contains t
  std::size_t locate(double t) const;

  std::vector<Segment> segs_;
  double horizon_ = 0.0;
};

// One-dimensional Skorokhod reflection Γ[f](t) = f(t) - inf_{s<=t} f(s) ∧ 0,
// computed exactly: breakpoints of the output are the input breakpoints plus
// the points where a descending piece crosses the previous running minimum.
// Requires f(0) >= 0 (NegativeInitialValue otherwise).
PiecewiseLinearPath skorokhod_map(const PiecewiseLinearPath& f);

// sup_{0<=t<=T} |p1(t) - p2(t)|, exact over the merged breakpoint set.
double sup_norm_diff(const PiecewiseLinearPath& p1, const PiecewiseLinearPath& p2,
                     double T);

// g(u) = f(s + u) on [0, horizon - s].
PiecewiseLinearPath time_shift(const PiecewiseLinearPath& f, double s);

// f + c.
PiecewiseLinearPath with_offset(const PiecewiseLinearPath& f, double c);

// Samples at t0 + k·dt; carrier for Brownian references.
struct GridPath {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
};

// Discrete reflection W_k = X_k - min(0, min_{j<=k} X_j).
GridPath reflect_grid(const GridPath& g);

}  // namespace srpt
