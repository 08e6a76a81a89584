#include "srpt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srpt {

PiecewiseLinearPath::Builder::Builder(double initial_value) {
  value_ = initial_value;
  segs_.push_back({0.0, initial_value, 0.0});
}

void PiecewiseLinearPath::Builder::add(double x) {
  // Neumaier-compensated running value; path identities downstream compare
  // at 1e-9..1e-12 over thousands of increments.
  const double t = value_ + x;
  if (std::abs(value_) >= std::abs(x)) {
    comp_ += (value_ - t) + x;
  } else {
    comp_ += (x - t) + value_;
  }
  value_ = t;
}

PiecewiseLinearPath::Builder& PiecewiseLinearPath::Builder::jump(double delta) {
  add(delta);
  const double v = value_ + comp_;
  if (!segs_.empty() && segs_.back().start == t_) {
    segs_.back().value = v;
  } else {
    segs_.push_back({t_, v, 0.0});
  }
  return *this;
}

PiecewiseLinearPath::Builder& PiecewiseLinearPath::Builder::piece(double slope,
                                                                  double duration) {
  if (duration < 0) throw std::invalid_argument("piece: negative duration");
  if (duration == 0) return *this;
  return piece_until(slope, t_ + duration);
}

PiecewiseLinearPath::Builder& PiecewiseLinearPath::Builder::piece_until(double slope,
                                                                        double t_end) {
  if (t_end < t_) throw std::invalid_argument("piece_until: t_end before current time");
  if (t_end == t_) return *this;
  if (!segs_.empty() && segs_.back().start == t_) {
    segs_.back().slope = slope;
  } else {
    segs_.push_back({t_, value_ + comp_, slope});
  }
  add(slope * (t_end - t_));
  t_ = t_end;
  return *this;
}

PiecewiseLinearPath::Builder& PiecewiseLinearPath::Builder::snap_value(double v) {
  value_ = v;
  comp_ = 0.0;
  if (!segs_.empty() && segs_.back().start == t_) segs_.back().value = v;
  return *this;
}

PiecewiseLinearPath PiecewiseLinearPath::Builder::finish() {
  return PiecewiseLinearPath(std::move(segs_), t_);
}

std::size_t PiecewiseLinearPath::locate(double t) const {
  // last segment with start <= t
  auto it = std::upper_bound(segs_.begin(), segs_.end(), t,
                             [](double v, const Segment& s) { return v < s.start; });
  return static_cast<std::size_t>(it - segs_.begin()) - 1;
}

double PiecewiseLinearPath::value_at(double t) const {
  if (t < 0 || t > horizon_)
    throw OutOfHorizon("value_at: t outside [0, horizon]");
  const Segment& s = segs_[locate(t)];
  return s.value + s.slope * (t - s.start);
}

double PiecewiseLinearPath::left_limit(double t) const {
  if (t <= 0 || t > horizon_)
    throw OutOfHorizon("left_limit: t outside (0, horizon]");
  std::size_t i = locate(t);
  if (segs_[i].start == t) --i;  // limit from the previous segment
  const Segment& s = segs_[i];
  return s.value + s.slope * (t - s.start);
}

double PiecewiseLinearPath::inf_on(double T) const {
  if (T < 0 || T > horizon_) throw OutOfHorizon("inf_on: T outside [0, horizon]");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    const Segment& s = segs_[i];
    if (s.start > T) break;
    const double end = std::min(i + 1 < segs_.size() ? segs_[i + 1].start : horizon_, T);
    m = std::min(m, s.value);
    m = std::min(m, s.value + s.slope * (end - s.start));
  }
  return m;
}

PiecewiseLinearPath skorokhod_map(const PiecewiseLinearPath& f) {
  const auto& segs = f.segments();
  if (segs.front().value < 0)
    throw NegativeInitialValue("skorokhod_map: f(0) < 0");

  PiecewiseLinearPath::Builder out(segs.front().value);
  double m = std::min(0.0, segs.front().value);  // running inf ∧ 0

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const double seg_end = (i + 1 < segs.size()) ? segs[i + 1].start : f.horizon();
    // Jump into this segment (possibly downward for general paths).
    if (s.value < m) m = s.value;
    const double g_start = s.value - m;
    if (s.start > 0) {
      out.jump(g_start - out.current_value());
      out.snap_value(g_start);
    }
    const double dur = seg_end - s.start;
    if (dur <= 0) continue;
    if (s.slope >= 0) {
      out.piece_until(s.slope, seg_end);
    } else {
      const double end_val = s.value + s.slope * dur;
      if (end_val >= m) {
        out.piece_until(s.slope, seg_end);
        m = std::min(m, end_val);
      } else {
        // descends through the running minimum at t*: the output hits zero
        // there and stays pinned to it for the rest of the piece
        const double t_star = s.start + (s.value - m) / (-s.slope);
        out.piece_until(s.slope, std::min(std::max(t_star, s.start), seg_end));
        out.snap_value(0.0);
        out.piece_until(0.0, seg_end);
        m = end_val;
      }
    }
  }
  return out.finish();
}

double sup_norm_diff(const PiecewiseLinearPath& p1, const PiecewiseLinearPath& p2,
                     double T) {
  if (T < 0 || T > p1.horizon() || T > p2.horizon())
    throw OutOfHorizon("sup_norm_diff: T beyond a horizon");
  // merged breakpoint times <= T, plus T itself
  std::vector<double> ts;
  ts.reserve(p1.segments().size() + p2.segments().size() + 1);
  for (const auto& s : p1.segments())
    if (s.start <= T) ts.push_back(s.start);
  for (const auto& s : p2.segments())
    if (s.start <= T) ts.push_back(s.start);
  ts.push_back(T);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  double sup = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    sup = std::max(sup, std::abs(p1.value_at(ts[k]) - p2.value_at(ts[k])));
    if (k + 1 < ts.size()) {
      const double b = ts[k + 1];
      sup = std::max(sup, std::abs(p1.left_limit(b) - p2.left_limit(b)));
    }
  }
  return sup;
}

PiecewiseLinearPath time_shift(const PiecewiseLinearPath& f, double s) {
  if (s < 0 || s >= f.horizon())
    throw OutOfHorizon("time_shift: s outside [0, horizon)");
  PiecewiseLinearPath::Builder out(f.value_at(s));
  const auto& segs = f.segments();
  std::size_t i = 0;
  while (i + 1 < segs.size() && segs[i + 1].start <= s) ++i;
  // remainder of the segment containing s
  double t_end = (i + 1 < segs.size()) ? segs[i + 1].start : f.horizon();
  out.piece_until(segs[i].slope, t_end - s);
  for (++i; i < segs.size(); ++i) {
    out.jump(segs[i].value - (segs[i - 1].value +
                              segs[i - 1].slope * (segs[i].start - segs[i - 1].start)));
    t_end = (i + 1 < segs.size()) ? segs[i + 1].start : f.horizon();
    out.piece_until(segs[i].slope, t_end - s);
  }
  return out.finish();
}

PiecewiseLinearPath with_offset(const PiecewiseLinearPath& f, double c) {
  PiecewiseLinearPath::Builder out(f.initial_value() + c);
  const auto& segs = f.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i > 0) {
      const auto& p = segs[i - 1];
      out.jump(segs[i].value - (p.value + p.slope * (segs[i].start - p.start)));
    }
    const double t_end = (i + 1 < segs.size()) ? segs[i + 1].start : f.horizon();
    out.piece_until(segs[i].slope, t_end);
  }
  return out.finish();
}

GridPath reflect_grid(const GridPath& g) {
  if (g.values.empty()) return g;
  if (g.values.front() < 0)
    throw NegativeInitialValue("reflect_grid: values[0] < 0");
  GridPath out;
  out.t0 = g.t0;
  out.dt = g.dt;
  out.values.resize(g.values.size());
  double run_min = 0.0;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    run_min = std::min(run_min, g.values[k]);
    out.values[k] = g.values[k] - run_min;
  }
  return out;
}

}  // namespace srpt
