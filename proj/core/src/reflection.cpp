#include "levyreflect/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "levyreflect/error.hpp"

namespace levyreflect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t last_at_or_before(const std::vector<double>& times, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

ReflectedPath ReflectedPath::from_mesh(std::vector<double> times, std::vector<double> values) {
  require(!times.empty() && times.size() == values.size(), ErrorKind::InvalidArgument,
          "mesh times and values must be non-empty and of equal length");
  ReflectedPath out;
  out.form_ = Form::Mesh;
  out.horizon_ = times.back();
  out.times_ = std::move(times);
  out.values_ = std::move(values);
  return out;
}

double ReflectedPath::value_at(double t) const {
  const std::size_t k = last_at_or_before(times_, t);
  if (form_ == Form::Mesh) return values_[k];
  const double x = x_[k] + drift_ * (t - times_[k]);
  return x - std::min(inf_[k], x - barrier_->eval(t));
}

bool event_exact(double drift, const Barrier& barrier) noexcept {
  return drift <= 0.0 || barrier.is_convex() || barrier.family() == BarrierFamily::FloorSquare;
}

ReflectedPath reflect_deterministic(const EventPath& path, const Barrier& barrier) {
  if (!event_exact(path.drift, barrier)) {
    fail(ErrorKind::UnsupportedModel,
         "event-exact reflection needs nonpositive drift or a convex barrier; use a grid path");
  }
  // Positive drift against a piecewise-constant barrier: the infimum can sit
  // at a discontinuity of f, so those instants become events as well.
  std::vector<double> breaks;
  if (path.drift > 0.0) breaks = barrier.breakpoints(0.0, path.horizon);

  ReflectedPath out;
  out.form_ = ReflectedPath::Form::Events;
  out.horizon_ = path.horizon;
  out.drift_ = path.drift;
  out.barrier_ = barrier;
  const std::size_t total = path.times.size() + breaks.size() + 1;
  out.times_.reserve(total);
  out.values_.reserve(total);
  out.x_.reserve(total);
  out.inf_.reserve(total);
  out.jump_.reserve(total);

  double t_prev = 0.0;
  double x = 0.0;
  double inf = std::min(0.0, -barrier.eval(0.0));
  out.times_.push_back(0.0);
  out.x_.push_back(x);
  out.inf_.push_back(inf);
  out.values_.push_back(x - inf);
  out.jump_.push_back(false);

  std::size_t j = 0;
  std::size_t b = 0;
  while (j < path.times.size() || b < breaks.size()) {
    const bool take_jump = b >= breaks.size() || (j < path.times.size() && path.times[j] <= breaks[b]);
    const double t = take_jump ? path.times[j] : breaks[b];
    const double x_left = x + path.drift * (t - t_prev);
    inf = std::min(inf, x_left - barrier.eval_left(t));
    x = x_left;
    if (take_jump) {
      x += path.sizes[j];
      ++j;
      if (b < breaks.size() && breaks[b] == t) ++b;
    } else {
      ++b;
    }
    inf = std::min(inf, x - barrier.eval(t));
    out.times_.push_back(t);
    out.x_.push_back(x);
    out.inf_.push_back(inf);
    out.values_.push_back(x - inf);
    out.jump_.push_back(take_jump);
    t_prev = t;
  }
  return out;
}

ReflectedPath reflect_deterministic(const GridPath& path, const Barrier& barrier) {
  require(!path.values.empty(), ErrorKind::InvalidArgument, "empty grid path");
  std::vector<double> times(path.values.size());
  std::vector<double> values(path.values.size());
  double inf = 0.0;
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    const double t = path.time(k);
    inf = std::min(inf, path.values[k] - barrier.eval(t));
    times[k] = t;
    values[k] = path.values[k] - inf;
  }
  return ReflectedPath::from_mesh(std::move(times), std::move(values));
}

ReflectedPath reflect_levy(const GridPath& x, const GridPath& y) {
  if (x.step != y.step || x.values.size() != y.values.size()) {
    fail(ErrorKind::MeshMismatch, "reflecting paths live on different grids");
  }
  std::vector<double> times(x.values.size());
  std::vector<double> values(x.values.size());
  double inf = 0.0;
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    inf = std::min(inf, x.values[k] - y.values[k]);
    times[k] = x.time(k);
    values[k] = x.values[k] - inf;
  }
  return ReflectedPath::from_mesh(std::move(times), std::move(values));
}

ReflectedPath reflect_levy(const EventPath& x, const EventPath& y) {
  if (x.horizon != y.horizon) fail(ErrorKind::MeshMismatch, "reflecting paths have different horizons");
  std::vector<double> times{0.0};
  std::vector<double> values{0.0};
  times.reserve(x.times.size() + y.times.size() + 2);
  values.reserve(times.capacity());

  double xv = 0.0;
  double yv = 0.0;
  double t_prev = 0.0;
  double inf = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (true) {
    const double tx = i < x.times.size() ? x.times[i] : kInf;
    const double ty = j < y.times.size() ? y.times[j] : kInf;
    double t = std::min(tx, ty);
    const bool last = !(t <= x.horizon);
    if (last) t = x.horizon;
    xv += x.drift * (t - t_prev);
    yv += y.drift * (t - t_prev);
    inf = std::min(inf, xv - yv);
    if (!last) {
      if (tx == t) xv += x.sizes[i++];
      if (ty == t) yv += y.sizes[j++];
      inf = std::min(inf, xv - yv);
    }
    if (t > times.back() || !last) {
      times.push_back(t);
      values.push_back(xv - inf);
    }
    t_prev = t;
    if (last) break;
  }
  return ReflectedPath::from_mesh(std::move(times), std::move(values));
}

FirstPassageSample first_passage(const ReflectedPath& path, double level) {
  FirstPassageSample out;
  const auto& times = path.times();
  const auto& values = path.values();

  if (path.form() == ReflectedPath::Form::Mesh) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] > level) {
        out.tau = times[k];
        out.overshoot = values[k] - level;
        out.crossing = Crossing::Mesh;
        return out;
      }
    }
    out.tau = path.horizon();
    out.censored = true;
    return out;
  }

  const Barrier& barrier = *path.barrier();
  const double drift = path.drift();
  const auto& x = path.free_values();
  const auto& inf = path.running_inf();
  const auto& jump = path.is_jump();

  if (values[0] > level) {
    out.tau = 0.0;
    out.overshoot = values[0] - level;
    out.crossing = Crossing::BarrierJump;
    return out;
  }
  const double barrier_time = barrier.first_exceed(level);
  const std::size_t count = times.size();
  for (std::size_t k = 0; k < count; ++k) {
    const bool last = k + 1 == count;
    const double t_end = last ? path.horizon() : times[k + 1];

    // Between events V only increases by drifting up (positive drift) or by
    // being pushed along the barrier.
    double creep_time = kInf;
    if (drift > 0.0) creep_time = times[k] + (level - (x[k] - inf[k])) / drift;
    const double t_cross = std::min(creep_time, std::max(barrier_time, times[k]));
    if (last ? t_cross <= t_end : t_cross < t_end) {
      const double x_cross = x[k] + drift * (t_cross - times[k]);
      const double v_cross = std::max(x_cross - inf[k], barrier.eval(t_cross));
      out.tau = t_cross;
      out.overshoot = std::max(0.0, v_cross - level);
      out.free_value = x_cross;
      out.crossing = creep_time <= barrier_time || barrier.is_smooth() ? Crossing::Creep : Crossing::BarrierJump;
      return out;
    }
    if (!last && values[k + 1] > level) {
      out.tau = times[k + 1];
      out.overshoot = values[k + 1] - level;
      out.free_value = x[k + 1];
      out.crossing = jump[k + 1] ? Crossing::Jump : Crossing::BarrierJump;
      return out;
    }
  }
  out.tau = path.horizon();
  out.censored = true;
  out.free_value = x.back() + drift * (path.horizon() - times.back());
  return out;
}

bool underline_hit(const EventPath& path, const Barrier& barrier, double level, double until) {
  for (std::size_t i = 0; i < path.times.size() && path.times[i] <= until; ++i) {
    if (barrier.eval(path.times[i]) + path.sizes[i] > level) return true;
  }
  return false;
}

bool simulate_underline(double intensity, const JumpDistribution& jump, const Barrier& barrier,
                        double level, double c, Rng& rng) {
  require(c > 0.0 && c < 1.0, ErrorKind::InvalidArgument, "c must lie in (0, 1)");
  require(intensity > 0.0, ErrorKind::InvalidArgument, "intensity must be positive");
  require(barrier.eval(0.0) >= 0.0, ErrorKind::InvalidArgument, "barrier must satisfy f(0) >= 0");
  const double until = barrier.inverse(c * level);
  bool hit = false;
  for (double t = rng.exponential(intensity); t <= until; t += rng.exponential(intensity)) {
    if (barrier.eval(t) + jump.sample(rng) > level) hit = true;
  }
  return hit;
}

double free_running_max(const EventPath& path, double until) {
  require(until <= path.horizon, ErrorKind::InvalidArgument, "time beyond the path horizon");
  double best = 0.0;
  double x = 0.0;
  double t_prev = 0.0;
  for (std::size_t i = 0; i < path.times.size() && path.times[i] <= until; ++i) {
    x += path.drift * (path.times[i] - t_prev);
    best = std::max(best, x);
    x += path.sizes[i];
    best = std::max(best, x);
    t_prev = path.times[i];
  }
  return std::max(best, x + path.drift * (until - t_prev));
}

double free_running_max(const GridPath& path, double until) {
  require(until <= path.horizon() + 1e-12, ErrorKind::InvalidArgument, "time beyond the path horizon");
  double best = 0.0;
  for (std::size_t k = 0; k < path.values.size() && path.time(k) <= until + 1e-12; ++k) {
    best = std::max(best, path.values[k]);
  }
  return best;
}

}  // namespace levyreflect
