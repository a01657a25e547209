#include "levyreflect/barriers.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "levyreflect/error.hpp"
#include "levyreflect/format.hpp"

namespace levyreflect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest integer n >= 0 with n^2 >= y (strict == false) or n^2 > y.
double integer_root_ceiling(double y, bool strict) {
  if (y < 0.0 || (!strict && y == 0.0)) return 0.0;
  double n = std::floor(std::sqrt(y));
  auto ok = [&](double k) { return strict ? k * k > y : k * k >= y; };
  while (n > 0.0 && ok(n - 1.0)) n -= 1.0;
  while (!ok(n)) n += 1.0;
  return n;
}

template <class Pred>
double bisect_first(const std::function<double(double)>& f, Pred reached, double y) {
  if (reached(f(0.0))) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!reached(f(hi))) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  const double tol = 1e-10 * (1.0 + std::abs(y));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (reached(f(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

Barrier Barrier::zero() { return Barrier(); }

Barrier Barrier::linear(double slope, double intercept) {
  require(slope >= 0.0, ErrorKind::InvalidArgument, "linear barrier slope must be nonnegative");
  Barrier b;
  b.family_ = BarrierFamily::Linear;
  b.a_ = slope;
  b.b_ = intercept;
  return b;
}

Barrier Barrier::power(double exponent, double scale) {
  require(exponent >= 1.0, ErrorKind::InvalidArgument, "power barrier exponent must be >= 1");
  require(scale > 0.0, ErrorKind::InvalidArgument, "power barrier scale must be positive");
  Barrier b;
  b.family_ = BarrierFamily::Power;
  b.a_ = exponent;
  b.b_ = scale;
  return b;
}

Barrier Barrier::floor_square() {
  Barrier b;
  b.family_ = BarrierFamily::FloorSquare;
  return b;
}

Barrier Barrier::custom(CustomBarrier spec) {
  require(static_cast<bool>(spec.f), ErrorKind::InvalidArgument, "custom barrier needs f");
  Barrier b;
  b.family_ = BarrierFamily::CustomMonotone;
  b.custom_ = std::make_shared<const CustomBarrier>(std::move(spec));
  return b;
}

double Barrier::eval(double t) const {
  switch (family_) {
    case BarrierFamily::Zero: return 0.0;
    case BarrierFamily::Linear: return b_ + a_ * t;
    case BarrierFamily::Power: return b_ * std::pow(t, a_);
    case BarrierFamily::FloorSquare: {
      const double n = std::floor(t);
      return n * n;
    }
    case BarrierFamily::CustomMonotone: return custom_->f(t);
  }
  return 0.0;
}

double Barrier::eval_left(double t) const {
  if (family_ == BarrierFamily::FloorSquare) {
    const double n = std::floor(t);
    if (n == t && n > 0.0) return (n - 1.0) * (n - 1.0);
    return n * n;
  }
  return eval(t);
}

double Barrier::deriv(double t) const {
  switch (family_) {
    case BarrierFamily::Zero: return 0.0;
    case BarrierFamily::Linear: return a_;
    case BarrierFamily::Power: return a_ == 1.0 ? b_ : b_ * a_ * std::pow(t, a_ - 1.0);
    case BarrierFamily::FloorSquare:
      if (std::floor(t) == t && t > 0.0) {
        fail(ErrorKind::NotDifferentiable, "floor-square barrier jumps at integer times");
      }
      return 0.0;
    case BarrierFamily::CustomMonotone:
      if (custom_->derivative) return custom_->derivative(t);
      {
        const double h = 1e-6 * (1.0 + std::abs(t));
        const double lo = std::max(0.0, t - h);
        return (custom_->f(t + h) - custom_->f(lo)) / (t + h - lo);
      }
  }
  return 0.0;
}

double Barrier::deriv2(double t) const {
  switch (family_) {
    case BarrierFamily::Zero:
    case BarrierFamily::Linear:
      return 0.0;
    case BarrierFamily::Power:
      if (a_ == 1.0) return 0.0;
      return b_ * a_ * (a_ - 1.0) * std::pow(t, a_ - 2.0);
    case BarrierFamily::FloorSquare:
      deriv(t);
      return 0.0;
    case BarrierFamily::CustomMonotone:
      if (custom_->second_derivative) return custom_->second_derivative(t);
      {
        const double h = 1e-4 * (1.0 + std::abs(t));
        const double lo = std::max(0.0, t - h);
        return (deriv(t + h) - deriv(lo)) / (t + h - lo);
      }
  }
  return 0.0;
}

double Barrier::inverse(double y) const {
  if (y < eval(0.0)) fail(ErrorKind::OutOfRange, "inverse requested below f(0)");
  switch (family_) {
    case BarrierFamily::Zero:
      return y <= 0.0 ? 0.0 : kInf;
    case BarrierFamily::Linear:
      if (y <= b_) return 0.0;
      return a_ > 0.0 ? (y - b_) / a_ : kInf;
    case BarrierFamily::Power:
      return y <= 0.0 ? 0.0 : std::pow(y / b_, 1.0 / a_);
    case BarrierFamily::FloorSquare:
      return integer_root_ceiling(y, false);
    case BarrierFamily::CustomMonotone:
      return bisect_first(custom_->f, [y](double v) { return v >= y; }, y);
  }
  return 0.0;
}

double Barrier::first_exceed(double y) const {
  switch (family_) {
    case BarrierFamily::Zero:
      return y < 0.0 ? 0.0 : kInf;
    case BarrierFamily::Linear:
      if (y < b_) return 0.0;
      return a_ > 0.0 ? (y - b_) / a_ : kInf;
    case BarrierFamily::Power:
      return y < 0.0 ? 0.0 : std::pow(y / b_, 1.0 / a_);
    case BarrierFamily::FloorSquare:
      return integer_root_ceiling(y, true);
    case BarrierFamily::CustomMonotone:
      return bisect_first(custom_->f, [y](double v) { return v > y; }, y);
  }
  return 0.0;
}

double Barrier::asymptotic_slope() const noexcept {
  switch (family_) {
    case BarrierFamily::Zero: return 0.0;
    case BarrierFamily::Linear: return a_;
    case BarrierFamily::Power: return a_ == 1.0 ? b_ : kInf;
    case BarrierFamily::FloorSquare: return kInf;
    case BarrierFamily::CustomMonotone: return custom_->asymptotic_slope;
  }
  return 0.0;
}

bool Barrier::is_convex() const noexcept {
  switch (family_) {
    case BarrierFamily::Zero:
    case BarrierFamily::Linear:
    case BarrierFamily::Power:
      return true;
    case BarrierFamily::FloorSquare:
      return false;
    case BarrierFamily::CustomMonotone:
      return custom_->convex;
  }
  return false;
}

bool Barrier::is_smooth() const noexcept { return family_ != BarrierFamily::FloorSquare; }

std::vector<double> Barrier::breakpoints(double from, double to) const {
  std::vector<double> out;
  if (family_ != BarrierFamily::FloorSquare) return out;
  for (double n = std::max(1.0, std::floor(from) + 1.0); n <= to; n += 1.0) out.push_back(n);
  return out;
}

std::string Barrier::describe() const {
  switch (family_) {
    case BarrierFamily::Zero: return "zero";
    case BarrierFamily::Linear: return "linear:" + format_double(a_) + "," + format_double(b_);
    case BarrierFamily::Power: return "power:" + format_double(a_) + "," + format_double(b_);
    case BarrierFamily::FloorSquare: return "floorsq";
    case BarrierFamily::CustomMonotone: return custom_->name;
  }
  return {};
}

Barrier parse_barrier(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      const auto value = parse_double(rest.substr(0, comma));
      if (!value) fail(ErrorKind::InvalidArgument, "bad number in barrier spec '" + std::string(text) + "'");
      args.push_back(*value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(ErrorKind::InvalidArgument, "wrong argument count in barrier spec '" + std::string(text) + "'");
    }
  };
  if (head == "zero") {
    arity(0, 0);
    return Barrier::zero();
  }
  if (head == "linear") {
    arity(1, 2);
    return Barrier::linear(args[0], args.size() > 1 ? args[1] : 0.0);
  }
  if (head == "power") {
    arity(1, 2);
    return Barrier::power(args[0], args.size() > 1 ? args[1] : 1.0);
  }
  if (head == "floorsq") {
    arity(0, 0);
    return Barrier::floor_square();
  }
  fail(ErrorKind::InvalidArgument, "unknown barrier spec '" + std::string(text) + "'");
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::DriftDominates: return "DriftDominates";
    case Regime::BarrierDominates: return "BarrierDominates";
    case Regime::Ambiguous: return "Ambiguous";
  }
  return "Unknown";
}

Regime regime_classify(const LevyModel& model, const Barrier& barrier) {
  const double m = moments(model).mean;
  const double slope = barrier.asymptotic_slope();
  if (m > slope) return Regime::DriftDominates;
  if (m < slope) return Regime::BarrierDominates;
  return Regime::Ambiguous;
}

}  // namespace levyreflect
