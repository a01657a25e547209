#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "levyreflect/levy_models.hpp"

namespace levyreflect {

enum class BarrierFamily { Zero, Linear, Power, FloorSquare, CustomMonotone };

struct CustomBarrier {
  std::function<double(double)> f;
  std::function<double(double)> derivative;         // optional
  std::function<double(double)> second_derivative;  // optional
  double asymptotic_slope = 0.0;                    // lim f(t)/t, may be +inf
  bool convex = false;
  std::string name = "custom";
};

/*
 * Nondecreasing right-continuous barrier f on [0, inf).
 *
 * inverse(y) is the generalized inverse inf{t >= 0 : f(t) >= y};
 * first_exceed(y) is inf{t >= 0 : f(t) > y}. Both return +inf when the level
 * is never reached.
 */
class Barrier {
 public:
  static Barrier zero();
  /// f(t) = intercept + slope t.
  static Barrier linear(double slope, double intercept = 0.0);
  /// f(t) = scale t^exponent, exponent >= 1.
  static Barrier power(double exponent, double scale = 1.0);
  /// f(t) = floor(t)^2.
  static Barrier floor_square();
  static Barrier custom(CustomBarrier spec);

  BarrierFamily family() const noexcept { return family_; }

  double eval(double t) const;
  double eval_left(double t) const;  // f(t-)
  double deriv(double t) const;
  double deriv2(double t) const;
  double inverse(double y) const;
  double first_exceed(double y) const;

  /// lim f(t)/t (+inf for superlinear barriers).
  double asymptotic_slope() const noexcept;
  bool is_convex() const noexcept;
  bool is_smooth() const noexcept;
  /// Discontinuity points of f in (from, to].
  std::vector<double> breakpoints(double from, double to) const;

  std::string describe() const;

 private:
  Barrier() = default;

  BarrierFamily family_ = BarrierFamily::Zero;
  double a_ = 0.0;  // slope or exponent
  double b_ = 0.0;  // intercept or scale
  std::shared_ptr<const CustomBarrier> custom_;
};

/// Parses `zero`, `linear:b[,f0]`, `power:p[,s]` or `floorsq`.
Barrier parse_barrier(std::string_view text);

enum class Regime { DriftDominates, BarrierDominates, Ambiguous };

std::string_view to_string(Regime regime) noexcept;

Regime regime_classify(const LevyModel& model, const Barrier& barrier);

}  // namespace levyreflect
