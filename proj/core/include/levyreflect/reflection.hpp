#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"

namespace levyreflect {

/*
 * A reflected trajectory V.
 *
 * Mesh form: V is known at the mesh times only (grid reflection, or Levy
 * reflection on a union of event times) and value_at() holds the last mesh
 * value.
 *
 * Event form: built from an EventPath and a deterministic barrier whose
 * reflection can be updated exactly at events. Between consecutive events
 * the running infimum of X - f is attained at an endpoint, so
 *
 *   V_t = max(X_t - I_k, f(t))   for t in [t_k, t_{k+1}),
 *
 * where I_k is the running infimum recorded at event k. value_at() is exact
 * at every t.
 */
class ReflectedPath {
 public:
  enum class Form { Mesh, Events };

  static ReflectedPath from_mesh(std::vector<double> times, std::vector<double> values);

  Form form() const noexcept { return form_; }
  const std::vector<double>& times() const noexcept { return times_; }
  /// V at times() (right values at events).
  const std::vector<double>& values() const noexcept { return values_; }
  double horizon() const noexcept { return horizon_; }
  double initial_value() const noexcept { return values_.front(); }

  double value_at(double t) const;

  // Event form only.
  const std::vector<double>& free_values() const noexcept { return x_; }
  const std::vector<double>& running_inf() const noexcept { return inf_; }
  const std::vector<bool>& is_jump() const noexcept { return jump_; }
  double drift() const noexcept { return drift_; }
  const std::optional<Barrier>& barrier() const noexcept { return barrier_; }

 private:
  friend ReflectedPath reflect_deterministic(const EventPath& path, const Barrier& barrier);

  ReflectedPath() = default;

  Form form_ = Form::Mesh;
  double horizon_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> x_;
  std::vector<double> inf_;
  std::vector<bool> jump_;
  double drift_ = 0.0;
  std::optional<Barrier> barrier_;
};

/// True when reflection of `path`'s model at `barrier` can be done exactly at
/// events: nonpositive drift (X - f nonincreasing between jumps), a convex
/// barrier (X - f concave between jumps), or a piecewise-constant barrier.
bool event_exact(double drift, const Barrier& barrier) noexcept;

/// V_t = X_t - min(0, inf_{s<=t}(X_s - f(s))), exact at events.
ReflectedPath reflect_deterministic(const EventPath& path, const Barrier& barrier);

/// Same map applied pointwise on the grid.
ReflectedPath reflect_deterministic(const GridPath& path, const Barrier& barrier);

/// V_t = X_t - inf_{s<=t}(X_s - Y_s) on a shared grid.
ReflectedPath reflect_levy(const GridPath& x, const GridPath& y);

/// Same map on the union of both event sets (exact at mesh times).
ReflectedPath reflect_levy(const EventPath& x, const EventPath& y);

enum class Crossing { None, Jump, Creep, BarrierJump, Mesh };

struct FirstPassageSample {
  double tau = 0.0;  // horizon when censored
  double overshoot = 0.0;
  bool censored = false;
  double weight = 1.0;
  Crossing crossing = Crossing::None;
  double free_value = 0.0;  // X at tau (event form), used for likelihood ratios
};

/// tau(u) = inf{t >= 0 : V_t > u} and xi(u) = V_tau - u.
FirstPassageSample first_passage(const ReflectedPath& path, double level);

/// Whether the process f(t) + (jump of X at t) exceeds `level` on [0, until].
bool underline_hit(const EventPath& path, const Barrier& barrier, double level, double until);

/// Samples the marked Poisson process on [0, f^{-1}(c u)] and reports whether
/// some mark satisfies f(t) + e > u.
bool simulate_underline(double intensity, const JumpDistribution& jump, const Barrier& barrier,
                        double level, double c, Rng& rng);

/// max_{0<=s<=T} X_s of the unreflected path.
double free_running_max(const EventPath& path, double until);
double free_running_max(const GridPath& path, double until);

}  // namespace levyreflect
