#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "levyreflect/rng.hpp"

namespace levyreflect {

/*
 * Jump-tail model F̄(x) ~ l(x) x^(-beta) exp(-alpha x) where the slowly
 * varying factor is represented as
 *
 *   l(x) = gamma(x) * exp( integral_a^x h(v)/v dv ),   x >= a.
 *
 * An empty `gamma` means gamma == 1; an empty `h` means h == 0. The
 * property x gamma'(x) -> 0 is a declared assumption on a supplied gamma and
 * is not checked. When `exact` is set it is the true survival function of
 * the jump law and is used for every x >= 0 instead of the representation.
 */
struct TailSpec {
  double alpha = 1.0;
  double beta = 0.0;
  std::function<double(double)> gamma;
  double gamma_limit = 1.0;
  std::function<double(double)> h;
  double cutoff = 1.0;
  std::function<double(double)> exact;

  static TailSpec exponential(double alpha);
  /// Exact Gamma(k, alpha) survival written in representation form:
  /// beta = 1 - k, h = 0, gamma(x) = sum_{j<k} (alpha x)^j / j! / x^(k-1).
  static TailSpec erlang(int shape, double alpha);

  bool has_exact() const noexcept { return static_cast<bool>(exact); }
};

enum class JumpFamily { Exponential, Gamma, Unit, Custom };

// User-supplied jump law. Sampler and the first two moments are mandatory,
// the tail must be given explicitly (no fitting), the MGF is needed only for
// the cumulant and for exponential tilting.
struct CustomJump {
  std::function<double(Rng&)> sampler;
  double mean = 0.0;
  double second_moment = 0.0;
  std::optional<TailSpec> tail;
  std::function<double(double)> mgf;
  double mgf_domain = 0.0;  // MGF finite for theta < mgf_domain
};

class JumpDistribution {
 public:
  static JumpDistribution exponential(double rate);
  static JumpDistribution gamma(int shape, double rate);
  /// Degenerate jumps of fixed size (a Poisson process when size == 1).
  static JumpDistribution unit(double size = 1.0);
  static JumpDistribution custom(CustomJump spec);

  JumpFamily family() const noexcept { return family_; }
  double rate() const noexcept { return rate_; }
  int shape() const noexcept { return shape_; }
  double size() const noexcept { return size_; }

  double sample(Rng& rng) const;
  double mean() const;
  double second_moment() const;
  /// P(E > x), exact for the built-in families.
  double survival(double x) const;
  /// Exponential-type tail; absent for Unit jumps.
  const std::optional<TailSpec>& tail() const noexcept { return tail_; }

  /// Supremum of the MGF domain (+inf for bounded jumps).
  double mgf_domain() const;
  double mgf(double theta) const;
  /// Jump law with density proportional to exp(theta x) F(dx).
  JumpDistribution tilted(double theta) const;

 private:
  JumpDistribution() = default;

  JumpFamily family_ = JumpFamily::Exponential;
  double rate_ = 1.0;
  int shape_ = 1;
  double size_ = 1.0;
  std::optional<TailSpec> tail_;
  std::optional<CustomJump> custom_;
};

struct CompoundPoissonPart {
  double intensity = 0.0;
  JumpDistribution jump = JumpDistribution::exponential(1.0);
  double drift = 0.0;
};

struct BrownianPart {
  double drift = 0.0;
  double volatility = 0.0;
};

// Independent sum of a compound Poisson process with drift and a Brownian
// motion with drift; at least one part is present. Immutable once built.
class LevyModel {
 public:
  static LevyModel compound_poisson(double intensity, JumpDistribution jump, double drift);
  static LevyModel brownian(double drift, double volatility);
  static LevyModel sum(CompoundPoissonPart cp, BrownianPart bm);

  const std::optional<CompoundPoissonPart>& cp() const noexcept { return cp_; }
  const std::optional<BrownianPart>& bm() const noexcept { return bm_; }

  bool is_compound_poisson_only() const noexcept { return cp_.has_value() && !bm_.has_value(); }
  /// Linear drift of the sample paths (CP drift plus Brownian drift).
  double total_drift() const noexcept;

 private:
  LevyModel(std::optional<CompoundPoissonPart> cp, std::optional<BrownianPart> bm);

  std::optional<CompoundPoissonPart> cp_;
  std::optional<BrownianPart> bm_;
};

struct Moments {
  double mean = 0.0;      // E X_1
  double variance = 0.0;  // Var X_1
};

Moments moments(const LevyModel& model);

/// Supremum of the cumulant domain.
double cumulant_domain(const LevyModel& model);

/// psi(theta) = log E exp(theta X_1).
double cumulant(const LevyModel& model, double theta);

/// Positive root of psi, by bisection on (1e-12, domain - 1e-12).
double lundberg_root(const LevyModel& model);

/// Exponentially tilted compound Poisson model: intensity lambda M(theta),
/// tilted jump law, unchanged drift.
LevyModel tilted_model(const LevyModel& model, double theta);

// Exact jump-event representation of a compound Poisson path with drift:
// X_t = drift * t + sum_{times[i] <= t} sizes[i].
struct EventPath {
  double horizon = 0.0;
  double drift = 0.0;
  std::vector<double> times;
  std::vector<double> sizes;

  std::size_t jump_count() const noexcept { return times.size(); }
  double value_at(double t) const;
  double left_limit(double t) const;
};

// Skeleton of a path on the grid 0, h, 2h, ..., K h.
struct GridPath {
  double step = 0.0;
  std::vector<double> values;

  std::size_t steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double horizon() const noexcept { return step * static_cast<double>(steps()); }
  double time(std::size_t k) const noexcept { return step * static_cast<double>(k); }
};

EventPath sample_events(const LevyModel& model, double horizon, Rng& rng);

GridPath sample_grid(const LevyModel& model, double step, double horizon, Rng& rng);

}  // namespace levyreflect
