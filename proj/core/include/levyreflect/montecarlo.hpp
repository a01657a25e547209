#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"
#include "levyreflect/reflection.hpp"

namespace levyreflect {

struct McEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double ci95 = 0.0;  // 1.96 sqrt(variance / n); 3/n when nothing was hit
  double ess = 0.0;   // (sum y)^2 / sum y^2
};

/// Summary of per-replication contributions y_i (indicator times weight).
McEstimate summarize(std::span<const double> contributions);

struct HorizonPolicy {
  std::optional<double> fixed;  // otherwise 4u/m (drift wins) or 2 f^{-1}(u) (barrier wins)
  bool extend_once = true;
};

/*
 * One Monte Carlo experiment. Exactly one of `barrier` (deterministic f) and
 * `barrier_model` (independent Levy barrier Y) is set. Replication i draws
 * from Rng(seed, i, 0) for X and Rng(seed, i, 1) for Y, so results do not
 * depend on `workers`.
 */
struct ExperimentSpec {
  LevyModel model;
  std::optional<Barrier> barrier{};
  std::optional<LevyModel> barrier_model{};
  double level = 0.0;
  double c = 0.5;
  std::function<double(double)> g{};
  std::size_t replications = 1000;
  std::uint64_t seed = 0;
  HorizonPolicy horizon{};
  std::optional<double> tilt{};
  double grid_step = 0.01;
  unsigned workers = 1;

  void validate() const;
};

/// Linear rate governing tau(u)/u: m_X when the free process wins, m_Y for a
/// Levy barrier that wins; throws WrongRegime otherwise.
double passage_rate(const ExperimentSpec& spec);
/// Variance rate paired with passage_rate().
double passage_variance(const ExperimentSpec& spec);

/// A single replication of tau(u) censored at `horizon`.
FirstPassageSample simulate_passage(const ExperimentSpec& spec, std::size_t replication, double horizon);

struct TauExperiment {
  std::vector<FirstPassageSample> samples;
  double horizon = 0.0;
  double censored_fraction = 0.0;
};

TauExperiment run_tau_experiment(const ExperimentSpec& spec);

/// Non-censored taus.
std::vector<double> uncensored_taus(std::span<const FirstPassageSample> samples);

/// (tau_i - u/m) / sqrt(u omega^2 / m^3).
std::vector<double> zscores_tau(std::span<const FirstPassageSample> samples, double mean, double variance,
                                double level);

/// V_t for n independent replications.
std::vector<double> terminal_values(const ExperimentSpec& spec, double t);

/// (V_t - m t) / sqrt(t omega^2).
std::vector<double> zscores_terminal(const ExperimentSpec& spec, double t);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;  // 1.63 / sqrt(n)
  bool pass = false;
};

/// One-sample Kolmogorov-Smirnov distance to N(0, 1).
KsResult ks_statistic(std::span<const double> zscores);

struct IndependenceResult {
  double correlation = 0.0;
  double standard_error = 0.0;
  bool dependent = false;  // |r| > 3 standard errors
};

/// Correlation of (min(xi, K)/K, Phi(z)) with K the 95th percentile of xi.
IndependenceResult independence_diagnostic(std::span<const double> overshoots, std::span<const double> zscores);

/// Replications censored at T; used by the passage estimators.
std::vector<FirstPassageSample> passage_samples(const ExperimentSpec& spec, double until);

/// Plain Monte Carlo estimate of P(tau(u) <= T).
McEstimate estimate_passage_prob(const ExperimentSpec& spec, double until);

/// Samples under the exponentially tilted law, each carrying the likelihood
/// ratio exp(-theta X + psi(theta) t) at its stopping or censoring time.
std::vector<FirstPassageSample> tilted_passage_samples(const ExperimentSpec& spec, double theta, double until);

/// Importance-sampled estimate of P(tau(u) <= T).
McEstimate estimate_passage_prob_tilted(const ExperimentSpec& spec, double theta, double until);

/// tilt default alpha - 1/u.
double default_tilt(const ExperimentSpec& spec);

/// y_i = 1{tau_i <= T, not censored} * weight_i.
std::vector<double> passage_contributions(std::span<const FirstPassageSample> samples, double until);

}  // namespace levyreflect
