#include "levyreflect/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyreflect/asymptotics.hpp"
#include "levyreflect/error.hpp"
#include "levyreflect/parallel.hpp"

namespace levyreflect {
namespace {

double default_horizon(const ExperimentSpec& spec) {
  const double level = std::max(spec.level, 1.0);
  if (spec.barrier) {
    switch (regime_classify(spec.model, *spec.barrier)) {
      case Regime::DriftDominates:
        return 4.0 * level / moments(spec.model).mean;
      case Regime::BarrierDominates:
        return std::max(2.0 * spec.barrier->inverse(std::max(spec.level, spec.barrier->eval(0.0))), 1.0);
      case Regime::Ambiguous:
        break;
    }
    fail(ErrorKind::PreconditionViolated, "ambiguous regime needs an explicit horizon");
  }
  return 4.0 * level / passage_rate(spec);
}

std::vector<FirstPassageSample> replicate(const ExperimentSpec& spec, double horizon) {
  std::vector<FirstPassageSample> samples(spec.replications);
  parallel_for(spec.replications, spec.workers,
               [&](std::size_t i) { samples[i] = simulate_passage(spec, i, horizon); });
  return samples;
}

double censored_fraction(std::span<const FirstPassageSample> samples) {
  if (samples.empty()) return 0.0;
  const auto censored = std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.censored; });
  return static_cast<double>(censored) / static_cast<double>(samples.size());
}

}  // namespace

McEstimate summarize(std::span<const double> contributions) {
  McEstimate out;
  out.n = contributions.size();
  if (out.n == 0) return out;
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (double y : contributions) {
    sum.add(y);
    sum_sq.add(y * y);
  }
  const double n = static_cast<double>(out.n);
  out.mean = sum.value() / n;
  if (out.n > 1) {
    CompensatedSum dev;
    for (double y : contributions) dev.add((y - out.mean) * (y - out.mean));
    out.variance = dev.value() / (n - 1.0);
  }
  if (sum_sq.value() > 0.0) {
    out.ci95 = 1.96 * std::sqrt(out.variance / n);
    out.ess = sum.value() * sum.value() / sum_sq.value();
  } else {
    out.ci95 = 3.0 / n;
  }
  return out;
}

void ExperimentSpec::validate() const {
  require(barrier.has_value() != barrier_model.has_value(), ErrorKind::InvalidArgument,
          "exactly one of a deterministic barrier and a Levy barrier must be set");
  require(replications > 0, ErrorKind::InvalidArgument, "replication count must be positive");
  require(grid_step > 0.0, ErrorKind::InvalidArgument, "grid step must be positive");
  require(level >= 0.0, ErrorKind::InvalidArgument, "level must be nonnegative");
}

double passage_rate(const ExperimentSpec& spec) {
  const double mx = moments(spec.model).mean;
  if (spec.barrier) {
    if (regime_classify(spec.model, *spec.barrier) != Regime::DriftDominates) {
      fail(ErrorKind::WrongRegime, "linear passage rate needs the free process to dominate the barrier");
    }
    return mx;
  }
  const double my = moments(*spec.barrier_model).mean;
  if (mx > my && mx > 0.0) return mx;
  if (mx < my && my > 0.0) return my;
  fail(ErrorKind::WrongRegime, "E Z_1 = 0 or the dominating process has nonpositive drift");
}

double passage_variance(const ExperimentSpec& spec) {
  const double rate = passage_rate(spec);
  if (spec.barrier || rate == moments(spec.model).mean) return moments(spec.model).variance;
  return moments(*spec.barrier_model).variance;
}

FirstPassageSample simulate_passage(const ExperimentSpec& spec, std::size_t replication, double horizon) {
  Rng rng(spec.seed, replication, 0);
  if (spec.barrier) {
    const Barrier& f = *spec.barrier;
    if (spec.model.is_compound_poisson_only() && event_exact(spec.model.cp()->drift, f)) {
      return first_passage(reflect_deterministic(sample_events(spec.model, horizon, rng), f), spec.level);
    }
    return first_passage(reflect_deterministic(sample_grid(spec.model, spec.grid_step, horizon, rng), f),
                         spec.level);
  }
  Rng rng_y(spec.seed, replication, 1);
  const LevyModel& y = *spec.barrier_model;
  if (spec.model.is_compound_poisson_only() && y.is_compound_poisson_only()) {
    const EventPath px = sample_events(spec.model, horizon, rng);
    const EventPath py = sample_events(y, horizon, rng_y);
    return first_passage(reflect_levy(px, py), spec.level);
  }
  const GridPath gx = sample_grid(spec.model, spec.grid_step, horizon, rng);
  const GridPath gy = sample_grid(y, spec.grid_step, horizon, rng_y);
  return first_passage(reflect_levy(gx, gy), spec.level);
}

TauExperiment run_tau_experiment(const ExperimentSpec& spec) {
  spec.validate();
  TauExperiment out;
  out.horizon = spec.horizon.fixed ? *spec.horizon.fixed : default_horizon(spec);
  out.samples = replicate(spec, out.horizon);
  out.censored_fraction = censored_fraction(out.samples);
  if (out.censored_fraction > 0.01 && spec.horizon.extend_once) {
    out.horizon *= 2.0;
    out.samples = replicate(spec, out.horizon);
    out.censored_fraction = censored_fraction(out.samples);
  }
  if (out.censored_fraction > 0.05) {
    fail(ErrorKind::ExcessCensoring, "more than 5% of replications censored after extending the horizon");
  }
  return out;
}

std::vector<double> uncensored_taus(std::span<const FirstPassageSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (!s.censored) out.push_back(s.tau);
  }
  return out;
}

std::vector<double> zscores_tau(std::span<const FirstPassageSample> samples, double mean, double variance,
                                double level) {
  require(mean > 0.0, ErrorKind::InvalidArgument, "passage rate must be positive");
  require(variance > 0.0 && level > 0.0, ErrorKind::InvalidArgument, "variance and level must be positive");
  const double centre = level / mean;
  const double scale = std::sqrt(level * variance / (mean * mean * mean));
  std::vector<double> z;
  z.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.censored) fail(ErrorKind::CensoredInput, "z-scores need uncensored passage times");
    z.push_back((s.tau - centre) / scale);
  }
  return z;
}

std::vector<double> terminal_values(const ExperimentSpec& spec, double t) {
  spec.validate();
  require(t > 0.0, ErrorKind::InvalidArgument, "terminal time must be positive");
  std::vector<double> out(spec.replications);
  parallel_for(spec.replications, spec.workers, [&](std::size_t i) {
    Rng rng(spec.seed, i, 0);
    if (spec.barrier) {
      const Barrier& f = *spec.barrier;
      if (spec.model.is_compound_poisson_only() && event_exact(spec.model.cp()->drift, f)) {
        out[i] = reflect_deterministic(sample_events(spec.model, t, rng), f).value_at(t);
      } else {
        out[i] = reflect_deterministic(sample_grid(spec.model, spec.grid_step, t, rng), f).values().back();
      }
      return;
    }
    Rng rng_y(spec.seed, i, 1);
    const LevyModel& y = *spec.barrier_model;
    if (spec.model.is_compound_poisson_only() && y.is_compound_poisson_only()) {
      out[i] = reflect_levy(sample_events(spec.model, t, rng), sample_events(y, t, rng_y)).values().back();
    } else {
      out[i] = reflect_levy(sample_grid(spec.model, spec.grid_step, t, rng),
                            sample_grid(y, spec.grid_step, t, rng_y))
                   .values()
                   .back();
    }
  });
  return out;
}

std::vector<double> zscores_terminal(const ExperimentSpec& spec, double t) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "z-scores at a degenerate horizon");
  const double rate = passage_rate(spec);
  const double variance = passage_variance(spec);
  std::vector<double> z = terminal_values(spec, t);
  const double scale = std::sqrt(t * variance);
  for (double& v : z) v = (v - rate * t) / scale;
  return z;
}

KsResult ks_statistic(std::span<const double> zscores) {
  if (zscores.size() < 100) fail(ErrorKind::TooFewSamples, "KS test needs at least 100 values");
  std::vector<double> sorted(zscores.begin(), zscores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = std_normal_cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - cdf;
    const double below = cdf - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  KsResult out;
  out.statistic = d;
  out.critical = 1.63 / std::sqrt(n);
  out.pass = d < out.critical;
  return out;
}

IndependenceResult independence_diagnostic(std::span<const double> overshoots, std::span<const double> zscores) {
  require(overshoots.size() == zscores.size(), ErrorKind::InvalidArgument, "paired samples differ in length");
  if (overshoots.size() < 1000) fail(ErrorKind::TooFewSamples, "independence diagnostic needs n >= 1000");
  const std::size_t n = overshoots.size();
  std::vector<double> sorted(overshoots.begin(), overshoots.end());
  std::sort(sorted.begin(), sorted.end());
  const double cap = sorted[static_cast<std::size_t>(0.95 * static_cast<double>(n - 1))];
  if (!(sorted.back() > sorted.front()) || !(cap > 0.0)) {
    fail(ErrorKind::DegenerateOvershoot, "overshoot sample has no spread");
  }
  std::vector<double> a(n);
  std::vector<double> b(n);
  CompensatedSum sa;
  CompensatedSum sb;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::min(overshoots[i], cap) / cap;
    b[i] = std_normal_cdf(zscores[i]);
    sa.add(a[i]);
    sb.add(b[i]);
  }
  const double ma = sa.value() / static_cast<double>(n);
  const double mb = sb.value() / static_cast<double>(n);
  CompensatedSum sab;
  CompensatedSum saa;
  CompensatedSum sbb;
  for (std::size_t i = 0; i < n; ++i) {
    sab.add((a[i] - ma) * (b[i] - mb));
    saa.add((a[i] - ma) * (a[i] - ma));
    sbb.add((b[i] - mb) * (b[i] - mb));
  }
  if (!(saa.value() > 0.0)) fail(ErrorKind::DegenerateOvershoot, "capped overshoot has zero variance");
  IndependenceResult out;
  out.correlation = sab.value() / std::sqrt(saa.value() * sbb.value());
  out.standard_error = 1.0 / std::sqrt(static_cast<double>(n));
  out.dependent = std::abs(out.correlation) > 3.0 * out.standard_error;
  return out;
}

std::vector<FirstPassageSample> passage_samples(const ExperimentSpec& spec, double until) {
  spec.validate();
  require(until > 0.0, ErrorKind::InvalidArgument, "time horizon must be positive");
  return replicate(spec, until);
}

std::vector<double> passage_contributions(std::span<const FirstPassageSample> samples, double until) {
  std::vector<double> y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    y[i] = !s.censored && s.tau <= until ? s.weight : 0.0;
  }
  return y;
}

McEstimate estimate_passage_prob(const ExperimentSpec& spec, double until) {
  const auto samples = passage_samples(spec, until);
  const auto y = passage_contributions(samples, until);
  return summarize(y);
}

std::vector<FirstPassageSample> tilted_passage_samples(const ExperimentSpec& spec, double theta, double until) {
  spec.validate();
  require(until > 0.0, ErrorKind::InvalidArgument, "time horizon must be positive");
  if (!spec.barrier) fail(ErrorKind::UnsupportedModel, "tilting is implemented for deterministic barriers");
  if (spec.model.bm()) fail(ErrorKind::UnsupportedModel, "tilting of Brownian components");
  const LevyModel tilted = tilted_model(spec.model, theta);
  const double psi = cumulant(spec.model, theta);
  const Barrier& f = *spec.barrier;
  if (!event_exact(tilted.cp()->drift, f)) fail(ErrorKind::UnsupportedModel, "tilting needs event-exact reflection");
  std::vector<FirstPassageSample> samples(spec.replications);
  parallel_for(spec.replications, spec.workers, [&](std::size_t i) {
    Rng rng(spec.seed, i, 0);
    FirstPassageSample s = first_passage(reflect_deterministic(sample_events(tilted, until, rng), f), spec.level);
    s.weight = std::exp(-theta * s.free_value + psi * s.tau);
    samples[i] = s;
  });
  return samples;
}

McEstimate estimate_passage_prob_tilted(const ExperimentSpec& spec, double theta, double until) {
  const auto samples = tilted_passage_samples(spec, theta, until);
  const auto y = passage_contributions(samples, until);
  return summarize(y);
}

double default_tilt(const ExperimentSpec& spec) {
  if (!spec.model.is_compound_poisson_only()) fail(ErrorKind::UnsupportedModel, "tilt needs a compound Poisson model");
  const double alpha = spec.model.cp()->jump.mgf_domain();
  if (!std::isfinite(alpha)) fail(ErrorKind::UnsupportedModel, "jump law has no exponential tail");
  return alpha - 1.0 / std::max(spec.level, 1.0);
}

}  // namespace levyreflect
