#include "levyreflect/levy_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "levyreflect/error.hpp"

namespace levyreflect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TailSpec TailSpec::exponential(double alpha) {
  require(alpha > 0.0, ErrorKind::InvalidArgument, "tail decay rate must be positive");
  TailSpec tail;
  tail.alpha = alpha;
  tail.beta = 0.0;
  tail.cutoff = std::numeric_limits<double>::min();
  tail.exact = [alpha](double x) { return x <= 0.0 ? 1.0 : std::exp(-alpha * x); };
  return tail;
}

TailSpec TailSpec::erlang(int shape, double alpha) {
  require(shape >= 1, ErrorKind::InvalidArgument, "gamma shape must be a positive integer");
  require(alpha > 0.0, ErrorKind::InvalidArgument, "tail decay rate must be positive");
  if (shape == 1) return exponential(alpha);
  TailSpec tail;
  tail.alpha = alpha;
  tail.beta = 1.0 - shape;
  tail.gamma = [shape, alpha](double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < shape; ++j) {
      term *= alpha * x / j;
      sum += term;
    }
    return sum / std::pow(x, shape - 1);
  };
  tail.gamma_limit = std::pow(alpha, shape - 1) / std::tgamma(shape);
  tail.cutoff = std::numeric_limits<double>::min();
  tail.exact = [shape, alpha](double x) {
    if (x <= 0.0) return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < shape; ++j) {
      term *= alpha * x / j;
      sum += term;
    }
    return std::exp(-alpha * x) * sum;
  };
  return tail;
}

JumpDistribution JumpDistribution::exponential(double rate) {
  require(rate > 0.0, ErrorKind::InvalidArgument, "exponential jump rate must be positive");
  JumpDistribution d;
  d.family_ = JumpFamily::Exponential;
  d.rate_ = rate;
  d.tail_ = TailSpec::exponential(rate);
  return d;
}

JumpDistribution JumpDistribution::gamma(int shape, double rate) {
  require(shape >= 1, ErrorKind::InvalidArgument, "gamma shape must be a positive integer");
  require(rate > 0.0, ErrorKind::InvalidArgument, "gamma jump rate must be positive");
  JumpDistribution d;
  d.family_ = JumpFamily::Gamma;
  d.rate_ = rate;
  d.shape_ = shape;
  d.tail_ = TailSpec::erlang(shape, rate);
  return d;
}

JumpDistribution JumpDistribution::unit(double size) {
  require(size > 0.0, ErrorKind::InvalidArgument, "jump size must be positive");
  JumpDistribution d;
  d.family_ = JumpFamily::Unit;
  d.size_ = size;
  return d;
}

JumpDistribution JumpDistribution::custom(CustomJump spec) {
  require(static_cast<bool>(spec.sampler), ErrorKind::InvalidArgument, "custom jump needs a sampler");
  require(spec.mean > 0.0, ErrorKind::InvalidArgument, "custom jump mean must be positive");
  require(spec.second_moment >= spec.mean * spec.mean, ErrorKind::InvalidArgument,
          "custom jump second moment below squared mean");
  JumpDistribution d;
  d.family_ = JumpFamily::Custom;
  d.tail_ = spec.tail;
  if (spec.tail) d.rate_ = spec.tail->alpha;
  d.custom_ = std::move(spec);
  return d;
}

double JumpDistribution::sample(Rng& rng) const {
  switch (family_) {
    case JumpFamily::Exponential:
      return rng.exponential(rate_);
    case JumpFamily::Gamma: {
      double sum = 0.0;
      for (int i = 0; i < shape_; ++i) sum += rng.exponential(rate_);
      return sum;
    }
    case JumpFamily::Unit:
      return size_;
    case JumpFamily::Custom:
      return custom_->sampler(rng);
  }
  return 0.0;
}

double JumpDistribution::mean() const {
  switch (family_) {
    case JumpFamily::Exponential: return 1.0 / rate_;
    case JumpFamily::Gamma: return shape_ / rate_;
    case JumpFamily::Unit: return size_;
    case JumpFamily::Custom: return custom_->mean;
  }
  return 0.0;
}

double JumpDistribution::second_moment() const {
  switch (family_) {
    case JumpFamily::Exponential: return 2.0 / (rate_ * rate_);
    case JumpFamily::Gamma: return shape_ * (shape_ + 1.0) / (rate_ * rate_);
    case JumpFamily::Unit: return size_ * size_;
    case JumpFamily::Custom:
      if (!std::isfinite(custom_->second_moment)) {
        fail(ErrorKind::InfiniteMoment, "custom jump law declares an infinite second moment");
      }
      return custom_->second_moment;
  }
  return 0.0;
}

double JumpDistribution::survival(double x) const {
  if (family_ == JumpFamily::Unit) return x < size_ ? 1.0 : 0.0;
  if (x <= 0.0) return 1.0;
  const TailSpec& tail = *tail_;
  if (tail.has_exact()) return tail.exact(x);
  fail(ErrorKind::UnsupportedModel, "custom jump law has no exact survival function");
}

double JumpDistribution::mgf_domain() const {
  switch (family_) {
    case JumpFamily::Exponential:
    case JumpFamily::Gamma:
      return rate_;
    case JumpFamily::Unit:
      return kInf;
    case JumpFamily::Custom:
      return custom_->mgf_domain;
  }
  return 0.0;
}

double JumpDistribution::mgf(double theta) const {
  if (theta >= mgf_domain()) {
    fail(ErrorKind::DomainError, "moment generating function diverges at theta >= alpha");
  }
  switch (family_) {
    case JumpFamily::Exponential:
      return rate_ / (rate_ - theta);
    case JumpFamily::Gamma:
      return std::pow(rate_ / (rate_ - theta), shape_);
    case JumpFamily::Unit:
      return std::exp(theta * size_);
    case JumpFamily::Custom:
      if (!custom_->mgf) fail(ErrorKind::UnsupportedModel, "custom jump law has no MGF");
      return custom_->mgf(theta);
  }
  return 0.0;
}

JumpDistribution JumpDistribution::tilted(double theta) const {
  if (theta >= mgf_domain()) fail(ErrorKind::DomainError, "tilt outside the MGF domain");
  switch (family_) {
    case JumpFamily::Exponential:
      return exponential(rate_ - theta);
    case JumpFamily::Gamma:
      return gamma(shape_, rate_ - theta);
    case JumpFamily::Unit:
      return *this;
    case JumpFamily::Custom:
      break;
  }
  fail(ErrorKind::UnsupportedModel, "exponential tilting of custom jump laws");
}

LevyModel::LevyModel(std::optional<CompoundPoissonPart> cp, std::optional<BrownianPart> bm)
    : cp_(std::move(cp)), bm_(bm) {
  require(cp_.has_value() || bm_.has_value(), ErrorKind::InvalidArgument, "empty Levy model");
  if (cp_) require(cp_->intensity >= 0.0, ErrorKind::InvalidArgument, "negative jump intensity");
  if (bm_) require(bm_->volatility >= 0.0, ErrorKind::InvalidArgument, "negative volatility");
}

LevyModel LevyModel::compound_poisson(double intensity, JumpDistribution jump, double drift) {
  return LevyModel(CompoundPoissonPart{intensity, std::move(jump), drift}, std::nullopt);
}

LevyModel LevyModel::brownian(double drift, double volatility) {
  return LevyModel(std::nullopt, BrownianPart{drift, volatility});
}

LevyModel LevyModel::sum(CompoundPoissonPart cp, BrownianPart bm) {
  return LevyModel(std::move(cp), bm);
}

double LevyModel::total_drift() const noexcept {
  return (cp_ ? cp_->drift : 0.0) + (bm_ ? bm_->drift : 0.0);
}

Moments moments(const LevyModel& model) {
  Moments out;
  if (const auto& cp = model.cp()) {
    out.mean += cp->intensity * cp->jump.mean() + cp->drift;
    out.variance += cp->intensity * cp->jump.second_moment();
  }
  if (const auto& bm = model.bm()) {
    out.mean += bm->drift;
    out.variance += bm->volatility * bm->volatility;
  }
  return out;
}

double cumulant_domain(const LevyModel& model) {
  if (const auto& cp = model.cp(); cp && cp->intensity > 0.0) return cp->jump.mgf_domain();
  return kInf;
}

double cumulant(const LevyModel& model, double theta) {
  if (theta >= cumulant_domain(model)) {
    fail(ErrorKind::DomainError, "cumulant evaluated outside its finite domain");
  }
  double psi = 0.0;
  if (const auto& cp = model.cp()) {
    if (cp->intensity > 0.0) psi += cp->intensity * (cp->jump.mgf(theta) - 1.0);
    psi += cp->drift * theta;
  }
  if (const auto& bm = model.bm()) {
    psi += bm->drift * theta + 0.5 * bm->volatility * bm->volatility * theta * theta;
  }
  return psi;
}

double lundberg_root(const LevyModel& model) {
  if (moments(model).mean >= 0.0) fail(ErrorKind::NoRoot, "net drift is nonnegative");
  const double domain = cumulant_domain(model);
  double lo = 1e-12;
  double hi = 0.0;
  if (std::isfinite(domain)) {
    hi = domain - 1e-12;
    if (!(cumulant(model, hi) > 0.0)) fail(ErrorKind::NoRoot, "cumulant negative on its whole domain");
  } else {
    hi = 1.0;
    while (cumulant(model, hi) <= 0.0) {
      hi *= 2.0;
      if (hi > 1e6) fail(ErrorKind::NoRoot, "cumulant negative on the searched range");
    }
  }
  double psi_lo = cumulant(model, lo);
  double psi_hi = cumulant(model, hi);
  for (int iter = 0; iter < 500 && hi - lo > 1e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double psi_mid = cumulant(model, mid);
    if (psi_mid > 0.0) {
      hi = mid;
      psi_hi = psi_mid;
    } else {
      lo = mid;
      psi_lo = psi_mid;
    }
  }
  const double root = std::abs(psi_lo) <= std::abs(psi_hi) ? lo : hi;
  if (std::abs(cumulant(model, root)) > 1e-10) fail(ErrorKind::NoRoot, "bisection did not converge");
  return root;
}

LevyModel tilted_model(const LevyModel& model, double theta) {
  if (!model.is_compound_poisson_only()) {
    fail(ErrorKind::UnsupportedModel, "tilting is implemented for compound Poisson models only");
  }
  const auto& cp = *model.cp();
  if (theta >= cp.jump.mgf_domain()) fail(ErrorKind::DomainError, "tilt outside the MGF domain");
  return LevyModel::compound_poisson(cp.intensity * cp.jump.mgf(theta), cp.jump.tilted(theta), cp.drift);
}

double EventPath::value_at(double t) const {
  const auto end = std::upper_bound(times.begin(), times.end(), t);
  double jumps = 0.0;
  for (auto it = times.begin(); it != end; ++it) jumps += sizes[static_cast<std::size_t>(it - times.begin())];
  return drift * t + jumps;
}

double EventPath::left_limit(double t) const {
  const auto end = std::lower_bound(times.begin(), times.end(), t);
  double jumps = 0.0;
  for (auto it = times.begin(); it != end; ++it) jumps += sizes[static_cast<std::size_t>(it - times.begin())];
  return drift * t + jumps;
}

EventPath sample_events(const LevyModel& model, double horizon, Rng& rng) {
  if (!model.is_compound_poisson_only()) {
    fail(ErrorKind::UnsupportedModel, "event paths need a pure compound Poisson model");
  }
  require(horizon > 0.0, ErrorKind::InvalidArgument, "horizon must be positive");
  const auto& cp = *model.cp();
  EventPath path;
  path.horizon = horizon;
  path.drift = cp.drift;
  if (cp.intensity <= 0.0) return path;
  const auto expected = static_cast<std::size_t>(cp.intensity * horizon * 1.1 + 8.0);
  if (expected < (1u << 24)) {
    path.times.reserve(expected);
    path.sizes.reserve(expected);
  }
  for (double t = rng.exponential(cp.intensity); t <= horizon; t += rng.exponential(cp.intensity)) {
    path.times.push_back(t);
    path.sizes.push_back(cp.jump.sample(rng));
  }
  return path;
}

GridPath sample_grid(const LevyModel& model, double step, double horizon, Rng& rng) {
  require(step > 0.0, ErrorKind::InvalidArgument, "grid step must be positive");
  require(horizon >= step, ErrorKind::InvalidArgument, "horizon shorter than one grid step");
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));

  const double drift = model.total_drift() * step;
  const double sd = model.bm() ? model.bm()->volatility * std::sqrt(step) : 0.0;
  const CompoundPoissonPart* cp =
      model.cp() && model.cp()->intensity > 0.0 ? &*model.cp() : nullptr;

  GridPath path;
  path.step = step;
  path.values.resize(steps + 1);
  path.values[0] = 0.0;
  double next_jump = cp ? rng.exponential(cp->intensity) : std::numeric_limits<double>::infinity();
  double x = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    double increment = drift;
    if (sd > 0.0) increment += sd * rng.normal();
    const double t = step * static_cast<double>(k);
    while (next_jump <= t) {
      increment += cp->jump.sample(rng);
      next_jump += rng.exponential(cp->intensity);
    }
    x += increment;
    path.values[k] = x;
  }
  return path;
}

}  // namespace levyreflect
