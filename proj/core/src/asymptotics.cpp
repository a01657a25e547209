#include "levyreflect/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levyreflect/error.hpp"

namespace levyreflect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Split points that resolve an integrand decaying like exp(-(x_c - x) / width)
// away from its peak at the right end x_c.
std::vector<double> peak_splits(double x_c, double width) {
  std::vector<double> splits;
  if (!(width > 0.0) || !std::isfinite(width)) return splits;
  for (double k = 1.0; k < 1e6; k *= 4.0) {
    const double s = x_c - k * width;
    if (s <= 0.0) break;
    splits.push_back(s);
  }
  return splits;
}

double peak_width(const TailSpec& tail, const Barrier& barrier, double x_c) {
  if (barrier.is_smooth()) {
    const double slope = barrier.deriv(x_c);
    if (slope > 0.0) return 1.0 / (tail.alpha * slope);
  }
  return x_c / 16.0;
}

void check_c(double c) { require(c > 0.0 && c < 1.0, ErrorKind::InvalidArgument, "c must lie in (0, 1)"); }

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Quadrature& quadrature, std::vector<double> splits) {
  QuadratureResult out;
  if (!(b > a)) return out;
  std::vector<double> points{a};
  std::sort(splits.begin(), splits.end());
  for (double s : splits) {
    if (s > points.back() && s < b) points.push_back(s);
  }
  points.push_back(b);
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double error = 0.0;
    double piece_l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, points[i], points[i + 1], quadrature.max_depth, quadrature.rel_tol, &error, &piece_l1);
    out.value += value;
    out.error += error;
    l1 += piece_l1;
  }
  if (!std::isfinite(out.value) || out.error > 10.0 * quadrature.rel_tol * l1 + 1e-300) {
    fail(ErrorKind::QuadratureFailure, "adaptive subdivision did not reach the requested tolerance");
  }
  return out;
}

double slowly_varying_l(const TailSpec& tail, double x, const Quadrature& quadrature) {
  if (x < tail.cutoff) fail(ErrorKind::BelowCutoff, "slowly varying factor evaluated below its cutoff");
  double log_l = tail.gamma ? std::log(tail.gamma(x)) : 0.0;
  if (tail.h && x > tail.cutoff) {
    // int_a^x h(v)/v dv = int_{log a}^{log x} h(e^s) ds
    const auto& h = tail.h;
    log_l += integrate([&h](double s) { return h(std::exp(s)); }, std::log(tail.cutoff), std::log(x),
                       quadrature)
                 .value;
  }
  return std::exp(log_l);
}

double log_tail_representation(const TailSpec& tail, double x, const Quadrature& quadrature) {
  if (x < tail.cutoff) fail(ErrorKind::BelowCutoff, "tail representation evaluated below its cutoff");
  double log_l = 0.0;
  if (tail.gamma || tail.h) log_l = std::log(slowly_varying_l(tail, x, quadrature));
  return log_l - tail.beta * std::log(x) - tail.alpha * x;
}

double tail_bar_F(const TailSpec& tail, double x, const Quadrature& quadrature) {
  if (tail.has_exact()) return tail.exact(x);
  return std::exp(log_tail_representation(tail, x, quadrature));
}

double log_tail_bar_F(const TailSpec& tail, double x, const Quadrature& quadrature) {
  if (x >= tail.cutoff && !(tail.has_exact() && x <= 0.0)) return log_tail_representation(tail, x, quadrature);
  if (tail.has_exact()) return std::log(tail.exact(x));
  fail(ErrorKind::BelowCutoff, "tail evaluated below its cutoff");
}

double log_underline_integral(const TailSpec& tail, const Barrier& barrier, double level, double c,
                              const Quadrature& quadrature) {
  check_c(c);
  require(barrier.eval(0.0) >= 0.0, ErrorKind::InvalidArgument, "barrier must satisfy f(0) >= 0");
  const double x_c = barrier.inverse(c * level);
  if (!(x_c > 0.0)) return -kInf;
  if (!std::isfinite(x_c)) fail(ErrorKind::InvalidArgument, "barrier never reaches c u");
  if (!tail.has_exact() && level - barrier.eval(x_c) < tail.cutoff) {
    fail(ErrorKind::BelowCutoff, "u - f(x) falls below the tail cutoff on the integration range");
  }
  auto log_integrand = [&](double x) { return log_tail_bar_F(tail, level - barrier.eval(x), quadrature); };
  const double peak = log_integrand(x_c);
  std::vector<double> splits = peak_splits(x_c, peak_width(tail, barrier, x_c));
  for (double b : barrier.breakpoints(0.0, x_c)) splits.push_back(b);
  const auto inner = integrate([&](double x) { return std::exp(log_integrand(x) - peak); }, 0.0, x_c,
                               quadrature, std::move(splits));
  return peak + std::log(inner.value);
}

double log_exact_underline_prob(double intensity, const TailSpec& tail, const Barrier& barrier,
                                double level, double c, const Quadrature& quadrature) {
  require(intensity > 0.0, ErrorKind::InvalidArgument, "intensity must be positive");
  const double log_mass = std::log(intensity) + log_underline_integral(tail, barrier, level, c, quadrature);
  if (log_mass < -20.0) {
    // 1 - exp(-m) = m (1 - m/2 + ...)
    const double mass = std::exp(log_mass);
    return log_mass + std::log1p(-0.5 * mass);
  }
  return std::log(-std::expm1(-std::exp(log_mass)));
}

double exact_underline_prob(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                            double c, const Quadrature& quadrature) {
  require(intensity > 0.0, ErrorKind::InvalidArgument, "intensity must be positive");
  const double log_mass = std::log(intensity) + log_underline_integral(tail, barrier, level, c, quadrature);
  return -std::expm1(-std::exp(log_mass));
}

double log_lower_bound_asym(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                            double c, const Quadrature& quadrature) {
  check_c(c);
  require(intensity > 0.0, ErrorKind::InvalidArgument, "intensity must be positive");
  if (!barrier.is_smooth()) fail(ErrorKind::NotDifferentiable, "asymptotic needs a differentiable barrier");
  const double x_c = barrier.inverse(c * level);
  const double slope = barrier.deriv(x_c);
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    fail(ErrorKind::Overflow, "barrier slope at f^{-1}(c u) is not positive and finite");
  }
  const double remaining = (1.0 - c) * level;
  return std::log(intensity) + log_tail_representation(tail, remaining, quadrature) - std::log(tail.alpha) -
         std::log(slope);
}

double lower_bound_asym(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                        double c, const Quadrature& quadrature) {
  return std::exp(log_lower_bound_asym(intensity, tail, barrier, level, c, quadrature));
}

IjRatio ij_ratio(const TailSpec& tail, const Barrier& barrier, double level, double c,
                 const Quadrature& quadrature) {
  check_c(c);
  if (!barrier.is_smooth()) fail(ErrorKind::NotDifferentiable, "ratio needs a differentiable barrier");
  if (c * level <= barrier.eval(0.0)) return IjRatio{0.0, true};
  const double x_c = barrier.inverse(c * level);
  const double slope = barrier.deriv(x_c);
  const double remaining = level - c * level;
  if (remaining < tail.cutoff) fail(ErrorKind::BelowCutoff, "u - c u below the tail cutoff");
  const double log_peak = log_tail_representation(tail, remaining, quadrature);
  const auto inner = integrate(
      [&](double x) { return std::exp(log_tail_representation(tail, level - barrier.eval(x), quadrature) - log_peak); },
      0.0, x_c, quadrature, peak_splits(x_c, peak_width(tail, barrier, x_c)));
  const double log_ratio = std::log(tail.alpha) + std::log(slope) + std::log(inner.value);
  if (!std::isfinite(log_ratio) || log_ratio > 700.0) fail(ErrorKind::Overflow, "I(u)/J(u) not representable");
  return IjRatio{std::exp(log_ratio), false};
}

double log_cramer_upper_bound(const LevyModel& model, const Barrier& barrier, double level, double c) {
  check_c(c);
  const double root = lundberg_root(model);
  const double gap = level - c * level - barrier.inverse(c * level);
  if (!(gap > 0.0)) fail(ErrorKind::NonpositiveGap, "u - c u - f^{-1}(c u) is not positive");
  return -root * gap;
}

double cramer_upper_bound(const LevyModel& model, const Barrier& barrier, double level, double c) {
  return std::exp(log_cramer_upper_bound(model, barrier, level, c));
}

double std_normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_approx_passage(double level, double g, double mean, double variance) {
  if (!(mean > 0.0)) fail(ErrorKind::PreconditionViolated, "normal approximation needs a positive rate");
  require(variance > 0.0 && level > 0.0, ErrorKind::InvalidArgument, "variance and level must be positive");
  const double scale = std::sqrt(level * variance / (mean * mean * mean));
  return std_normal_cdf((g - level / mean) / scale);
}

double normal_approx_passage(double level, double g, double mean, double variance, const Barrier& barrier) {
  if (g > barrier.inverse(level)) fail(ErrorKind::PreconditionViolated, "g(u) exceeds f^{-1}(u)");
  return normal_approx_passage(level, g, mean, variance);
}

double log_rate(double level, double probability) {
  if (!(probability > 0.0)) fail(ErrorKind::NonpositiveProbability, "log rate of a zero probability");
  require(level > 0.0, ErrorKind::InvalidArgument, "level must be positive");
  return std::log(probability) / level;
}

double theoretical_rate(const TailSpec& tail, double c) { return -tail.alpha * (1.0 - c); }

}  // namespace levyreflect
