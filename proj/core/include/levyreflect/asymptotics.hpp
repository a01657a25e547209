#pragma once

#include <functional>
#include <vector>

#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"

namespace levyreflect {

// Adaptive Gauss-Kronrod settings.
struct Quadrature {
  double rel_tol = 1e-8;
  unsigned max_depth = 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integral over [a, b], first split at `splits` (points outside (a, b) are
/// ignored). An empty interval integrates to 0.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const Quadrature& quadrature = {}, std::vector<double> splits = {});

/// l(x) = gamma(x) exp(int_a^x h(v)/v dv), x >= a.
double slowly_varying_l(const TailSpec& tail, double x, const Quadrature& quadrature = {});

/// log of l(x) x^(-beta) exp(-alpha x).
double log_tail_representation(const TailSpec& tail, double x, const Quadrature& quadrature = {});

/// F̄(x): the exact survival when the tail carries one, otherwise the
/// representation (x >= cutoff required).
double tail_bar_F(const TailSpec& tail, double x, const Quadrature& quadrature = {});
double log_tail_bar_F(const TailSpec& tail, double x, const Quadrature& quadrature = {});

/// log of int_0^{f^{-1}(c u)} F̄(u - f(x)) dx, evaluated with the integrand
/// scaled by its maximum (attained at the upper end); -inf when the range is
/// empty.
double log_underline_integral(const TailSpec& tail, const Barrier& barrier, double level, double c,
                              const Quadrature& quadrature = {});

/// 1 - exp(-lambda int_0^{f^{-1}(c u)} F̄(u - f(x)) dx).
double exact_underline_prob(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                            double c, const Quadrature& quadrature = {});
double log_exact_underline_prob(double intensity, const TailSpec& tail, const Barrier& barrier,
                                double level, double c, const Quadrature& quadrature = {});

/// lambda exp(-alpha (1-c) u) l((1-c) u) ((1-c) u)^(-beta) / (alpha f'(f^{-1}(c u))).
double lower_bound_asym(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                        double c, const Quadrature& quadrature = {});
double log_lower_bound_asym(double intensity, const TailSpec& tail, const Barrier& barrier, double level,
                            double c, const Quadrature& quadrature = {});

struct IjRatio {
  double ratio = 0.0;
  bool degenerate = false;  // c u <= f(0): empty integral
};

/*
 * I(u) / J(u) with
 *   I(u) = int_{f(0)}^{c u} g(u, z) dz,   J(u) = g(u, c u) / alpha,
 *   g(u, z) = l(u - z) (u - z)^(-beta) exp(alpha z) / f'(f^{-1}(z)).
 * The integral is taken in x = f^{-1}(z) and scaled by g(u, c u), so it
 * never overflows.
 */
IjRatio ij_ratio(const TailSpec& tail, const Barrier& barrier, double level, double c,
                 const Quadrature& quadrature = {});

/// exp(-gamma_L (u - c u - f^{-1}(c u))).
double cramer_upper_bound(const LevyModel& model, const Barrier& barrier, double level, double c);
double log_cramer_upper_bound(const LevyModel& model, const Barrier& barrier, double level, double c);

double std_normal_cdf(double x) noexcept;

/// Phi((g - u/m) / sqrt(u omega^2 / m^3)).
double normal_approx_passage(double level, double g, double mean, double variance);
/// Deterministic-barrier variant: requires g <= f^{-1}(u).
double normal_approx_passage(double level, double g, double mean, double variance, const Barrier& barrier);

/// (1/u) log p.
double log_rate(double level, double probability);
/// -alpha (1 - c).
double theoretical_rate(const TailSpec& tail, double c);

}  // namespace levyreflect
