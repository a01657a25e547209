#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "levyreflect/asymptotics.hpp"
#include "levyreflect/error.hpp"

using namespace levyreflect;

namespace {

const TailSpec kExp1 = TailSpec::exponential(1.0);

// alpha = 1, beta = 0, gamma = 1, h(x) = 1 / log x, cutoff e: l(x) = log x.
TailSpec log_tail() {
  TailSpec t;
  t.alpha = 1.0;
  t.h = [](double x) { return 1.0 / std::log(x); };
  t.cutoff = std::exp(1.0);
  return t;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

// Closed form for lambda = 1, Exp(1), f(t) = t: I(u) = e^{-(1-c)u} - e^{-u}.
double linear_exact(double u, double c) { return -std::expm1(-(std::exp(-(1 - c) * u) - std::exp(-u))); }

}  // namespace

TEST(Integrate, EmptyIntervalAndPolynomial) {
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, {}, {1.0, 5.0, 20.0}).value,
              -std::expm1(-50.0), 1e-12);
}

TEST(TailBarF, Examples) {
  EXPECT_NEAR(tail_bar_F(kExp1, 5.0), 6.737946999085467e-3, 1e-17);
  EXPECT_EQ(tail_bar_F(kExp1, 0.0), 1.0);
  EXPECT_NEAR(tail_bar_F(log_tail(), std::exp(2.0)), 2.0 * std::exp(-std::exp(2.0)), 1e-12);
  TailSpec poly;
  poly.beta = 2.0;
  EXPECT_NEAR(tail_bar_F(poly, 10.0), 1e-2 * std::exp(-10.0), 1e-18);
}

TEST(TailBarF, BelowCutoff) {
  EXPECT_EQ(kind_of([] { tail_bar_F(log_tail(), 2.0); }), ErrorKind::BelowCutoff);
}

TEST(SlowlyVarying, TrivialRepresentation) {
  TailSpec t;
  for (double x : {1.0, 10.0, 1e6}) EXPECT_EQ(slowly_varying_l(t, x), 1.0);
}

TEST(SlowlyVarying, LogExample) {
  const auto t = log_tail();
  EXPECT_NEAR(slowly_varying_l(t, std::exp(3.0)), 3.0, 1e-6);
  EXPECT_NEAR(slowly_varying_l(t, 1e6), std::log(1e6), 1e-6 * std::log(1e6));
}

TEST(SlowlyVarying, RatioTendsToOne) {
  // l(2x) / l(x) = 1 + log 2 / log x: slow (logarithmic) convergence.
  const auto t = log_tail();
  double previous = std::numeric_limits<double>::infinity();
  for (double x : {1e2, 1e4, 1e6, 1e12}) {
    const double ratio = slowly_varying_l(t, 2 * x) / slowly_varying_l(t, x);
    EXPECT_NEAR(ratio, 1.0 + std::log(2.0) / std::log(x), 1e-7);
    EXPECT_LT(ratio, previous);
    previous = ratio;
  }
}

TEST(SlowlyVarying, GammaFactor) {
  TailSpec t;
  t.gamma = [](double x) { return 2.0 + 1.0 / x; };
  t.gamma_limit = 2.0;
  EXPECT_NEAR(slowly_varying_l(t, 4.0), 2.25, 1e-15);
}

TEST(ExactUnderline, LinearClosedForm) {
  EXPECT_NEAR(exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), 10.0, 0.5), 6.670201852778807e-3, 1e-15);
  EXPECT_NEAR(exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), 20.0, 0.5), 4.539683814121904e-5, 1e-17);
  for (double c : {0.2, 0.5, 0.8})
    for (double u : {5.0, 30.0, 90.0}) {
      const double want = linear_exact(u, c);
      EXPECT_NEAR(exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), u, c), want, 1e-8 * want);
    }
}

TEST(ExactUnderline, SquareBarrier) {
  // 1 - exp(-int_0^sqrt5 e^{x^2 - 10} dx), value from an independent high-precision quadrature.
  EXPECT_NEAR(exact_underline_prob(1.0, kExp1, Barrier::power(2.0), 10.0, 0.5), 1.7417529771314452e-3, 1e-12);
}

TEST(ExactUnderline, GammaJumps) {
  // Gamma(2, 1) jumps, f(t) = t: int_0^5 (11 - x) e^{-(10 - x)} dx.
  EXPECT_NEAR(exact_underline_prob(1.0, TailSpec::erlang(2, 1.0), Barrier::linear(1.0), 10.0, 0.5),
              4.555077234179407e-2, 1e-12);
}

TEST(ExactUnderline, VanishingRange) {
  double previous = 1.0;
  for (double c : {1e-1, 1e-3, 1e-6, 1e-9}) {
    const double p = exact_underline_prob(3.0, kExp1, Barrier::power(2.0), 10.0, c);
    EXPECT_LT(p, previous);
    previous = p;
  }
  EXPECT_LT(previous, 1e-7);
}

TEST(ExactUnderline, LogSpaceAtLargeLevels) {
  const double lp = log_exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), 2000.0, 0.5);
  EXPECT_NEAR(lp, -1000.0, 1e-9);
  EXPECT_EQ(exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), 2000.0, 0.5), 0.0);
}

TEST(ExactUnderline, BelowCutoffForRepresentedTail) {
  EXPECT_EQ(kind_of([] { exact_underline_prob(1.0, log_tail(), Barrier::linear(1.0), 4.0, 0.5); }),
            ErrorKind::BelowCutoff);
}

TEST(LowerBoundAsym, Examples) {
  EXPECT_NEAR(lower_bound_asym(1.0, kExp1, Barrier::linear(1.0), 10.0, 0.5), std::exp(-5.0), 1e-17);
  EXPECT_NEAR(lower_bound_asym(1.0, kExp1, Barrier::power(2.0), 10.0, 0.5), std::exp(-5.0) / (2 * std::sqrt(5.0)),
              1e-17);
  EXPECT_EQ(kind_of([] { lower_bound_asym(1.0, kExp1, Barrier::floor_square(), 10.0, 0.5); }),
            ErrorKind::NotDifferentiable);
}

TEST(LowerBoundAsym, ScaledValueIsConstant) {
  const auto f = Barrier::linear(2.0);
  for (double u : {10.0, 40.0, 160.0}) {
    const double scaled = lower_bound_asym(3.0, TailSpec::exponential(1.5), f, u, 0.4) * std::exp(1.5 * 0.6 * u);
    EXPECT_NEAR(scaled, 3.0 / (1.5 * 2.0), 1e-12);
  }
}

TEST(LowerBoundAsym, RatioToExactTendsToOne) {
  const double want[] = {0.9899457288227619, 0.9999319025099377, 1.0};
  int i = 0;
  for (double u : {10.0, 20.0, 40.0}) {
    const double r = exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), u, 0.5) /
                     lower_bound_asym(1.0, kExp1, Barrier::linear(1.0), u, 0.5);
    EXPECT_NEAR(r, want[i++], 1e-8);
  }
}

TEST(IjRatio, LinearClosedForm) {
  // I / J = 1 - exp(-alpha c u) for f(t) = t.
  double previous = 0.0;
  for (double u : {10.0, 20.0, 40.0}) {
    const auto r = ij_ratio(kExp1, Barrier::linear(1.0), u, 0.5);
    EXPECT_FALSE(r.degenerate);
    EXPECT_NEAR(r.ratio, -std::expm1(-0.5 * u), 1e-8);
    EXPECT_GT(r.ratio, previous - 1e-8);
    previous = r.ratio;
  }
}

TEST(IjRatio, SquareBarrier) {
  const auto r = ij_ratio(kExp1, Barrier::power(2.0), 40.0, 0.5);
  EXPECT_NEAR(r.ratio, 1.0271635769461138, 1e-7);
  EXPECT_LT(std::abs(r.ratio - 1.0), 0.1);
}

TEST(IjRatio, Degenerate) {
  const auto r = ij_ratio(kExp1, Barrier::linear(1.0, 10.0), 10.0, 0.5);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.ratio, 0.0);
}

TEST(CramerBound, Examples) {
  const auto m = LevyModel::compound_poisson(1.0, JumpDistribution::exponential(2.0), -1.0);
  EXPECT_NEAR(log_cramer_upper_bound(m, Barrier::power(2.0), 100.0, 0.5), -(50.0 - std::sqrt(50.0)), 1e-8);
  EXPECT_EQ(kind_of([&] { cramer_upper_bound(m, Barrier::power(2.0), 2.0, 0.5); }), ErrorKind::NonpositiveGap);
  const auto up = LevyModel::compound_poisson(3.0, JumpDistribution::exponential(1.0), -1.0);
  EXPECT_EQ(kind_of([&] { cramer_upper_bound(up, Barrier::power(2.0), 100.0, 0.5); }), ErrorKind::NoRoot);
}

TEST(CramerBound, DominatesExactUnderline) {
  const auto m = LevyModel::compound_poisson(1.0, JumpDistribution::exponential(2.0), -1.0);
  const auto tail = TailSpec::exponential(2.0);
  const auto f = Barrier::power(2.0);
  for (double u = 20.0; u <= 100.0; u += 10.0) {
    for (double c : {0.2, 0.5, 0.8}) {
      const double gap = u - c * u - f.inverse(c * u);
      if (gap <= 0.0) continue;
      EXPECT_LE(log_exact_underline_prob(1.0, tail, f, u, c), log_cramer_upper_bound(m, f, u, c));
    }
  }
}

TEST(NormalCdf, Values) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(40.0), 1.0, 1e-10);
  EXPECT_NEAR(std_normal_cdf(-40.0), 0.0, 1e-10);
  EXPECT_NEAR(std_normal_cdf(1.959963985), 0.9750000000268816, 1e-9);
  EXPECT_NEAR(std_normal_cdf(-1.0), 0.15865525393145707, 1e-15);
}

TEST(NormalApprox, Examples) {
  EXPECT_EQ(normal_approx_passage(400, 200, 2, 6), 0.5);
  const double sd = std::sqrt(400 * 6 / 8.0);
  EXPECT_NEAR(normal_approx_passage(400, 200 + 1.96 * sd, 2, 6), 0.975, 1e-4);
  EXPECT_EQ(kind_of([] { normal_approx_passage(400, 200, 0, 6); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { normal_approx_passage(400, 410, 2, 6, Barrier::linear(1.0)); }),
            ErrorKind::PreconditionViolated);
  EXPECT_NEAR(normal_approx_passage(400, 200, 2, 6, Barrier::linear(1.0)), 0.5, 0.0);
}

TEST(NormalApprox, MonotoneWithLimits) {
  double previous = 0.0;
  for (double g = 100; g <= 300; g += 5) {
    const double p = normal_approx_passage(400, g, 2, 6);
    EXPECT_GE(p, previous);
    previous = p;
  }
  EXPECT_LT(normal_approx_passage(400, -1e300, 2, 6), 1e-300);
  EXPECT_EQ(normal_approx_passage(400, 1e300, 2, 6), 1.0);
}

TEST(Rates, TheoreticalAndLog) {
  EXPECT_EQ(theoretical_rate(kExp1, 0.5), -0.5);
  EXPECT_NEAR(theoretical_rate(TailSpec::exponential(2.0), 0.999999), 0.0, 1e-5);
  EXPECT_NEAR(log_rate(20, std::exp(-10.0)), -0.5, 1e-15);
  EXPECT_EQ(kind_of([] { log_rate(20, 0.0); }), ErrorKind::NonpositiveProbability);
}

TEST(Rates, LinearBarrierApproachesTheory) {
  // (1/u) log(1 - exp(-(e^{-u/2} - e^{-u}))) from the closed form.
  const double want[] = {-0.5000034049904401, -0.5000000000772933, -0.5};
  int i = 0;
  for (double u : {20.0, 40.0, 80.0}) {
    const double lp = log_exact_underline_prob(1.0, kExp1, Barrier::linear(1.0), u, 0.5);
    EXPECT_NEAR(lp / u, want[i++], 1e-9);
  }
}

TEST(Rates, SquareBarrierExactRate) {
  const double lp = log_exact_underline_prob(1.0, kExp1, Barrier::power(2.0), 60.0, 0.5);
  EXPECT_NEAR(lp, -32.37631954579241, 1e-7);
}
