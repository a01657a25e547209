#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "levyreflect/barriers.hpp"
#include "levyreflect/error.hpp"
#include "levyreflect/rng.hpp"

using namespace levyreflect;

namespace {

Barrier wiggle() {
  CustomBarrier spec;
  spec.f = [](double t) { return t + 0.5 * std::sin(t); };
  spec.derivative = [](double t) { return 1.0 + 0.5 * std::cos(t); };
  spec.asymptotic_slope = 1.0;
  spec.name = "wiggle";
  return Barrier::custom(spec);
}

std::vector<Barrier> all_families() {
  return {Barrier::zero(),         Barrier::linear(2.0),          Barrier::linear(0.5, 3.0),
          Barrier::power(2.0),     Barrier::power(1.5, 0.3),      Barrier::floor_square(),
          wiggle()};
}

}  // namespace

TEST(Barrier, PowerExamples) {
  const auto f = Barrier::power(2.0);
  EXPECT_DOUBLE_EQ(f.eval(3.0), 9.0);
  EXPECT_DOUBLE_EQ(f.deriv(3.0), 6.0);
  EXPECT_DOUBLE_EQ(f.inverse(9.0), 3.0);
  EXPECT_DOUBLE_EQ(f.deriv2(3.0), 2.0);
}

TEST(Barrier, FloorSquareExamples) {
  const auto f = Barrier::floor_square();
  EXPECT_EQ(f.eval(2.7), 4.0);
  EXPECT_EQ(f.inverse(4.5), 3.0);
  EXPECT_EQ(f.inverse(4.0), 2.0);
  EXPECT_EQ(f.first_exceed(4.0), 3.0);
  EXPECT_EQ(f.eval_left(3.0), 4.0);
  EXPECT_EQ(f.eval(3.0), 9.0);
  EXPECT_EQ(f.deriv(2.5), 0.0);
  EXPECT_FALSE(f.is_smooth());
  const auto b = f.breakpoints(0.5, 4.0);
  EXPECT_EQ(b, (std::vector<double>{1.0, 2.0, 3.0, 4.0}));
}

TEST(Barrier, FloorSquareDerivativeAtInteger) {
  try {
    Barrier::floor_square().deriv(2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDifferentiable);
  }
}

TEST(Barrier, LinearExamples) {
  EXPECT_DOUBLE_EQ(Barrier::linear(2.0).inverse(10.0), 5.0);
  const auto g = Barrier::linear(0.5, 3.0);
  EXPECT_DOUBLE_EQ(g.eval(4.0), 5.0);
  EXPECT_DOUBLE_EQ(g.inverse(3.0), 0.0);
  try {
    g.inverse(2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Barrier, UnreachableLevels) {
  EXPECT_TRUE(std::isinf(Barrier::zero().inverse(1.0)));
  EXPECT_EQ(Barrier::zero().inverse(0.0), 0.0);
  EXPECT_TRUE(std::isinf(Barrier::zero().first_exceed(0.0)));
}

TEST(Barrier, CustomInverseTolerance) {
  const auto f = wiggle();
  for (double y : {0.5, 3.0, 17.0, 250.0}) {
    const double t = f.inverse(y);
    EXPECT_NEAR(f.eval(t), y, 1e-10 * (1 + y) * 2);
  }
  EXPECT_NEAR(f.deriv(1.0), 1.0 + 0.5 * std::cos(1.0), 1e-15);
}

TEST(Barrier, Monotone) {
  Rng r(3);
  for (const auto& f : all_families()) {
    for (int i = 0; i < 2000; ++i) {
      const double s = 20.0 * r.uniform();
      const double t = s + 5.0 * r.uniform();
      ASSERT_LE(f.eval(s), f.eval(t)) << f.describe() << " s=" << s << " t=" << t;
    }
  }
}

TEST(Barrier, GaloisInequalities) {
  Rng r(4);
  for (const auto& f : all_families()) {
    for (int i = 0; i < 2000; ++i) {
      const double t = 20.0 * r.uniform();
      const double y = f.eval(0.0) + 100.0 * r.uniform();
      const double ti = f.inverse(y);
      if (std::isfinite(ti)) {
        ASSERT_GE(f.eval(ti), y - 1e-9 * (1 + y)) << f.describe();
      }
      ASSERT_LE(f.inverse(f.eval(t)), t + 1e-9 * (1 + t)) << f.describe();
    }
  }
}

TEST(Barrier, MidpointConvexity) {
  Rng r(5);
  for (const auto& f : {Barrier::linear(2.0), Barrier::linear(0.5, 3.0), Barrier::power(2.0), Barrier::power(3.0, 2.0),
                        Barrier::power(1.5)}) {
    EXPECT_TRUE(f.is_convex());
    for (int i = 0; i < 2000; ++i) {
      const double s = 30.0 * r.uniform();
      const double t = 30.0 * r.uniform();
      ASSERT_LE(f.eval(0.5 * (s + t)), 0.5 * (f.eval(s) + f.eval(t)) * (1 + 1e-14) + 1e-14);
    }
  }
}

TEST(Barrier, CurvatureOverSlopeSquaredVanishes) {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto f = Barrier::power(p);
    double previous = std::numeric_limits<double>::infinity();
    for (double z : {1e2, 1e4, 1e6}) {
      const double t = f.inverse(z);
      const double ratio = f.deriv2(t) / (f.deriv(t) * f.deriv(t));
      EXPECT_GE(ratio, 0.0);
      EXPECT_LE(ratio, previous);
      previous = ratio;
    }
    EXPECT_LT(previous, 1e-2);
  }
}

TEST(Barrier, AsymptoticSlope) {
  EXPECT_EQ(Barrier::zero().asymptotic_slope(), 0.0);
  EXPECT_EQ(Barrier::linear(0.5, 2.0).asymptotic_slope(), 0.5);
  EXPECT_TRUE(std::isinf(Barrier::power(2.0).asymptotic_slope()));
  EXPECT_EQ(Barrier::power(1.0, 3.0).asymptotic_slope(), 3.0);
  EXPECT_TRUE(std::isinf(Barrier::floor_square().asymptotic_slope()));
}

TEST(Barrier, Parse) {
  EXPECT_EQ(parse_barrier("zero").family(), BarrierFamily::Zero);
  const auto l = parse_barrier("linear:2,1");
  EXPECT_EQ(l.family(), BarrierFamily::Linear);
  EXPECT_DOUBLE_EQ(l.eval(1.0), 3.0);
  EXPECT_DOUBLE_EQ(parse_barrier("linear:1").eval(4.0), 4.0);
  EXPECT_DOUBLE_EQ(parse_barrier("power:2").eval(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_barrier("power:3,0.5").eval(2.0), 4.0);
  EXPECT_EQ(parse_barrier("floorsq").family(), BarrierFamily::FloorSquare);
  for (const char* bad : {"", "line:1", "linear:", "linear:a", "power:2,1,3", "power:0.5", "linear:-1"}) {
    EXPECT_THROW(parse_barrier(bad), Error) << bad;
  }
}

TEST(Regime, Examples) {
  const auto x = LevyModel::compound_poisson(3, JumpDistribution::exponential(1), -1);
  EXPECT_EQ(regime_classify(x, Barrier::zero()), Regime::DriftDominates);
  EXPECT_EQ(regime_classify(x, Barrier::power(2.0)), Regime::BarrierDominates);
  const auto y = LevyModel::compound_poisson(1, JumpDistribution::exponential(2), -1);
  EXPECT_EQ(regime_classify(y, Barrier::linear(0.5)), Regime::BarrierDominates);
  EXPECT_EQ(regime_classify(x, Barrier::linear(2.0)), Regime::Ambiguous);
  EXPECT_EQ(regime_classify(x, Barrier::linear(1.0)), Regime::DriftDominates);
  EXPECT_EQ(to_string(Regime::Ambiguous), "Ambiguous");
}

TEST(Regime, NegativeDriftAgainstSlopeBySimulation) {
  // X_t - f(t) at t = 1e4 for CP(1, Exp(2), -1) and f(t) = t / 2 should be
  // far below zero (trend -t).
  const auto y = LevyModel::compound_poisson(1, JumpDistribution::exponential(2), -1);
  Rng r(12);
  const auto p = sample_events(y, 1e4, r);
  EXPECT_LT(p.value_at(1e4) - Barrier::linear(0.5).eval(1e4), -5000.0);
}
