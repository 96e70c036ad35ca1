#include <cmath>

#include <gtest/gtest.h>

#include "gapcert/bessel.hpp"
#include "gapcert/radialode.hpp"
#include "support.hpp"

using namespace gapcert;
using gapcert::testing::rel_diff;

namespace {

// Twenty-term alternating series for J0 with its remainder bound.
double j0_oracle(double x, double* bound) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 20; ++k) {
    term *= -(x * x / 4.0) / (k * k);
    sum += term;
  }
  *bound = std::abs(term) * (x * x / 4.0) / 400.0;
  return sum;
}

}  // namespace

TEST(BesselSeries, ValueAtZero) {
  EXPECT_EQ(bessel::j0(0.0), 1.0);
  EXPECT_EQ(bessel::j1(0.0), 0.0);
}

TEST(BesselSeries, J0AtOne) {
  double bound = 0.0;
  const double oracle = j0_oracle(1.0, &bound);
  EXPECT_LT(bound, 1e-15);
  EXPECT_NEAR(bessel::j0(1.0), oracle, 1e-15);
  EXPECT_NEAR(bessel::j0(1.0), 0.7651976866, 1e-10);
}

TEST(BesselSeries, AgreesWithStandardLibrary) {
  auto g = gapcert::testing::rng(11);
  for (int i = 0; i < 500; ++i) {
    const double x = i < 250 ? gapcert::testing::uniform(g, 1e-8, 2.0)
                             : std::exp(-gapcert::testing::uniform(g, 0.0, 20.0));
    EXPECT_LT(rel_diff(bessel::j0(x), std::cyl_bessel_j(0.0, x)), 1e-10) << x;
    EXPECT_LT(rel_diff(bessel::y0(x), std::cyl_neumann(0.0, x)), 1e-10) << x;
    EXPECT_LT(rel_diff(bessel::y1(x), std::cyl_neumann(1.0, x)), 1e-10) << x;
    if (x > 1e-300) {
      EXPECT_LT(rel_diff(bessel::j1(x), std::cyl_bessel_j(1.0, x)), 1e-10) << x;
    }
  }
}

TEST(BesselSeries, LogarithmicSingularity) {
  double prev = 1.0;
  for (double t : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const double r = bessel::y0(std::exp(-t)) / t;
    const double gap = std::abs(r + 2.0 / M_PI);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(BesselSeries, OutOfRangeRejected) {
  EXPECT_THROW(bessel::j0(-0.1), std::domain_error);
  EXPECT_THROW(bessel::j0(2.5), std::domain_error);
  EXPECT_THROW(bessel::y0(0.0), std::domain_error);
  EXPECT_THROW(bessel::y1(3.0), std::domain_error);
}

// J0 Y0' - Y0 J0' = 2/(pi x), with J0' = -J1 and Y0' = -Y1.
TEST(BesselProperty, WronskianIdentity) {
  auto g = gapcert::testing::rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(-gapcert::testing::uniform(g, -0.69, 25.0));
    const double w = -bessel::j0(x) * bessel::y1(x) + bessel::y0(x) * bessel::j1(x);
    EXPECT_LT(rel_diff(w, 2.0 / (M_PI * x)), 1e-8) << x;
  }
}

TEST(BesselProperty, SignsOnPipelineRange) {
  for (double t = 5.0; t <= 40.0; t += 0.05) {
    for (double k : {1.0, 1.0 / std::sqrt(3.0)}) {
      const double x = k * std::exp(-t);
      EXPECT_GT(bessel::j0(x), 0.0);
      EXPECT_LT(bessel::y0(x), 0.0);
    }
  }
  for (double x = 1e-3; x <= 0.4; x += 1e-3) {
    EXPECT_GT(bessel::j0(x), 0.0);
    EXPECT_LT(bessel::y0(x), 0.0);
  }
}

TEST(Mode, PureJ0) {
  const double x = std::exp(-5.0);
  const auto m = bessel::solve_mode({5.0, bessel::j0(x), x * bessel::j1(x)}, 1.0);
  EXPECT_NEAR(m.alpha1, 1.0, 1e-8);
  EXPECT_NEAR(m.alpha2, 0.0, 1e-8);
}

TEST(Mode, AgainstIndependentSolve) {
  const double x = std::exp(-5.0);
  // d/dt J0(e^-t) = x J1(x), d/dt Y0(e^-t) = x Y1(x).
  const double a = std::cyl_bessel_j(0.0, x), b = std::cyl_neumann(0.0, x);
  const double c = x * std::cyl_bessel_j(1.0, x), d = x * std::cyl_neumann(1.0, x);
  const double det = a * d - b * c;
  const double a1 = (0.48 * d - b * 0.03) / det;
  const double a2 = (a * 0.03 - c * 0.48) / det;
  const auto m = bessel::solve_mode({5.0, 0.48, 0.03}, 1.0);
  EXPECT_NEAR(m.alpha1, a1, 1e-10);
  EXPECT_NEAR(m.alpha2, a2, 1e-10);
  EXPECT_NEAR(m.alpha1, 0.326585, 1e-4);
}

TEST(Mode, CheckpointWindowGivesSigns) {
  const auto m = bessel::solve_mode({5.0, 0.47, 0.02}, 1.0);
  EXPECT_GT(m.alpha1, 0.0);
  EXPECT_LT(m.alpha2, 0.0);
  for (double v : {0.46, 0.47, 0.48}) {
    for (double s : {0.02, 0.03, 0.04}) {
      const auto q = bessel::solve_mode({5.0, v, s}, 1.0);
      EXPECT_GT(q.alpha1, 0.0);
      EXPECT_LT(q.alpha2, 0.0);
    }
  }
}

TEST(Mode, ReproducesAnchorAndSatisfiesOde) {
  auto g = gapcert::testing::rng(13);
  for (int i = 0; i < 100; ++i) {
    const bessel::Anchor an{gapcert::testing::uniform(g, 5.0, 8.0),
                            gapcert::testing::uniform(g, -2.0, 2.0),
                            gapcert::testing::uniform(g, -1.0, 1.0)};
    const double k = i % 2 ? 1.0 : 1.0 / std::sqrt(3.0);
    const auto m = bessel::solve_mode(an, k);
    EXPECT_LT(rel_diff(m.value(an.t), an.value), 1e-8);
    EXPECT_LT(rel_diff(m.derivative(an.t), an.slope), 1e-8);
    for (double t = an.t; t < 20.0; t += 0.7) {
      const double h = 1e-3;
      const double second = (m.value(t + h) - 2.0 * m.value(t) + m.value(t - h)) / (h * h);
      const double rhs = -k * k * std::exp(-2.0 * t) * m.value(t);
      EXPECT_NEAR(second, rhs, 1e-6 * std::max(1.0, std::abs(m.value(t))));
    }
  }
}

TEST(Mode, MatchesIntegratedTrajectory) {
  for (double k : {1.0, 1.0 / std::sqrt(3.0)}) {
    const bessel::Anchor an{5.0, 0.47690, 0.030344};
    const auto m = bessel::solve_mode(an, k);
    const auto tr = integrate([k](double t) { return -k * k * std::exp(-2.0 * t); },
                              {an.t, an.value, an.slope}, 20.0, 1e-13);
    for (double t = 5.0; t <= 20.0; t += 0.01) {
      ASSERT_LT(rel_diff(tr.value(t), m.value(t)), 1e-6) << "k " << k << " t " << t;
    }
  }
}

TEST(Mode, RejectsBadInput) {
  EXPECT_THROW(bessel::solve_mode({4.9, 1.0, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(bessel::solve_mode({5.0, 1.0, 0.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(bessel::solve_mode({5.0, 1.0, 0.0}, 3.0), std::invalid_argument);
}

namespace {

bessel::BesselMode mode(double a1, double a2, double k = 1.0) {
  bessel::BesselMode m;
  m.alpha1 = a1;
  m.alpha2 = a2;
  m.k = k;
  m.anchor = {5.0, 0.0, 0.0};
  m.anchor.value = m.value(5.0);
  m.anchor.slope = m.derivative(5.0);
  return m;
}

}  // namespace

TEST(Verdict, Examples) {
  EXPECT_EQ(bessel::mode_verdict(mode(0.326585, -0.0486773)),
            bessel::ModeVerdict::PositiveGrowing);
  EXPECT_EQ(bessel::mode_verdict(mode(1.0, 0.0)), bessel::ModeVerdict::Inconclusive);
  EXPECT_EQ(bessel::mode_verdict(mode(-1.0, 0.1)), bessel::ModeVerdict::Inconclusive);
  EXPECT_STREQ(bessel::to_string(bessel::ModeVerdict::PositiveGrowing), "PositiveGrowing");
}

// Whenever the verdict is PositiveGrowing the mode stays positive and grows.
TEST(Verdict, PositiveGrowingModesArePositive) {
  auto g = gapcert::testing::rng(14);
  int growing = 0;
  for (int i = 0; i < 500; ++i) {
    const auto m = mode(gapcert::testing::uniform(g, -2.0, 2.0),
                        gapcert::testing::uniform(g, -1.0, 0.5),
                        i % 2 ? 1.0 : 1.0 / std::sqrt(3.0));
    if (bessel::mode_verdict(m) != bessel::ModeVerdict::PositiveGrowing) continue;
    ++growing;
    for (double t = 5.0; t < 200.0; t += 0.5) ASSERT_GT(m.value(t), 0.0);
    EXPECT_GT(m.value(200.0), m.value(100.0));
  }
  EXPECT_GT(growing, 50);
}
