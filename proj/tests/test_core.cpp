#include <gtest/gtest.h>

#include <cstdlib>
#include <numbers>

#include "fractorus/core.hpp"

using namespace fractorus;

TEST(FracOrder, ScaleAtPiOverSixIsFrozenValue) {
  // 1 - i sqrt(3) = 2 e^{-i pi/3}, principal root sqrt(2) e^{-i pi/6}.
  const FracOrder o(pi / 6);
  const cplx expected = std::sqrt(2.0) * std::exp(cplx(0.0, -pi / 6));
  EXPECT_NEAR(std::abs(o.scale() - expected), 0.0, 1e-15);
  EXPECT_NEAR(o.period(), 0.5, 1e-16);
  EXPECT_NEAR(o.csc(), 2.0, 1e-15);
  EXPECT_NEAR(o.cot(), std::numbers::sqrt3, 1e-15);
  EXPECT_EQ(o.sign(), 1);
}

TEST(FracOrder, NegatedOrderConjugatesScale) {
  for (double a : {0.3, pi / 3, 2.0, -pi / 4, 4.0, 7.1}) {
    const FracOrder o(a);
    EXPECT_NEAR(std::abs(o.negated().scale() - std::conj(o.scale())), 0.0, 1e-14) << a;
    EXPECT_NEAR(std::norm(o.scale()), o.abs_csc(), 1e-12 * o.abs_csc()) << a;
    EXPECT_GE(o.scale().real(), 0.0);
  }
}

TEST(FracOrder, NegativeSineFlipsSign) {
  const FracOrder o(-pi / 4);
  EXPECT_EQ(o.sign(), -1);
  EXPECT_NEAR(o.period(), std::sqrt(0.5), 1e-15);
}

TEST(FracOrder, DegenerateOrdersThrow) {
  for (double a : {0.0, pi, -pi, 2 * pi}) {
    try {
      FracOrder o(a);
      FAIL() << "no throw for " << a;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DegenerateOrder);
      EXPECT_STREQ(e.what(), "degenerate fractional order");
    }
  }
}

TEST(Chirp, MatchesDirectExponential) {
  const FracOrder o(0.9);
  const double x[2] = {0.13, -0.4};
  const cplx direct = std::exp(cplx(0.0, pi * (0.13 * 0.13 + 0.16) * std::cos(0.9) / std::sin(0.9)));
  EXPECT_NEAR(std::abs(chirp(x, o) - direct), 0.0, 1e-14);
  EXPECT_EQ(chirp(0.0, o), cplx(1.0));
}

TEST(Kernel, MatchesDefinition) {
  const FracOrder o(2.2);
  const int m[2] = {3, -7};
  const double x[2] = {0.21, -0.05};
  const double cot = std::cos(2.2) / std::sin(2.2), csc = 1.0 / std::sin(2.2);
  const cplx A = std::sqrt(cplx(1.0, -cot));
  const double x2 = 0.21 * 0.21 + 0.05 * 0.05, m2 = 9 + 49, mx = 3 * 0.21 + 7 * 0.05;
  const cplx direct = A * A * std::exp(cplx(0.0, pi * x2 * cot)) *
                      std::exp(cplx(0.0, -2 * pi * mx * csc)) * std::exp(cplx(0.0, pi * m2 * cot));
  EXPECT_NEAR(std::abs(kernel_K(m, x, o) - direct), 0.0, 1e-11);
}

TEST(Kernel, ProductWithNegatedOrderIsCscSquared) {
  const FracOrder o(pi / 3);
  const int m[1] = {5};
  const double x[1] = {0.17};
  EXPECT_NEAR(std::abs(kernel_K(m, x, o) * kernel_K(m, x, o.negated()) - o.abs_csc()), 0.0, 1e-13);
}

TEST(GridSpec, CoordinatesAndIndexing) {
  const GridSpec g(3, 5, FracOrder(pi / 6));
  EXPECT_EQ(g.size(), 125u);
  EXPECT_DOUBLE_EQ(g.coord(0), -0.25);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.1);
  EXPECT_NEAR(g.cell_volume(), 1e-3, 1e-18);
  int idx[3];
  for (std::size_t k = 0; k < g.size(); ++k) {
    g.unflatten(k, idx);
    EXPECT_EQ(g.flatten(idx), k);
  }
  const auto p = g.point(g.flatten(std::array<int, 3>{1, 2, 4}));
  EXPECT_NEAR(p[0], -0.15, 1e-15);
  EXPECT_NEAR(p[2], 0.15, 1e-15);
}

TEST(GridSpec, RejectsBadShape) {
  EXPECT_THROW(GridSpec(0, 8, FracOrder(1.0)), Error);
  EXPECT_THROW(GridSpec(1, 0, FracOrder(1.0)), Error);
}

TEST(PeriodicSignal, SizeMismatchThrows) {
  const GridSpec g(1, 8, FracOrder(1.0));
  EXPECT_THROW(PeriodicSignal(g, std::vector<cplx>(7)), Error);
}

TEST(Threads, EnvironmentCapsWorkers) {
  setenv("FRACTORUS_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1u);
  unsetenv("FRACTORUS_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Threads, ParallelForVisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}
