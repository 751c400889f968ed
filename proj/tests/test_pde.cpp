#include <gtest/gtest.h>

#include <sstream>

#include "fractorus/pde.hpp"
#include "fractorus/signals.hpp"

using namespace fractorus;

TEST(Evolve, SingleModeFactors) {
  const FracOrder o(pi / 6);  // csc = 2
  FracCoefficients c(o, 1, 3);
  c.at({2}) = 1.0;
  // 4 pi^2 * 4 * 4 * k t with k = 0.1, t = 0.05
  EXPECT_NEAR(std::abs(heat_evolve(c, 0.1, 0.05).at({2}) - std::exp(-16 * pi * pi * 0.02)), 0.0, 1e-15);
  // 2 pi * 2 * 2 * t
  EXPECT_NEAR(std::abs(dirichlet_evolve(c, 0.05).at({2}) - std::exp(-8 * pi * 0.05)), 0.0, 1e-15);
  EXPECT_EQ(heat_evolve(c, 0.1, 0.0).at({2}), cplx(1.0));
}

TEST(Evolve, NegativeTimeThrows) {
  FracCoefficients c(FracOrder(1.0), 1, 1);
  try {
    dirichlet_evolve(c, -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeTime);
  }
  EXPECT_THROW(heat_evolve(c, 1.0, -0.1), Error);
  EXPECT_THROW(Evolution::heat(0.0), Error);
}

TEST(Field, TimeZeroIsInitialData) {
  const GridSpec g(1, 64, FracOrder(pi / 3));
  const auto f = signals::gaussian_periodized(g, g.period() / 2);
  const auto c = analyze(f, 31);
  const auto field = solve_field(c, g, {0.0, 0.5}, Evolution::heat(0.01));
  const auto init = synthesize_grid(c, g);
  const auto lv = field.level(0);
  for (int j = 0; j < 64; ++j) EXPECT_EQ(lv[j], init[j]);
  EXPECT_THROW(solve_field(c, g, {0.2, 0.1}, Evolution::dirichlet()), Error);
  EXPECT_THROW(solve_field(c, g, {}, Evolution::dirichlet()), Error);
}

TEST(Residual, SmallForSingleMode) {
  for (const Evolution& ev : {Evolution::heat(0.01), Evolution::dirichlet()}) {
    const GridSpec g(2, 48, FracOrder(-pi / 3));
    const int m0[2] = {1, -1};
    const auto c = analyze(signals::kernel_mode(g, m0), 3);
    const double dt = 1e-3;
    const double r = pde_residual(solve_field(c, g, {0.1, 0.1 + dt, 0.1 + 2 * dt}, ev));
    EXPECT_LE(r, 2e-3);
    EXPECT_GT(r, 0.0);
  }
}

TEST(Residual, WrongEquationIsLarge) {
  // Heat data checked as a Dirichlet field.
  const GridSpec g(1, 128, FracOrder(pi / 3));
  const int m0[1] = {2};
  const auto c = analyze(signals::kernel_mode(g, m0), 4);
  Field f = solve_field(c, g, {0.1, 0.101, 0.102}, Evolution::heat(0.01));
  f.evolution = Evolution::dirichlet();
  EXPECT_GT(pde_residual(f), 0.5);
}

TEST(Residual, NeedsThreeUniformLevels) {
  const GridSpec g(1, 16, FracOrder(1.0));
  const auto c = analyze(signals::constant(g), 3);
  try {
    pde_residual(solve_field(c, g, {0.0, 0.1}, Evolution::dirichlet()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientTimeLevels);
  }
  EXPECT_THROW(pde_residual(solve_field(c, g, {0.0, 0.1, 0.3}, Evolution::dirichlet())), Error);
}

TEST(Crosscheck, SpectralMatchesKernelConvolution) {
  const GridSpec g(1, 128, FracOrder(2.0));
  const auto f = signals::gaussian_periodized(g, g.period() / 3);
  const auto c = analyze(f, 63);
  EXPECT_LE(convolution_crosscheck(f, c, Evolution::heat(0.05), 0.1), 1e-8);
  EXPECT_LE(convolution_crosscheck(f, c, Evolution::dirichlet(), 0.1), 1e-8);
}

TEST(FieldCsv, ColumnsForTwoDimensions) {
  const GridSpec g(2, 4, FracOrder(1.0));
  const auto c = analyze(signals::constant(g), 1);
  const auto field = solve_field(c, g, {0.0}, Evolution::dirichlet());
  std::ostringstream os;
  write_field_level_csv(os, field, 0);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "x1,x2,re,im");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 17);
}
