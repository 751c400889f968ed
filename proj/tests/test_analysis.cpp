#include <gtest/gtest.h>

#include <sstream>

#include "fractorus/analysis.hpp"
#include "fractorus/signals.hpp"

using namespace fractorus;

namespace {

// Brute force over touch sets: every index in S takes a_j, every other index
// continues the line through its two right neighbours. Among the admissible
// results (convex, non-increasing, >= a) the one that is least when compared
// from the right end is the expected hull.
std::vector<double> hull_oracle(const std::vector<double>& a) {
  const int J = static_cast<int>(a.size()) - 1;
  std::vector<double> best;
  for (unsigned mask = 0; mask < (1u << J); ++mask) {
    std::vector<double> c(J + 2);
    c[J] = c[J + 1] = a[J];
    for (int j = J - 1; j >= 0; --j) c[j] = (mask >> j) & 1u ? a[j] : 2 * c[j + 1] - c[j + 2];
    bool ok = true;
    for (int j = 0; j <= J && ok; ++j) {
      ok = c[j] >= a[j] - 1e-12 && c[j] >= c[j + 1] - 1e-12;
      if (j + 2 <= J + 1) ok = ok && c[j] + c[j + 2] - 2 * c[j + 1] >= -1e-12;
    }
    if (!ok) continue;
    c.pop_back();
    bool less = best.empty();
    for (int j = J; j >= 0 && !best.empty(); --j) {
      if (std::abs(c[j] - best[j]) > 1e-12) {
        less = c[j] < best[j];
        break;
      }
    }
    if (less) best = c;
  }
  return best;
}

}  // namespace

TEST(Plancherel, BandLimitedSignals) {
  for (int n : {1, 2}) {
    const GridSpec g(n, n == 1 ? 64 : 20, FracOrder(n == 1 ? 1.3 : -0.5));
    const auto f = signals::random_bandlimited(g, n == 1 ? 15 : 5, 21);
    const auto p = plancherel_check(f.signal, analyze(f.signal, n == 1 ? 15 : 5));
    EXPECT_NEAR(p.lhs, p.rhs, 1e-11 * p.lhs);
    const auto h = signals::random_bandlimited(g, n == 1 ? 15 : 5, 22);
    const auto q = parseval_check(f.signal, h.signal);
    EXPECT_NEAR(std::abs(q.lhs - q.rhs), 0.0, 1e-11 * std::sqrt(p.lhs));
  }
}

TEST(Plancherel, GridMismatchThrows) {
  const auto a = signals::constant(GridSpec(1, 16, FracOrder(1.0)));
  const auto b = signals::constant(GridSpec(1, 18, FracOrder(1.0)));
  try {
    parseval_check(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(PoissonSummation, GaussianAtOrigin) {
  const FracOrder o(pi / 3);
  const double s = o.period(), sigma = s / 4;
  auto f = [&](std::span<const double> y) { return cplx(std::exp(-pi * norm2(y) / (sigma * sigma))); };
  auto fhat = [&](std::span<const double> xi) {
    return cplx(std::pow(sigma, xi.size()) * std::exp(-pi * sigma * sigma * norm2(xi)));
  };
  for (int n : {1, 2}) {
    const std::vector<double> x(n, 0.0);
    const auto r = poisson_summation_check(f, fhat, o, x, 12);
    EXPECT_NEAR(std::abs(r.lhs - r.rhs), 0.0, 1e-10);
    // Corollary at the origin: the fold is the plain lattice sum of f.
    double lattice = 0.0;
    for (int k = -12; k <= 12; ++k) lattice += std::exp(-pi * k * k * s * s / (sigma * sigma));
    EXPECT_NEAR(r.rhs.real(), std::pow(lattice, n), 1e-12);
  }
}

TEST(Decay, ShellsAndWeights) {
  FracCoefficients c(FracOrder(1.0), 2, 3);
  c.at({0, 0}) = 1.0;
  c.at({2, -1}) = 0.5;
  c.at({-3, 3}) = cplx(0.0, 0.25);
  const auto shells = riemann_lebesgue_profile(c);
  ASSERT_EQ(shells.size(), 4u);
  EXPECT_DOUBLE_EQ(shells[0].max_abs, 1.0);
  EXPECT_DOUBLE_EQ(shells[1].max_abs, 0.0);
  EXPECT_DOUBLE_EQ(shells[2].max_abs, 0.5);
  const auto rows = decay_vs_smoothness(c, 1, 0.5, 2.0);
  EXPECT_NEAR(rows[3].weighted, 0.25 * std::pow(4.0, 1.5), 1e-14);
  EXPECT_NEAR(rows[3].bound, decay_bound_constant(c.order(), 2, 1, 0.5) * 2.0 / std::pow(3.0, 1.5), 1e-14);
  EXPECT_TRUE(std::isnan(rows[0].bound));
  EXPECT_THROW(decay_vs_smoothness(c, 1, 1.0), Error);
}

TEST(Decay, LipschitzOfLinearRamp) {
  // Samples of a linear ramp with a jump; with gamma close to 1 the
  // seminorm is driven by the jump over one cell.
  const GridSpec g(1, 16, FracOrder(pi / 2));
  PeriodicSignal f(g);
  for (int j = 0; j < 16; ++j) f[j] = j;
  const double h = g.spacing();
  EXPECT_NEAR(lipschitz_seminorm(f, 0.5), 15.0 / std::sqrt(h), 1e-12);
}

TEST(Convex, HandExample) {
  const std::vector<double> a = {5, 1, 2, 0.5};
  const auto c = convex_minorant_dominating(a, 3);
  const double expected[] = {5, 3.5, 2, 0.5};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(c[j], expected[j], 1e-15);
  EXPECT_EQ(c[10], 0.5);
}

TEST(Convex, AlreadyConvexIsUnchanged) {
  std::vector<double> a;
  for (int j = 0; j <= 20; ++j) a.push_back(1.0 / (1.0 + j));
  a[20] = a[19];  // flat end so the horizontal extension stays convex
  const auto c = convex_minorant_dominating(a, 20);
  for (int j = 0; j <= 20; ++j) EXPECT_NEAR(c[j], a[j], 1e-15);
}

TEST(Convex, MatchesBruteForceHull) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int J = 4 + trial % 9;
    std::vector<double> a(J + 1);
    for (int j = 0; j <= J; ++j) a[j] = 1.0 / (1.0 + j) + 0.3 * u(rng);
    a[0] = std::max(a[0], 2.0);
    const auto c = convex_minorant_dominating(a, J);
    const auto ref = hull_oracle(a);
    ASSERT_EQ(ref.size(), a.size());
    for (int j = 0; j <= J; ++j) EXPECT_NEAR(c[j], ref[j], 1e-11) << trial << ' ' << j;
  }
}

TEST(Convex, RejectsBadInput) {
  const std::vector<double> growing = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  try {
    convex_minorant_dominating(growing, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDecayingInput);
  }
  EXPECT_THROW(ConvexSeq({1.0, 0.2, 0.1, 0.2}), Error);
  EXPECT_THROW(ConvexSeq({1.0, 0.9, 0.1}), Error);
}

TEST(SlowDecay, CoefficientsDominateTarget) {
  const FracOrder o(pi / 6);
  const GridSpec g(1, 256, o);
  const int J = 64;
  std::vector<double> d(2 * J + 1);
  for (int m = -J; m <= J; ++m) d[m + J] = 1.0 / std::log(2.0 + std::abs(m));
  const auto sd = slow_decay_construct(g, d, J);
  const auto c = analyze(sd.signal, 40);
  for (int m = -40; m <= 40; ++m) {
    const double mag = std::abs(c.at({m}));
    EXPECT_GE(mag, d[m + J]);
    EXPECT_NEAR(mag, std::sqrt(o.abs_csc()) * sd.c[std::abs(m)], 1e-10 + sd.remainder);
  }
}

TEST(DecayCsv, Header) {
  std::ostringstream os;
  const DecayRow rows[1] = {{1, 0.5, 1.0, 2.0}};
  write_decay_csv(os, rows);
  EXPECT_EQ(os.str(), "shell_radius,max_abs_coeff,weighted_value,paper_bound\n1,0.5,1,2\n");
}
