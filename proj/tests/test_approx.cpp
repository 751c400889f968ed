#include <gtest/gtest.h>

#include "fractorus/approx.hpp"
#include "fractorus/signals.hpp"

using namespace fractorus;

namespace {

// |csc| e_{-alpha}(x_i) h sum_j e_alpha(y_j) f(y_j) g((x_i - y_j) csc), one dimension,
// written as the plain double loop.
std::vector<cplx> convolve_oracle(const PeriodicSignal& f, const KernelSpec& g) {
  const auto& grid = f.grid();
  const double cot = grid.order().cot(), csc = grid.order().csc();
  std::vector<cplx> out(grid.samples());
  for (int i = 0; i < grid.samples(); ++i) {
    const double x = grid.coord(i);
    cplx acc(0.0);
    for (int j = 0; j < grid.samples(); ++j) {
      const double y = grid.coord(j);
      const double u[1] = {(x - y) * csc};
      acc += std::exp(cplx(0.0, pi * y * y * cot)) * f[j] * g.classical(u);
    }
    out[i] = std::abs(csc) * std::exp(cplx(0.0, -pi * x * x * cot)) * grid.spacing() * acc;
  }
  return out;
}

}  // namespace

TEST(Convolve, MatchesDoubleLoop) {
  for (double a : {pi / 6, -pi / 4}) {
    const GridSpec g(1, 40, FracOrder(a));
    const auto f = signals::random_bandlimited(g, 6, 5).signal;
    for (const auto& spec : {KernelSpec::fejer(g.order(), 1, 9), KernelSpec::poisson(g.order(), 1, 0.05)}) {
      const auto ref = convolve_oracle(f, spec);
      const auto got = frac_convolve(f, spec);
      for (int i = 0; i < 40; ++i) EXPECT_NEAR(std::abs(got[i] - ref[i]), 0.0, 1e-11) << a << ' ' << i;
      const auto single = frac_convolve_at(f, [&](std::span<const double> u) { return spec.classical(u); }, 13);
      EXPECT_NEAR(std::abs(single - ref[13]), 0.0, 1e-11);
    }
  }
}

TEST(Convolve, TwoDimensionalAgreesWithSpectralMean) {
  const GridSpec g(2, 12, FracOrder(2.3));
  const auto f = signals::random_bandlimited(g, 3, 11).signal;
  const auto conv = frac_convolve(f, KernelSpec::fejer(g.order(), 2, 4));
  const auto spec = synthesize_grid(fejer_weighted(analyze(f, 4), 4), g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(std::abs(conv[k] - spec[k]), 0.0, 1e-11);
}

TEST(FejerMean, GridPathsAgree) {
  const GridSpec g(1, 96, FracOrder(1.2));
  const auto f = signals::sawtooth(g);
  const auto coeffs = analyze(f, 30);
  const auto grid_mean = fejer_mean_grid(f, 30);
  for (int j = 0; j < 96; j += 7) {
    EXPECT_NEAR(std::abs(fejer_mean_spectral(coeffs, 30, g.point(j)) - grid_mean[j]), 0.0, 1e-12);
  }
  // Too fine for analyze on this grid: falls back to the convolution.
  EXPECT_NO_THROW(fejer_mean_grid(f, 60));
}

TEST(FejerMean, RadiusChecks) {
  const GridSpec g(1, 32, FracOrder(1.0));
  const auto c = analyze(signals::constant(g), 5);
  try {
    fejer_mean_spectral(c, 6, {0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadiusExceeded);
  }
  EXPECT_THROW(fejer_mean_spectral(c, 3, {0.0, 0.0}), Error);
  EXPECT_THROW(fejer_weighted(c, 8), Error);
}

TEST(FejerMean, ReproducesConstant) {
  // Only m = 0 survives and its weight is 1.
  const GridSpec g(1, 64, FracOrder(-0.6));
  const auto f = signals::constant(g, cplx(2.0, -1.0));
  const auto mean = fejer_mean_grid(f, 20);
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(std::abs(mean[j] - f[j]), 0.0, 1e-13);
}

TEST(Mass, UnitAndBoundedLeakage) {
  for (int n : {1, 2}) {
    const GridSpec g(n, n == 1 ? 512 : 96, FracOrder(pi / 3));
    const double delta = g.period() / 8;
    for (int N : {0, 3, 31}) {
      EXPECT_NEAR(fejer_mass_outside(g, N, 0.0), 1.0, 1e-12);
      EXPECT_LE(fejer_mass_outside(g, N, delta), n / (4 * delta * delta * (N + 1)) + 1e-10);
    }
  }
}

TEST(Scan, ErrorsShrinkForSmoothInput) {
  const GridSpec g(1, 256, FracOrder(pi / 3));
  const auto f = signals::gaussian_periodized(g, g.period() / 4);
  const int Ns[] = {4, 16, 64};
  const auto rows = approx_identity_scan(f, Ns, 2.0, g.period() / 8);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].sup_error, rows[1].sup_error);
  EXPECT_GT(rows[1].sup_error, rows[2].sup_error);
  EXPECT_GT(rows[0].mass_outside_delta, rows[2].mass_outside_delta);
  EXPECT_LE(rows[2].lp_error, rows[2].sup_error * std::sqrt(g.period()) + 1e-15);
  EXPECT_THROW(approx_identity_scan(f, Ns, 0.5, 0.01), Error);
  EXPECT_THROW(approx_identity_scan(f, Ns, 2.0, g.period()), Error);
}

TEST(Maximal, DominatesEveryMean) {
  const GridSpec g(1, 64, FracOrder(0.8));
  const auto f = signals::sawtooth(g);
  const auto H = maximal_fejer(f, 12);
  for (int N : {0, 5, 12}) {
    const auto mean = fejer_mean_grid(f, N);
    for (int j = 0; j < 64; ++j) EXPECT_GE(H[j].real(), std::abs(mean[j]) - 1e-15);
  }
  for (int j = 0; j < 64; ++j) EXPECT_EQ(H[j].imag(), 0.0);
}

TEST(Jump, SawtoothMidpoint) {
  const FracOrder o(pi / 6);
  const GridSpec g(1, 2048, o);
  const double s = o.period();
  const cplx em = std::conj(chirp(0.5 * s, o));
  const int Ns[] = {10, 100, 500};
  const auto rows = jump_convergence(signals::sawtooth(g), 0, -0.5 * s * em, 0.5 * s * em, Ns);
  for (const auto& r : rows) EXPECT_LE(r.deviation, 0.01);
  // Off the jump the one-sided limits disagree with the mean.
  const auto off = jump_convergence(signals::sawtooth(g), 0, 0.5 * s * em, 0.5 * s * em, Ns);
  EXPECT_NEAR(off[2].deviation, 0.25, 1e-9);
  EXPECT_THROW(jump_convergence(signals::constant(GridSpec(2, 8, o)), 0, 0.0, 0.0, Ns), Error);
}
