// Consolidated property checks. Each measurement is a plain function so the
// command-line `verify` suite and the acceptance binary share one code path.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fractorus/fractorus.hpp"

namespace fractorus::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

// ---------------------------------------------------------------- spectral

/// max |analyze(sawtooth)(m) - closed form| over 0 < |m| <= radius, and |c(0)|.
struct SawtoothErrors {
  double max_error;
  double zero_mode;
};

inline SawtoothErrors sawtooth_errors(double alpha, int M, int radius) {
  const FracOrder order(alpha);
  const GridSpec grid(1, M, order);
  const auto c = analyze(signals::sawtooth(grid), radius);
  double err = 0.0;
  for (int m = -radius; m <= radius; ++m) {
    if (m != 0) err = std::max(err, std::abs(c.at({m}) - signals::sawtooth_coefficient(m, order)));
  }
  return {err, std::abs(c.at({0}))};
}

inline double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

/// analyze vs coefficient_single on a random band-limited signal.
inline double direct_quadrature_error(std::uint64_t seed) {
  const GridSpec grid(1, 256, FracOrder(2 * pi / 5));
  const auto bl = signals::random_bandlimited(grid, 12, seed);
  const auto c = analyze(bl.signal, 40);
  double err = 0.0;
  c.for_each([&](std::span<const int> m, cplx v) {
    err = std::max(err, std::abs(coefficient_single(bl.signal, m) - v));
  });
  return err;
}

/// analyze(synthesize(c)) - c for n = 1 and n = 2.
inline double round_trip_error(std::uint64_t seed) {
  double err = 0.0;
  for (double alpha : {pi / 6, -pi / 4, 2.0}) {
    const GridSpec g1(1, 128, FracOrder(alpha));
    const auto b1 = signals::random_bandlimited(g1, 30, seed);
    err = std::max(err, max_diff(analyze(b1.signal, 30).data(), b1.coeffs.data()));
    const GridSpec g2(2, 32, FracOrder(alpha));
    const auto b2 = signals::random_bandlimited(g2, 7, seed + 1);
    err = std::max(err, max_diff(analyze(b2.signal, 7).data(), b2.coeffs.data()));
  }
  return err;
}

inline double linearity_error(std::uint64_t seed) {
  const GridSpec grid(1, 512, FracOrder(pi / 3));
  const PeriodicSignal f = signals::sawtooth(grid);
  const PeriodicSignal g = signals::gaussian_periodized(grid, grid.period() / 5);
  const cplx a(0.7, -1.3), b(-2.1, 0.4);
  PeriodicSignal h(grid);
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = a * f[k] + b * g[k];
  const auto cf = analyze(f, 100), cg = analyze(g, 100), ch = analyze(h, 100);
  double err = 0.0;
  for (std::size_t k = 0; k < ch.size(); ++k) {
    err = std::max(err, std::abs(ch.data()[k] - (a * cf.data()[k] + b * cg.data()[k])));
  }
  (void)seed;
  return err;
}

/// translate_dechirped vs analyze of the shifted dechirped samples.
inline double translation_error(std::uint64_t seed) {
  const GridSpec grid(1, 128, FracOrder(-pi / 3));
  const auto bl = signals::random_bandlimited(grid, 20, seed);
  const int r = 37;
  const double y = r * grid.spacing();
  const auto g = dechirp(bl.signal);
  PeriodicSignal shifted(grid);
  for (int j = 0; j < grid.samples(); ++j) {
    const int src = ((j - r) % grid.samples() + grid.samples()) % grid.samples();
    shifted[j] = std::conj(chirp(grid.coord(j), grid.order())) * g[src];
  }
  const auto lhs = analyze(shifted, 30);
  const auto rhs = translate_dechirped(analyze(bl.signal, 30), std::span<const double>(&y, 1));
  return max_diff(lhs.data(), rhs.data());
}

/// reflect vs analyze of x -> f(-x).
inline double reflection_error(std::uint64_t seed) {
  const GridSpec grid(1, 128, FracOrder(pi / 5));
  const auto bl = signals::random_bandlimited(grid, 20, seed);
  const auto g = dechirp(bl.signal);
  PeriodicSignal refl(grid);
  const int M = grid.samples();
  for (int j = 0; j < M; ++j) {
    refl[j] = std::conj(chirp(grid.coord(j), grid.order())) * g[(M - j) % M];
  }
  return max_diff(analyze(refl, 30).data(), reflect(analyze(bl.signal, 30)).data());
}

/// F_alpha(conj f)(m) = conj F_{-alpha}(f)(m).
inline double conjugation_error(std::uint64_t seed) {
  const FracOrder order(pi / 3);
  const GridSpec grid(1, 128, order);
  const GridSpec neg_grid(1, 128, order.negated());
  const auto bl = signals::random_bandlimited(neg_grid, 20, seed);
  PeriodicSignal conj_f(grid);
  for (std::size_t k = 0; k < conj_f.size(); ++k) conj_f[k] = std::conj(bl.signal[k]);
  const auto lhs = analyze(conj_f, 30);
  const auto rhs = conjugate_transform(analyze(bl.signal, 30));
  return max_diff(lhs.data(), rhs.data());
}

/// F_alpha[e_{-alpha}(k, .) f](m) e^{-2 pi i (m.k) cot} e_alpha(k) = F_alpha(f)(m - k).
inline double modulation_error(std::uint64_t seed, int dim) {
  const FracOrder order(2 * pi / 3);
  const GridSpec grid(dim, dim == 1 ? 128 : 32, order);
  const int deg = dim == 1 ? 20 : 5;
  const auto bl = signals::random_bandlimited(grid, deg, seed);
  const std::vector<int> k = dim == 1 ? std::vector<int>{3} : std::vector<int>{2, -1};
  PeriodicSignal mod(grid);
  for (std::size_t j = 0; j < mod.size(); ++j) {
    // e_{-alpha}(k, x) = exp(+2 pi i (k.x) csc alpha)
    mod[j] = bl.signal[j] * std::conj(modulation(k, grid.point(j), order));
  }
  const int R = deg + 4;
  const auto lhs = analyze(mod, R);
  double err = 0.0;
  lhs.for_each([&](std::span<const int> m, cplx v) {
    double mk = 0.0;
    std::vector<int> diff(dim);
    for (int a = 0; a < dim; ++a) {
      mk += static_cast<double>(m[a]) * k[a];
      diff[a] = m[a] - k[a];
    }
    const cplx left = v * unit_phase(-mk * order.cot()) * chirp(std::span<const int>(k), order);
    err = std::max(err, std::abs(left - bl.coeffs.get(diff)));
  });
  return err;
}

/// F_alpha[e_{-alpha} d(e_alpha f)/dx](m) = (2 pi i m csc) F_alpha(f)(m), the
/// derivative evaluated pointwise from the series.
inline double derivative_error(std::uint64_t seed) {
  const FracOrder order(-2 * pi / 5);
  const GridSpec grid(1, 128, order);
  const auto bl = signals::random_bandlimited(grid, 16, seed);
  const FracOrder neg = order.negated();
  const cplx an = neg.scale();
  PeriodicSignal deriv(grid);
  for (int j = 0; j < grid.samples(); ++j) {
    const double x = grid.coord(j);
    cplx acc(0.0);
    bl.coeffs.for_each([&](std::span<const int> m, cplx c) {
      const double w = two_pi * m[0] * order.csc();
      acc += c * an * chirp(m, neg) * cplx(0.0, w) * unit_phase(m[0] * x * order.csc());
    });
    deriv[j] = std::conj(chirp(x, order)) * acc;
  }
  const auto lhs = analyze(deriv, 20);
  double err = 0.0;
  lhs.for_each([&](std::span<const int> m, cplx v) {
    const cplx rhs = cplx(0.0, two_pi * m[0] * order.csc()) * bl.coeffs.get(m);
    err = std::max(err, std::abs(v - rhs));
  });
  return err;
}

/// analyze(f1 (x) f2)(m1, m2) = analyze(f1)(m1) analyze(f2)(m2).
inline double tensor_error(std::uint64_t seed) {
  const FracOrder order(pi / 4);
  const GridSpec g1(1, 48, order), g2(2, 48, order);
  const auto a = signals::random_bandlimited(g1, 8, seed);
  const auto b = signals::random_bandlimited(g1, 8, seed + 7);
  PeriodicSignal f(g2);
  for (int i = 0; i < 48; ++i) {
    for (int j = 0; j < 48; ++j) f[i * 48 + j] = a.signal[i] * b.signal[j];
  }
  const auto c = analyze(f, 12), ca = analyze(a.signal, 12), cb = analyze(b.signal, 12);
  double err = 0.0;
  c.for_each([&](std::span<const int> m, cplx v) {
    err = std::max(err, std::abs(v - ca.at({m[0]}) * cb.at({m[1]})));
  });
  return err;
}

/// product_coefficients vs analyze(e_alpha f g), including the g = e_{-alpha}
/// reduction to the coefficients of f.
inline double product_formula_error(std::uint64_t seed) {
  const FracOrder order(pi / 3);
  const GridSpec grid(1, 64, order);
  const auto f = signals::random_bandlimited(grid, 6, seed);
  // g = e_{-alpha} Q with Q a real trigonometric polynomial of degree 2.
  PeriodicSignal g(grid), unit(grid), prod(grid);
  for (int j = 0; j < 64; ++j) {
    const double x = grid.coord(j);
    const double u = x * order.csc();
    const double Q = 1.0 + 0.5 * std::cos(two_pi * u) - 0.25 * std::sin(2 * two_pi * u);
    const cplx em = std::conj(chirp(x, order));
    g[j] = em * Q;
    unit[j] = em;
    prod[j] = chirp(x, order) * f.signal[j] * g[j];
  }
  const auto direct = analyze(prod, 12);
  double err = 0.0;
  for (int m = -12; m <= 12; ++m) {
    const int mm[1] = {m};
    err = std::max(err, std::abs(product_coefficients(f.coeffs, g, mm) - direct.at({m})));
    err = std::max(err, std::abs(product_coefficients(f.coeffs, unit, mm) - f.coeffs.get(mm)));
  }
  return err;
}

// ----------------------------------------------------------------- kernels

/// Closed vs sum form of F_N^{1,alpha} at `count` random (x, N <= 128,
/// alpha) triples. `fault` replaces |csc| by csc in the closed-form
/// prefactor, a deliberate sign bug for alpha with sin < 0.
inline double fejer_identity_error(std::uint64_t seed, int count, bool fault = false) {
  static const double alphas[] = {pi / 6, pi / 3, 2 * pi / 5, -pi / 4};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3), deg(0, 128);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  double err = 0.0;
  for (int i = 0; i < count; ++i) {
    const FracOrder order(alphas[pick(rng)]);
    const int N = deg(rng);
    const double x = unit(rng) * order.period();
    double closed = fejer1_closed(N, x, order);
    if (fault) closed *= order.csc() / order.abs_csc();
    err = std::max(err, std::abs(closed - fejer1_sum(N, x, order)));
  }
  return err;
}

/// max |quadrature mass of F_N^{n,alpha} - 1| over n = 1, 2 and the N list.
inline double fejer_mass_error() {
  double err = 0.0;
  for (double alpha : {pi / 6, pi / 3, 2 * pi / 5, -pi / 4}) {
    for (int n : {1, 2}) {
      const GridSpec grid(n, n == 1 ? 1024 : 160, FracOrder(alpha));
      for (int N : {0, 1, 2, 5, 16, 33, 64}) {
        err = std::max(err, std::abs(fejer_mass_outside(grid, N, 0.0) - 1.0));
      }
    }
  }
  return err;
}

/// max over cases of mass_outside(delta) - n / (4 delta^2 (N+1)), delta = period/8.
inline double fejer_leakage_excess() {
  double worst = -HUGE_VAL;
  for (double alpha : {pi / 6, pi / 3, 2 * pi / 5, -pi / 4}) {
    for (int n : {1, 2}) {
      const GridSpec grid(n, n == 1 ? 1024 : 160, FracOrder(alpha));
      const double delta = grid.period() / 8;
      for (int N : {0, 1, 2, 5, 16, 33, 64}) {
        const double bound = n / (4.0 * delta * delta * (N + 1));
        worst = std::max(worst, fejer_mass_outside(grid, N, delta) - bound);
      }
    }
  }
  return worst;
}

/// dirichlet_nd closed form vs its exponential sum.
inline double dirichlet_sum_error(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  const FracOrder order(-pi / 3);
  double err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x[2] = {unit(rng) * order.period(), unit(rng) * order.period()};
    const int N = i % 40;
    err = std::max(err, std::abs(dirichlet_nd(N, x, order) - dirichlet_sum_nd(N, x, order).real()));
  }
  return err;
}

/// n = 1 Poisson series vs the closed form on a grid.
inline double poisson_closed_form_error() {
  double err = 0.0;
  for (double alpha : {pi / 6, -pi / 3}) {
    const FracOrder order(alpha);
    for (double t : {0.05, 0.2, 1.0}) {
      const int T = poisson_default_truncation(t, order, 1, 1e-15);
      for (int j = 0; j < 100; ++j) {
        const double x = -0.5 + j / 100.0;
        const double series = poisson_kernel(t, std::span<const double>(&x, 1), order, T).value.real();
        err = std::max(err, std::abs(series - poisson1_closed(t, x, order)));
      }
    }
  }
  return err;
}

/// Quadrature mass of the scaled heat and Poisson kernels, minus 1.
inline double heat_poisson_mass_error() {
  double err = 0.0;
  for (double alpha : {pi / 3, -2.0}) {
    const FracOrder order(alpha);
    for (int n : {1, 2}) {
      const GridSpec grid(n, n == 1 ? 256 : 48, order);
      for (const KernelSpec& spec :
           {KernelSpec::heat(order, n, 0.02, 0.5), KernelSpec::poisson(order, n, 0.1)}) {
        double mass = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) mass += spec.scaled(grid.point(k)).real();
        err = std::max(err, std::abs(mass * grid.cell_volume() - 1.0));
      }
    }
  }
  return err;
}

// ------------------------------------------------------------------ approx

/// sup |spectral Fejer mean - quadrature convolution with F_N| on seeded
/// band-limited signals.
inline double fejer_equivalence_error(int dim, int M, std::uint64_t seed) {
  double err = 0.0;
  int trial = 0;
  for (double alpha : {pi / 6, -pi / 4}) {
    for (int N : dim == 1 ? std::vector<int>{0, 7, 40} : std::vector<int>{3, 12}) {
      const GridSpec grid(dim, M, FracOrder(alpha));
      const auto bl = signals::random_bandlimited(grid, dim == 1 ? 25 : 8, seed + trial++);
      const auto coeffs = analyze(bl.signal, N);
      const PeriodicSignal conv = frac_convolve(bl.signal, KernelSpec::fejer(grid.order(), dim, N));
      const FracCoefficients weighted = fejer_weighted(coeffs, N);
      const PeriodicSignal spec = synthesize_grid(weighted, grid);
      err = std::max(err, max_diff(spec.values(), conv.values()));
      // Pointwise evaluation of the mean at a few grid points as well.
      for (std::size_t k = 0; k < grid.size(); k += grid.size() / 7) {
        err = std::max(err, std::abs(fejer_mean_spectral(coeffs, N, grid.point(k)) - conv[k]));
      }
    }
  }
  return err;
}

/// Deviation of the sawtooth Fejer mean from the jump midpoint at x0 = s/2.
inline std::vector<JumpRow> sawtooth_jump(int M, std::span<const int> N_list) {
  const FracOrder order(pi / 6);
  const GridSpec grid(1, M, order);
  // x0 = period/2 is the grid point x_0 = -period/2; one-sided limits of g
  // are -s/2 (right) and s/2 (left), both times e_{-alpha}(x0).
  const double s = order.period();
  const cplx em = std::conj(chirp(0.5 * s, order));
  return jump_convergence(signals::sawtooth(grid), 0, -0.5 * s * em, 0.5 * s * em, N_list);
}

/// Fraction of grid points, outside the 5 samples nearest the jump, where the
/// sawtooth Fejer mean misses f by more than 0.01.
inline double sawtooth_ae_fraction(int M, int N) {
  const FracOrder order(pi / 6);
  const GridSpec grid(1, M, order);
  const PeriodicSignal mean = fejer_mean_grid(signals::sawtooth(grid), N);
  int bad = 0, counted = 0;
  for (int j = 0; j < M; ++j) {
    if (std::min(j, M - j) <= 2) continue;
    ++counted;
    if (std::abs(mean[j] - signals::sawtooth_value(grid.coord(j), order)) > 0.01) ++bad;
  }
  return static_cast<double>(bad) / counted;
}

/// Sup error of the Fejer mean at N = 512 on M = 4096 for periodized Gaussians.
inline double weierstrass_error() {
  const GridSpec grid(1, 4096, FracOrder(pi / 3));
  double err = 0.0;
  for (double frac : {0.25, 0.125}) {
    const PeriodicSignal f = signals::gaussian_periodized(grid, grid.period() * frac);
    err = std::max(err, max_diff(fejer_mean_grid(f, 512).values(), f.values()));
  }
  return err;
}

// ---------------------------------------------------------------- analysis

/// Worst relative Plancherel / Parseval error over `pairs` seeded pairs.
inline double plancherel_parseval_error(std::uint64_t seed, int pairs) {
  double err = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const int n = i % 2 == 0 ? 1 : 2;
    const GridSpec grid(n, n == 1 ? 128 : 24, FracOrder(i % 3 == 0 ? -pi / 5 : pi / 7 + i * 0.1));
    const int deg = n == 1 ? 30 : 6;
    const auto f = signals::random_bandlimited(grid, deg, seed + 2 * i);
    const auto g = signals::random_bandlimited(grid, deg, seed + 2 * i + 1);
    const auto pl = plancherel_check(f.signal, analyze(f.signal, deg));
    err = std::max(err, std::abs(pl.lhs - pl.rhs) / pl.lhs);
    const auto pv = parseval_check(f.signal, g.signal);
    const double nf = std::sqrt(plancherel_check(f.signal, f.coeffs).lhs);
    const double ng = std::sqrt(plancherel_check(g.signal, g.coeffs).lhs);
    err = std::max(err, std::abs(pv.lhs - pv.rhs) / (nf * ng));
  }
  return err;
}

/// Gaussians e^{-pi |x|^2 / sigma^2}, sigma in {s/3, s/4, s/8}, at three
/// points including 0; max |lhs - rhs| at K = 20.
inline double poisson_summation_error(double alpha = pi / 3) {
  const FracOrder order(alpha);
  const double s = order.period();
  double err = 0.0;
  for (double sigma : {s / 3, s / 4, s / 8}) {
    auto f = [sigma](std::span<const double> y) {
      return cplx(std::exp(-pi * norm2(y) / (sigma * sigma)));
    };
    auto fhat = [sigma](std::span<const double> xi) {
      return cplx(std::pow(sigma, xi.size()) * std::exp(-pi * sigma * sigma * norm2(xi)));
    };
    for (double x : {0.0, s / 5, -0.37 * s}) {
      const auto r = poisson_summation_check(f, fhat, order, std::span<const double>(&x, 1), 20);
      err = std::max(err, std::abs(r.lhs - r.rhs));
    }
  }
  return err;
}

struct SlowDecayResult {
  double domination_excess;  // max over |m| <= 64 of d_m - |coeff(m)|
  double match_error;        // max | |coeff(m)| - |csc|^{1/2} c_|m| |
  double remainder;
};

inline SlowDecayResult slow_decay_result(int J = 512, int M = 1024) {
  const FracOrder order(pi / 6);
  const GridSpec grid(1, M, order);
  std::vector<double> d(2 * J + 1);
  for (int m = -J; m <= J; ++m) d[m + J] = 1.0 / std::log(2.0 + std::abs(m));
  const SlowDecay sd = slow_decay_construct(grid, d, J);
  const auto c = analyze(sd.signal, 64);
  SlowDecayResult r{-HUGE_VAL, 0.0, sd.remainder};
  for (int m = -64; m <= 64; ++m) {
    const double mag = std::abs(c.at({m}));
    r.domination_excess = std::max(r.domination_excess, d[m + J] - mag);
    r.match_error = std::max(r.match_error, std::abs(mag - std::sqrt(order.abs_csc()) * sd.c[std::abs(m)]));
  }
  return r;
}

/// max |c(m)| (1+|m|)^4 over 32 <= |m| <= 64 for the periodized Gaussian, sigma = s/8.
inline double gaussian_decay_weighted() {
  const GridSpec grid(1, 1024, FracOrder(pi / 3));
  const auto c = analyze(signals::gaussian_periodized(grid, grid.period() / 8), 64);
  double worst = 0.0;
  for (const auto& row : decay_vs_smoothness(c, 4, 0.0)) {
    if (row.radius >= 32) worst = std::max(worst, row.weighted);
  }
  return worst;
}

/// min |c(m)| (1+|m|) over 8 <= |m| <= 64 for the sawtooth.
inline double sawtooth_decay_weighted() {
  const GridSpec grid(1, 1 << 14, FracOrder(pi / 6));
  const auto c = analyze(signals::sawtooth(grid), 64);
  double best = HUGE_VAL;
  for (const auto& row : decay_vs_smoothness(c, 1, 0.0)) {
    if (row.radius >= 8) best = std::min(best, row.weighted);
  }
  return best;
}

// --------------------------------------------------------------------- pde

/// Residual of a field around t = 0.1 with time step dt.
inline double residual_case(const Evolution& ev, bool gaussian, int M, double dt) {
  const GridSpec grid(1, M, FracOrder(pi / 3));
  FracCoefficients coeffs(grid.order(), 1, 0);
  if (gaussian) {
    coeffs = analyze(signals::gaussian_periodized(grid, grid.period() / 2), M / 2 - 1);
  } else {
    const int m0 = 1;
    coeffs = analyze(signals::kernel_mode(grid, std::span<const int>(&m0, 1)), 4);
  }
  return pde_residual(solve_field(coeffs, grid, {0.1, 0.1 + dt, 0.1 + 2 * dt}, ev));
}

struct ResidualSummary {
  double worst;       // max residual at dt = 1e-3, M = 256
  double min_ratio;   // residual ratio under 2x refinement
  double max_ratio;
};

inline ResidualSummary residual_summary() {
  ResidualSummary s{0.0, HUGE_VAL, 0.0};
  for (const Evolution& ev : {Evolution::heat(0.01), Evolution::dirichlet()}) {
    for (bool gaussian : {false, true}) {
      const double coarse = residual_case(ev, gaussian, 256, 1e-3);
      const double fine = residual_case(ev, gaussian, 512, 5e-4);
      s.worst = std::max(s.worst, coarse);
      s.min_ratio = std::min(s.min_ratio, coarse / fine);
      s.max_ratio = std::max(s.max_ratio, coarse / fine);
    }
  }
  return s;
}

/// Evolved single-mode coefficients vs the closed-form decay factors.
inline double mode_decay_error() {
  double err = 0.0;
  for (double alpha : {pi / 3, -pi / 6}) {
    const FracOrder order(alpha);
    const GridSpec grid(2, 16, order);
    const int m0[2] = {2, -1};
    const auto c = analyze(signals::kernel_mode(grid, m0), 4);
    const double m2 = 5.0;
    for (double t : {0.0, 0.01, 0.3}) {
      const double k = 0.2;
      const double heat = std::exp(-4 * pi * pi * m2 * order.csc() * order.csc() * k * t);
      const double dir = std::exp(-two_pi * std::sqrt(m2) * order.abs_csc() * t);
      err = std::max(err, std::abs(heat_evolve(c, k, t).at(m0) - heat * c.at(m0)));
      err = std::max(err, std::abs(dirichlet_evolve(c, t).at(m0) - dir * c.at(m0)));
    }
  }
  return err;
}

/// Spectral field vs f *_alpha (heat or Poisson kernel) at one time.
inline double convolution_crosscheck_error() {
  const GridSpec grid(1, 256, FracOrder(-pi / 3));
  const auto f = signals::gaussian_periodized(grid, grid.period() / 4);
  const auto c = analyze(f, 127);
  return std::max(convolution_crosscheck(f, c, Evolution::heat(0.01), 0.1),
                  convolution_crosscheck(f, c, Evolution::dirichlet(), 0.1));
}

/// |evolve(t1) evolve(t2) - evolve(t1 + t2)| for the Dirichlet semigroup, relative.
inline double semigroup_error(std::uint64_t seed) {
  const GridSpec grid(1, 64, FracOrder(pi / 4));
  const auto bl = signals::random_bandlimited(grid, 20, seed);
  const auto a = dirichlet_evolve(dirichlet_evolve(bl.coeffs, 0.013), 0.021);
  const auto b = dirichlet_evolve(bl.coeffs, 0.034);
  double err = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    err = std::max(err, std::abs(a.data()[k] - b.data()[k]) / std::abs(bl.coeffs.data()[k]));
  }
  return err;
}

// ------------------------------------------------------------------- suite

struct CheckResult {
  std::string id;
  std::string anchor;
  bool pass;
  double measured;
  double tolerance;
  std::string relation;  // "<=" or ">="
  double seconds;
};

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> only;  // groups (id prefix before '.'); empty = all
  bool fault_csc_sign = false;
};

struct CheckDef {
  std::string id;
  std::string anchor;
  double tolerance;
  std::string relation;
  std::function<double(const Options&)> measure;
};

inline std::vector<CheckDef> all_checks() {
  using O = const Options&;
  std::vector<CheckDef> c;
  auto le = [&](std::string id, std::string anchor, double tol, std::function<double(O)> f) {
    c.push_back({std::move(id), std::move(anchor), tol, "<=", std::move(f)});
  };
  auto ge = [&](std::string id, std::string anchor, double tol, std::function<double(O)> f) {
    c.push_back({std::move(id), std::move(anchor), tol, ">=", std::move(f)});
  };

  le("core.scale_modulus", "normalization constant A", 1e-12, [](O) {
    double e = 0.0;
    for (double a : {pi / 6, pi / 3, 2.0, -pi / 4, 3.0, 7.5}) {
      const FracOrder o(a);
      e = std::max(e, std::abs(std::norm(o.scale()) - o.abs_csc()));
    }
    return e;
  });
  le("core.kernel_product", "kernel orthonormality", 1e-12, [](O opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> mi(-50, 50);
    double e = 0.0;
    for (int i = 0; i < 200; ++i) {
      const FracOrder o(u(rng) * 3.0 + (i % 2 ? 0.3 : -0.3));
      const int m[2] = {mi(rng), mi(rng)};
      const double x[2] = {u(rng), u(rng)};
      const cplx p = kernel_K(m, x, o.negated()) * kernel_K(m, x, o);
      const double target = o.abs_csc() * o.abs_csc();
      e = std::max(e, std::abs(p - target) / target);
    }
    return e;
  });
  le("spectral.sawtooth_closed_form", "sawtooth coefficients", 1e-5,
     [](O) { return sawtooth_errors(pi / 6, 1 << 16, 64).max_error; });
  le("spectral.sawtooth_zero_mode", "sawtooth coefficients", 1e-10,
     [](O) { return sawtooth_errors(pi / 6, 1 << 16, 64).zero_mode; });
  le("spectral.direct_quadrature", "fractional Fourier coefficient", 1e-12,
     [](O o) { return direct_quadrature_error(o.seed); });
  le("spectral.round_trip", "fractional Fourier inversion", 1e-10,
     [](O o) { return round_trip_error(o.seed); });
  le("spectral.linearity", "linearity", 1e-12, [](O o) { return linearity_error(o.seed); });
  le("spectral.translation", "translation rule", 1e-10,
     [](O o) { return translation_error(o.seed); });
  le("spectral.reflection", "reflection rule", 1e-10, [](O o) { return reflection_error(o.seed); });
  le("spectral.conjugation", "conjugation rule", 1e-10,
     [](O o) { return conjugation_error(o.seed); });
  le("spectral.modulation", "modulation rule", 1e-10,
     [](O o) { return modulation_error(o.seed, 1); });
  le("spectral.derivative", "derivative rule", 1e-8, [](O o) { return derivative_error(o.seed); });
  le("spectral.tensor", "tensor products", 1e-10, [](O o) { return tensor_error(o.seed); });
  le("spectral.product_formula", "product formula", 1e-8,
     [](O o) { return product_formula_error(o.seed); });
  le("fejer.identity", "Fejer kernel identity", 1e-10,
     [](O o) { return fejer_identity_error(o.seed, 1000, o.fault_csc_sign); });
  le("fejer.unit_mass", "Fejer approximate identity", 1e-12, [](O) { return fejer_mass_error(); });
  le("fejer.leakage_bound", "Fejer approximate identity", 1e-10,
     [](O) { return fejer_leakage_excess(); });
  le("kernels.dirichlet_sum", "Dirichlet kernel", 1e-10,
     [](O o) { return dirichlet_sum_error(o.seed); });
  le("kernels.poisson_closed_form", "Poisson kernel", 1e-12,
     [](O) { return poisson_closed_form_error(); });
  le("kernels.heat_poisson_mass", "heat and Poisson approximate identities", 1e-8,
     [](O) { return heat_poisson_mass_error(); });
  le("approx.fejer_equivalence_1d", "Fejer means", 1e-8,
     [](O o) { return fejer_equivalence_error(1, 2048, o.seed); });
  le("approx.fejer_equivalence_2d", "Fejer means", 1e-8,
     [](O o) { return fejer_equivalence_error(2, 128, o.seed); });
  le("approx.jump_midpoint", "Fejer means at a jump", 0.01, [](O) {
    const int N[1] = {500};
    return sawtooth_jump(1 << 16, N)[0].deviation;
  });
  le("approx.ae_convergence", "almost everywhere convergence", 0.05,
     [](O) { return sawtooth_ae_fraction(2048, 500); });
  le("approx.weierstrass", "uniform approximation", 1e-2,
     [](O) { return weierstrass_error(); });
  le("plancherel.identities", "Plancherel and Parseval", 1e-10,
     [](O o) { return plancherel_parseval_error(o.seed, 20); });
  le("poisson.gaussian_fold", "fractional Poisson summation", 1e-8,
     [](O) { return poisson_summation_error(); });
  le("poisson.gaussian_fold_negative_order", "fractional Poisson summation", 1e-8,
     [](O) { return poisson_summation_error(-2 * pi / 3); });
  le("decay.slow_decay_domination", "arbitrarily slow decay", 0.0,
     [](O) { return slow_decay_result().domination_excess; });
  le("decay.slow_decay_match", "arbitrarily slow decay", 1e-10, [](O) {
    const auto r = slow_decay_result();
    return r.match_error - r.remainder;
  });
  le("decay.gaussian_smooth", "decay of smooth functions", 1e-6,
     [](O) { return gaussian_decay_weighted(); });
  ge("decay.sawtooth_rough", "decay of smooth functions", 1e-3,
     [](O) { return sawtooth_decay_weighted(); });
  le("pde.mode_decay", "heat and Dirichlet solutions", 1e-12, [](O) { return mode_decay_error(); });
  le("pde.residual", "heat and Dirichlet equations", 1e-4,
     [](O) { return residual_summary().worst; });
  ge("pde.residual_order_low", "heat and Dirichlet equations", 3.0,
     [](O) { return residual_summary().min_ratio; });
  le("pde.residual_order_high", "heat and Dirichlet equations", 5.0,
     [](O) { return residual_summary().max_ratio; });
  le("pde.convolution_crosscheck", "heat and Poisson kernels", 1e-7,
     [](O) { return convolution_crosscheck_error(); });
  le("pde.semigroup", "Dirichlet problem", 1e-13, [](O o) { return semigroup_error(o.seed); });
  return c;
}

inline std::string group_of(const std::string& id) { return id.substr(0, id.find('.')); }

inline std::vector<CheckResult> run(const Options& opt) {
  std::vector<CheckResult> out;
  for (const auto& def : all_checks()) {
    if (!opt.only.empty() &&
        std::find(opt.only.begin(), opt.only.end(), group_of(def.id)) == opt.only.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const double v = def.measure(opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = def.relation == "<=" ? v <= def.tolerance : v >= def.tolerance;
    out.push_back({def.id, def.anchor, pass, v, def.tolerance, def.relation, secs});
  }
  return out;
}

}  // namespace fractorus::verify
