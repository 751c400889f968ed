// Built-in test signals with known coefficients.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fractorus/core.hpp"
#include "fractorus/spectral.hpp"

namespace fractorus::signals {

/// Dechirped sawtooth g(x) = x on (-s/2, s/2], extended s-periodically, with
/// g(-s/2) = s/2. Returns e_{-alpha}(x) g(x).
inline cplx sawtooth_value(double x, const FracOrder& order) {
  const double s = order.period();
  double r = x - s * std::floor(x / s + 0.5);  // r in [-s/2, s/2)
  if (r == -0.5 * s) r = 0.5 * s;
  return std::conj(chirp(x, order)) * r;
}

/// Grid samples of the sawtooth. The sample sitting on the jump takes the
/// midpoint of the one-sided limits, which keeps the rectangle rule's
/// zeroth coefficient at exactly zero.
inline PeriodicSignal sawtooth(const GridSpec& grid) {
  if (grid.dim() != 1) {
    throw Error(ErrorCode::DimensionUnsupported, "the sawtooth signal is one-dimensional");
  }
  PeriodicSignal out(grid);
  for (int j = 0; j < grid.samples(); ++j) {
    out[j] = j == 0 ? cplx(0.0) : sawtooth_value(grid.coord(j), grid.order());
  }
  return out;
}

/// Exact coefficients of the sawtooth:
/// A e_alpha(m) * i (-1)^m sign(sin) sin^2 / (2 pi m), zero at m = 0.
inline cplx sawtooth_coefficient(int m, const FracOrder& order) {
  if (m == 0) return 0.0;
  const double mag = order.sign() * order.sin() * order.sin() / (two_pi * m);
  const double parity = (m % 2 == 0) ? 1.0 : -1.0;
  return order.scale() * chirp(std::span<const int>(&m, 1), order) * cplx(0.0, parity * mag);
}

/// e_{-alpha}(x) * c
inline PeriodicSignal constant(const GridSpec& grid, cplx c = 1.0) {
  const FracOrder& order = grid.order();
  return PeriodicSignal::sample(grid, [&](std::span<const double> x) {
    return std::conj(chirp(x, order)) * c;
  });
}

/// e_{-alpha}(x) sum_k exp(-pi |x + k s|^2 / sigma^2), the periodized Gaussian.
inline PeriodicSignal gaussian_periodized(const GridSpec& grid, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  const double s = grid.period();
  // exp(-pi d^2 / sigma^2) underflows for d > sigma * sqrt(745 / pi).
  const int K = static_cast<int>(std::ceil(sigma * std::sqrt(745.0 / pi) / s)) + 1;
  std::vector<double> axis(grid.samples());
  for (int j = 0; j < grid.samples(); ++j) {
    const double x = grid.coord(j);
    double acc = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double d = (x + k * s) / sigma;
      acc += std::exp(-pi * d * d);
    }
    axis[j] = acc;
  }
  PeriodicSignal out(grid);
  std::vector<int> idx(grid.dim());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    grid.unflatten(flat, idx);
    double v = 1.0;
    for (int a : idx) v *= axis[a];
    out[flat] = std::conj(chirp(grid.point(flat), grid.order())) * v;
  }
  return out;
}

/// A^n e_alpha(m) sigma^n exp(-pi sigma^2 csc^2 |m|^2), by Poisson summation.
inline cplx gaussian_periodized_coefficient(std::span<const int> m, const FracOrder& order,
                                            double sigma) {
  const int n = static_cast<int>(m.size());
  const double m2 = norm2(m);
  return order.scale_pow(n) * chirp(m, order) * std::pow(sigma, n) *
         std::exp(-pi * sigma * sigma * order.csc() * order.csc() * m2);
}

/// K_{-alpha}(m0, x): a single unit coefficient at m0.
inline PeriodicSignal kernel_mode(const GridSpec& grid, std::span<const int> m0) {
  const FracOrder neg = grid.order().negated();
  return PeriodicSignal::sample(grid,
                                [&](std::span<const double> x) { return kernel_K(m0, x, neg); });
}

struct BandLimited {
  PeriodicSignal signal;
  FracCoefficients coeffs;
};

/// Trigonometric polynomial of order alpha with per-axis degree <= degree and
/// coefficients drawn uniformly from [-1, 1] + i[-1, 1].
inline BandLimited random_bandlimited(const GridSpec& grid, int degree, std::uint64_t seed) {
  FracCoefficients coeffs(grid.order(), grid.dim(), degree);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& c : coeffs.data()) {
    const double re = dist(rng);
    c = cplx(re, dist(rng));
  }
  PeriodicSignal signal = synthesize_grid(coeffs, grid);
  return {std::move(signal), std::move(coeffs)};
}

}  // namespace fractorus::signals
