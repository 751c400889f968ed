// Spectral solutions of the fractional heat equation and Dirichlet problem,
// with a finite-difference residual on the chirped field.
#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <vector>

#include "fractorus/approx.hpp"
#include "fractorus/core.hpp"
#include "fractorus/io.hpp"
#include "fractorus/kernels.hpp"
#include "fractorus/spectral.hpp"

namespace fractorus {

/// c(m) exp(-4 pi^2 |m|^2 csc^2 k t)
inline FracCoefficients heat_evolve(const FracCoefficients& coeffs, double k, double t) {
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "time must be >= 0");
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "diffusivity must be > 0");
  const double rate = 4.0 * pi * pi * coeffs.order().csc() * coeffs.order().csc() * k * t;
  FracCoefficients out = coeffs;
  std::vector<int> m(coeffs.dim());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out.multi_index(j, m);
    out.data()[j] *= std::exp(-rate * norm2(m));
  }
  return out;
}

/// c(m) exp(-2 pi |m| |csc| t), |m| Euclidean.
inline FracCoefficients dirichlet_evolve(const FracCoefficients& coeffs, double t) {
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "time must be >= 0");
  const double rate = two_pi * coeffs.order().abs_csc() * t;
  FracCoefficients out = coeffs;
  std::vector<int> m(coeffs.dim());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out.multi_index(j, m);
    out.data()[j] *= std::exp(-rate * std::sqrt(norm2(m)));
  }
  return out;
}

/// Which problem a field solves, with its parameters.
struct Evolution {
  enum class Kind { Heat, Dirichlet };

  Kind kind;
  double k = 0.0;

  static Evolution heat(double k) {
    if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "diffusivity must be > 0");
    return {Kind::Heat, k};
  }
  static Evolution dirichlet() { return {Kind::Dirichlet, 0.0}; }

  FracCoefficients apply(const FracCoefficients& coeffs, double t) const {
    return kind == Kind::Heat ? heat_evolve(coeffs, k, t) : dirichlet_evolve(coeffs, t);
  }

  /// The classical kernel whose fractional convolution gives the solution.
  KernelSpec kernel(const FracOrder& order, int dim, double t) const {
    return kind == Kind::Heat ? KernelSpec::heat(order, dim, t, k)
                              : KernelSpec::poisson(order, dim, t);
  }
};

/// Space-time samples, values indexed [time][space].
struct Field {
  GridSpec grid;
  std::vector<double> times;
  std::vector<cplx> values;
  Evolution evolution;

  std::span<const cplx> level(std::size_t i) const {
    return std::span<const cplx>(values).subspan(i * grid.size(), grid.size());
  }
};

/// Synthesizes the evolved coefficients at every time.
inline Field solve_field(const FracCoefficients& coeffs, const GridSpec& grid,
                         std::vector<double> times, const Evolution& ev) {
  if (times.empty()) throw Error(ErrorCode::InvalidArgument, "at least one time is required");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw Error(ErrorCode::NegativeTime, "time must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "times must be strictly increasing");
    }
  }
  Field field{grid, std::move(times), {}, ev};
  field.values.resize(field.times.size() * grid.size());
  for (std::size_t i = 0; i < field.times.size(); ++i) {
    const PeriodicSignal s = synthesize_grid(ev.apply(coeffs, field.times[i]), grid);
    std::copy(s.values().begin(), s.values().end(), field.values.begin() + i * grid.size());
  }
  return field;
}

/// sup over the grid of |spectral solution - f *_alpha kernel_t| at time t > 0.
inline double convolution_crosscheck(const PeriodicSignal& f, const FracCoefficients& coeffs,
                                     const Evolution& ev, double t) {
  const auto& grid = f.grid();
  const PeriodicSignal spectral = synthesize_grid(ev.apply(coeffs, t), grid);
  const PeriodicSignal conv = frac_convolve(f, ev.kernel(grid.order(), grid.dim(), t));
  double diff = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) diff = std::max(diff, std::abs(spectral[k] - conv[k]));
  return diff;
}

/// Max over interior space-time points of |d_t G - k Lap G| (heat) or
/// |d_tt G + Lap G| (Dirichlet), G = e_alpha F, with centered differences in t
/// and the 3-point stencil per axis in x. Interior means one sample away from
/// every face, so neighbours never wrap. The result is divided by the largest
/// of sup|G|, sup|time term| and sup|space term|.
inline double pde_residual(const Field& field) {
  const auto& grid = field.grid;
  const std::size_t T = field.times.size();
  if (T < 3) throw Error(ErrorCode::InsufficientTimeLevels, "need at least 3 time levels");
  const double dt = field.times[1] - field.times[0];
  for (std::size_t i = 1; i + 1 < T; ++i) {
    const double step = field.times[i + 1] - field.times[i];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, dt)) {
      throw Error(ErrorCode::InvalidArgument, "time levels must be uniformly spaced");
    }
  }
  const int n = grid.dim();
  const int M = grid.samples();
  if (M < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 samples per axis");
  const double h2 = grid.spacing() * grid.spacing();
  const bool heat = field.evolution.kind == Evolution::Kind::Heat;
  const double k = field.evolution.k;

  std::vector<cplx> ch(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) ch[j] = chirp(grid.point(j), grid.order());
  auto G = [&](std::size_t level, std::size_t j) {
    return ch[j] * field.values[level * grid.size() + j];
  };

  std::vector<std::size_t> stride(n);
  for (int a = n - 1, st = 1; a >= 0; --a, st *= M) stride[a] = st;

  double res = 0.0, g_sup = 0.0, t_sup = 0.0, x_sup = 0.0;
  std::vector<int> idx(n);
  for (std::size_t lv = 1; lv + 1 < T; ++lv) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      grid.unflatten(j, idx);
      bool interior = true;
      for (int a : idx) interior = interior && a > 0 && a < M - 1;
      if (!interior) continue;
      const cplx g0 = G(lv, j);
      cplx lap(0.0);
      for (int a = 0; a < n; ++a) lap += (G(lv, j + stride[a]) - 2.0 * g0 + G(lv, j - stride[a])) / h2;
      cplx tterm, xterm;
      if (heat) {
        tterm = (G(lv + 1, j) - G(lv - 1, j)) / (2.0 * dt);
        xterm = k * lap;
        res = std::max(res, std::abs(tterm - xterm));
      } else {
        tterm = (G(lv + 1, j) - 2.0 * g0 + G(lv - 1, j)) / (dt * dt);
        xterm = lap;
        res = std::max(res, std::abs(tterm + xterm));
      }
      g_sup = std::max(g_sup, std::abs(g0));
      t_sup = std::max(t_sup, std::abs(tterm));
      x_sup = std::max(x_sup, std::abs(xterm));
    }
  }
  const double scale = std::max({g_sup, t_sup, x_sup});
  return scale > 0.0 ? res / scale : 0.0;
}

/// CSV for one time level: x (or x1..xn), re, im.
inline void write_field_level_csv(std::ostream& os, const Field& field, std::size_t level) {
  const int n = field.grid.dim();
  if (n == 1) {
    os << "x,";
  } else {
    for (int a = 0; a < n; ++a) os << 'x' << (a + 1) << ',';
  }
  os << "re,im\n";
  const auto vals = field.level(level);
  for (std::size_t j = 0; j < vals.size(); ++j) {
    for (double x : field.grid.point(j)) os << io::format_double(x) << ',';
    os << io::format_double(vals[j].real()) << ',' << io::format_double(vals[j].imag()) << '\n';
  }
}

}  // namespace fractorus
