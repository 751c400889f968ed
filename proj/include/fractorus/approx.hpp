// Fractional convolution, Fejer means and approximate-identity diagnostics.
#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include "fractorus/core.hpp"
#include "fractorus/io.hpp"
#include "fractorus/kernels.hpp"
#include "fractorus/spectral.hpp"

namespace fractorus {

struct ApproxReport {
  int N = 0;
  double lp_error = 0.0;
  double sup_error = 0.0;
  double mass_outside_delta = 0.0;
  double delta = 0.0;
};

namespace detail {

/// g(u) at the dilated grid offsets u = sign * d / M, d in [0, M)^n.
template <class G>
std::vector<cplx> offset_table(const GridSpec& grid, G&& g) {
  const int n = grid.dim();
  const int M = grid.samples();
  const int sgn = grid.order().sign();
  std::vector<cplx> table(grid.size());
  std::vector<int> d(n);
  std::vector<double> u(n);
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    grid.unflatten(flat, d);
    for (int a = 0; a < n; ++a) u[a] = sgn * static_cast<double>(d[a]) / M;
    table[flat] = g(std::span<const double>(u));
  }
  return table;
}

/// h^n sum_j w[j] table[(i - j) mod M] for one output index i.
inline cplx cyclic_at(const GridSpec& grid, const std::vector<cplx>& w,
                      const std::vector<cplx>& table, std::size_t i) {
  const int n = grid.dim();
  const int M = grid.samples();
  std::vector<int> ii(n), jj(n, 0), d(n);
  std::vector<std::size_t> stride(n);
  grid.unflatten(i, ii);
  std::size_t off = 0, st = 1;
  for (int a = n - 1; a >= 0; --a) {
    stride[a] = st;
    st *= M;
    d[a] = ii[a];
    off += static_cast<std::size_t>(ii[a]) * stride[a];
  }
  cplx acc(0.0);
  for (std::size_t jf = 0; jf < w.size(); ++jf) {
    acc += w[jf] * table[off];
    // Advance j like an odometer; d = (i - j) mod M follows along. After M
    // steps on one axis d is back where it started, so carries need no reset.
    for (int a = n - 1; a >= 0; --a) {
      if (d[a] == 0) {
        d[a] = M - 1;
        off += static_cast<std::size_t>(M - 1) * stride[a];
      } else {
        --d[a];
        off -= stride[a];
      }
      if (++jj[a] < M) break;
      jj[a] = 0;
    }
  }
  return acc;
}

}  // namespace detail

/// (f *_alpha g)(x) = |csc|^n e_{-alpha}(x) int e_alpha(y) f(y) g((x - y) csc) dy
/// by the rectangle rule, g a 1-periodic classical kernel. O(M^{2n}).
template <class G>
  requires std::invocable<G&, std::span<const double>>
PeriodicSignal frac_convolve(const PeriodicSignal& f, G&& g) {
  const auto& grid = f.grid();
  const auto table = detail::offset_table(grid, g);
  const auto w = dechirp(f);
  const double scale = std::pow(grid.order().abs_csc(), grid.dim()) * grid.cell_volume();
  PeriodicSignal out(grid);
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = scale * std::conj(chirp(grid.point(i), grid.order())) *
             detail::cyclic_at(grid, w, table, i);
  });
  return out;
}

inline PeriodicSignal frac_convolve(const PeriodicSignal& f, const KernelSpec& spec) {
  return frac_convolve(f, [&](std::span<const double> u) { return spec.classical(u); });
}

/// The convolution at a single grid index.
template <class G>
cplx frac_convolve_at(const PeriodicSignal& f, G&& g, std::size_t index) {
  const auto& grid = f.grid();
  const auto table = detail::offset_table(grid, g);
  const double scale = std::pow(grid.order().abs_csc(), grid.dim()) * grid.cell_volume();
  return scale * std::conj(chirp(grid.point(index), grid.order())) *
         detail::cyclic_at(grid, dechirp(f), table, index);
}

inline double fejer_weight(std::span<const int> m, int N) {
  double w = 1.0;
  for (int v : m) w *= 1.0 - std::abs(v) / (N + 1.0);
  return w;
}

/// sum_{|m_j|<=N} prod(1 - |m_j|/(N+1)) c(m) K_{-alpha}(m, x)
inline cplx fejer_mean_spectral(const FracCoefficients& coeffs, int N, std::span<const double> x) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "Fejer degree must be >= 0");
  if (N > coeffs.radius()) {
    throw Error(ErrorCode::RadiusExceeded, "Fejer degree exceeds the coefficient radius");
  }
  if (static_cast<int>(x.size()) != coeffs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match coefficients");
  }
  const FracOrder neg = coeffs.order().negated();
  cplx acc(0.0);
  coeffs.for_each([&](std::span<const int> m, cplx c) {
    for (int v : m) {
      if (std::abs(v) > N) return;
    }
    acc += fejer_weight(m, N) * c * kernel_K(m, x, neg);
  });
  return acc;
}

inline cplx fejer_mean_spectral(const FracCoefficients& coeffs, int N,
                                std::initializer_list<double> x) {
  return fejer_mean_spectral(coeffs, N, std::span<const double>(x.begin(), x.size()));
}

/// Fejer-weighted coefficients cropped to radius N.
inline FracCoefficients fejer_weighted(const FracCoefficients& coeffs, int N) {
  if (N > coeffs.radius()) {
    throw Error(ErrorCode::RadiusExceeded, "Fejer degree exceeds the coefficient radius");
  }
  FracCoefficients out = coeffs.resized(N);
  std::vector<int> m(out.dim());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.multi_index(k, m);
    out.data()[k] *= fejer_weight(m, N);
  }
  return out;
}

/// Fejer mean of f on its own grid. With rectangle-rule coefficients the
/// spectral form and the quadrature convolution are the same finite sum, so
/// the cheaper spectral path is used whenever analyze() accepts the radius.
inline PeriodicSignal fejer_mean_grid(const PeriodicSignal& f, int N) {
  const auto& grid = f.grid();
  if (grid.samples() >= 2 * N + 2) {
    return synthesize_grid(fejer_weighted(analyze(f, N), N), grid);
  }
  return frac_convolve(f, KernelSpec::fejer(grid.order(), grid.dim(), N));
}

/// Quadrature mass of F_N^{n,alpha} over grid points with |x| >= delta.
inline double fejer_mass_outside(const GridSpec& grid, int N, double delta) {
  std::vector<double> axis(grid.samples());
  for (int j = 0; j < grid.samples(); ++j) axis[j] = fejer1_closed(N, grid.coord(j), grid.order());
  double mass = 0.0;
  std::vector<int> idx(grid.dim());
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    grid.unflatten(flat, idx);
    double r2 = 0.0, v = 1.0;
    for (int a : idx) {
      const double x = grid.coord(a);
      r2 += x * x;
      v *= axis[a];
    }
    if (r2 >= delta * delta) mass += v;
  }
  return mass * grid.cell_volume();
}

/// Error of the Fejer means f *_alpha F_N against f for each N.
inline std::vector<ApproxReport> approx_identity_scan(const PeriodicSignal& f,
                                                      std::span<const int> N_list, double p,
                                                      double delta) {
  const auto& grid = f.grid();
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be in [1, inf]");
  if (!(delta > 0.0 && delta < 0.5 * grid.period())) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, period/2)");
  }
  std::vector<ApproxReport> out;
  for (int N : N_list) {
    const PeriodicSignal mean = fejer_mean_grid(f, N);
    double sup = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double e = std::abs(mean[k] - f[k]);
      sup = std::max(sup, e);
      if (!std::isinf(p)) acc += std::pow(e, p);
    }
    ApproxReport r;
    r.N = N;
    r.sup_error = sup;
    r.lp_error = std::isinf(p) ? sup : std::pow(acc * grid.cell_volume(), 1.0 / p);
    r.mass_outside_delta = fejer_mass_outside(grid, N, delta);
    r.delta = delta;
    out.push_back(r);
  }
  return out;
}

/// max over N = 0..N_max of |f *_alpha F_N|, pointwise (real-valued samples).
inline PeriodicSignal maximal_fejer(const PeriodicSignal& f, int N_max) {
  if (N_max < 1) throw Error(ErrorCode::InvalidArgument, "N_max must be >= 1");
  const auto& grid = f.grid();
  PeriodicSignal out(grid);
  const bool spectral = grid.samples() >= 2 * N_max + 2;
  const FracCoefficients coeffs =
      spectral ? analyze(f, N_max) : FracCoefficients(grid.order(), grid.dim(), 0);
  for (int N = 0; N <= N_max; ++N) {
    const PeriodicSignal mean =
        spectral ? synthesize_grid(fejer_weighted(coeffs, N), grid)
                 : frac_convolve(f, KernelSpec::fejer(grid.order(), grid.dim(), N));
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = std::max(out[k].real(), std::abs(mean[k]));
    }
  }
  return out;
}

struct JumpRow {
  int N;
  cplx mean;
  double deviation;
};

/// |(f *_alpha F_N)(x0) - (f(x0+) + f(x0-))/2| for each N; x0 is the grid
/// point with index `index`.
inline std::vector<JumpRow> jump_convergence(const PeriodicSignal& f, std::size_t index,
                                             cplx f_plus, cplx f_minus,
                                             std::span<const int> N_list) {
  const auto& grid = f.grid();
  if (grid.dim() != 1) {
    throw Error(ErrorCode::DimensionUnsupported, "jump convergence is one-dimensional");
  }
  if (index >= f.size()) throw Error(ErrorCode::InvalidArgument, "jump index outside the grid");
  const cplx mid = 0.5 * (f_plus + f_minus);
  std::vector<JumpRow> rows;
  for (int N : N_list) {
    const auto spec = KernelSpec::fejer(grid.order(), 1, N);
    const cplx v =
        frac_convolve_at(f, [&](std::span<const double> u) { return spec.classical(u); }, index);
    rows.push_back({N, v, std::abs(v - mid)});
  }
  return rows;
}

/// CSV: N, lp_error, sup_error, mass_outside_delta.
inline void write_reports_csv(std::ostream& os, std::span<const ApproxReport> reports) {
  os << "N,lp_error,sup_error,mass_outside_delta\n";
  for (const auto& r : reports) {
    os << r.N << ',' << io::format_double(r.lp_error) << ',' << io::format_double(r.sup_error)
       << ',' << io::format_double(r.mass_outside_delta) << '\n';
  }
}

}  // namespace fractorus
