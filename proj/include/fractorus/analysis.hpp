// L^2 identities, Poisson summation, coefficient decay diagnostics and the
// slow-decay construction.
#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <vector>

#include "fractorus/core.hpp"
#include "fractorus/io.hpp"
#include "fractorus/kernels.hpp"
#include "fractorus/spectral.hpp"

namespace fractorus {

template <class T>
struct SidePair {
  T lhs;
  T rhs;
};

/// lhs = grid quadrature of |f|^2, rhs = sum |c(m)|^2.
inline SidePair<double> plancherel_check(const PeriodicSignal& f, const FracCoefficients& coeffs) {
  double lhs = 0.0;
  for (cplx v : f.values()) lhs += std::norm(v);
  lhs *= f.grid().cell_volume();
  double rhs = 0.0;
  for (cplx c : coeffs.data()) rhs += std::norm(c);
  return {lhs, rhs};
}

/// lhs = quadrature of f conj(g), rhs = sum c_f(m) conj(c_g(m)). radius < 0
/// uses the largest radius the grid admits.
inline SidePair<cplx> parseval_check(const PeriodicSignal& f, const PeriodicSignal& g,
                                     int radius = -1) {
  if (!f.grid().same_as(g.grid())) {
    throw Error(ErrorCode::GridMismatch, "signals live on different grids");
  }
  if (radius < 0) radius = (f.grid().samples() - 2) / 2;
  cplx lhs(0.0);
  for (std::size_t k = 0; k < f.size(); ++k) lhs += f[k] * std::conj(g[k]);
  lhs *= f.grid().cell_volume();
  const auto cf = analyze(f, radius);
  const auto cg = analyze(g, radius);
  cplx rhs(0.0);
  for (std::size_t k = 0; k < cf.size(); ++k) rhs += cf.data()[k] * std::conj(cg.data()[k]);
  return {lhs, rhs};
}

namespace detail {

/// Visits every integer vector with |k_j| <= K.
template <class F>
void for_each_cube(int n, int K, F&& f) {
  std::vector<int> k(n, -K);
  while (true) {
    f(std::span<const int>(k));
    int a = n - 1;
    while (a >= 0 && k[a] == K) k[a--] = -K;
    if (a < 0) return;
    ++k[a];
  }
}

}  // namespace detail

/// Both sides of the fractional Poisson summation formula at x:
/// lhs = sum_{|m_j|<=K} F_alpha(e_{-alpha} f)(m) K_{-alpha}(m, x), with
///       F_alpha(e_{-alpha} f)(m) = A^n e_alpha(m) fhat(m csc);
/// rhs = e_{-alpha}(x) sum_{|k_j|<=K} f(x + k |sin|).
template <class F, class FHat>
SidePair<cplx> poisson_summation_check(F&& f, FHat&& fhat, const FracOrder& order,
                                       std::span<const double> x, int K) {
  const int n = static_cast<int>(x.size());
  const FracOrder neg = order.negated();
  const cplx an = order.scale_pow(n);
  cplx lhs(0.0);
  std::vector<double> xi(n);
  detail::for_each_cube(n, K, [&](std::span<const int> m) {
    for (int a = 0; a < n; ++a) xi[a] = m[a] * order.csc();
    const cplx coeff = an * chirp(m, order) * fhat(std::span<const double>(xi));
    lhs += coeff * kernel_K(m, x, neg);
  });
  cplx fold(0.0);
  std::vector<double> y(n);
  detail::for_each_cube(n, K, [&](std::span<const int> k) {
    for (int a = 0; a < n; ++a) y[a] = x[a] + k[a] * order.period();
    fold += f(std::span<const double>(y));
  });
  return {lhs, std::conj(chirp(x, order)) * fold};
}

struct ShellRow {
  int radius;
  double max_abs;
};

/// max |c(m)| over the shells |m|_inf = r, r = 0..N.
inline std::vector<ShellRow> riemann_lebesgue_profile(const FracCoefficients& coeffs) {
  std::vector<ShellRow> rows(coeffs.radius() + 1);
  for (int r = 0; r <= coeffs.radius(); ++r) rows[r] = {r, 0.0};
  coeffs.for_each([&](std::span<const int> m, cplx c) {
    int r = 0;
    for (int v : m) r = std::max(r, std::abs(v));
    rows[r].max_abs = std::max(rows[r].max_abs, std::abs(c));
  });
  return rows;
}

struct DecayRow {
  int radius;
  double max_abs;
  double weighted;
  double bound;
};

/// (sqrt n)^{s+g} / ((2 pi)^s |csc|^{s+g+n/2} 2^{g+1})
inline double decay_bound_constant(const FracOrder& order, int dim, int s, double gamma) {
  return std::pow(std::sqrt(static_cast<double>(dim)), s + gamma) /
         (std::pow(two_pi, s) * std::pow(order.abs_csc(), s + gamma + 0.5 * dim) *
          std::pow(2.0, gamma + 1.0));
}

/// Shell maxima weighted by (1 + r)^{s+gamma}, next to the bound
/// C * seminorm / r^{s+gamma}. seminorm is the Lipschitz seminorm of the
/// order-s derivatives of e_alpha f, supplied by the caller (NaN if unknown).
inline std::vector<DecayRow> decay_vs_smoothness(const FracCoefficients& coeffs, int s,
                                                 double gamma, double seminorm = std::nan("")) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "s must be >= 0");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in [0, 1)");
  const double C = decay_bound_constant(coeffs.order(), coeffs.dim(), s, gamma);
  std::vector<DecayRow> rows;
  for (const auto& sh : riemann_lebesgue_profile(coeffs)) {
    const double w = sh.max_abs * std::pow(1.0 + sh.radius, s + gamma);
    const double b = sh.radius == 0 ? std::nan("") : C * seminorm / std::pow(sh.radius, s + gamma);
    rows.push_back({sh.radius, sh.max_abs, w, b});
  }
  return rows;
}

/// sup over grid points x and grid offsets h (|h_j| <= period/2, h != 0) of
/// |f(x + h) - f(x)| / |h|^gamma.
inline double lipschitz_seminorm(const PeriodicSignal& f, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
  const auto& grid = f.grid();
  const int n = grid.dim();
  const int M = grid.samples();
  const double h = grid.spacing();
  std::vector<double> result(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t off) {
    std::vector<int> d(n), ix(n), iy(n);
    grid.unflatten(off, d);
    double len2 = 0.0;
    for (int a = 0; a < n; ++a) {
      if (d[a] > M / 2) d[a] -= M;
      len2 += (d[a] * h) * (d[a] * h);
    }
    if (len2 == 0.0) return;
    const double denom = std::pow(len2, 0.5 * gamma);
    double best = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      grid.unflatten(k, ix);
      for (int a = 0; a < n; ++a) iy[a] = ix[a] + d[a];
      best = std::max(best, std::abs(f[grid.flatten(iy)] - f[k]));
    }
    result[off] = best / denom;
  });
  return *std::max_element(result.begin(), result.end());
}

/// Non-negative, non-increasing, convex sequence c_0..c_J.
class ConvexSeq {
 public:
  explicit ConvexSeq(std::vector<double> values) : c_(std::move(values)) {
    if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (!(c_[j] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sequence must be non-negative");
      if (j + 1 < c_.size() && !(c_[j] >= c_[j + 1])) {
        throw Error(ErrorCode::InvalidArgument, "sequence must be non-increasing");
      }
      if (j + 2 < c_.size() && !(c_[j] + c_[j + 2] - 2.0 * c_[j + 1] >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "sequence must be convex");
      }
    }
  }

  std::size_t size() const noexcept { return c_.size(); }
  int last() const noexcept { return static_cast<int>(c_.size()) - 1; }
  /// Horizontal extension: c_j = c_J for j > J.
  double operator[](std::size_t j) const { return j < c_.size() ? c_[j] : c_.back(); }
  std::span<const double> values() const noexcept { return c_; }

 private:
  std::vector<double> c_;
};

namespace detail {

/// Smallest v >= target with v >= c1 and v + c2 - 2 c1 >= 0 as evaluated in
/// floating point, so the invariants hold with zero tolerance.
inline double convex_floor(double target, double c1, double c2) {
  double v = target;
  while (v < c1 || v + c2 - 2.0 * c1 < 0.0) v = std::nextafter(v, HUGE_VAL);
  return v;
}

}  // namespace detail

/// Convex non-increasing majorant of a_0..a_J that stays convex under
/// horizontal extension. Built from the tail: c_J = a_J, then
/// c_j = max(a_j, 2 c_{j+1} - c_{j+2}), each value the smallest the later
/// ones allow. Returns a itself when a is already convex and non-increasing.
inline ConvexSeq convex_minorant_dominating(std::span<const double> a, int J) {
  if (J < 1 || static_cast<int>(a.size()) < J + 1) {
    throw Error(ErrorCode::InvalidArgument, "need a_0..a_J with J >= 1");
  }
  for (int j = 0; j <= J; ++j) {
    if (!(a[j] > 0.0)) throw Error(ErrorCode::InvalidArgument, "sequence must be positive");
  }
  const int q = std::max(1, (J + 1) / 4);
  const double head = *std::max_element(a.begin(), a.begin() + q);
  const double tail = *std::max_element(a.begin() + (J + 1 - q), a.begin() + J + 1);
  if (tail > head) throw Error(ErrorCode::NotDecayingInput, "input sequence does not decay");

  std::vector<double> c(J + 1);
  c[J] = a[J];
  double next = c[J];  // c_{j+2}, with c_{J+1} = c_J
  for (int j = J - 1; j >= 0; --j) {
    c[j] = detail::convex_floor(std::max(a[j], 2.0 * c[j + 1] - next), c[j + 1], next);
    next = c[j + 1];
  }
  return ConvexSeq(std::move(c));
}

struct SlowDecay {
  PeriodicSignal signal;
  ConvexSeq c;
  double remainder;
};

/// f = e_{-alpha} sum_{j<=J} (j+1)(c_j + c_{j+2} - 2 c_{j+1}) F_j^{1,alpha},
/// c the convex majorant of d_m + d_{-m} (m = 0..J) with a linear ramp
/// subtracted so that c_{J+1} = 0. The ramp keeps convexity and makes the
/// truncated series exact: |F_alpha(f)(m)| = |csc|^{1/2} c_{|m|}.
/// d holds d_{-J}..d_J.
inline SlowDecay slow_decay_construct(const GridSpec& grid, std::span<const double> d, int J) {
  if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "slow decay construction is one-dimensional");
  if (J < 4) throw Error(ErrorCode::InvalidArgument, "J must be >= 4");
  if (static_cast<int>(d.size()) != 2 * J + 1) {
    throw Error(ErrorCode::InvalidArgument, "target sequence must hold d_{-J}..d_J");
  }
  std::vector<double> a(J + 1);
  for (int m = 0; m <= J; ++m) a[m] = d[J + m] + d[J - m];
  const ConvexSeq hull = convex_minorant_dominating(a, J);

  // Rebuilt from the tail with the hull's second differences, which is the
  // same as subtracting the ramp c_J j / (J+1) but keeps the invariants exact.
  std::vector<double> c(J + 1);
  c[J] = hull[J] / (J + 1.0);
  double next = 0.0;
  for (int j = J - 1; j >= 0; --j) {
    const double d2 = std::max(0.0, hull[j] + hull[j + 2] - 2.0 * hull[j + 1]);
    c[j] = detail::convex_floor(2.0 * c[j + 1] - next + d2, c[j + 1], next);
    next = c[j + 1];
  }
  ConvexSeq closed(std::move(c));

  // Second differences with c_{J+1} = c_{J+2} = 0.
  auto at = [&](int j) { return j <= J ? closed[j] : 0.0; };
  std::vector<double> weight(J + 1);
  for (int j = 0; j <= J; ++j) weight[j] = (j + 1) * (at(j) + at(j + 2) - 2.0 * at(j + 1));

  const auto& order = grid.order();
  PeriodicSignal f(grid);
  parallel_for(f.size(), [&](std::size_t k) {
    const double x = grid.coord(static_cast<int>(k));
    double acc = 0.0;
    for (int j = 0; j <= J; ++j) {
      if (weight[j] != 0.0) acc += weight[j] * fejer1_closed(j, x, order);
    }
    f[k] = std::conj(chirp(x, order)) * acc;
  });
  // The closed sequence vanishes past J, so nothing is left beyond the cut.
  return {std::move(f), std::move(closed), 0.0};
}

/// CSV: shell_radius, max_abs_coeff, weighted_value, paper_bound.
inline void write_decay_csv(std::ostream& os, std::span<const DecayRow> rows) {
  os << "shell_radius,max_abs_coeff,weighted_value,paper_bound\n";
  for (const auto& r : rows) {
    os << r.radius << ',' << io::format_double(r.max_abs) << ',' << io::format_double(r.weighted)
       << ',' << io::format_double(r.bound) << '\n';
  }
}

}  // namespace fractorus
