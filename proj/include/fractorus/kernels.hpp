// Dirichlet, fractional Fejer, heat and Poisson kernels on the fractional torus.
#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include "fractorus/core.hpp"
#include "fractorus/io.hpp"

namespace fractorus {

namespace detail {

inline constexpr double kSingularTol = 1e-8;

/// u reduced to [-1/2, 1/2]; squared Fejer and Dirichlet ratios are invariant
/// under integer shifts of u.
inline double reduce_unit(double u) { return u - std::nearbyint(u); }

/// Classical 1-d Fejer kernel at u (1-periodic).
inline double fejer_classical_1d(int N, double u) {
  const double r = reduce_unit(u);
  const double s = std::sin(pi * r);
  if (std::abs(s) < kSingularTol) return N + 1.0;
  const double q = std::sin((N + 1) * pi * r) / s;
  return q * q / (N + 1.0);
}

/// Classical 1-d Dirichlet kernel at u (1-periodic).
inline double dirichlet_classical_1d(int N, double u) {
  const double r = reduce_unit(u);
  const double s = std::sin(pi * r);
  if (std::abs(s) < kSingularTol) return 2.0 * N + 1.0;
  return std::sin((2 * N + 1) * pi * r) / s;
}

}  // namespace detail

/// Closed form (|csc|/(N+1)) (sin((N+1) pi x csc) / sin(pi x csc))^2.
inline double fejer1_closed(int N, double x, const FracOrder& order) {
  return order.abs_csc() * detail::fejer_classical_1d(N, x * order.csc());
}

/// |csc| sum_{|j|<=N} (1 - |j|/(N+1)) exp(2 pi i j x csc), full complex value.
inline cplx fejer1_sum_complex(int N, double x, const FracOrder& order) {
  const double u = x * order.csc();
  cplx acc(0.0);
  for (int j = -N; j <= N; ++j) {
    acc += (1.0 - std::abs(j) / (N + 1.0)) * unit_phase(j * u);
  }
  return order.abs_csc() * acc;
}

inline double fejer1_sum(int N, double x, const FracOrder& order) {
  return fejer1_sum_complex(N, x, order).real();
}

/// Product of 1-d fractional Fejer kernels.
inline double fejer_nd(int N, std::span<const double> x, const FracOrder& order) {
  double v = 1.0;
  for (double xi : x) v *= fejer1_closed(N, xi, order);
  return v;
}

/// prod_j sin((2N+1) pi x_j csc) / sin(pi x_j csc)
inline double dirichlet_nd(int N, std::span<const double> x, const FracOrder& order) {
  double v = 1.0;
  for (double xi : x) v *= detail::dirichlet_classical_1d(N, xi * order.csc());
  return v;
}

/// Sum form of dirichlet_nd, prod_j sum_{|m|<=N} exp(2 pi i m x_j csc).
inline cplx dirichlet_sum_nd(int N, std::span<const double> x, const FracOrder& order) {
  cplx v(1.0);
  for (double xi : x) {
    cplx acc(0.0);
    for (int m = -N; m <= N; ++m) acc += unit_phase(m * xi * order.csc());
    v *= acc;
  }
  return v;
}

/// A truncated series value with a bound on the neglected tail.
struct KernelValue {
  cplx value;
  double tail;
};

namespace detail {

/// Per-axis tail of sum_m q^{m^2}: 2 sum_{m > T} q^{m^2}.
inline double gaussian_tail_1d(double q_log, int T) {
  // q_log = log q < 0; terms fall at least geometrically past T.
  const double first = std::exp(q_log * (T + 1.0) * (T + 1.0));
  const double ratio = std::exp(q_log * (2.0 * T + 3.0));
  return 2.0 * first / (1.0 - ratio);
}

/// sum over the shells |m|_inf = r > T of 2n(2r+1)^{n-1} e^{-a r}, a > 0.
inline double shell_tail(int n, double a, int T) {
  double tail = 0.0;
  for (long r = T + 1;; ++r) {
    const double term = 2.0 * n * std::pow(2.0 * r + 1.0, n - 1) * std::exp(-a * r);
    tail += term;
    if (term < 1e-30 || term < tail * 1e-17) break;
  }
  return tail;
}

}  // namespace detail

/// Smallest truncation whose heat tail estimate is below tol (capped at 1e6).
inline int heat_default_truncation(double t, double k, const FracOrder& order, int dim,
                                   double tol = 1e-12) {
  const double q_log = -4.0 * pi * pi * order.csc() * order.csc() * k * t;
  for (int T = 1; T < 1000000; ++T) {
    const double tau = detail::gaussian_tail_1d(q_log, T);
    if (dim * tau * std::pow(1.0 + tau + 2.0 * T, dim - 1) < tol) return T;
  }
  return 1000000;
}

/// Smallest truncation whose Poisson tail estimate is below tol (capped at 1e6).
inline int poisson_default_truncation(double t, const FracOrder& order, int dim,
                                      double tol = 1e-12) {
  const double a = 2.0 * pi * order.abs_csc() * t;
  int T = 1;
  while (T < 1000000 && detail::shell_tail(dim, a, T) >= tol) T = T < 64 ? T + 1 : T * 2;
  return T;
}

/// sum_{|m_j|<=T} exp(-4 pi^2 |m|^2 csc^2 k t) exp(2 pi i m.x); separable per axis.
inline KernelValue heat_kernel(double t, double k, std::span<const double> x,
                               const FracOrder& order, int truncation) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "heat kernel needs t > 0");
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat kernel needs k > 0");
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
  const double q_log = -4.0 * pi * pi * order.csc() * order.csc() * k * t;
  cplx v(1.0);
  for (double xi : x) {
    cplx acc(1.0);
    for (int m = 1; m <= truncation; ++m) {
      acc += 2.0 * std::exp(q_log * m * m) * std::cos(two_pi * detail::reduce_unit(m * xi));
    }
    v *= acc;
  }
  const int n = static_cast<int>(x.size());
  const double tau = detail::gaussian_tail_1d(q_log, truncation);
  const double full = 1.0 + 2.0 * truncation + tau;
  return {v, n * tau * std::pow(full, n - 1)};
}

/// sum_{|m_j|<=T} exp(-2 pi |m| |csc| t) exp(2 pi i m.x), |m| Euclidean.
inline KernelValue poisson_kernel(double t, std::span<const double> x, const FracOrder& order,
                                  int truncation) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "Poisson kernel needs t > 0");
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
  const int n = static_cast<int>(x.size());
  const double a = 2.0 * pi * order.abs_csc() * t;
  const int side = 2 * truncation + 1;
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= side;
  std::vector<int> m(n);
  cplx acc(0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double m2 = 0.0, phase = 0.0;
    for (int j = n - 1; j >= 0; --j) {
      m[j] = static_cast<int>(rest % side) - truncation;
      rest /= side;
      m2 += static_cast<double>(m[j]) * m[j];
      phase += m[j] * x[j];
    }
    acc += std::exp(-a * std::sqrt(m2)) * unit_phase(phase);
  }
  return {acc, detail::shell_tail(n, a, truncation)};
}

/// n = 1 closed form (1 - r^2) / (1 - 2 r cos 2 pi x + r^2), r = exp(-2 pi |csc| t).
inline double poisson1_closed(double t, double x, const FracOrder& order) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "Poisson kernel needs t > 0");
  const double r = std::exp(-2.0 * pi * order.abs_csc() * t);
  return (1.0 - r * r) /
         (1.0 - 2.0 * r * std::cos(two_pi * detail::reduce_unit(x)) + r * r);
}

/// One member of a kernel family. classical() is the 1-periodic kernel that
/// enters the fractional convolution through the dilation u = x csc;
/// scaled() is |csc|^n classical(x csc), the kernel living on the torus.
struct KernelSpec {
  enum class Kind { Dirichlet, Fejer, Heat, Poisson };

  Kind kind;
  FracOrder order;
  int dim;
  int N = 0;
  double t = 0.0;
  double k = 0.0;
  int truncation = 0;

  static KernelSpec dirichlet(const FracOrder& order, int dim, int N) {
    check_common(dim, N);
    return {Kind::Dirichlet, order, dim, N};
  }
  static KernelSpec fejer(const FracOrder& order, int dim, int N) {
    check_common(dim, N);
    return {Kind::Fejer, order, dim, N};
  }
  /// truncation <= 0 picks the default (tail below 1e-12).
  static KernelSpec heat(const FracOrder& order, int dim, double t, double k, int truncation = 0) {
    check_common(dim, 0);
    if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "heat kernel needs t > 0");
    if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat kernel needs k > 0");
    if (truncation <= 0) truncation = heat_default_truncation(t, k, order, dim);
    return {Kind::Heat, order, dim, 0, t, k, truncation};
  }
  static KernelSpec poisson(const FracOrder& order, int dim, double t, int truncation = 0) {
    check_common(dim, 0);
    if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "Poisson kernel needs t > 0");
    if (truncation <= 0) truncation = poisson_default_truncation(t, order, dim);
    return {Kind::Poisson, order, dim, 0, t, 0.0, truncation};
  }

  cplx classical(std::span<const double> u) const {
    switch (kind) {
      case Kind::Dirichlet: {
        double v = 1.0;
        for (double ui : u) v *= detail::dirichlet_classical_1d(N, ui);
        return v;
      }
      case Kind::Fejer: {
        double v = 1.0;
        for (double ui : u) v *= detail::fejer_classical_1d(N, ui);
        return v;
      }
      case Kind::Heat:
        return heat_kernel(t, k, u, order, truncation).value;
      case Kind::Poisson:
        return poisson_kernel(t, u, order, truncation).value;
    }
    return 0.0;
  }

  /// Truncation tail of classical(); zero for the finite kernels.
  double tail() const {
    std::vector<double> zero(dim, 0.0);
    switch (kind) {
      case Kind::Heat:
        return heat_kernel(t, k, zero, order, truncation).tail;
      case Kind::Poisson:
        return poisson_kernel(t, zero, order, truncation).tail;
      default:
        return 0.0;
    }
  }

  cplx scaled(std::span<const double> x) const {
    std::vector<double> u(x.begin(), x.end());
    for (double& v : u) v *= order.csc();
    return std::pow(order.abs_csc(), dim) * classical(u);
  }

 private:
  static void check_common(int dim, int N) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "kernel dimension must be >= 1");
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "kernel degree must be >= 0");
  }
};

/// Kernel profile on an M-point 1-d grid: x, re, im.
inline void write_kernel_profile_csv(std::ostream& os, const KernelSpec& spec, int M) {
  if (spec.dim != 1) {
    throw Error(ErrorCode::DimensionUnsupported, "kernel profiles are one-dimensional");
  }
  GridSpec grid(1, M, spec.order);
  os << "x,re,im\n";
  for (int j = 0; j < M; ++j) {
    const double x = grid.coord(j);
    const cplx v = spec.scaled(std::span<const double>(&x, 1));
    os << io::format_double(x) << ',' << io::format_double(v.real()) << ','
       << io::format_double(v.imag()) << '\n';
  }
}

}  // namespace fractorus
