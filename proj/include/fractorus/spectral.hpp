// Fractional Fourier coefficients: analysis by dechirped DFT quadrature,
// synthesis by the inversion series, and the coefficient algebra.
#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fractorus/core.hpp"
#include "fractorus/io.hpp"

namespace fractorus {

/// Dense coefficients on the cube |m_j| <= N, row-major with offset +N per axis.
class FracCoefficients {
 public:
  FracCoefficients(FracOrder order, int dim, int radius)
      : order_(order), dim_(dim), radius_(radius) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(side());
    data_.assign(s, cplx(0.0));
  }

  const FracOrder& order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  int radius() const noexcept { return radius_; }
  int side() const noexcept { return 2 * radius_ + 1; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  bool contains(std::span<const int> m) const {
    if (static_cast<int>(m.size()) != dim_) return false;
    for (int v : m) {
      if (v < -radius_ || v > radius_) return false;
    }
    return true;
  }

  std::size_t index(std::span<const int> m) const {
    if (static_cast<int>(m.size()) != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "index dimension does not match coefficients");
    }
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
      if (m[a] < -radius_ || m[a] > radius_) {
        throw Error(ErrorCode::RadiusExceeded, "index outside the coefficient radius");
      }
      flat = flat * side() + static_cast<std::size_t>(m[a] + radius_);
    }
    return flat;
  }

  void multi_index(std::size_t flat, std::span<int> m) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      m[a] = static_cast<int>(flat % side()) - radius_;
      flat /= side();
    }
  }

  cplx& at(std::span<const int> m) { return data_[index(m)]; }
  cplx at(std::span<const int> m) const { return data_[index(m)]; }
  cplx& at(std::initializer_list<int> m) { return at(std::span<const int>(m.begin(), m.size())); }
  cplx at(std::initializer_list<int> m) const {
    return at(std::span<const int>(m.begin(), m.size()));
  }

  /// Zero outside the stored cube.
  cplx get(std::span<const int> m) const { return contains(m) ? data_[index(m)] : cplx(0.0); }

  /// f(m, value) for every stored index in row-major order.
  template <class F>
  void for_each(F&& f) const {
    std::vector<int> m(dim_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      multi_index(k, m);
      f(std::span<const int>(m), data_[k]);
    }
  }

  /// Same coefficients, re-boxed to a new radius (zero padded or cropped).
  FracCoefficients resized(int radius) const {
    FracCoefficients out(order_, dim_, radius);
    std::vector<int> m(dim_);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out.multi_index(k, m);
      out.data_[k] = get(m);
    }
    return out;
  }

 private:
  FracOrder order_;
  int dim_;
  int radius_;
  std::vector<cplx> data_;
};

namespace detail {

/// out[o, k, i] = sum_j in[o, j, i] * matrix[k * in_len + j] along `axis`.
inline std::vector<cplx> axis_apply(const std::vector<cplx>& in, std::vector<int>& shape,
                                    int axis, int out_len, const std::vector<cplx>& matrix) {
  const int in_len = shape[axis];
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  std::vector<cplx> out(outer * out_len * inner);
  parallel_for(outer * static_cast<std::size_t>(out_len), [&](std::size_t ok) {
    const std::size_t o = ok / out_len;
    const std::size_t k = ok % out_len;
    const cplx* row = matrix.data() + k * in_len;
    for (std::size_t i = 0; i < inner; ++i) {
      cplx acc(0.0);
      const cplx* src = in.data() + o * in_len * inner + i;
      for (int j = 0; j < in_len; ++j) acc += row[j] * src[j * inner];
      out[(o * out_len + k) * inner + i] = acc;
    }
  });
  shape[axis] = out_len;
  return out;
}

/// Twiddle table w[k] = exp(-2 pi i k / M).
inline std::vector<cplx> twiddles(int M) {
  std::vector<cplx> w(M);
  for (int k = 0; k < M; ++k) w[k] = unit_phase(-static_cast<double>(k) / M);
  return w;
}

inline int wrap(long long v, int M) {
  long long r = v % M;
  return static_cast<int>(r < 0 ? r + M : r);
}

/// Matrix for exp(-2 pi i m x_j csc a) on the grid, rows m = -N..N, columns j.
/// x_j csc a = sign * (-1/2 + j/M), so each entry is (-1)^m w^{sign m j}.
inline std::vector<cplx> analysis_matrix(const GridSpec& grid, int radius, double weight) {
  const int M = grid.samples();
  const int side = 2 * radius + 1;
  const int sgn = grid.order().sign();
  const auto w = twiddles(M);
  std::vector<cplx> mat(static_cast<std::size_t>(side) * M);
  for (int k = 0; k < side; ++k) {
    const int m = k - radius;
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j < M; ++j) {
      mat[static_cast<std::size_t>(k) * M + j] =
          parity * weight * w[wrap(static_cast<long long>(sgn) * m * j, M)];
    }
  }
  return mat;
}

/// Matrix for exp(+2 pi i m x_j csc a), rows j, columns m = -N..N.
inline std::vector<cplx> synthesis_matrix(const GridSpec& grid, int radius) {
  const int M = grid.samples();
  const int side = 2 * radius + 1;
  const int sgn = grid.order().sign();
  const auto w = twiddles(M);
  std::vector<cplx> mat(static_cast<std::size_t>(M) * side);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < side; ++k) {
      const int m = k - radius;
      const double parity = (m % 2 == 0) ? 1.0 : -1.0;
      mat[static_cast<std::size_t>(j) * side + k] =
          parity * std::conj(w[wrap(static_cast<long long>(sgn) * m * j, M)]);
    }
  }
  return mat;
}

}  // namespace detail

/// Dechirped samples e_alpha(x) f(x).
inline std::vector<cplx> dechirp(const PeriodicSignal& signal) {
  const auto& grid = signal.grid();
  std::vector<cplx> out(signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) {
    out[k] = chirp(grid.point(k), grid.order()) * signal[k];
  }
  return out;
}

/// Fractional Fourier coefficients for |m_j| <= radius by the periodic
/// rectangle rule. Exact when e_alpha f is a trigonometric polynomial of
/// per-axis degree < M - radius.
inline FracCoefficients analyze(const PeriodicSignal& signal, int radius) {
  const auto& grid = signal.grid();
  const int M = grid.samples();
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  if (M < 2 * radius + 2) {
    throw Error(ErrorCode::GridTooCoarse,
                "grid too coarse: need M >= 2N + 2 (M = " + std::to_string(M) +
                    ", N = " + std::to_string(radius) + ")");
  }
  const int n = grid.dim();
  const auto& order = grid.order();
  const auto mat = detail::analysis_matrix(grid, radius, grid.spacing());

  std::vector<cplx> work = dechirp(signal);
  std::vector<int> shape(n, M);
  for (int a = 0; a < n; ++a) work = detail::axis_apply(work, shape, a, 2 * radius + 1, mat);

  FracCoefficients out(order, n, radius);
  const cplx an = order.scale_pow(n);
  std::vector<int> m(n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.multi_index(k, m);
    out.data()[k] = an * chirp(std::span<const int>(m), order) * work[k];
  }
  return out;
}

/// One coefficient by direct quadrature of f(x) K_alpha(m, x); no radius limit.
inline cplx coefficient_single(const PeriodicSignal& signal, std::span<const int> m) {
  const auto& grid = signal.grid();
  if (static_cast<int>(m.size()) != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "index dimension does not match the grid");
  }
  cplx acc(0.0);
  for (std::size_t k = 0; k < signal.size(); ++k) {
    acc += signal[k] * kernel_K(m, grid.point(k), grid.order());
  }
  return acc * grid.cell_volume();
}

inline cplx coefficient_single(const PeriodicSignal& signal, std::initializer_list<int> m) {
  return coefficient_single(signal, std::span<const int>(m.begin(), m.size()));
}

/// sum_m c(m) K_{-alpha}(m, x) over the stored cube.
inline cplx synthesize(const FracCoefficients& coeffs, std::span<const double> x) {
  if (static_cast<int>(x.size()) != coeffs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match coefficients");
  }
  const FracOrder neg = coeffs.order().negated();
  cplx acc(0.0);
  coeffs.for_each([&](std::span<const int> m, cplx c) {
    if (c != cplx(0.0)) acc += c * kernel_K(m, x, neg);
  });
  return acc;
}

inline cplx synthesize(const FracCoefficients& coeffs, std::initializer_list<double> x) {
  return synthesize(coeffs, std::span<const double>(x.begin(), x.size()));
}

/// Evaluates the inversion series on every grid point (separable).
inline PeriodicSignal synthesize_grid(const FracCoefficients& coeffs, const GridSpec& grid) {
  if (grid.dim() != coeffs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "grid dimension does not match coefficients");
  }
  if (grid.order().alpha() != coeffs.order().alpha()) {
    throw Error(ErrorCode::GridMismatch, "grid order does not match coefficient order");
  }
  const int n = grid.dim();
  const int M = grid.samples();
  const FracOrder neg = coeffs.order().negated();
  const cplx an = neg.scale_pow(n);

  std::vector<cplx> work(coeffs.size());
  std::vector<int> m(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs.multi_index(k, m);
    work[k] = coeffs.data()[k] * an * chirp(std::span<const int>(m), neg);
  }
  const auto mat = detail::synthesis_matrix(grid, coeffs.radius());
  std::vector<int> shape(n, coeffs.side());
  for (int a = 0; a < n; ++a) work = detail::axis_apply(work, shape, a, M, mat);

  PeriodicSignal out(grid, std::move(work));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= chirp(grid.point(k), neg);
  return out;
}

/// Coefficients of e_{-alpha} tau_y (e_alpha f).
inline FracCoefficients translate_dechirped(const FracCoefficients& coeffs,
                                            std::span<const double> y) {
  if (static_cast<int>(y.size()) != coeffs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "shift dimension does not match coefficients");
  }
  FracCoefficients out = coeffs;
  std::vector<int> m(coeffs.dim());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.multi_index(k, m);
    out.data()[k] *= modulation(m, y, coeffs.order());
  }
  return out;
}

/// Coefficients of x -> f(-x).
inline FracCoefficients reflect(const FracCoefficients& coeffs) {
  FracCoefficients out = coeffs;
  std::vector<int> m(coeffs.dim());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.multi_index(k, m);
    for (int& v : m) v = -v;
    out.data()[k] = coeffs.at(std::span<const int>(m));
  }
  return out;
}

/// Given F_alpha(f), returns F_{-alpha}(conj f) = conj F_alpha(f).
inline FracCoefficients conjugate_transform(const FracCoefficients& coeffs) {
  FracCoefficients out(coeffs.order().negated(), coeffs.dim(), coeffs.radius());
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] = std::conj(coeffs.data()[k]);
  return out;
}

/// Coefficient m of e_alpha f g through the product formula, with the j-sum
/// over the cube of f_coeffs. The factor F_{-alpha}(e_alpha^2 g) is computed by
/// direct quadrature of the samples of g.
inline cplx product_coefficients(const FracCoefficients& f_coeffs, const PeriodicSignal& g_signal,
                                 std::span<const int> m) {
  const auto& grid = g_signal.grid();
  const int n = f_coeffs.dim();
  if (grid.dim() != n || static_cast<int>(m.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "dimension mismatch in product formula");
  }
  const FracOrder& order = f_coeffs.order();
  const FracOrder neg = order.negated();

  PeriodicSignal twisted(GridSpec(n, grid.samples(), neg));
  for (std::size_t k = 0; k < g_signal.size(); ++k) {
    const cplx c = chirp(grid.point(k), order);
    twisted[k] = c * c * g_signal[k];
  }

  cplx acc(0.0);
  std::vector<int> diff(n);
  f_coeffs.for_each([&](std::span<const int> j, cplx fj) {
    if (fj == cplx(0.0)) return;
    double jm = 0.0;
    for (int a = 0; a < n; ++a) {
      diff[a] = j[a] - m[a];
      jm += static_cast<double>(j[a]) * m[a];
    }
    acc += fj * unit_phase(-jm * order.cot()) * coefficient_single(twisted, diff);
  });
  const cplx em = chirp(m, order);
  return order.scale_pow(n) * em * em * acc;
}

/// CSV: m_1..m_n, re, im with a header row.
inline void write_coefficients_csv(std::ostream& os, const FracCoefficients& coeffs) {
  for (int a = 0; a < coeffs.dim(); ++a) os << "m_" << (a + 1) << ',';
  os << "re,im\n";
  coeffs.for_each([&](std::span<const int> m, cplx c) {
    for (int v : m) os << v << ',';
    os << io::format_double(c.real()) << ',' << io::format_double(c.imag()) << '\n';
  });
}

}  // namespace fractorus
