// Fractional order bookkeeping, chirp factors, the kernel K_alpha(m, x) and
// uniform grids on the fractional torus [-|sin a|/2, |sin a|/2]^n.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fractorus {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  DegenerateOrder,
  DimensionMismatch,
  GridTooCoarse,
  GridMismatch,
  RadiusExceeded,
  NonPositiveTime,
  NegativeTime,
  DimensionUnsupported,
  NotDecayingInput,
  InsufficientTimeLevels,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// exp(2 pi i * turns), with the argument reduced to [-1/2, 1/2] first so that
/// large integer multiples of a phase keep full relative accuracy.
inline cplx unit_phase(double turns) {
  const double r = turns - std::nearbyint(turns);
  return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

/// The angle alpha together with the constants every kernel needs.
/// Immutable; trigonometric values are computed once here.
class FracOrder {
 public:
  static constexpr double kDegeneracyTol = 1e-12;

  explicit FracOrder(double alpha) : alpha_(alpha) {
    sin_ = std::sin(alpha);
    if (!(std::abs(sin_) > kDegeneracyTol)) {
      throw Error(ErrorCode::DegenerateOrder, "degenerate fractional order");
    }
    csc_ = 1.0 / sin_;
    cot_ = std::cos(alpha) / sin_;
    scale_ = std::sqrt(cplx(1.0, -cot_));
  }

  double alpha() const noexcept { return alpha_; }
  double sin() const noexcept { return sin_; }
  double csc() const noexcept { return csc_; }
  double cot() const noexcept { return cot_; }
  double abs_csc() const noexcept { return std::abs(csc_); }
  /// A_alpha = sqrt(1 - i cot alpha), principal branch.
  cplx scale() const noexcept { return scale_; }
  /// |sin alpha|, the side of the torus.
  double period() const noexcept { return std::abs(sin_); }
  /// +1 or -1; period * csc equals this exactly in exact arithmetic.
  int sign() const noexcept { return sin_ > 0 ? 1 : -1; }

  FracOrder negated() const { return FracOrder(-alpha_); }

  /// A_alpha^n
  cplx scale_pow(int n) const { return std::pow(scale_, n); }

 private:
  double alpha_;
  double sin_;
  double csc_;
  double cot_;
  cplx scale_;
};

inline FracOrder frac_order_new(double alpha) { return FracOrder(alpha); }

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double norm2(std::span<const int> m) {
  double s = 0.0;
  for (int v : m) s += static_cast<double>(v) * v;
  return s;
}

/// e_alpha(x) = exp(pi i |x|^2 cot alpha)
inline cplx chirp(std::span<const double> x, const FracOrder& order) {
  return unit_phase(0.5 * norm2(x) * order.cot());
}

/// e_alpha(m) for an integer vector, |m|^2 the squared Euclidean norm.
inline cplx chirp(std::span<const int> m, const FracOrder& order) {
  return unit_phase(0.5 * norm2(m) * order.cot());
}

inline cplx chirp(double x, const FracOrder& order) {
  return unit_phase(0.5 * x * x * order.cot());
}

/// exp(-2 pi i (m.x) csc alpha)
inline cplx modulation(std::span<const int> m, std::span<const double> x,
                       const FracOrder& order) {
  if (m.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dimension mismatch between m and x");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) dot += m[j] * x[j];
  return unit_phase(-dot * order.csc());
}

/// K_alpha(m, x) = A^n e_alpha(x) exp(-2 pi i (m.x) csc alpha) e_alpha(m).
inline cplx kernel_K(std::span<const int> m, std::span<const double> x,
                     const FracOrder& order) {
  if (m.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dimension mismatch between m and x");
  }
  const int n = static_cast<int>(m.size());
  return order.scale_pow(n) * chirp(x, order) * modulation(m, x, order) * chirp(m, order);
}

/// Uniform periodic grid: x_j = -period/2 + j * period / M per axis, j < M.
class GridSpec {
 public:
  GridSpec(int dim, int samples_per_axis, FracOrder order)
      : dim_(dim), samples_(samples_per_axis), order_(order) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "grid dimension must be >= 1");
    if (samples_per_axis < 2) {
      throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 samples per axis");
    }
  }

  int dim() const noexcept { return dim_; }
  int samples() const noexcept { return samples_; }
  const FracOrder& order() const noexcept { return order_; }
  double period() const noexcept { return order_.period(); }
  double spacing() const noexcept { return order_.period() / samples_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim_; ++a) s *= static_cast<std::size_t>(samples_);
    return s;
  }

  double coord(int j) const { return -0.5 * period() + j * spacing(); }

  /// Per-axis indices of a row-major flat index (axis 0 slowest).
  void unflatten(std::size_t flat, std::span<int> idx) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % samples_);
      flat /= samples_;
    }
  }

  std::size_t flatten(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
      int j = idx[a] % samples_;
      if (j < 0) j += samples_;
      flat = flat * samples_ + static_cast<std::size_t>(j);
    }
    return flat;
  }

  std::vector<double> point(std::size_t flat) const {
    std::vector<int> idx(dim_);
    unflatten(flat, idx);
    std::vector<double> x(dim_);
    for (int a = 0; a < dim_; ++a) x[a] = coord(idx[a]);
    return x;
  }

  bool same_as(const GridSpec& other) const {
    return dim_ == other.dim_ && samples_ == other.samples_ &&
           order_.alpha() == other.order_.alpha();
  }

 private:
  int dim_;
  int samples_;
  FracOrder order_;
};

/// Complex samples of a function on a GridSpec, row-major over axes.
class PeriodicSignal {
 public:
  explicit PeriodicSignal(GridSpec grid)
      : grid_(grid), values_(grid.size(), cplx(0.0)) {}

  PeriodicSignal(GridSpec grid, std::vector<cplx> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "sample count does not match grid");
    }
  }

  template <class F>
  static PeriodicSignal sample(const GridSpec& grid, F&& f) {
    PeriodicSignal s(grid);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto x = grid.point(k);
      s.values_[k] = f(std::span<const double>(x));
    }
    return s;
  }

  const GridSpec& grid() const noexcept { return grid_; }
  const FracOrder& order() const noexcept { return grid_.order(); }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  cplx operator[](std::size_t k) const { return values_[k]; }
  cplx& operator[](std::size_t k) { return values_[k]; }

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

/// Worker count: hardware concurrency capped by FRACTORUS_THREADS.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACTORUS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker, so results do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_count(), count == 0 ? 1 : count));
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

}  // namespace fractorus
