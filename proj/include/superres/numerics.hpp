#pragma once

#include "superres/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace superres::numerics {

inline constexpr int kMaxHermiteOrder = 30;

/// Physicist's Hermite polynomial H_n(x) by upward recurrence. n <= 30.
double hermite_phys(int n, double x);

/// Error function, absolute accuracy well below 1e-12 on the whole real line.
double erf(double x);

/// Tolerances for adaptive integration. Construction validates the invariants.
class Quadrature {
public:
  Quadrature() = default;
  Quadrature(double abs_tol, double rel_tol, int max_subdivisions);

  double abs_tol() const noexcept { return abs_tol_; }
  double rel_tol() const noexcept { return rel_tol_; }
  int max_subdivisions() const noexcept { return max_subdivisions_; }

private:
  double abs_tol_ = 1e-13;
  double rel_tol_ = 1e-12;
  int max_subdivisions_ = 2000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]; abscissae descending, last is 0.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T> struct Segment {
  double a;
  double b;
  T value;
  double error;
};

template <typename T, typename F> Segment<T> kronrod15(F &f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T f_center = f(center);
  T kronrod = f_center * kKronrodWeights[7];
  T gauss = f_center * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) {
      gauss += sum * kGaussWeights[j / 2];
    }
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a real- or
/// complex-valued integrand. Bisects the worst segment until the summed
/// error estimate is within max(abs_tol, rel_tol * |result|).
/// Throws ConvergenceError (carrying the best estimate) when the budget runs out.
template <typename F>
auto integrate(F &&f, double a, double b, const Quadrature &q = {}) {
  using T = std::decay_t<std::invoke_result_t<F &, double>>;
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>,
                "integrand must return double or std::complex<double>");
  if (!(a < b)) {
    throw DomainError("integrate: require a < b");
  }

  auto worse = [](const detail::Segment<T> &l, const detail::Segment<T> &r) {
    return l.error < r.error;
  };
  std::vector<detail::Segment<T>> heap;
  heap.push_back(detail::kronrod15<T>(f, a, b));
  T total = heap.front().value;
  double total_error = heap.front().error;

  for (int subdivisions = 1;; ++subdivisions) {
    if (!std::isfinite(std::abs(total))) {
      throw DomainError("integrate: integrand is not finite on the interval");
    }
    if (total_error <= std::max(q.abs_tol(), q.rel_tol() * std::abs(total))) {
      return total;
    }
    if (subdivisions >= q.max_subdivisions()) {
      throw ConvergenceError("integrate: subdivision budget exhausted", std::abs(total),
                             total_error);
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod15<T>(f, worst.a, mid);
    auto right = detail::kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);

    // Running sums drift; resum from the segments now and then.
    if (subdivisions % 64 == 0) {
      total = T{};
      total_error = 0.0;
      for (const auto &s : heap) {
        total += s.value;
        total_error += s.error;
      }
    }
  }
}

/// Counter-based SplitMix64 stream. Draw k is a pure function of (seed, k),
/// so identical seeds reproduce identical sequences and streams can be split.
class RngStream {
public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  /// Independent child stream, e.g. one per worker batch.
  RngStream split(std::uint64_t index) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

double sample_gaussian(RngStream &stream, double mean, double std_dev);
std::uint64_t sample_poisson(RngStream &stream, double mean);

} // namespace superres::numerics
