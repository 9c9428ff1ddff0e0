#include "superres/numerics.hpp"

#include <random>

namespace superres::numerics {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
} // namespace

double hermite_phys(int n, double x) {
  if (n < 0 || n > kMaxHermiteOrder) {
    throw DomainError("hermite_phys: order must lie in [0, " +
                      std::to_string(kMaxHermiteOrder) + "], got " + std::to_string(n));
  }
  double previous = 1.0;
  if (n == 0) {
    return previous;
  }
  double current = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * current - 2.0 * k * previous;
    previous = current;
    current = next;
  }
  return current;
}

double erf(double x) {
  // libm's erf is correctly rounded to within an ulp or two and exactly odd.
  return std::erf(x);
}

Quadrature::Quadrature(double abs_tol, double rel_tol, int max_subdivisions)
    : abs_tol_(abs_tol), rel_tol_(rel_tol), max_subdivisions_(max_subdivisions) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("Quadrature: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("Quadrature: max_subdivisions must be >= 1");
  }
}

RngStream::result_type RngStream::operator()() noexcept {
  ++counter_;
  return mix64(seed_ + counter_ * kGoldenGamma);
}

RngStream RngStream::split(std::uint64_t index) const noexcept {
  return RngStream(mix64(seed_ ^ mix64(index + kGoldenGamma)));
}

double sample_gaussian(RngStream &stream, double mean, double std_dev) {
  if (!(std_dev >= 0.0)) {
    throw DomainError("sample_gaussian: standard deviation must be >= 0");
  }
  if (std_dev == 0.0) {
    return mean;
  }
  std::normal_distribution<double> dist(mean, std_dev);
  return dist(stream);
}

std::uint64_t sample_poisson(RngStream &stream, double mean) {
  if (!(mean >= 0.0)) {
    throw DomainError("sample_poisson: mean must be >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(stream);
}

} // namespace superres::numerics
