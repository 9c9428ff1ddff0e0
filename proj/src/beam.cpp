#include "superres/beam.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace superres::beam {

namespace {

void require_plane(double z) {
  if (!(z >= 0.0)) {
    throw DomainError("beam: propagation distance must be >= 0");
  }
}

void require_order(int n) {
  if (n < 0 || n > numerics::kMaxHermiteOrder) {
    throw DomainError("beam: mode order must lie in [0, 30]");
  }
}

// 2^n n!, exact in double for the orders allowed here.
double hermite_norm(int n) {
  double value = 1.0;
  for (int k = 1; k <= n; ++k) {
    value *= 2.0 * k;
  }
  return value;
}

} // namespace

BeamGeometry::BeamGeometry(double wavelength, double waist)
    : wavelength_(wavelength), waist_(waist) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw DomainError("BeamGeometry: wavelength must be positive");
  }
  if (!(waist > 0.0) || !std::isfinite(waist)) {
    throw DomainError("BeamGeometry: waist must be positive");
  }
  rayleigh_range_ = std::numbers::pi * waist * waist / wavelength;
}

double BeamGeometry::wave_number() const noexcept {
  return 2.0 * std::numbers::pi / wavelength_;
}

double BeamGeometry::width(double z) const {
  require_plane(z);
  const double s = z / rayleigh_range_;
  return waist_ * std::sqrt(1.0 + s * s);
}

double BeamGeometry::gouy_phase(double z) const {
  require_plane(z);
  return std::atan(z / rayleigh_range_);
}

double BeamGeometry::radius_curvature(double z) const {
  require_plane(z);
  if (z == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double s = rayleigh_range_ / z;
  return z * (1.0 + s * s);
}

double BeamGeometry::wavefront_curvature(double z) const {
  require_plane(z);
  if (z == 0.0) {
    return 0.0;
  }
  return z / (z * z + rayleigh_range_ * rayleigh_range_);
}

double mode_extent(const BeamGeometry &g, int n, double z) {
  require_order(n);
  return g.width(z) * (6.0 + std::sqrt(0.5 * n));
}

Complex hg_amplitude_1d(const BeamGeometry &g, int n, double x, double z) {
  require_order(n);
  const double w = g.width(z);
  // The Gouy factor sits under the square root, so the mode carries
  // half of (2n+1) Psi. Taking it as an explicit phase keeps the branch continuous in z.
  const double gouy = 0.5 * (2 * n + 1) * g.gouy_phase(z);
  const double magnitude = std::pow(2.0 / std::numbers::pi, 0.25) /
                           std::sqrt(hermite_norm(n) * w) *
                           numerics::hermite_phys(n, std::numbers::sqrt2 * x / w) *
                           std::exp(-x * x / (w * w));
  const double curvature_phase = -x * x * g.wave_number() * 0.5 * g.wavefront_curvature(z);
  return std::polar(1.0, gouy + curvature_phase) * magnitude;
}

Complex hg_amplitude_2d(const BeamGeometry &g, ModeIndex idx, double x, double y, double z) {
  return hg_amplitude_1d(g, idx.n, x, z) * hg_amplitude_1d(g, idx.m, y, z);
}

Complex displaced_fundamental(const BeamGeometry &g, double x, double d, double z) {
  return hg_amplitude_1d(g, 0, x + d, z);
}

DisplacementDecomposition decompose_displacement(const BeamGeometry &g, double d,
                                                 double theta_d, Source source) {
  if (!(std::abs(d) < g.waist())) {
    throw TruncationError("decompose_displacement: first-order expansion needs |d| < w0");
  }
  const double ratio = d / g.waist();
  const double sign = source == Source::plus ? -1.0 : 1.0;
  DisplacementDecomposition c;
  c.c00 = 1.0;
  c.c10 = sign * ratio * std::cos(theta_d);
  c.c01 = sign * ratio * std::sin(theta_d);
  c.c11 = 0.5 * ratio * ratio * std::sin(2.0 * theta_d);
  return c;
}

Complex overlap_coefficient(const BeamGeometry &g, int n, double d, double z,
                            const numerics::Quadrature &q) {
  const double half = std::max(mode_extent(g, n, z), mode_extent(g, 0, z)) + std::abs(d);
  auto integrand = [&](double x) {
    return std::conj(hg_amplitude_1d(g, n, x, z)) * displaced_fundamental(g, x, d, z);
  };
  return numerics::integrate(integrand, -half, half, q);
}

} // namespace superres::beam
