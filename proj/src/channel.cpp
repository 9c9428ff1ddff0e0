#include "superres/channel.hpp"

#include <cmath>
#include <numbers>

namespace superres::channel {

Aperture::Aperture(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("Aperture: radius must be positive");
  }
}

double transmissivity_closed(const beam::BeamGeometry &g, const Aperture &a, double ell) {
  const double w = g.width(ell);
  const double r = a.radius();
  const double t = numerics::erf(std::numbers::sqrt2 * r / w) -
                   2.0 * std::numbers::sqrt2 * r * std::exp(-2.0 * r * r / (w * w)) /
                       (std::sqrt(std::numbers::pi) * w);
  // Only rounding may push it outside [0, 1].
  if (t < 0.0 && t > -1e-12) {
    return 0.0;
  }
  if (t > 1.0 && t < 1.0 + 1e-12) {
    return 1.0;
  }
  return t;
}

double transmissivity_numeric(const beam::BeamGeometry &g, const Aperture &a, double ell,
                              const numerics::Quadrature &q) {
  auto intensity = [&](double x) { return std::norm(beam::hg_amplitude_1d(g, 1, x, ell)); };
  const double r = a.radius();
  // Split at the centre: the integrand vanishes there and is symmetric.
  return numerics::integrate(intensity, -r, 0.0, q) + numerics::integrate(intensity, 0.0, r, q);
}

double rayleigh_limit(const beam::BeamGeometry &g, double ell) {
  if (!(ell > 0.0)) {
    throw DomainError("rayleigh_limit: ell must be > 0");
  }
  return g.wavelength() * ell / g.waist();
}

ChannelLeg::ChannelLeg(const beam::BeamGeometry &g, const Aperture &a, double ell)
    : ell_(ell), transmissivity_(transmissivity_closed(g, a, ell)) {}

ChannelLeg ChannelLeg::with_transmissivity(double ell, double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw DomainError("ChannelLeg: transmissivity must lie in [0, 1]");
  }
  if (!(ell >= 0.0)) {
    throw DomainError("ChannelLeg: ell must be >= 0");
  }
  return ChannelLeg(ell, transmissivity);
}

} // namespace superres::channel
