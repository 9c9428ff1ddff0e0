#pragma once

#include "superres/beam.hpp"

namespace superres::channel {

/// Receiver aperture half-width r in the measured dimension (slit capture over [-r, r]).
class Aperture {
public:
  explicit Aperture(double radius);
  double radius() const noexcept { return radius_; }

private:
  double radius_;
};

/// Fraction of HG10 power captured, closed form:
/// erf(sqrt2 r / w) - 2^{3/2} r exp(-2 r^2 / w^2) / (sqrt(pi) w).
double transmissivity_closed(const beam::BeamGeometry &g, const Aperture &a, double ell);

/// Same quantity by direct quadrature of |u_1(x, ell)|^2 over [-r, r].
double transmissivity_numeric(const beam::BeamGeometry &g, const Aperture &a, double ell,
                              const numerics::Quadrature &q = {});

/// Classical benchmark lambda * ell / w0.
double rayleigh_limit(const beam::BeamGeometry &g, double ell);

/// One propagation leg with its transmissivity fixed at construction.
class ChannelLeg {
public:
  ChannelLeg(const beam::BeamGeometry &g, const Aperture &a, double ell);

  /// Leg with a prescribed transmissivity, for idealised what-if studies.
  static ChannelLeg with_transmissivity(double ell, double transmissivity);

  double ell() const noexcept { return ell_; }
  double transmissivity() const noexcept { return transmissivity_; }

private:
  ChannelLeg(double ell, double transmissivity) : ell_(ell), transmissivity_(transmissivity) {}

  double ell_;
  double transmissivity_;
};

} // namespace superres::channel
