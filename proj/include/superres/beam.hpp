#pragma once

#include "superres/numerics.hpp"

#include <complex>

namespace superres::beam {

using Complex = std::complex<double>;

/// Wavelength and waist of a paraxial Gaussian beam, with the derived
/// propagation quantities. Immutable once built. Lengths in metres.
class BeamGeometry {
public:
  BeamGeometry(double wavelength, double waist);

  double wavelength() const noexcept { return wavelength_; }
  double waist() const noexcept { return waist_; }
  double wave_number() const noexcept;
  double rayleigh_range() const noexcept { return rayleigh_range_; }

  /// w(z) = w0 sqrt(1 + (z/zR)^2)
  double width(double z) const;
  /// arctan(z/zR)
  double gouy_phase(double z) const;
  /// R_c(z) = z (1 + (zR/z)^2); +infinity at the waist (flat wavefront).
  double radius_curvature(double z) const;
  /// 1/R_c(z), exactly 0 at z = 0.
  double wavefront_curvature(double z) const;

private:
  double wavelength_;
  double waist_;
  double rayleigh_range_;
};

struct ModeIndex {
  int n = 0;
  int m = 0;
};

/// Which of the two emitters a coefficient set belongs to. The source
/// displaced by +d is `plus`; the one at -d is `minus`.
enum class Source { plus, minus };

/// First-order HG expansion of a displaced fundamental mode in the
/// HG00 / HG10 / HG01 / HG11 basis.
struct DisplacementDecomposition {
  double c00 = 1.0;
  double c10 = 0.0;
  double c01 = 0.0;
  double c11 = 0.0;
};

/// Half-width of the window holding all but ~1e-15 of |u_n|^2 at plane z.
double mode_extent(const BeamGeometry &g, int n, double z);

/// Hermite-Gaussian amplitude u_n(x, z) in m^-1/2, with Gouy and
/// wavefront-curvature phases.
Complex hg_amplitude_1d(const BeamGeometry &g, int n, double x, double z);

/// u_{n,m}(x, y, z) = u_n(x, z) u_m(y, z), in m^-1.
Complex hg_amplitude_2d(const BeamGeometry &g, ModeIndex idx, double x, double y, double z);

/// u_0(x + d, z), evaluated exactly.
Complex displaced_fundamental(const BeamGeometry &g, double x, double d, double z);

/// Coefficients for an emitter at transverse offset d along angle theta_d.
/// Taken at the waist plane, where du0/dx = -u1/w0 holds exactly.
/// Throws TruncationError unless |d| < w0.
DisplacementDecomposition decompose_displacement(const BeamGeometry &g, double d,
                                                 double theta_d, Source source = Source::plus);

/// Numerical overlap <u_n(z) | u_0(. + d, z)> by quadrature.
Complex overlap_coefficient(const BeamGeometry &g, int n, double d, double z,
                            const numerics::Quadrature &q = {});

} // namespace superres::beam
