#pragma once

#include "superres/beam.hpp"
#include "superres/channel.hpp"

#include <utility>
#include <variant>

namespace superres::bhd {

/// The two emitters. Photon counts are those captured per measurement;
/// phases are relative to the local oscillator reference.
struct SourcePair {
  double n_plus = 1e3;
  double n_minus = 1e3;
  double ell_plus = 1e5;
  double ell_minus = 1e5;
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double d = 0.0;
  double theta_d = 0.0;

  void validate() const;
};

struct Receiver {
  channel::Aperture aperture{0.2};
  double eta = 0.9;
  double n_lo = 1e6;
  double phi_lo = 0.0;
  /// Field normalisation; cancels from every reported figure of merit.
  double field_norm = 1.0;

  void validate() const;
};

struct LegPair {
  channel::ChannelLeg plus;
  channel::ChannelLeg minus;
};

/// Everything the closed forms and the Monte Carlo oracle need for one operating point.
struct Link {
  beam::BeamGeometry geometry;
  SourcePair sources;
  Receiver receiver;
  LegPair legs;
};

/// Builds a link whose legs get their transmissivity from the aperture.
Link make_link(const beam::BeamGeometry &g, const SourcePair &p, const Receiver &rx);

/// Distances (ell_plus, ell_minus) near `ell` whose path phases differ by pi,
/// with ell_minus a whole number of wavelengths. This is the operating point
/// where the HG10 contributions of both sources add and the FI is maximal.
std::pair<double, double> phase_matched_distances(const beam::BeamGeometry &g, double ell);

/// 2 pi ell / lambda reduced to [0, 2 pi).
double path_phase(const beam::BeamGeometry &g, double ell);

struct NoMisalignment {};
struct FluctuatingMisalignment {
  double sigma_d = 0.0;
};
struct FixedMisalignment {
  double delta_x = 0.0;
};
using MisalignmentModel =
    std::variant<NoMisalignment, FluctuatingMisalignment, FixedMisalignment>;

struct MeasurementStats {
  double mean = 0.0;
  double variance = 0.0;
  double snr = 0.0;
};

struct ResolutionCheck {
  bool resolved = false;
  double margin = 0.0;
  double d_min = 0.0;
  double d_rayleigh = 0.0;
};

/// Fisher information of the HG10 homodyne record about d, as a function of
/// the source phases and path phases. Zero when the two contributions cancel.
double fisher_information(const SourcePair &p, const beam::BeamGeometry &g);

/// Maximum of fisher_information over path phases: (2/w0^2)(sqrt N+ + sqrt N-)^2.
double fisher_information_max(const SourcePair &p, const beam::BeamGeometry &g);

/// Standard quantum limit w0 / (sqrt2 (sqrt N+ + sqrt N-)).
double d_sql(const SourcePair &p, const beam::BeamGeometry &g);

/// <J> at separation link.sources.d. Requires phi+ = phi- = phi_lo.
double mean_output(const Link &link);

/// <dJ^2>, evaluated at d = 0.
double variance_output(const Link &link);

/// mean/sqrt(variance) at separation d.
double snr(const Link &link, double d);

/// Separation at which the SNR reaches 1.
double d_min(const Link &link);

MeasurementStats stats_aligned(const Link &link);

/// d_min offset per unit misalignment, sqrt(sum T N) / (2 sqrt(N_lo) sum sqrt(T N)).
/// d_min_fluctuating adds sigma_d times this; d_min_fixed adds delta_x times (this + 1).
double misalignment_offset_coefficient(const Link &link);

/// Moments when the separation jitters as D ~ N(d_bar, sigma_d^2).
MeasurementStats stats_fluctuating(const Link &link, double sigma_d, double d_bar);
double d_min_fluctuating(const Link &link, double sigma_d);

/// Moments under a constant centroid offset delta_x. Needs |d - delta_x| < w0.
MeasurementStats stats_fixed(const Link &link, double delta_x);
double d_min_fixed(const Link &link, double delta_x);

/// d_min for the given misalignment model.
double d_min_for(const Link &link, const MisalignmentModel &mis);

/// d_min compared with the Rayleigh limit at the mean of ell+ and ell-.
ResolutionCheck super_resolution_check(const Link &link, const MisalignmentModel &mis);

} // namespace superres::bhd
