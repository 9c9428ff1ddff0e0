#include "superres/bhd.hpp"

#include <cmath>
#include <numbers>

namespace superres::bhd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseTolerance = 1e-12;

bool same_phase(double a, double b) {
  const double diff = std::remainder(a - b, kTwoPi);
  return std::abs(diff) <= kPhaseTolerance;
}

void require_locked_phases(const Link &link) {
  const auto &p = link.sources;
  const double lo = link.receiver.phi_lo;
  if (!same_phase(p.phi_plus, lo) || !same_phase(p.phi_minus, lo)) {
    throw ContractError("closed-form homodyne mean assumes phi+ = phi- = phi_lo; "
                        "use the Monte Carlo path (mcsim) for mismatched phases");
  }
}

// sqrt(T+ N+) + sqrt(T- N-)
double coherent_sum(const Link &link) {
  return std::sqrt(link.legs.plus.transmissivity() * link.sources.n_plus) +
         std::sqrt(link.legs.minus.transmissivity() * link.sources.n_minus);
}

// T+ N+ + T- N-
double power_sum(const Link &link) {
  return link.legs.plus.transmissivity() * link.sources.n_plus +
         link.legs.minus.transmissivity() * link.sources.n_minus;
}

// 1 + sqrt(eta(1-eta)) (sqrt(1-T+) + sqrt(1-T-))
double noise_factor(const Link &link) {
  const double eta = link.receiver.eta;
  return 1.0 + std::sqrt(eta * (1.0 - eta)) *
                   (std::sqrt(1.0 - link.legs.plus.transmissivity()) +
                    std::sqrt(1.0 - link.legs.minus.transmissivity()));
}

double mean_at(const Link &link, double separation) {
  require_locked_phases(link);
  const auto &rx = link.receiver;
  const double e2 = rx.field_norm * rx.field_norm;
  return 2.0 * e2 * std::sqrt(rx.eta * rx.n_lo) * separation / link.geometry.waist() *
         coherent_sum(link);
}

// Offset per unit misalignment shared by both misalignment variants.
double jitter_coefficient(const Link &link) {
  return std::sqrt(power_sum(link)) /
         (2.0 * std::sqrt(link.receiver.n_lo) * coherent_sum(link));
}

double misalignment_variance(const Link &link, double offset) {
  const auto &rx = link.receiver;
  const double e4 = std::pow(rx.field_norm, 4);
  const double w0 = link.geometry.waist();
  return e4 * rx.eta * offset * offset / (w0 * w0) * power_sum(link);
}

void require_fixed_domain(const Link &link, double delta_x) {
  if (!(std::abs(link.sources.d - delta_x) < link.geometry.waist())) {
    throw TruncationError("fixed misalignment: first-order expansion needs |d - delta_x| < w0");
  }
}

MeasurementStats finish(double mean, double variance) {
  return {mean, variance, mean / std::sqrt(variance)};
}

} // namespace

void SourcePair::validate() const {
  if (!(n_plus >= 0.0) || !(n_minus >= 0.0)) {
    throw DomainError("SourcePair: photon counts must be >= 0");
  }
  if (!(ell_plus > 0.0) || !(ell_minus > 0.0)) {
    throw DomainError("SourcePair: propagation distances must be > 0");
  }
  if (!(d >= 0.0)) {
    throw DomainError("SourcePair: separation d must be >= 0");
  }
}

void Receiver::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("Receiver: eta must lie in (0, 1]");
  }
  if (!(n_lo > 0.0)) {
    throw DomainError("Receiver: n_lo must be > 0");
  }
  if (!(field_norm > 0.0)) {
    throw DomainError("Receiver: field_norm must be > 0");
  }
}

Link make_link(const beam::BeamGeometry &g, const SourcePair &p, const Receiver &rx) {
  p.validate();
  rx.validate();
  return Link{g, p, rx,
              LegPair{channel::ChannelLeg(g, rx.aperture, p.ell_plus),
                      channel::ChannelLeg(g, rx.aperture, p.ell_minus)}};
}

std::pair<double, double> phase_matched_distances(const beam::BeamGeometry &g, double ell) {
  if (!(ell > 0.0)) {
    throw DomainError("phase_matched_distances: ell must be > 0");
  }
  const double lambda = g.wavelength();
  const double ell_minus = std::max(1.0, std::round(ell / lambda)) * lambda;
  return {ell_minus + 0.5 * lambda, ell_minus};
}

double path_phase(const beam::BeamGeometry &g, double ell) {
  const double turns = std::fmod(ell, g.wavelength()) / g.wavelength();
  const double phase = kTwoPi * turns;
  return phase < 0.0 ? phase + kTwoPi : phase;
}

double fisher_information(const SourcePair &p, const beam::BeamGeometry &g) {
  const double w0 = g.waist();
  const double amplitude = std::sqrt(p.n_minus) * std::cos(p.phi_minus + path_phase(g, p.ell_minus)) -
                           std::sqrt(p.n_plus) * std::cos(p.phi_plus + path_phase(g, p.ell_plus));
  return 2.0 / (w0 * w0) * amplitude * amplitude;
}

double fisher_information_max(const SourcePair &p, const beam::BeamGeometry &g) {
  const double w0 = g.waist();
  const double s = std::sqrt(p.n_plus) + std::sqrt(p.n_minus);
  return 2.0 / (w0 * w0) * s * s;
}

double d_sql(const SourcePair &p, const beam::BeamGeometry &g) {
  if (!(p.n_plus + p.n_minus > 0.0)) {
    throw DomainError("d_sql: no photons from either source");
  }
  return g.waist() / (std::numbers::sqrt2 * (std::sqrt(p.n_plus) + std::sqrt(p.n_minus)));
}

double mean_output(const Link &link) { return mean_at(link, link.sources.d); }

double variance_output(const Link &link) {
  const auto &rx = link.receiver;
  return 2.0 * std::pow(rx.field_norm, 4) * rx.n_lo * noise_factor(link);
}

double snr(const Link &link, double d) {
  return mean_at(link, d) / std::sqrt(variance_output(link));
}

double d_min(const Link &link) {
  if (!(power_sum(link) > 0.0)) {
    throw DomainError("d_min: no photons reach the detector (N+T+ + N-T- = 0)");
  }
  return link.geometry.waist() * std::sqrt(noise_factor(link)) /
         (std::sqrt(2.0 * link.receiver.eta) * coherent_sum(link));
}

MeasurementStats stats_aligned(const Link &link) {
  return finish(mean_output(link), variance_output(link));
}

MeasurementStats stats_fluctuating(const Link &link, double sigma_d, double d_bar) {
  if (!(sigma_d >= 0.0)) {
    throw DomainError("stats_fluctuating: sigma_d must be >= 0");
  }
  return finish(mean_at(link, d_bar), variance_output(link) + misalignment_variance(link, sigma_d));
}

double misalignment_offset_coefficient(const Link &link) {
  if (!(power_sum(link) > 0.0)) {
    throw DomainError("misalignment_offset_coefficient: no transmitted photons");
  }
  return jitter_coefficient(link);
}

double d_min_fluctuating(const Link &link, double sigma_d) {
  if (!(sigma_d >= 0.0)) {
    throw DomainError("d_min_fluctuating: sigma_d must be >= 0");
  }
  return d_min(link) + sigma_d * jitter_coefficient(link);
}

MeasurementStats stats_fixed(const Link &link, double delta_x) {
  require_fixed_domain(link, delta_x);
  return finish(mean_at(link, link.sources.d - delta_x),
                variance_output(link) + misalignment_variance(link, delta_x));
}

double d_min_fixed(const Link &link, double delta_x) {
  require_fixed_domain(link, delta_x);
  return d_min(link) + delta_x * (jitter_coefficient(link) + 1.0);
}

double d_min_for(const Link &link, const MisalignmentModel &mis) {
  struct Visitor {
    const Link &link;
    double operator()(const NoMisalignment &) const { return d_min(link); }
    double operator()(const FluctuatingMisalignment &m) const {
      return d_min_fluctuating(link, m.sigma_d);
    }
    double operator()(const FixedMisalignment &m) const { return d_min_fixed(link, m.delta_x); }
  };
  return std::visit(Visitor{link}, mis);
}

ResolutionCheck super_resolution_check(const Link &link, const MisalignmentModel &mis) {
  ResolutionCheck check;
  check.d_min = d_min_for(link, mis);
  const double ell_mean = 0.5 * (link.legs.plus.ell() + link.legs.minus.ell());
  check.d_rayleigh = channel::rayleigh_limit(link.geometry, ell_mean);
  check.margin = check.d_rayleigh - check.d_min;
  check.resolved = check.margin > 0.0;
  return check;
}

} // namespace superres::bhd
