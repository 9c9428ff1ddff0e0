#include "superres/mcsim.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace superres::mcsim {

namespace {

// Contribution of one source: signal quadrature plus the vacuum admitted by its losses.
double source_output(const bhd::Link &link, numerics::RngStream &stream, double separation,
                     beam::Source which, LossModel loss) {
  const auto &g = link.geometry;
  const auto &p = link.sources;
  const auto &rx = link.receiver;
  const bool plus = which == beam::Source::plus;
  const double photons = plus ? p.n_plus : p.n_minus;
  const double ell = plus ? p.ell_plus : p.ell_minus;
  const double phase = plus ? p.phi_plus : p.phi_minus;
  const double t = plus ? link.legs.plus.transmissivity() : link.legs.minus.transmissivity();

  const auto coeffs = beam::decompose_displacement(g, separation, p.theta_d, which);
  const std::complex<double> amplitude =
      coeffs.c10 * std::sqrt(photons) * std::polar(1.0, phase + bhd::path_phase(g, ell));
  const double quadrature_mean = 2.0 * std::real(amplitude * std::polar(1.0, -rx.phi_lo));

  const double vacuum_sd = std::sqrt(kVacuumQuadratureVariance);
  const double signal = numerics::sample_gaussian(stream, quadrature_mean, vacuum_sd);
  const double channel_weight = std::sqrt(rx.eta * (1.0 - t));
  const double detector_weight = std::sqrt(1.0 - rx.eta);

  double noise = 0.0;
  if (loss == LossModel::lumped_vacuum) {
    noise = (channel_weight + detector_weight) * numerics::sample_gaussian(stream, 0.0, vacuum_sd);
  } else {
    noise = channel_weight * numerics::sample_gaussian(stream, 0.0, vacuum_sd) +
            detector_weight * numerics::sample_gaussian(stream, 0.0, vacuum_sd);
  }
  return std::sqrt(rx.eta * t) * signal + noise;
}

} // namespace

void ShotPlan::validate() const {
  if (shots < 1) {
    throw DomainError("ShotPlan: need at least one shot");
  }
  if (jitter && !(*jitter >= 0.0)) {
    throw DomainError("ShotPlan: jitter must be >= 0");
  }
}

bool McReport::passed(double z_threshold) const {
  return variance_defined && std::abs(mean_z_score) <= z_threshold &&
         std::abs(variance_z_score) <= z_threshold;
}

double simulate_shot(const bhd::Link &link, numerics::RngStream &stream, double separation,
                     LossModel loss) {
  const auto &rx = link.receiver;
  const double scale = rx.field_norm * rx.field_norm * std::sqrt(rx.n_lo);
  return scale * (source_output(link, stream, separation, beam::Source::plus, loss) +
                  source_output(link, stream, separation, beam::Source::minus, loss));
}

McReport validate(const bhd::Link &link, const ShotPlan &plan, const ValidateOptions &options) {
  plan.validate();
  numerics::RngStream stream(plan.seed);

  // Welford accumulation keeps the variance stable for large means.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t k = 1; k <= plan.shots; ++k) {
    const double separation =
        plan.jitter ? numerics::sample_gaussian(stream, link.sources.d, *plan.jitter)
                    : link.sources.d;
    const double outcome = simulate_shot(link, stream, separation, options.loss);
    const double delta = outcome - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (outcome - mean);
  }

  const auto analytic = plan.jitter ? bhd::stats_fluctuating(link, *plan.jitter, link.sources.d)
                                    : bhd::stats_aligned(link);

  McReport report;
  report.shots = plan.shots;
  report.sample_mean = mean;
  report.analytic_mean = analytic.mean;
  report.analytic_variance = analytic.variance * options.analytic_variance_scale;
  report.low_power = plan.shots < McReport::kLowPowerShots;

  const double m = static_cast<double>(plan.shots);
  report.mean_z_score = (mean - report.analytic_mean) / std::sqrt(report.analytic_variance / m);
  if (plan.shots < 2) {
    report.variance_defined = false;
    report.sample_variance = std::numeric_limits<double>::quiet_NaN();
    report.variance_z_score = std::numeric_limits<double>::quiet_NaN();
  } else {
    report.sample_variance = m2 / (m - 1.0);
    report.variance_z_score = (report.sample_variance - report.analytic_variance) /
                              (std::sqrt(2.0 / (m - 1.0)) * report.analytic_variance);
  }
  return report;
}

} // namespace superres::mcsim
