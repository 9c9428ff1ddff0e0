#pragma once

#include "superres/bhd.hpp"
#include "superres/numerics.hpp"

#include <cstdint>
#include <optional>

namespace superres::mcsim {

/// Quadrature variance of a vacuum mode with hbar = 2 (X = a + a^dagger).
inline constexpr double kVacuumQuadratureVariance = 1.0;

/// How channel and detector loss inject vacuum noise.
enum class LossModel {
  /// One vacuum mode per source weighted by sqrt(eta(1-T)) + sqrt(1-eta),
  /// as the homodyne output operator is written.
  lumped_vacuum,
  /// Separate vacuum inputs at the channel and detector beam splitters.
  independent_ports,
};

struct ShotPlan {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  /// When set, the separation is redrawn as N(d, jitter^2) every shot.
  std::optional<double> jitter;

  void validate() const;
};

struct ValidateOptions {
  LossModel loss = LossModel::lumped_vacuum;
  /// Multiplies the analytic variance before comparison; only for exercising the z-test.
  double analytic_variance_scale = 1.0;
};

struct McReport {
  std::uint64_t shots = 0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double analytic_mean = 0.0;
  double analytic_variance = 0.0;
  double mean_z_score = 0.0;
  double variance_z_score = 0.0;
  /// False for a single shot: the sample variance and its z-score are NaN.
  bool variance_defined = true;
  /// Fewer shots than kLowPowerShots; the z-test has little power.
  bool low_power = false;

  static constexpr std::uint64_t kLowPowerShots = 1000;

  bool passed(double z_threshold = 4.0) const;
};

/// One homodyne outcome J = J+ + J- for the given separation, in field_norm^2 units.
double simulate_shot(const bhd::Link &link, numerics::RngStream &stream, double separation,
                     LossModel loss = LossModel::lumped_vacuum);

/// Runs plan.shots outcomes and compares the sample moments with the closed forms
/// (aligned, or fluctuating when plan.jitter is set).
McReport validate(const bhd::Link &link, const ShotPlan &plan, const ValidateOptions &options = {});

} // namespace superres::mcsim
