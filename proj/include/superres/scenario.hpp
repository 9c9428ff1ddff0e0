#pragma once

#include "superres/bhd.hpp"
#include "superres/mcsim.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superres::scenario {

enum class Spacing { linear, log, list };

/// One sweep axis: `sweep <param> lin|log <min> <max> <points>` or
/// `sweep <param> list <v1> <v2> ...`. Values are in SI base units.
struct SweepAxis {
  std::string parameter;
  Spacing spacing = Spacing::linear;
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  std::vector<double> values; // list spacing only

  std::vector<double> grid() const;
};

/// Parameters that may appear as sweep axes.
bool is_sweepable(std::string_view parameter);

/// A full operating point plus optional sweep axes. Defaults are the
/// reference LEO optics: 600 nm, w0 = 0.1 m, r = 0.2 m, phi_lo = 0,
/// N_lo = 1e6, 1e3 photons per source, eta = 0.9, ell = 1e5 m.
struct ScenarioConfig {
  double wavelength = 600e-9;
  double waist = 0.1;
  double aperture_radius = 0.2;
  double ell = 1e5;
  /// Explicit per-source distances; when absent both derive from `ell`
  /// via bhd::phase_matched_distances.
  std::optional<double> ell_plus;
  std::optional<double> ell_minus;
  double n_plus = 1e3;
  double n_minus = 1e3;
  double eta = 0.9;
  double n_lo = 1e6;
  double phi_lo = 0.0;
  /// Source phases default to phi_lo (phase-locked receiver).
  std::optional<double> phi_plus;
  std::optional<double> phi_minus;
  double d = 0.0;
  double theta_d = 0.0;
  bhd::MisalignmentModel misalignment;
  std::vector<SweepAxis> axes;

  beam::BeamGeometry geometry() const;
  bhd::SourcePair sources() const;
  bhd::Receiver receiver() const;
  bhd::Link link() const;
};

/// Sets a named parameter (sweepable names plus `ell`), as a sweep cell does.
void set_parameter(ScenarioConfig &cfg, std::string_view parameter, double value);

/// Parses `key = value [unit]` lines and `sweep` declarations. `#` starts a comment.
/// Throws ParseError naming the key and line.
ScenarioConfig parse_config(std::istream &in);
ScenarioConfig load_config(const std::filesystem::path &path);

struct SweepRow {
  /// Values of every declared axis, in declaration order.
  std::vector<double> axis_values;
  double ell = 0.0;
  double d_min = 0.0;
  double d_rayleigh = 0.0;
  double margin = 0.0;
  bool resolved = false;
  /// Set when the cell could not be evaluated; numeric fields are then NaN.
  std::optional<std::string> error;
};

struct SweepTable {
  std::vector<std::string> axes;
  std::vector<SweepRow> rows;

  /// Axes other than `ell`, in declaration order; these become extra CSV columns.
  std::vector<std::string> extra_axes() const;
  std::size_t error_count() const;
};

/// Evaluates the Cartesian product of the axes (last axis fastest).
/// With no axes, returns the single configured point.
SweepTable run_sweep(const ScenarioConfig &cfg);

/// Two-parameter map: both axes must be declared, and no others.
SweepTable run_region(const ScenarioConfig &cfg, std::string_view axis1, std::string_view axis2);

/// Header `ell,d_min,d_rayleigh,resolved,margin[,extra axes]`, shortest round-trip floats.
void write_csv(const SweepTable &table, std::ostream &out);
void emit_csv(const SweepTable &table, const std::filesystem::path &path);

struct PlotSpec {
  std::string title = "Minimum resolvable separation";
  int width = 720;
  int height = 480;
};

/// Log-log SVG of d_min against ell: one series per combination of the other
/// axes, the Rayleigh line, and the shaded region below it.
void write_plot(const SweepTable &table, const PlotSpec &spec, std::ostream &out);
void emit_plot(const SweepTable &table, const PlotSpec &spec, const std::filesystem::path &path);

/// Runs the Monte Carlo oracle for the configured operating point; the
/// configured fluctuating misalignment, if any, becomes the per-shot jitter.
mcsim::McReport mc_validate(const ScenarioConfig &cfg, std::uint64_t shots, std::uint64_t seed,
                            const mcsim::ValidateOptions &options = {});

/// Command-line entry point; returns the process exit status.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

} // namespace superres::scenario
