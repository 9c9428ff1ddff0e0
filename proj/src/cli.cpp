#include "superres/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>

namespace superres::scenario {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;

bhd::MisalignmentModel parse_misalignment(const std::string &text) {
  if (text == "none") {
    return bhd::NoMisalignment{};
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("--misalignment expects none, fluct:<sigma_d> or fixed:<delta_x>");
  }
  const std::string kind = text.substr(0, colon);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1), &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != text.size() - colon - 1 || !std::isfinite(value)) {
    throw DomainError("--misalignment: '" + text.substr(colon + 1) + "' is not a number (metres)");
  }
  if (kind == "fluct") {
    if (value < 0.0) throw DomainError("--misalignment: sigma_d must be >= 0");
    return bhd::FluctuatingMisalignment{value};
  }
  if (kind == "fixed") {
    return bhd::FixedMisalignment{value};
  }
  throw DomainError("--misalignment expects none, fluct:<sigma_d> or fixed:<delta_x>");
}

void print_report(const mcsim::McReport &r, std::ostream &out) {
  out << "shots = " << r.shots << '\n'
      << "sample_mean = " << format_double(r.sample_mean) << '\n'
      << "analytic_mean = " << format_double(r.analytic_mean) << '\n'
      << "mean_z = " << format_double(r.mean_z_score) << '\n'
      << "sample_variance = " << format_double(r.sample_variance) << '\n'
      << "analytic_variance = " << format_double(r.analytic_variance) << '\n'
      << "variance_z = " << format_double(r.variance_z_score) << '\n';
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Super-resolution limits of HG10 balanced homodyne detection"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto *dmin_cmd = app.add_subcommand("dmin", "d_min, d_rayleigh and the super-resolution check");
  std::optional<double> ell_override;
  std::string misalignment_text;
  dmin_cmd->add_option("--config", config_path, "scenario file")->required();
  dmin_cmd->add_option("--ell", ell_override, "propagation distance in metres");
  dmin_cmd->add_option("--misalignment", misalignment_text, "none | fluct:<sigma_d> | fixed:<delta_x>");

  auto *sweep_cmd = app.add_subcommand("sweep", "evaluate the config's sweep axes");
  std::string plot_path;
  sweep_cmd->add_option("--config", config_path, "scenario file")->required();
  sweep_cmd->add_option("--out", out_path, "CSV output")->required();
  sweep_cmd->add_option("--plot", plot_path, "optional SVG of d_min vs ell");

  auto *region_cmd = app.add_subcommand("region", "two-parameter super-resolution map");
  std::string axis1;
  std::string axis2;
  region_cmd->add_option("--config", config_path, "scenario file")->required();
  region_cmd->add_option("--axis1", axis1, "first swept parameter")->required();
  region_cmd->add_option("--axis2", axis2, "second swept parameter")->required();
  region_cmd->add_option("--out", out_path, "CSV output")->required();

  auto *mc_cmd = app.add_subcommand("mc", "Monte Carlo check of the closed-form moments");
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  std::string loss_text = "lumped";
  double variance_scale = 1.0;
  mc_cmd->add_option("--config", config_path, "scenario file")->required();
  mc_cmd->add_option("--shots", shots, "number of homodyne outcomes")->required()->check(
      CLI::PositiveNumber);
  mc_cmd->add_option("--seed", seed, "RNG seed")->required();
  mc_cmd->add_option("--loss-model", loss_text, "lumped | independent")
      ->check(CLI::IsMember({"lumped", "independent"}));
  mc_cmd->add_option("--variance-scale", variance_scale,
                     "scale the analytic variance (exercises the z-test)")
      ->group("");

  auto *modes_cmd = app.add_subcommand("modes", "sampled |u_n(x, z)|^2 profile");
  int order = 0;
  double plane = 0.0;
  int samples = 401;
  modes_cmd->add_option("--n", order, "mode order")->required()->check(CLI::Range(0, 30));
  modes_cmd->add_option("--z", plane, "propagation distance in metres")->required()->check(
      CLI::NonNegativeNumber);
  modes_cmd->add_option("--out", out_path, "CSV output")->required();
  modes_cmd->add_option("--config", config_path, "scenario file for lambda and w0");
  modes_cmd->add_option("--points", samples, "samples across the profile")->check(
      CLI::Range(2, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dmin_cmd) {
      auto cfg = load_config(config_path);
      if (ell_override) {
        set_parameter(cfg, "ell", *ell_override);
      }
      if (!misalignment_text.empty()) {
        cfg.misalignment = parse_misalignment(misalignment_text);
      }
      const auto check = bhd::super_resolution_check(cfg.link(), cfg.misalignment);
      out << "d_min = " << format_double(check.d_min) << " m\n"
          << "d_rayleigh = " << format_double(check.d_rayleigh) << " m\n"
          << "resolved = " << (check.resolved ? "true" : "false") << '\n'
          << "margin = " << format_double(check.margin) << " m\n";
      return kExitOk;
    }
    if (*sweep_cmd) {
      const auto cfg = load_config(config_path);
      const auto table = run_sweep(cfg);
      emit_csv(table, out_path);
      if (!plot_path.empty()) {
        emit_plot(table, PlotSpec{}, plot_path);
      }
      if (const auto failed = table.error_count(); failed != 0) {
        err << "warning: " << failed << " of " << table.rows.size()
            << " cells could not be evaluated (written as nan)\n";
      }
      out << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
      return kExitOk;
    }
    if (*region_cmd) {
      const auto cfg = load_config(config_path);
      const auto table = run_region(cfg, axis1, axis2);
      emit_csv(table, out_path);
      out << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
      return kExitOk;
    }
    if (*mc_cmd) {
      const auto cfg = load_config(config_path);
      mcsim::ValidateOptions options;
      options.loss = loss_text == "independent" ? mcsim::LossModel::independent_ports
                                                : mcsim::LossModel::lumped_vacuum;
      options.analytic_variance_scale = variance_scale;
      const auto report = mc_validate(cfg, shots, seed, options);
      print_report(report, out);
      if (report.low_power) {
        err << "warning: only " << report.shots << " shots; the z-test has little power\n";
      }
      if (!report.variance_defined) {
        err << "error: sample variance is undefined for a single shot\n";
        return kExitValidationFailed;
      }
      const bool ok = report.passed();
      out << "status = " << (ok ? "pass" : "fail") << '\n';
      return ok ? kExitOk : kExitValidationFailed;
    }
    if (*modes_cmd) {
      ScenarioConfig cfg;
      if (!config_path.empty()) {
        cfg = load_config(config_path);
      }
      const auto g = cfg.geometry();
      const double half = beam::mode_extent(g, order, plane);
      std::ofstream csv(out_path, std::ios::binary | std::ios::trunc);
      if (!csv) {
        throw IoError("cannot write CSV to '" + out_path + "'");
      }
      csv << "x,intensity\n";
      for (int i = 0; i < samples; ++i) {
        const double x = half * (2.0 * i - (samples - 1)) / (samples - 1);
        csv << format_double(x) << ',' << format_double(std::norm(beam::hg_amplitude_1d(g, order, x, plane)))
            << '\n';
      }
      out << "wrote " << samples << " samples to " << out_path << '\n';
      return kExitOk;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace superres::scenario
