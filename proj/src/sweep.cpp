#include "superres/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace superres::scenario {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow evaluate_cell(ScenarioConfig cell, const std::vector<SweepAxis> &axes,
                       const std::vector<double> &values) {
  SweepRow row;
  row.axis_values = values;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    set_parameter(cell, axes[i].parameter, values[i]);
  }
  row.ell = cell.ell;
  try {
    const auto check = bhd::super_resolution_check(cell.link(), cell.misalignment);
    row.d_min = check.d_min;
    row.d_rayleigh = check.d_rayleigh;
    row.margin = check.margin;
    row.resolved = check.resolved;
  } catch (const std::exception &e) {
    // Domain, truncation and contract failures stay local to the cell.
    row.d_min = row.d_rayleigh = row.margin = kNaN;
    row.resolved = false;
    row.error = e.what();
  }
  return row;
}

} // namespace

std::vector<std::string> SweepTable::extra_axes() const {
  std::vector<std::string> out;
  std::copy_if(axes.begin(), axes.end(), std::back_inserter(out),
               [](const std::string &a) { return a != "ell"; });
  return out;
}

std::size_t SweepTable::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow &r) { return r.error.has_value(); }));
}

SweepTable run_sweep(const ScenarioConfig &cfg) {
  SweepTable table;
  std::vector<std::vector<double>> grids;
  std::size_t cells = 1;
  for (const auto &axis : cfg.axes) {
    table.axes.push_back(axis.parameter);
    grids.push_back(axis.grid());
    cells *= grids.back().size();
  }
  table.rows.reserve(cells);

  // Odometer over the axes, last axis fastest.
  std::vector<std::size_t> index(cfg.axes.size(), 0);
  std::vector<double> values(cfg.axes.size());
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t i = 0; i < index.size(); ++i) {
      values[i] = grids[i][index[i]];
    }
    table.rows.push_back(evaluate_cell(cfg, cfg.axes, values));
    for (std::size_t i = index.size(); i-- > 0;) {
      if (++index[i] < grids[i].size()) {
        break;
      }
      index[i] = 0;
    }
  }
  return table;
}

SweepTable run_region(const ScenarioConfig &cfg, std::string_view axis1, std::string_view axis2) {
  if (axis1 == axis2) {
    throw DomainError("region: the two axes must differ");
  }
  auto find_axis = [&](std::string_view name) {
    const auto it = std::find_if(cfg.axes.begin(), cfg.axes.end(),
                                 [&](const SweepAxis &a) { return a.parameter == name; });
    if (it == cfg.axes.end()) {
      throw DomainError("region: axis '" + std::string(name) +
                        "' is not declared with a sweep line in the config");
    }
    return *it;
  };
  if (cfg.axes.size() != 2) {
    throw DomainError("region: config must declare exactly the two mapped axes");
  }
  ScenarioConfig ordered = cfg;
  ordered.axes = {find_axis(axis1), find_axis(axis2)};
  return run_sweep(ordered);
}

mcsim::McReport mc_validate(const ScenarioConfig &cfg, std::uint64_t shots, std::uint64_t seed,
                            const mcsim::ValidateOptions &options) {
  mcsim::ShotPlan plan;
  plan.shots = shots;
  plan.seed = seed;
  if (const auto *fluct = std::get_if<bhd::FluctuatingMisalignment>(&cfg.misalignment)) {
    plan.jitter = fluct->sigma_d;
  } else if (std::holds_alternative<bhd::FixedMisalignment>(cfg.misalignment)) {
    throw DomainError("mc: the Monte Carlo oracle covers aligned and fluctuating cases only");
  }
  return mcsim::validate(cfg.link(), plan, options);
}

} // namespace superres::scenario
