// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "superres/bhd.hpp"
#include "superres/channel.hpp"
#include "superres/mcsim.hpp"
#include "superres/scenario.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace superres;

namespace {

const std::filesystem::path kData = SUPERRES_TEST_DATA;
const beam::BeamGeometry kOptics(600e-9, 0.1);

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char *name;
  double limit_s;
  std::function<Outcome()> body;
};

std::string fmt(const char *format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bhd::Link force_transmissivity(bhd::Link link, double t) {
  link.legs.plus = channel::ChannelLeg::with_transmissivity(link.legs.plus.ell(), t);
  link.legs.minus = channel::ChannelLeg::with_transmissivity(link.legs.minus.ell(), t);
  return link;
}

bhd::Link reference_link(double ell, double d, double n_per_source = 1e3, double eta = 0.9) {
  bhd::SourcePair p;
  std::tie(p.ell_plus, p.ell_minus) = bhd::phase_matched_distances(kOptics, ell);
  p.n_plus = p.n_minus = n_per_source;
  p.d = d;
  bhd::Receiver rx;
  rx.eta = eta;
  return bhd::make_link(kOptics, p, rx);
}

Outcome sql_recovery() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double n = std::pow(10.0, 0.6 * i);
    for (int j = 0; j < 10; ++j) {
      const beam::BeamGeometry g(600e-9, 0.02 + 0.02 * j);
      for (int k = 0; k < 10; ++k) {
        const double ell = std::pow(10.0, 2.0 + 0.55 * k);
        bhd::SourcePair p;
        std::tie(p.ell_plus, p.ell_minus) = bhd::phase_matched_distances(g, ell);
        p.n_plus = n;
        p.n_minus = 0.5 * n + 1.0;
        bhd::Receiver rx;
        rx.eta = 1.0;
        const auto link = force_transmissivity(bhd::make_link(g, p, rx), 1.0);
        const double sql = bhd::d_sql(p, g);
        worst = std::max(worst, std::abs(bhd::d_min(link) - sql) / sql);
      }
    }
  }
  return {worst <= 1e-12, fmt("max relative error %.3e over 1000 points", worst)};
}

Outcome transmissivity_oracle() {
  const channel::Aperture a(0.2);
  double worst = 0.0;
  for (double ell : {0.0, 1e3, 1e4, 1e5, 1e6, 1e7}) {
    worst = std::max(worst, std::abs(channel::transmissivity_closed(kOptics, a, ell) -
                                     channel::transmissivity_numeric(kOptics, a, ell)));
  }
  const double spot = channel::transmissivity_numeric(kOptics, a, 1e5);
  const bool ok = worst <= 1e-10 && std::abs(spot - 0.6717) <= 1e-4;
  return {ok, fmt("max |closed - quadrature| %.2e, T(1e5 m) = %.6f", worst, spot)};
}

Outcome distance_sweep() {
  const auto cfg = scenario::load_config(kData / "curves.conf");
  const auto table = scenario::run_sweep(cfg);
  std::size_t unresolved = 0;
  double worst_ell = 0.0;
  for (const auto &row : table.rows) {
    if (!row.resolved) {
      ++unresolved;
      worst_ell = std::max(worst_ell, row.ell);
    }
  }
  std::ostringstream first, second;
  scenario::write_csv(table, first);
  scenario::write_csv(scenario::run_sweep(cfg), second);
  std::ifstream golden_in(kData / "curves.golden.csv", std::ios::binary);
  std::ostringstream golden;
  golden << golden_in.rdbuf();
  const bool stable = first.str() == second.str() && first.str() == golden.str();
  const bool ok = table.rows.size() == 1200 && unresolved == 0 && table.error_count() == 0 && stable;
  auto detail = fmt("%zu rows, %zu unresolved", table.rows.size(), unresolved);
  if (unresolved != 0) {
    detail += fmt(" (N=100, eta=0.1, ell <= %.4g m)", worst_ell);
  }
  detail += stable ? ", golden CSV byte-identical" : ", golden CSV MISMATCH";
  return {ok, detail};
}

Outcome conclusion_thresholds() {
  const bhd::MisalignmentModel mis = bhd::FixedMisalignment{1e-2};
  auto check = [&](double ell) {
    return bhd::super_resolution_check(reference_link(ell, 0.0, 100.0), mis);
  };
  const auto far = check(1e5);
  const auto mid = check(2e4);
  const auto near = check(1e3);
  const bool ok = far.resolved && mid.resolved && !near.resolved;
  return {ok, fmt("resolved at 1e5/2e4/1e3 m: %s/%s/%s (d_min %.4g m vs %.4g m at 1e3)",
                  far.resolved ? "yes" : "no", mid.resolved ? "yes" : "no",
                  near.resolved ? "yes" : "no", near.d_min, near.d_rayleigh)};
}

Outcome misalignment_ordering() {
  int violations = 0;
  for (double x : {1e-4, 1e-3, 1e-2}) {
    for (double ell : {1e4, 1e5, 1e6}) {
      const auto link = reference_link(ell, 0.0);
      const double base = bhd::d_min(link);
      const double fluct = bhd::d_min_fluctuating(link, x);
      const double fixed = bhd::d_min_fixed(link, x);
      if (!(fixed > fluct && fluct > base)) ++violations;
    }
  }
  return {violations == 0, fmt("%d of 9 grid points out of order", violations)};
}

Outcome monte_carlo() {
  struct Case {
    const char *name;
    bhd::Link link;
    std::optional<double> jitter;
  };
  const std::vector<Case> cases = {
      {"ideal", force_transmissivity(reference_link(1e5, 1e-3, 1e3, 1.0), 1.0), {}},
      {"lossy", reference_link(1e5, 1e-3), {}},
      {"jittered", reference_link(1e5, 1e-3), 1e-3},
  };
  bool ok = true;
  std::string detail;
  for (const auto &c : cases) {
    mcsim::ShotPlan plan;
    plan.shots = 100000;
    plan.seed = 20240611;
    plan.jitter = c.jitter;
    const auto r = mcsim::validate(c.link, plan);
    const bool pass = std::abs(r.mean_z_score) <= 4.0 && std::abs(r.variance_z_score) <= 4.0;
    ok = ok && pass;
    if (!detail.empty()) detail += "; ";
    detail += fmt("%s z_mean %+.2f z_var %+.2f", c.name, r.mean_z_score, r.variance_z_score);
  }
  return {ok, detail};
}

Outcome mode_engine() {
  double worst_inner = 0.0;
  for (double z : {0.0, kOptics.rayleigh_range(), 10.0 * kOptics.rayleigh_range()}) {
    for (int n = 0; n <= 4; ++n) {
      for (int k = 0; k <= 4; ++k) {
        const double half = beam::mode_extent(kOptics, std::max(n, k), z);
        const auto inner = numerics::integrate(
            [&](double x) {
              return std::conj(beam::hg_amplitude_1d(kOptics, n, x, z)) * beam::hg_amplitude_1d(kOptics, k, x, z);
            },
            -half, half);
        worst_inner = std::max(worst_inner, std::abs(inner - std::complex<double>(n == k ? 1.0 : 0.0)));
      }
    }
  }
  double worst_ratio = 0.0;
  for (double ratio = 0.01; ratio <= 0.3 + 1e-12; ratio += 0.01) {
    const double c = beam::overlap_coefficient(kOptics, 1, ratio * kOptics.waist(), 0.0).real();
    worst_ratio = std::max(worst_ratio, std::abs(c + ratio) / (ratio * ratio * ratio));
  }
  const bool ok = worst_inner <= 1e-8 && worst_ratio <= 1.0;
  return {ok, fmt("max orthonormality defect %.2e; worst |c10 + d/w0| / (d/w0)^3 = %.3f", worst_inner,
                  worst_ratio)};
}

Outcome jitter_offset() {
  double worst = 0.0;
  for (double n : {1.0, 1e2, 1e4}) {
    for (double n_lo : {1e2, 1e6, 1e9}) {
      for (double sigma : {1e-4, 1e-2, 1.0}) {
        auto link = force_transmissivity(reference_link(1e5, 0.0, n), 1.0);
        link.receiver.n_lo = n_lo;
        const double offset = sigma * bhd::misalignment_offset_coefficient(link);
        const double expected = sigma / (2.0 * std::sqrt(2.0) * std::sqrt(n_lo));
        worst = std::max(worst, std::abs(offset - expected) / expected);
      }
    }
  }
  auto spot_link = force_transmissivity(reference_link(1e5, 0.0), 1.0);
  const double spot = bhd::d_min_fluctuating(spot_link, 1.0) - bhd::d_min(spot_link);
  const double composed = bhd::d_min_fluctuating(spot_link, 0.25) - bhd::d_min(spot_link);
  const bool ok = worst <= 1e-12 && std::abs(spot - 3.536e-4) <= 1e-7 &&
                  std::abs(composed - 0.25 * spot) <= 1e-15;
  return {ok, fmt("max relative error %.2e; offset(N_lo=1e6, sigma=1 m) = %.6e m", worst, spot)};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "SQL recovery", 1.0, sql_recovery},
      {2, "transmissivity oracle", 1.0, transmissivity_oracle},
      {3, "distance sweep resolved", 5.0, distance_sweep},
      {4, "conclusion thresholds", 1.0, conclusion_thresholds},
      {5, "misalignment ordering", 1.0, misalignment_ordering},
      {6, "Monte Carlo oracle", 30.0, monte_carlo},
      {7, "mode-engine properties", 5.0, mode_engine},
      {8, "jitter-offset formula", 1.0, jitter_offset},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.limit_s;
    const bool pass = outcome.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  #%d %-24s %s [%.3f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), elapsed, c.limit_s, in_time ? "" : ", TOO SLOW");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
