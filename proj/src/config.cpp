#include "superres/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace superres::scenario {

namespace {

enum class Kind { length, angle, count, fraction, word };

struct KeySpec {
  std::string_view name;
  Kind kind;
};

constexpr std::array<KeySpec, 19> kKeys = {{
    {"lambda", Kind::length},
    {"w0", Kind::length},
    {"r", Kind::length},
    {"ell", Kind::length},
    {"ell_plus", Kind::length},
    {"ell_minus", Kind::length},
    {"d", Kind::length},
    {"sigma_d", Kind::length},
    {"delta_x", Kind::length},
    {"phi_lo", Kind::angle},
    {"phi_plus", Kind::angle},
    {"phi_minus", Kind::angle},
    {"theta_d", Kind::angle},
    {"eta", Kind::fraction},
    {"n_lo", Kind::count},
    {"n_plus", Kind::count},
    {"n_minus", Kind::count},
    {"photons_per_source", Kind::count},
    {"photons_total", Kind::count},
}};

constexpr std::array<std::string_view, 8> kSweepable = {
    "ell", "n_plus", "n_minus", "photons_per_source", "eta", "sigma_d", "delta_x", "r"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) {
      break;
    }
    const auto end = s.find_first_of(" \t", start);
    words.push_back(s.substr(start, end == std::string_view::npos ? end : end - start));
    pos = end == std::string_view::npos ? s.size() : end;
  }
  return words;
}

std::optional<double> to_number(std::string_view text) {
  double value = 0.0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> length_scale(std::string_view unit) {
  if (unit == "m") return 1.0;
  if (unit == "km") return 1e3;
  if (unit == "cm") return 1e-2;
  if (unit == "mm") return 1e-3;
  if (unit == "um") return 1e-6;
  if (unit == "nm") return 1e-9;
  return std::nullopt;
}

struct RawValue {
  double number = 0.0;
  std::string word;
  std::size_t line = 0;
};

class Parser {
public:
  ScenarioConfig parse(std::istream &in) {
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      const auto words = split_words(line);
      if (words.front() == "sweep") {
        parse_sweep(words, line_no);
      } else {
        parse_assignment(line, line_no);
      }
    }
    return build();
  }

private:
  std::map<std::string, RawValue, std::less<>> values_;
  std::vector<SweepAxis> axes_;
  std::map<std::string, std::size_t, std::less<>> axis_lines_;

  void parse_assignment(std::string_view line, std::size_t line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, std::string(split_words(line).front()),
                       "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto words = split_words(trim(line.substr(eq + 1)));
    const auto spec = std::find_if(kKeys.begin(), kKeys.end(),
                                   [&](const KeySpec &k) { return k.name == key; });
    const bool is_word_key = key == "misalignment";
    if (spec == kKeys.end() && !is_word_key) {
      throw ParseError(line_no, key, "unknown key");
    }
    if (values_.count(key) != 0) {
      throw ParseError(line_no, key, "set more than once (first on line " +
                                         std::to_string(values_.at(key).line) + ")");
    }
    if (words.empty()) {
      throw ParseError(line_no, key, "missing value");
    }
    RawValue value;
    value.line = line_no;
    if (is_word_key) {
      if (words.size() != 1) {
        throw ParseError(line_no, key, "expected one of none, fluctuating, fixed");
      }
      value.word = std::string(words.front());
      if (value.word != "none" && value.word != "fluctuating" && value.word != "fixed") {
        throw ParseError(line_no, key, "expected one of none, fluctuating, fixed");
      }
    } else {
      value.number = parse_quantity(key, spec->kind, words, line_no);
    }
    values_.emplace(key, value);
  }

  static double parse_quantity(const std::string &key, Kind kind,
                               const std::vector<std::string_view> &words, std::size_t line_no) {
    if (words.size() > 2) {
      throw ParseError(line_no, key, "expected '<number> [unit]'");
    }
    const auto number = to_number(words[0]);
    if (!number) {
      throw ParseError(line_no, key, "not a finite number: '" + std::string(words[0]) + "'");
    }
    const std::string_view unit = words.size() == 2 ? words[1] : std::string_view{};
    double value = *number;
    switch (kind) {
    case Kind::length: {
      if (unit.empty()) {
        throw ParseError(line_no, key, "length needs a unit (m, km, cm, mm, um, nm)");
      }
      const auto scale = length_scale(unit);
      if (!scale) {
        throw ParseError(line_no, key, "unknown length unit '" + std::string(unit) + "'");
      }
      value *= *scale;
      break;
    }
    case Kind::angle:
      if (unit == "deg") {
        value *= std::numbers::pi / 180.0;
      } else if (!unit.empty() && unit != "rad") {
        throw ParseError(line_no, key, "unknown angle unit '" + std::string(unit) + "'");
      }
      break;
    case Kind::count:
    case Kind::fraction:
      if (!unit.empty()) {
        throw ParseError(line_no, key, "dimensionless quantity takes no unit");
      }
      break;
    case Kind::word:
      break;
    }
    check_range(key, value, line_no);
    return value;
  }

  static void check_range(std::string_view key, double value, std::size_t line_no) {
    auto fail = [&](const std::string &why) { throw ParseError(line_no, std::string(key), why); };
    if (key == "eta") {
      if (!(value > 0.0 && value <= 1.0)) fail("must lie in (0, 1]");
    } else if (key == "n_lo") {
      if (!(value > 0.0)) fail("must be > 0");
    } else if (key == "n_plus" || key == "n_minus" || key == "photons_per_source" ||
               key == "photons_total" || key == "d" || key == "sigma_d") {
      if (!(value >= 0.0)) fail("must be >= 0");
    } else if (key == "lambda" || key == "w0" || key == "r" || key == "ell" ||
               key == "ell_plus" || key == "ell_minus") {
      if (!(value > 0.0)) fail("must be > 0");
    }
  }

  void parse_sweep(const std::vector<std::string_view> &words, std::size_t line_no) {
    if (words.size() < 4) {
      throw ParseError(line_no, "sweep", "expected 'sweep <param> lin|log|list ...'");
    }
    SweepAxis axis;
    axis.parameter = std::string(words[1]);
    if (!is_sweepable(axis.parameter)) {
      throw ParseError(line_no, axis.parameter, "not a sweepable parameter");
    }
    if (axis_lines_.count(axis.parameter) != 0) {
      throw ParseError(line_no, axis.parameter, "swept more than once");
    }
    const std::string_view spacing = words[2];
    auto number_at = [&](std::size_t i) {
      const auto v = to_number(words[i]);
      if (!v) {
        throw ParseError(line_no, axis.parameter,
                         "not a finite number: '" + std::string(words[i]) + "'");
      }
      return *v;
    };
    if (spacing == "list") {
      axis.spacing = Spacing::list;
      for (std::size_t i = 3; i < words.size(); ++i) {
        axis.values.push_back(number_at(i));
      }
    } else if (spacing == "lin" || spacing == "log") {
      if (words.size() != 6) {
        throw ParseError(line_no, axis.parameter, "expected '<min> <max> <points>'");
      }
      axis.spacing = spacing == "lin" ? Spacing::linear : Spacing::log;
      axis.min = number_at(3);
      axis.max = number_at(4);
      const double points = number_at(5);
      if (!(axis.min < axis.max)) {
        throw ParseError(line_no, axis.parameter, "axis needs min < max");
      }
      if (points < 2 || points != std::floor(points) || points > 1e7) {
        throw ParseError(line_no, axis.parameter, "axis needs an integer number of points >= 2");
      }
      if (axis.spacing == Spacing::log && !(axis.min > 0.0)) {
        throw ParseError(line_no, axis.parameter, "log axis needs min > 0");
      }
      axis.points = static_cast<int>(points);
    } else {
      throw ParseError(line_no, axis.parameter, "spacing must be lin, log or list");
    }
    axis_lines_.emplace(axis.parameter, line_no);
    axes_.push_back(std::move(axis));
  }

  const RawValue *find(std::string_view key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  std::size_t line_of(std::string_view key) const {
    if (const auto *v = find(key)) return v->line;
    if (const auto it = axis_lines_.find(key); it != axis_lines_.end()) return it->second;
    return 0;
  }

  bool mentioned(std::string_view key) const {
    return find(key) != nullptr || axis_lines_.count(key) != 0;
  }

  ScenarioConfig build() const {
    ScenarioConfig cfg;
    auto take = [&](std::string_view key, double &field) {
      if (const auto *v = find(key)) field = v->number;
    };
    auto take_opt = [&](std::string_view key, std::optional<double> &field) {
      if (const auto *v = find(key)) field = v->number;
    };
    take("lambda", cfg.wavelength);
    take("w0", cfg.waist);
    take("r", cfg.aperture_radius);
    take("ell", cfg.ell);
    take_opt("ell_plus", cfg.ell_plus);
    take_opt("ell_minus", cfg.ell_minus);
    take("eta", cfg.eta);
    take("n_lo", cfg.n_lo);
    take("phi_lo", cfg.phi_lo);
    take_opt("phi_plus", cfg.phi_plus);
    take_opt("phi_minus", cfg.phi_minus);
    take("d", cfg.d);
    take("theta_d", cfg.theta_d);

    const bool per_source = mentioned("photons_per_source");
    const bool total = find("photons_total") != nullptr;
    if (per_source && total) {
      throw ParseError(line_of("photons_total"), "photons_total",
                       "conflicts with photons_per_source");
    }
    for (std::string_view key : {"n_plus", "n_minus"}) {
      if ((per_source || total) && mentioned(key)) {
        throw ParseError(line_of(key), std::string(key),
                         "conflicts with photons_per_source / photons_total");
      }
    }
    take("n_plus", cfg.n_plus);
    take("n_minus", cfg.n_minus);
    if (const auto *v = find("photons_per_source")) {
      cfg.n_plus = cfg.n_minus = v->number;
    }
    if (const auto *v = find("photons_total")) {
      cfg.n_plus = cfg.n_minus = 0.5 * v->number;
    }

    cfg.misalignment = resolve_misalignment();
    cfg.axes = axes_;

    // Whole-config invariants that no single line can violate alone.
    try {
      cfg.geometry();
    } catch (const DomainError &e) {
      throw ParseError(std::max(line_of("lambda"), line_of("w0")), "w0", e.what());
    }
    if (const auto *fixed = std::get_if<bhd::FixedMisalignment>(&cfg.misalignment);
        fixed && find("delta_x") != nullptr && !(std::abs(cfg.d - fixed->delta_x) < cfg.waist)) {
      throw ParseError(line_of("delta_x"), "delta_x", "|d - delta_x| must be < w0");
    }
    return cfg;
  }

  bhd::MisalignmentModel resolve_misalignment() const {
    const bool sigma = mentioned("sigma_d");
    const bool delta = mentioned("delta_x");
    const double sigma_value = find("sigma_d") ? find("sigma_d")->number : 0.0;
    const double delta_value = find("delta_x") ? find("delta_x")->number : 0.0;
    const auto *mode = find("misalignment");
    if (mode == nullptr) {
      if (sigma && delta) {
        throw ParseError(std::max(line_of("sigma_d"), line_of("delta_x")), "misalignment",
                         "sigma_d and delta_x are mutually exclusive");
      }
      if (sigma) return bhd::FluctuatingMisalignment{sigma_value};
      if (delta) return bhd::FixedMisalignment{delta_value};
      return bhd::NoMisalignment{};
    }
    if (mode->word == "none") {
      if (sigma || delta) {
        throw ParseError(mode->line, "misalignment", "'none' contradicts sigma_d / delta_x");
      }
      return bhd::NoMisalignment{};
    }
    if (mode->word == "fluctuating") {
      if (delta) {
        throw ParseError(mode->line, "misalignment", "'fluctuating' contradicts delta_x");
      }
      return bhd::FluctuatingMisalignment{sigma_value};
    }
    if (sigma) {
      throw ParseError(mode->line, "misalignment", "'fixed' contradicts sigma_d");
    }
    return bhd::FixedMisalignment{delta_value};
  }
};

} // namespace

bool is_sweepable(std::string_view parameter) {
  return std::find(kSweepable.begin(), kSweepable.end(), parameter) != kSweepable.end();
}

std::vector<double> SweepAxis::grid() const {
  if (spacing == Spacing::list) {
    return values;
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    if (spacing == Spacing::linear) {
      out[i] = min + t * (max - min);
    } else {
      out[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    }
  }
  // Pin the end points exactly.
  out.front() = min;
  out.back() = max;
  return out;
}

beam::BeamGeometry ScenarioConfig::geometry() const { return {wavelength, waist}; }

bhd::SourcePair ScenarioConfig::sources() const {
  bhd::SourcePair p;
  p.n_plus = n_plus;
  p.n_minus = n_minus;
  if (ell_plus || ell_minus) {
    p.ell_plus = ell_plus.value_or(ell);
    p.ell_minus = ell_minus.value_or(ell);
  } else {
    std::tie(p.ell_plus, p.ell_minus) = bhd::phase_matched_distances(geometry(), ell);
  }
  p.phi_plus = phi_plus.value_or(phi_lo);
  p.phi_minus = phi_minus.value_or(phi_lo);
  p.d = d;
  p.theta_d = theta_d;
  return p;
}

bhd::Receiver ScenarioConfig::receiver() const {
  bhd::Receiver rx;
  rx.aperture = channel::Aperture(aperture_radius);
  rx.eta = eta;
  rx.n_lo = n_lo;
  rx.phi_lo = phi_lo;
  return rx;
}

bhd::Link ScenarioConfig::link() const { return bhd::make_link(geometry(), sources(), receiver()); }

void set_parameter(ScenarioConfig &cfg, std::string_view parameter, double value) {
  if (parameter == "ell") {
    cfg.ell = value;
    cfg.ell_plus.reset();
    cfg.ell_minus.reset();
  } else if (parameter == "n_plus") {
    cfg.n_plus = value;
  } else if (parameter == "n_minus") {
    cfg.n_minus = value;
  } else if (parameter == "photons_per_source") {
    cfg.n_plus = cfg.n_minus = value;
  } else if (parameter == "eta") {
    cfg.eta = value;
  } else if (parameter == "sigma_d") {
    cfg.misalignment = bhd::FluctuatingMisalignment{value};
  } else if (parameter == "delta_x") {
    cfg.misalignment = bhd::FixedMisalignment{value};
  } else if (parameter == "r") {
    cfg.aperture_radius = value;
  } else {
    throw DomainError("set_parameter: unknown parameter '" + std::string(parameter) + "'");
  }
}

ScenarioConfig parse_config(std::istream &in) { return Parser{}.parse(in); }

ScenarioConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path.string() + "'");
  }
  return parse_config(in);
}

} // namespace superres::scenario
