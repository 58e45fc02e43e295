#pragma once

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "../ensemble.hpp"
#include "../error.hpp"
#include "../multimode.hpp"
#include "../sequences.hpp"
#include "quantity.hpp"

// YAML scenario files.
//
//   name: fig1
//   system:   {Gamma31: 1 kHz, Gamma32: 1 kHz, Gamma21: 0 kHz,
//              gamma31: 25 kHz, gamma32: 25 kHz, gamma21: 1 kHz, Delta: 100 krad/s}
//   ensemble: {fwhm: 100 kHz, groups: 121, step: 2 kHz}
//   initial_state: {rho11: 0.5, rho22: 0.5, rho33: 0}
//   pulses:
//     - {role: data, label: D, start: 0 us, duration: 10 us, omegaP: 50 krad/s, omegaC: 50 krad/s}
//     - {role: rephasing, label: R, center: 50 us, duration: 400 ns, area: 2pi, ratio: [1, 1]}
//   outputs:  {span: 120 us, sample_dt: 0.1 us, min_pulse_samples: 50,
//              observables: [abs_rho12, im_rho13], per_group: false}
//   channels: {delta_opt: 4 GHz, omega: 4 MHz, overrides: [{channel: 1, area: 4pi}]}
//
// Unknown keys are errors. Physical quantities need explicit units.
namespace ramanecho::io {

struct OutputOptions {
  std::vector<std::string> observables{"abs_rho12", "im_rho13"};
  bool per_group = false;
};

struct ChannelSection {
  ChannelPlan plan;
  std::vector<ChannelOverride> overrides;  // indexed by channel
};

struct ScenarioFile {
  ScenarioSpec spec;
  OutputOptions outputs;
  std::optional<ChannelSection> channels;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] inline void fail(const YAML::Node& n, const std::string& what) { throw ParseError(what, line_of(n)); }

inline void require_map(const YAML::Node& n, const std::string& where) {
  if (!n.IsMap()) fail(n, where + ": expected a mapping");
}

inline void check_keys(const YAML::Node& n, const std::string& where, const std::set<std::string>& allowed) {
  require_map(n, where);
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(kv.first, where + ": unknown key '" + key + "'");
  }
}

inline std::string scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(n, field + ": expected a scalar");
  return n.Scalar();
}

inline double quantity(const YAML::Node& n, Dimension d, const std::string& field) {
  try {
    return parse_quantity(scalar(n, field), d, field);
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    fail(n, e.what());
  }
}

inline double number(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(n, field + ": expected a dimensionless number, got '" + s + "'");
  }
}

inline int integer(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(n, field + ": expected an integer, got '" + s + "'");
  }
}

inline bool boolean(const YAML::Node& n, const std::string& field) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    fail(n, field + ": expected true or false");
  }
}

inline const YAML::Node required(const YAML::Node& parent, const std::string& key, const std::string& where) {
  const YAML::Node n = parent[key];
  if (!n) fail(parent, where + ": missing required key '" + key + "'");
  return n;
}

inline std::pair<double, double> ratio_pair(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence() || n.size() != 2) fail(n, field + ": expected [omegaP, omegaC]");
  return {number(n[0], field + "[0]"), number(n[1], field + "[1]")};
}

inline SystemParams parse_system(const YAML::Node& n) {
  check_keys(n, "system", {"Gamma31", "Gamma32", "Gamma21", "gamma31", "gamma32", "gamma21", "Delta"});
  const auto f = [&](const char* key) {
    return quantity(required(n, key, "system"), Dimension::frequency, std::string("system.") + key);
  };
  SystemParams p{f("Gamma31"), f("Gamma32"), f("Gamma21"), f("gamma31"), f("gamma32"), f("gamma21"), f("Delta")};
  try {
    p.validate();
  } catch (const ValidationError& e) {
    fail(n, e.what());
  }
  return p;
}

inline EnsembleSpec parse_ensemble(const YAML::Node& n) {
  check_keys(n, "ensemble", {"fwhm", "groups", "step"});
  EnsembleSpec e;
  e.fwhm = quantity(required(n, "fwhm", "ensemble"), Dimension::frequency, "ensemble.fwhm");
  e.group_count = integer(required(n, "groups", "ensemble"), "ensemble.groups");
  e.step = quantity(required(n, "step", "ensemble"), Dimension::frequency, "ensemble.step");
  try {
    e.validate();
  } catch (const ValidationError& err) {
    fail(n, err.what());
  }
  return e;
}

inline DensityMatrix parse_initial(const YAML::Node& n) {
  check_keys(n, "initial_state", {"rho11", "rho22", "rho33"});
  const auto pop = [&](const char* key) {
    return n[key] ? number(n[key], std::string("initial_state.") + key) : 0.0;
  };
  const double p1 = pop("rho11"), p2 = pop("rho22"), p3 = pop("rho33");
  if (p1 < 0 || p2 < 0 || p3 < 0 || std::abs(p1 + p2 + p3 - 1.0) > 1e-9) {
    fail(n, "initial_state: populations must be >= 0 and sum to 1");
  }
  return DensityMatrix::populations(p1, p2, p3);
}

inline ScenarioPulse parse_pulse(const YAML::Node& n, std::size_t index) {
  const std::string where = "pulses[" + std::to_string(index) + "]";
  check_keys(n, where,
             {"role", "label", "start", "center", "duration", "omegaP", "omegaC", "phaseP", "phaseC", "area", "ratio"});

  ScenarioPulse p;
  try {
    p.role = parse_role(scalar(required(n, "role", where), where + ".role"));
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    fail(n["role"], where + ".role: " + e.what());
  }
  p.label = n["label"] ? scalar(n["label"], where + ".label") : std::string(role_name(p.role));

  const bool has_start = static_cast<bool>(n["start"]);
  const bool has_center = static_cast<bool>(n["center"]);
  if (has_start == has_center) fail(n, where + ": exactly one of 'start' or 'center' is required");
  const double duration = quantity(required(n, "duration", where), Dimension::time, where + ".duration");
  if (!(duration > 0.0)) fail(n["duration"], where + ".duration: must be > 0");
  const double anchor = has_start ? quantity(n["start"], Dimension::time, where + ".start")
                                  : quantity(n["center"], Dimension::time, where + ".center");
  const double center = has_start ? anchor + 0.5 * duration : anchor;

  const bool amplitudes = n["omegaP"] || n["omegaC"] || n["phaseP"] || n["phaseC"];
  const bool by_area = n["area"] || n["ratio"];
  if (amplitudes && by_area) fail(n, where + ": give either amplitudes (omegaP/omegaC) or area/ratio, not both");
  if (!amplitudes && !by_area) fail(n, where + ": missing amplitudes (omegaP/omegaC) or area");

  try {
    if (amplitudes) {
      const auto freq = [&](const char* key) {
        return n[key] ? quantity(n[key], Dimension::frequency, where + "." + key) : 0.0;
      };
      const auto angle = [&](const char* key) {
        return n[key] ? quantity(n[key], Dimension::angle, where + "." + key) : 0.0;
      };
      const double start = has_start ? anchor : center - 0.5 * duration;
      p.segment = PulseSegment{start, duration, freq("omegaP"), freq("omegaC"), angle("phaseP"), angle("phaseC")};
      p.segment.validate();
    } else {
      AreaDefinition def;
      def.area = quantity(required(n, "area", where), Dimension::angle, where + ".area");
      def.duration = duration;
      if (n["ratio"]) std::tie(def.ratio_p, def.ratio_c) = ratio_pair(n["ratio"], where + ".ratio");
      p = ScenarioPulse::from_area(p.role, p.label, center, def);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    fail(n, where + ": " + e.what());
  }
  return p;
}

inline void parse_outputs(const YAML::Node& n, ScenarioSpec& spec, OutputOptions& out) {
  check_keys(n, "outputs", {"span", "sample_dt", "min_pulse_samples", "observables", "per_group"});
  spec.span = quantity(required(n, "span", "outputs"), Dimension::time, "outputs.span");
  if (n["sample_dt"]) spec.sample_dt = quantity(n["sample_dt"], Dimension::time, "outputs.sample_dt");
  if (n["min_pulse_samples"]) spec.min_pulse_samples = integer(n["min_pulse_samples"], "outputs.min_pulse_samples");
  if (n["per_group"]) out.per_group = boolean(n["per_group"], "outputs.per_group");
  if (n["observables"]) {
    const YAML::Node obs = n["observables"];
    if (!obs.IsSequence()) fail(obs, "outputs.observables: expected a list");
    out.observables.clear();
    for (std::size_t i = 0; i < obs.size(); ++i) out.observables.push_back(scalar(obs[i], "outputs.observables"));
  }
}

inline ChannelSection parse_channels(const YAML::Node& n) {
  check_keys(n, "channels", {"delta_opt", "omega", "overrides"});
  const double delta_opt = quantity(required(n, "delta_opt", "channels"), Dimension::frequency, "channels.delta_opt");
  const double omega = quantity(required(n, "omega", "channels"), Dimension::frequency, "channels.omega");
  ChannelSection c;
  try {
    c.plan = ChannelPlan::from_widths(delta_opt, omega);
  } catch (const ValidationError& e) {
    fail(n, std::string("channels: ") + e.what());
  }
  if (const YAML::Node ov = n["overrides"]) {
    if (!ov.IsSequence()) fail(ov, "channels.overrides: expected a list");
    for (std::size_t i = 0; i < ov.size(); ++i) {
      const std::string where = "channels.overrides[" + std::to_string(i) + "]";
      check_keys(ov[i], where, {"channel", "area", "ratio"});
      const int ch = integer(required(ov[i], "channel", where), where + ".channel");
      if (ch < 0 || ch >= c.plan.n_channels) fail(ov[i], where + ".channel: out of range");
      if (c.overrides.size() <= static_cast<std::size_t>(ch)) c.overrides.resize(ch + 1);
      ChannelOverride& o = c.overrides[ch];
      if (ov[i]["area"]) o.rephase_area = quantity(ov[i]["area"], Dimension::angle, where + ".area");
      if (ov[i]["ratio"]) {
        const auto [rp, rc] = ratio_pair(ov[i]["ratio"], where + ".ratio");
        o.ratio_p = rp;
        o.ratio_c = rc;
      }
    }
  }
  return c;
}

}  // namespace detail

inline ScenarioFile parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  detail::check_keys(root, "scenario",
                     {"name", "system", "ensemble", "initial_state", "pulses", "outputs", "channels"});

  ScenarioFile file;
  ScenarioSpec& spec = file.spec;
  spec.name = root["name"] ? detail::scalar(root["name"], "name") : std::string("scenario");
  spec.system = detail::parse_system(detail::required(root, "system", "scenario"));
  spec.ensemble = detail::parse_ensemble(detail::required(root, "ensemble", "scenario"));
  if (root["initial_state"]) spec.initial = detail::parse_initial(root["initial_state"]);

  const YAML::Node pulses = detail::required(root, "pulses", "scenario");
  if (!pulses.IsSequence() || pulses.size() == 0) detail::fail(pulses, "pulses: expected a non-empty list");
  for (std::size_t i = 0; i < pulses.size(); ++i) spec.pulses.push_back(detail::parse_pulse(pulses[i], i));

  detail::parse_outputs(detail::required(root, "outputs", "scenario"), spec, file.outputs);
  if (root["channels"]) file.channels = detail::parse_channels(root["channels"]);

  try {
    spec.validate();
  } catch (const ValidationError& e) {
    detail::fail(pulses, e.what());
  }
  return file;
}

inline ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("cannot open scenario file '" + path.string() + "'");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

}  // namespace ramanecho::io
