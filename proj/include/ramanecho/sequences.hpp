#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ensemble.hpp"
#include "error.hpp"
#include "lambda_system.hpp"
#include "units.hpp"

namespace ramanecho {

// theta = 2 pi sqrt(omegaP^2 + omegaC^2) * duration, with kHz*us = 1e-3.
inline double pulse_area(const PulseSegment& seg) {
  return units::two_pi * std::hypot(seg.omegaP, seg.omegaC) * seg.duration * units::khz_us;
}

// Rectangular pulse of the requested area whose amplitudes follow
// omegaP : omegaC = ratio_p : ratio_c.
inline PulseSegment rephasing_pulse_from_area(double target_area, double duration, double ratio_p, double ratio_c,
                                              double t_start = 0.0) {
  if (!(duration > 0.0)) throw ValidationError("rephasing pulse: duration must be > 0");
  if (!(ratio_p >= 0.0) || !(ratio_c >= 0.0)) throw ValidationError("rephasing pulse: ratio must be >= 0");
  const double norm = std::hypot(ratio_p, ratio_c);
  if (!(norm > 0.0)) throw ValidationError("rephasing pulse: zero ratio pair");
  if (!(target_area >= 0.0)) throw ValidationError("rephasing pulse: area must be >= 0");
  const double rabi = target_area / (units::two_pi * duration * units::khz_us);
  PulseSegment seg;
  seg.t_start = t_start;
  seg.duration = duration;
  seg.omegaP = rabi * ratio_p / norm;
  seg.omegaC = rabi * ratio_c / norm;
  return seg;
}

// Rephasing at t_rephase refocuses coherence written at t_write at 2T - T_D.
inline double echo_time(double t_rephase, double t_write) {
  if (!(t_write < t_rephase)) throw ValidationError("echo_time: write time must precede the rephasing time");
  return 2.0 * t_rephase - t_write;
}

// Spin dephasing time 1/(pi gamma21), in us for gamma21 in kHz.
inline double spin_t2(double gamma21_khz) {
  if (!(gamma21_khz > 0.0)) throw ValidationError("spin_t2: gamma21 must be > 0");
  return 1.0 / (units::pi * gamma21_khz * units::khz_us);
}

enum class PulseRole { data, rephasing, readout };

inline std::string_view role_name(PulseRole r) {
  switch (r) {
    case PulseRole::data: return "data";
    case PulseRole::rephasing: return "rephasing";
    case PulseRole::readout: return "readout";
  }
  return "?";
}

inline PulseRole parse_role(std::string_view s) {
  if (s == "data") return PulseRole::data;
  if (s == "rephasing") return PulseRole::rephasing;
  if (s == "readout") return PulseRole::readout;
  throw ValidationError("unknown pulse role '" + std::string(s) + "' (expected data, rephasing or readout)");
}

// Pulse specified by area instead of amplitudes.
struct AreaDefinition {
  double area = units::two_pi;
  double duration = 0.4;
  double ratio_p = 1.0;
  double ratio_c = 1.0;

  bool operator==(const AreaDefinition&) const = default;
};

struct ScenarioPulse {
  PulseRole role = PulseRole::data;
  std::string label;
  PulseSegment segment;
  std::optional<AreaDefinition> area_definition;

  double center() const { return segment.t_start + 0.5 * segment.duration; }

  static ScenarioPulse from_amplitudes(PulseRole role, std::string label, double t_start, double duration,
                                       double omega_p, double omega_c) {
    return ScenarioPulse{role, std::move(label), PulseSegment{t_start, duration, omega_p, omega_c, 0.0, 0.0},
                         std::nullopt};
  }

  // Area-defined pulse centered on `center`.
  static ScenarioPulse from_area(PulseRole role, std::string label, double center, const AreaDefinition& def) {
    PulseSegment seg = rephasing_pulse_from_area(def.area, def.duration, def.ratio_p, def.ratio_c,
                                                 center - 0.5 * def.duration);
    return ScenarioPulse{role, std::move(label), seg, def};
  }

  bool operator==(const ScenarioPulse&) const = default;
};

struct ScenarioSpec {
  std::string name;
  SystemParams system = SystemParams::praseodymium_yso();
  EnsembleSpec ensemble{};
  DensityMatrix initial = DensityMatrix::mixed_ground();
  std::vector<ScenarioPulse> pulses;
  double span = 120.0;  // us
  double sample_dt = 0.1;
  int min_pulse_samples = 50;

  Sampling sampling() const { return Sampling(sample_dt, min_pulse_samples); }

  std::vector<PulseSegment> sequence() const {
    std::vector<PulseSegment> segs;
    segs.reserve(pulses.size());
    for (const auto& p : pulses) segs.push_back(p.segment);
    return fill_gaps(std::move(segs), 0.0, span);
  }

  std::vector<const ScenarioPulse*> with_role(PulseRole r) const {
    std::vector<const ScenarioPulse*> out;
    for (const auto& p : pulses)
      if (p.role == r) out.push_back(&p);
    return out;
  }

  void validate() const {
    system.validate();
    ensemble.validate();
    if (!(span > 0.0)) throw ValidationError("scenario '" + name + "': span must be > 0");
    if (!(sample_dt > 0.0)) throw ValidationError("scenario '" + name + "': sample_dt must be > 0");
    if (min_pulse_samples < 1) throw ValidationError("scenario '" + name + "': min_pulse_samples must be >= 1");
    if (initial.trace_error() > 1e-9 || initial.hermiticity_error() > 1e-12 || initial.min_eigenvalue() < -1e-12) {
      throw ValidationError("scenario '" + name + "': initial state is not a density matrix");
    }
    (void)sequence();
  }

  bool operator==(const ScenarioSpec&) const = default;
};

inline TrajectoryRecord run_scenario(const ScenarioSpec& spec, unsigned threads = default_thread_count()) {
  spec.validate();
  EnsembleOptions options;
  options.sampling = spec.sampling();
  options.threads = threads;
  return simulate_ensemble(spec.sequence(), spec.system, discretize_gaussian(spec.ensemble), spec.initial, options);
}

struct EfficiencyReport {
  double write_peak = 0.0;
  double echo_peak = 0.0;
  double efficiency = 0.0;
  double echo_time = 0.0;

  bool operator==(const EfficiencyReport&) const = default;
};

// Peak aggregate |rho12| inside the echo window relative to |rho12| at the end
// of the write pulse.
inline EfficiencyReport retrieval_efficiency(const TrajectoryRecord& record, double write_end, double window_lo,
                                             double window_hi) {
  if (record.times.empty()) throw ValidationError("retrieval_efficiency: empty record");
  if (!(window_lo <= window_hi) || window_lo < record.times.front() - 1e-9 || window_hi > record.times.back() + 1e-9) {
    throw ValidationError("retrieval_efficiency: echo window outside the record span");
  }
  const double write = record.abs_rho12(record.index_at(write_end));
  if (!(write >= 1e-9)) throw ValidationError("no stored coherence");
  const Peak p = peak_in_window(record, window_lo, window_hi, [&](std::size_t k) { return record.abs_rho12(k); });
  return EfficiencyReport{write, p.value, p.value / write, p.time};
}

inline constexpr double default_echo_half_window = 5.0;  // us

struct EchoWindow {
  double write_end;
  double expected;
  double lo;
  double hi;
};

// Window around 2T - T_D for one data pulse, T the first rephasing pulse center.
inline EchoWindow echo_window(const ScenarioSpec& spec, const ScenarioPulse& data,
                              double half_width = default_echo_half_window) {
  const auto reph = spec.with_role(PulseRole::rephasing);
  if (reph.empty()) throw ValidationError("scenario '" + spec.name + "' has no rephasing pulse");
  const double expected = echo_time(reph.front()->center(), data.center());
  return EchoWindow{data.segment.t_end(), expected, std::max(0.0, expected - half_width),
                    std::min(spec.span, expected + half_width)};
}

struct DataEcho {
  std::string label;
  EchoWindow window;
  EfficiencyReport report;
};

// One report per data pulse, in pulse order.
inline std::vector<DataEcho> analyze_data_echoes(const ScenarioSpec& spec, const TrajectoryRecord& record) {
  std::vector<DataEcho> out;
  for (const ScenarioPulse* d : spec.with_role(PulseRole::data)) {
    const EchoWindow w = echo_window(spec, *d);
    out.push_back(DataEcho{d->label, w, retrieval_efficiency(record, w.write_end, w.lo, w.hi)});
  }
  if (out.empty()) throw ValidationError("scenario '" + spec.name + "' has no data pulse");
  return out;
}

// Report for the earliest data pulse. Its echo is the last one and lies clear of
// the stimulated echoes that pairs of data pulses produce at T + (t2 - t1).
inline EfficiencyReport analyze_scenario(const ScenarioSpec& spec, const TrajectoryRecord& record) {
  const auto data = spec.with_role(PulseRole::data);
  if (data.empty()) throw ValidationError("scenario '" + spec.name + "' has no data pulse");
  const ScenarioPulse* first = *std::min_element(
      data.begin(), data.end(), [](const auto* a, const auto* b) { return a->segment.t_start < b->segment.t_start; });
  const EchoWindow w = echo_window(spec, *first);
  return retrieval_efficiency(record, w.write_end, w.lo, w.hi);
}

// Rebuilds every area-defined rephasing pulse with a new area and/or ratio,
// keeping its center and duration.
inline void set_rephasing(ScenarioSpec& spec, std::optional<double> area, std::optional<double> ratio_p,
                          std::optional<double> ratio_c, std::optional<double> duration = std::nullopt) {
  for (auto& p : spec.pulses) {
    if (p.role != PulseRole::rephasing) continue;
    if (!p.area_definition) throw ValidationError("rephasing pulse '" + p.label + "' has no area definition");
    AreaDefinition def = *p.area_definition;
    if (area) def.area = *area;
    if (ratio_p) def.ratio_p = *ratio_p;
    if (ratio_c) def.ratio_c = *ratio_c;
    if (duration) def.duration = *duration;
    p = ScenarioPulse::from_area(p.role, p.label, p.center(), def);
  }
}

// ---------------------------------------------------------------------------
// Bundled scenarios

inline constexpr double default_rephasing_duration = 0.4;  // us
inline constexpr double data_rabi = units::from_angular(50.0);  // kHz, each field (50 krad/s)
inline constexpr double data_length = 10.0;                // us

struct RephasingChoice {
  double area_multiplier = 1.0;  // in units of 2 pi
  double ratio_p = 1.0;
  double ratio_c = 1.0;
  double duration = default_rephasing_duration;
};

inline AreaDefinition rephasing_definition(const RephasingChoice& r) {
  return AreaDefinition{r.area_multiplier * units::two_pi, r.duration, r.ratio_p, r.ratio_c};
}

// Single data pulse, rephasing at 50 us, echo near 95 us.
inline ScenarioSpec scenario_fig1(const RephasingChoice& r = {}) {
  ScenarioSpec s;
  s.name = "fig1";
  s.pulses.push_back(ScenarioPulse::from_amplitudes(PulseRole::data, "D", 0.0, data_length, data_rabi, data_rabi));
  s.pulses.push_back(ScenarioPulse::from_area(PulseRole::rephasing, "R", 50.0, rephasing_definition(r)));
  s.span = 120.0;
  return s;
}

// Two data pulses then rephasing at 50 us; echoes of D2 and D1 near 75 and 95 us.
inline ScenarioSpec scenario_fig3(double area_multiplier = 1.0, double ratio_p = 1.0, double ratio_c = 1.0,
                                  double duration = default_rephasing_duration) {
  ScenarioSpec s;
  s.name = "fig3";
  s.pulses.push_back(ScenarioPulse::from_amplitudes(PulseRole::data, "D1", 0.0, data_length, data_rabi, data_rabi));
  s.pulses.push_back(ScenarioPulse::from_amplitudes(PulseRole::data, "D2", 20.0, data_length, data_rabi, data_rabi));
  s.pulses.push_back(ScenarioPulse::from_area(PulseRole::rephasing, "R", 50.0,
                                              rephasing_definition({area_multiplier, ratio_p, ratio_c, duration})));
  s.span = 120.0;
  return s;
}

inline constexpr double readout_duration = 0.2;  // us

// Omega_C-only readout of the given area starting at t_start.
inline ScenarioPulse readout_pulse(std::string label, double t_start, double area = units::pi,
                                   double duration = readout_duration) {
  AreaDefinition def{area, duration, 0.0, 1.0};
  return ScenarioPulse::from_area(PulseRole::readout, std::move(label), t_start + 0.5 * duration, def);
}

// Single data pulse, rephasing at 40 us, Omega_C readout at the echo time.
inline ScenarioSpec scenario_fig4_readout() {
  ScenarioSpec s;
  s.name = "fig4";
  s.pulses.push_back(ScenarioPulse::from_amplitudes(PulseRole::data, "D", 0.0, data_length, data_rabi, data_rabi));
  s.pulses.push_back(ScenarioPulse::from_area(PulseRole::rephasing, "R", 40.0, rephasing_definition({})));
  s.pulses.push_back(readout_pulse("A", echo_time(40.0, 0.5 * data_length)));
  s.span = 100.0;
  return s;
}

// Two data pulses, one rephasing pulse, readouts at the echo of D2 (A1) then
// D1 (A2), so emissions come out in time-reversed data order.
inline ScenarioSpec scenario_fig6_two_data_two_readout(double readout_area = units::pi / 2.0) {
  ScenarioSpec s = scenario_fig3();
  s.name = "fig6";
  const double t_rephase = 50.0;
  s.pulses.push_back(readout_pulse("A1", echo_time(t_rephase, 25.0), readout_area));
  s.pulses.push_back(readout_pulse("A2", echo_time(t_rephase, 5.0), readout_area));
  s.span = 120.0;
  return s;
}

inline ScenarioSpec bundled_scenario(std::string_view name) {
  if (name == "fig1") return scenario_fig1();
  if (name == "fig3") return scenario_fig3();
  if (name == "fig4") return scenario_fig4_readout();
  if (name == "fig6") return scenario_fig6_two_data_two_readout();
  throw ValidationError("unknown scenario '" + std::string(name) + "' (expected fig1, fig3, fig4, fig6)");
}

// ---------------------------------------------------------------------------
// Parameter studies on the two-data scenario

struct SweepPoint {
  double area = 0.0;  // rad
  double ratio_p = 1.0;
  double ratio_c = 1.0;
  EfficiencyReport report;
  double relative = 0.0;  // efficiency / efficiency at 2 pi, 1:1
};

inline EfficiencyReport run_fig3_point(double area, double ratio_p, double ratio_c, unsigned threads) {
  const ScenarioSpec spec = scenario_fig3(area / units::two_pi, ratio_p, ratio_c);
  return analyze_scenario(spec, run_scenario(spec, threads));
}

// Efficiency against rephasing area (radians) at a fixed field ratio.
inline std::vector<SweepPoint> sweep_areas(const std::vector<double>& areas, double ratio_p = 1.0,
                                           double ratio_c = 1.0, unsigned threads = default_thread_count()) {
  const double reference = run_fig3_point(units::two_pi, 1.0, 1.0, threads).efficiency;
  std::vector<SweepPoint> out;
  for (double a : areas) {
    SweepPoint p{a, ratio_p, ratio_c, run_fig3_point(a, ratio_p, ratio_c, threads), 0.0};
    p.relative = p.report.efficiency / reference;
    out.push_back(p);
  }
  return out;
}

// Efficiency against omegaP:omegaC at a fixed rephasing area.
inline std::vector<SweepPoint> sweep_ratios(const std::vector<std::pair<double, double>>& ratios,
                                            double area = units::two_pi,
                                            unsigned threads = default_thread_count()) {
  const double reference = run_fig3_point(units::two_pi, 1.0, 1.0, threads).efficiency;
  std::vector<SweepPoint> out;
  for (const auto& [rp, rc] : ratios) {
    SweepPoint p{area, rp, rc, run_fig3_point(area, rp, rc, threads), 0.0};
    p.relative = p.report.efficiency / reference;
    out.push_back(p);
  }
  return out;
}

}  // namespace ramanecho
