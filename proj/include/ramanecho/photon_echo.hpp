#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ensemble.hpp"
#include "sequences.hpp"
#include "units.hpp"

namespace ramanecho {

// Two-level optical reference: levels |1> and |3> only, optical inhomogeneous
// broadening carried by the one-photon detuning of each group.
struct TwoLevelParams {
  double gamma_opt = 2.5;  // optical coherence linewidth, kHz
  double Gamma_opt = 1.0;  // |3> -> |1> population relaxation, kHz
  EnsembleSpec inhomogeneous{100.0, 121, 2.0};

  double excitation_area = units::pi / 2.0;
  double excitation_duration = 0.2;  // us
  double excitation_center = 5.0;    // t_w

  double rephase_duration = 0.4;
  double rephase_center = 50.0;  // T

  double span = 120.0;
  double sample_dt = 0.1;
  int min_pulse_samples = 50;

  double expected_echo() const { return echo_time(rephase_center, excitation_center); }

  void validate() const {
    if (!(gamma_opt >= 0.0) || !(Gamma_opt >= 0.0)) throw ValidationError("TwoLevelParams: rates must be >= 0");
    inhomogeneous.validate();
    if (!(excitation_duration > 0.0) || !(rephase_duration > 0.0))
      throw ValidationError("TwoLevelParams: durations must be > 0");
    if (excitation_center + 0.5 * excitation_duration > rephase_center - 0.5 * rephase_duration)
      throw ValidationError("TwoLevelParams: excitation must end before the rephasing pulse");
    if (rephase_center + 0.5 * rephase_duration > span) throw ValidationError("TwoLevelParams: span too short");
  }
};

inline SystemParams two_level_system(const TwoLevelParams& p, double optical_detuning) {
  SystemParams s;
  s.Gamma31 = p.Gamma_opt;
  s.gamma31 = p.gamma_opt;
  s.Delta = optical_detuning;
  return s;
}

inline std::vector<PulseSegment> photon_echo_sequence(const TwoLevelParams& p, double rephase_area) {
  if (!(rephase_area >= 0.0)) throw ValidationError("rephase_area must be >= 0");
  std::vector<PulseSegment> pulses;
  pulses.push_back(rephasing_pulse_from_area(p.excitation_area, p.excitation_duration, 1.0, 0.0,
                                             p.excitation_center - 0.5 * p.excitation_duration));
  if (rephase_area > 0.0) {
    pulses.push_back(rephasing_pulse_from_area(rephase_area, p.rephase_duration, 1.0, 0.0,
                                               p.rephase_center - 0.5 * p.rephase_duration));
  }
  return fill_gaps(std::move(pulses), 0.0, p.span);
}

// Aggregate optical coherence of the two-level ensemble starting in |1>.
inline TrajectoryRecord simulate_photon_echo(const TwoLevelParams& p, double rephase_area,
                                             unsigned threads = default_thread_count()) {
  p.validate();
  const auto groups = discretize_gaussian(p.inhomogeneous);
  EnsembleOptions options;
  options.sampling = Sampling(p.sample_dt, p.min_pulse_samples);
  options.threads = threads;
  return simulate_groups(photon_echo_sequence(p, rephase_area), groups, DensityMatrix::populations(1.0, 0.0, 0.0),
                         options, [&](std::size_t g) {
                           return std::pair<SystemParams, double>(two_level_system(p, groups[g].delta), 0.0);
                         });
}

// Peak aggregate |rho13| within +-half_width of the expected echo time.
inline Peak photon_echo_peak(const TrajectoryRecord& record, const TwoLevelParams& p,
                             double half_width = default_echo_half_window) {
  const double t = p.expected_echo();
  return peak_in_window(record, t - half_width, t + half_width, [&](std::size_t k) { return record.abs_rho13(k); });
}

}  // namespace ramanecho
