#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ensemble.hpp"
#include "liouvillian.hpp"
#include "photon_echo.hpp"
#include "sequences.hpp"

// Physical-consistency checks shared by the `check` command and the test
// suites. Each check reports the worst observed deviation against a bound.
namespace ramanecho {

struct PropertyResult {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  bool passed = false;
};

struct InvariantStats {
  double trace = 0.0;
  double hermiticity = 0.0;
  double min_eigenvalue = 1.0;

  void merge(const InvariantStats& o) {
    trace = std::max(trace, o.trace);
    hermiticity = std::max(hermiticity, o.hermiticity);
    min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
  }
};

inline InvariantStats invariant_stats(const TrajectoryRecord& record) {
  InvariantStats s;
  for (const auto& group : record.per_group) {
    for (const auto& rho : group) {
      s.trace = std::max(s.trace, rho.trace_error());
      s.hermiticity = std::max(s.hermiticity, rho.hermiticity_error());
      s.min_eigenvalue = std::min(s.min_eigenvalue, rho.min_eigenvalue());
    }
  }
  return s;
}

// Whole-sequence comparison of the two propagators for one group.
inline double exact_vs_rk4(const std::vector<PulseSegment>& sequence, const SystemParams& params, double delta,
                           const DensityMatrix& rho0, const Sampling& sampling, const StepPolicy& policy = {}) {
  DensityMatrix a = rho0, b = rho0;
  double worst = 0.0;
  for (const auto& seg : sequence) {
    const auto ex = propagate_segment_exact(a, seg, params, delta, sampling);
    const auto rk = propagate_segment_rk4(b, seg, params, delta, sampling, policy);
    for (std::size_t k = 0; k < ex.states.size(); ++k)
      worst = std::max(worst, ex.states[k].max_abs_difference(rk.states[k]));
    a = ex.final_state();
    b = rk.final_state();
  }
  return worst;
}

// Largest change of the dark state of (ratio_p, ratio_c) under a long drive.
inline double dark_state_drift(double ratio_p, double ratio_c, const SystemParams& params) {
  const double scale = 100.0 / std::hypot(ratio_p, ratio_c);
  const PulseSegment seg{0.0, 20.0, ratio_p * scale, ratio_c * scale, 0.0, 0.0};
  const auto basis = dark_state_coefficients(ratio_p, ratio_c);
  const auto rho0 = DensityMatrix::projector(basis.dark());
  const auto traj = propagate_segment_exact(rho0, seg, params, 0.0, Sampling(0.1));
  double worst = 0.0;
  for (const auto& rho : traj.states) worst = std::max(worst, rho.max_abs_difference(rho0));
  return worst;
}

// Numeric results of the decay-free area checks.
struct AreaChecks {
  double two_pi_rho22 = 0.0;     // rho22 after 2pi starting from |1><1|
  double two_pi_conjugate = 0.0; // |rho12_out - conj(rho12_in)| over superpositions
  double four_pi_identity = 0.0;
  double inversion = 0.0;        // |rho33 - sin^2(theta/2)| over theta
};

inline AreaChecks area_checks() {
  const SystemParams free = SystemParams::decay_free(0.0);
  const Sampling fine(0.1, 200);
  const auto run = [&](const DensityMatrix& rho0, const PulseSegment& seg) {
    return propagate_segment_exact(rho0, seg, free, 0.0, fine).final_state();
  };

  AreaChecks c;
  const PulseSegment two_pi = rephasing_pulse_from_area(units::two_pi, 0.4, 1.0, 1.0);
  const PulseSegment four_pi = rephasing_pulse_from_area(2.0 * units::two_pi, 0.4, 1.0, 1.0);
  c.two_pi_rho22 = run(DensityMatrix::populations(1.0, 0.0, 0.0), two_pi).rho22();

  const std::vector<Eigen::Vector3cd> states = {
      Eigen::Vector3cd(1.0, 0.0, 0.0),
      Eigen::Vector3cd(std::sqrt(0.5), Complex(0.0, std::sqrt(0.5)), 0.0),
      Eigen::Vector3cd(std::sqrt(0.8), std::polar(std::sqrt(0.2), 0.7), 0.0),
      Eigen::Vector3cd(std::sqrt(0.3), std::polar(std::sqrt(0.6), -2.1), std::sqrt(0.1)),
  };
  for (const auto& psi : states) {
    const auto rho0 = DensityMatrix::projector(psi.normalized());
    const auto out2 = run(rho0, two_pi);
    c.two_pi_conjugate = std::max(c.two_pi_conjugate, std::abs(out2.rho12() - std::conj(rho0.rho12())));
    c.four_pi_identity = std::max(c.four_pi_identity, run(rho0, four_pi).max_abs_difference(rho0));
  }

  for (double theta : {0.25 * units::pi, 0.5 * units::pi, units::pi, 1.5 * units::pi, 2.0 * units::pi, 2.7}) {
    const PulseSegment seg = rephasing_pulse_from_area(theta, 0.4, 1.0, 0.0);
    const double expect = std::pow(std::sin(0.5 * theta), 2);
    c.inversion = std::max(c.inversion, std::abs(run(DensityMatrix::populations(1.0, 0.0, 0.0), seg).rho33() - expect));
  }
  return c;
}

// The scenarios whose ensembles are checked for invariants.
inline std::vector<std::pair<std::string, ScenarioSpec>> property_scenarios() {
  return {{"fig1", scenario_fig1()},
          {"fig3", scenario_fig3()},
          {"fig4", scenario_fig4_readout()},
          {"fig6", scenario_fig6_two_data_two_readout()}};
}

// Detunings used for the RK4 cross-check; the full grid would only repeat the
// same arithmetic 121 times.
inline const std::vector<double>& cross_check_detunings() {
  static const std::vector<double> d{0.0, 4.0, -4.0, 10.0, -10.0, 60.0, -60.0, 120.0, -120.0};
  return d;
}

inline std::vector<PropertyResult> run_property_suite(unsigned threads = default_thread_count()) {
  std::vector<PropertyResult> out;
  const auto add = [&](std::string name, double worst, double bound, bool ok) {
    out.push_back(PropertyResult{std::move(name), worst, bound, ok});
  };

  InvariantStats inv;
  double cross = 0.0;
  for (const auto& [name, spec] : property_scenarios()) {
    inv.merge(invariant_stats(run_scenario(spec, threads)));
    for (double d : cross_check_detunings())
      cross = std::max(cross, exact_vs_rk4(spec.sequence(), spec.system, d, spec.initial, spec.sampling()));
  }
  const TwoLevelParams two_level;
  for (double area : {units::pi, units::two_pi}) inv.merge(invariant_stats(simulate_photon_echo(two_level, area, threads)));

  add("trace |tr rho - 1|", inv.trace, 1e-9, inv.trace < 1e-9);
  add("hermiticity", inv.hermiticity, 1e-12, inv.hermiticity < 1e-12);
  add("min eigenvalue", inv.min_eigenvalue, -1e-9, inv.min_eigenvalue > -1e-9);
  add("exact vs RK4", cross, 1e-8, cross < 1e-8);

  double dark = 0.0;
  // optical loss and one-photon detuning stay on; ground-coherence decay would
  // move any superposition
  SystemParams lossy = SystemParams::praseodymium_yso();
  lossy.Gamma21 = 0.0;
  lossy.gamma21 = 0.0;
  for (auto [p, c] : std::vector<std::pair<double, double>>{{1, 1}, {3, 4}, {10, 49}})
    dark = std::max(dark, dark_state_drift(p, c, lossy));
  add("dark-state stationarity", dark, 1e-9, dark < 1e-9);

  const AreaChecks a = area_checks();
  add("2pi pulse rho22 from |1>", a.two_pi_rho22, 0.999, a.two_pi_rho22 >= 0.999);
  add("2pi pulse conjugates rho12", a.two_pi_conjugate, 1e-6, a.two_pi_conjugate < 1e-6);
  add("4pi pulse identity", a.four_pi_identity, 1e-6, a.four_pi_identity < 1e-6);
  add("two-level inversion sin^2(theta/2)", a.inversion, 1e-6, a.inversion < 1e-6);
  return out;
}

}  // namespace ramanecho
