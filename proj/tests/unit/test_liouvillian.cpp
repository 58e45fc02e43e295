#include <gtest/gtest.h>

#include <cmath>

#include "ramanecho/liouvillian.hpp"
#include "ramanecho/sequences.hpp"

using namespace ramanecho;

namespace {

const DensityMatrix ground1 = DensityMatrix::populations(1, 0, 0);

PulseSegment probe_pulse(double area, double duration = 0.4) {
  return rephasing_pulse_from_area(area, duration, 1.0, 0.0);
}

}  // namespace

TEST(Sampling, Intervals) {
  const Sampling s(0.1, 50);
  EXPECT_EQ(s.intervals(PulseSegment::gap(0, 40)), 400);
  EXPECT_EQ(s.intervals(PulseSegment{0, 0.4, 1, 1, 0, 0}), 50);
  EXPECT_EQ(s.intervals(PulseSegment{0, 10, 1, 1, 0, 0}), 100);
  EXPECT_EQ(s.intervals(PulseSegment::gap(0, 0.01)), 1);
  EXPECT_THROW(Sampling(0.0).intervals(PulseSegment::gap(0, 1)), ValidationError);
}

TEST(SegmentTimes, EndpointsExact) {
  const PulseSegment seg = PulseSegment::gap(49.8, 0.4);
  const auto t = segment_times(seg, 7);
  ASSERT_EQ(t.size(), 8u);
  EXPECT_EQ(t.front(), 49.8);
  EXPECT_EQ(t.back(), seg.t_end());
}

TEST(Exact, ZeroGeneratorIsIdentity) {
  const auto rho0 = DensityMatrix::projector(Eigen::Vector3cd(1, Complex(0, 1), 0.5));
  const auto traj = propagate_segment_exact(rho0, PulseSegment::gap(0, 30), SystemParams{}, 0.0, Sampling(1.0));
  for (const auto& r : traj.states) EXPECT_EQ(r.max_abs_difference(rho0), 0.0);
}

TEST(Exact, RabiOracle) {
  for (double theta : {0.3, 1.0, units::pi / 2, units::pi, 4.0, units::two_pi, 9.1}) {
    const auto traj = propagate_segment_exact(ground1, probe_pulse(theta), SystemParams{}, 0.0, Sampling(0.1));
    EXPECT_NEAR(traj.final_state().rho33(), std::pow(std::sin(theta / 2), 2), 1e-12) << theta;
  }
}

// Intermediate samples follow the same formula with the partial area.
TEST(Exact, RabiOracleAlongPulse) {
  const PulseSegment seg = probe_pulse(3 * units::pi, 1.0);
  const auto traj = propagate_segment_exact(ground1, seg, SystemParams{}, 0.0, Sampling(0.1, 60));
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double theta = 3 * units::pi * (traj.times[k] - seg.t_start) / seg.duration;
    EXPECT_NEAR(traj.states[k].rho33(), std::pow(std::sin(theta / 2), 2), 1e-12);
  }
}

// Off-resonant two-level Rabi formula.
TEST(Exact, DetunedRabiOracle) {
  SystemParams p;
  p.Delta = 300.0;
  const PulseSegment seg{0, 2, 400, 0, 0, 0};
  const auto traj = propagate_segment_exact(ground1, seg, p, 0.0, Sampling(0.05));
  const double W = units::angular(std::hypot(400.0, 300.0));
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const double expect = std::pow(400.0 / 500.0, 2) * std::pow(std::sin(W * t / 2), 2);
    EXPECT_NEAR(traj.states[k].rho33(), expect, 1e-12);
  }
}

TEST(Exact, PureDecay) {
  SystemParams p;
  p.Gamma31 = 3.0;
  const auto traj = propagate_segment_exact(DensityMatrix::populations(0, 0, 1), PulseSegment::gap(0, 100), p, 0.0,
                                            Sampling(1.0));
  EXPECT_NEAR(traj.final_state().rho33(), std::exp(-units::population_rate(3.0) * 100), 1e-12);
  EXPECT_NEAR(traj.final_state().rho11(), 1 - std::exp(-units::population_rate(3.0) * 100), 1e-12);
}

TEST(Exact, PathologicalRatesRejected) {
  SystemParams p;
  p.gamma21 = 1e14;
  EXPECT_THROW(propagate_segment_exact(ground1, PulseSegment::gap(0, 10), p, 0.0, Sampling(1.0)), NumericalError);
}

TEST(Rk4, ZeroGenerator) {
  const auto rho0 = DensityMatrix::mixed_ground();
  const auto traj = propagate_segment_rk4(rho0, PulseSegment::gap(0, 5), SystemParams{}, 0.0, Sampling(0.5));
  EXPECT_EQ(traj.final_state().max_abs_difference(rho0), 0.0);
}

TEST(Rk4, PiPulseInverts) {
  const auto traj = propagate_segment_rk4(ground1, probe_pulse(units::pi), SystemParams{}, 0.0, Sampling(0.1));
  EXPECT_NEAR(traj.final_state().rho33(), 1.0, 1e-6);
}

TEST(Rk4, ZeroStepPolicyRejected) {
  StepPolicy policy;
  policy.substeps_per_sample = 0;
  try {
    propagate_segment_rk4(ground1, probe_pulse(1.0), SystemParams{}, 0.0, Sampling(0.1), policy);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zero steps"), std::string::npos);
  }
}

TEST(Rk4, CoarsePolicyRejected) {
  StepPolicy policy;
  policy.substeps_per_sample = 1;
  EXPECT_THROW(propagate_segment_rk4(ground1, probe_pulse(units::two_pi), SystemParams{}, 0.0, Sampling(0.1, 10), policy),
               ValidationError);
}

TEST(Rk4, ExplicitSubsteps) {
  StepPolicy policy;
  policy.substeps_per_sample = 200;
  const auto traj = propagate_segment_rk4(ground1, probe_pulse(units::pi), SystemParams{}, 0.0, Sampling(0.1), policy);
  EXPECT_NEAR(traj.final_state().rho33(), 1.0, 1e-9);
}

TEST(CrossCheck, EveryBundledSegment) {
  for (const auto& spec : {scenario_fig1(), scenario_fig4_readout(), scenario_fig6_two_data_two_readout()}) {
    for (double delta : {0.0, 6.0, -52.0, 120.0}) {
      DensityMatrix rho = spec.initial;
      for (const auto& seg : spec.sequence()) {
        const auto ex = propagate_segment_exact(rho, seg, spec.system, delta, spec.sampling());
        const auto rk = propagate_segment_rk4(rho, seg, spec.system, delta, spec.sampling());
        ASSERT_EQ(ex.states.size(), rk.states.size());
        for (std::size_t k = 0; k < ex.states.size(); ++k)
          ASSERT_LT(ex.states[k].max_abs_difference(rk.states[k]), 1e-8) << spec.name << " t=" << ex.times[k];
        rho = ex.final_state();
      }
    }
  }
}

TEST(Invariants, LongLossyDrive) {
  const SystemParams p{1, 1, 0.2, 25, 25, 1, 15.9};
  const auto rho0 = DensityMatrix::projector(Eigen::Vector3cd(0.6, Complex(0, 0.8), 0));
  const auto traj = propagate_segment_exact(rho0, PulseSegment{0, 200, 80, 20, 0.5, 0}, p, 33, Sampling(0.5));
  for (const auto& r : traj.states) {
    EXPECT_LT(r.trace_error(), 1e-9);
    EXPECT_LT(r.hermiticity_error(), 1e-12);
    EXPECT_GT(r.min_eigenvalue(), -1e-9);
  }
}
