#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "density_matrix.hpp"
#include "error.hpp"
#include "lambda_system.hpp"

namespace ramanecho {

using Liouvillian = Eigen::Matrix<Complex, 9, 9>;
using StateVector = Eigen::Matrix<Complex, 9, 1>;

// Row-major vectorization index of rho(a, b).
constexpr int vec_index(int a, int b) noexcept { return 3 * a + b; }

inline StateVector vectorize(const Matrix3& rho) {
  StateVector v;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v(vec_index(a, b)) = rho(a, b);
  return v;
}

inline Matrix3 unvectorize(const StateVector& v) {
  Matrix3 m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = v(vec_index(a, b));
  return m;
}

// Superoperator of the equations of motion, assembled index by index from the
// commutator H (x) I - I (x) H^T and the relaxation terms. It does not call
// eom_rhs, so the two can be checked against each other.
inline Liouvillian build_liouvillian(const Matrix3& h, const SystemParams& params) {
  const Complex i(0.0, 1.0);
  Liouvillian L = Liouvillian::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          Complex v = 0.0;
          if (b == d) v += h(a, c);
          if (a == c) v -= h(d, b);
          L(vec_index(a, b), vec_index(c, d)) = -i * v;
        }
      }
    }
  }

  const DecayConstants k(params);
  const int p11 = vec_index(0, 0), p22 = vec_index(1, 1), p33 = vec_index(2, 2);
  L(p33, p33) += -(k.k31 + k.k32);
  L(p11, p33) += k.k31;
  L(p22, p33) += k.k32;
  L(p11, p22) += k.k21;
  L(p22, p22) += -k.k21;

  const auto damp = [&](int a, int b, double g) {
    L(vec_index(a, b), vec_index(a, b)) += -g;
    L(vec_index(b, a), vec_index(b, a)) += -g;
  };
  damp(0, 2, k.g13);
  damp(1, 2, k.g23);
  damp(0, 1, k.g12);
  return L;
}

inline Liouvillian build_liouvillian(const SystemParams& params, const PulseSegment& seg, double two_photon_detuning) {
  return build_liouvillian(build_hamiltonian(params, seg, two_photon_detuning), params);
}

// Output grid for one segment: the sample spacing is at most `dt`, and driven
// segments are resolved with at least `min_driven_intervals` intervals.
struct Sampling {
  double dt = 0.1;
  int min_driven_intervals = 50;

  Sampling() = default;
  Sampling(double sample_dt, int min_driven = 50) : dt(sample_dt), min_driven_intervals(min_driven) {}  // NOLINT

  int intervals(const PulseSegment& seg) const {
    if (!(dt > 0.0)) throw ValidationError("sample_dt must be > 0");
    int n = static_cast<int>(std::ceil(seg.duration / dt - 1e-9));
    if (seg.driven()) n = std::max(n, min_driven_intervals);
    return std::max(n, 1);
  }
};

// Samples of one group across one segment, both endpoints included.
struct SegmentTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;

  const DensityMatrix& final_state() const { return states.back(); }
};

inline std::vector<double> segment_times(const PulseSegment& seg, int n) {
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) t[k] = seg.t_start + seg.duration * (static_cast<double>(k) / n);
  t[n] = seg.t_end();
  return t;
}

// Exact propagation: rho(t_k) = exp(L (t_k - t_start)) rho0 on a uniform grid.
inline SegmentTrajectory propagate_segment_exact(const DensityMatrix& rho0, const PulseSegment& seg,
                                                 const SystemParams& params, double two_photon_detuning,
                                                 const Sampling& sampling) {
  seg.validate();
  const int n = sampling.intervals(seg);
  const double h = seg.duration / n;
  const Liouvillian L = build_liouvillian(params, seg, two_photon_detuning);

  const Liouvillian scaled = L * Complex(h, 0.0);
  if (!scaled.allFinite() || scaled.cwiseAbs().rowwise().sum().maxCoeff() > 1e8) {
    throw NumericalError("matrix exponential did not converge: generator norm out of range");
  }
  const Liouvillian step = scaled.exp();
  if (!step.allFinite()) throw NumericalError("matrix exponential did not converge: non-finite propagator");

  SegmentTrajectory out;
  out.times = segment_times(seg, n);
  out.states.reserve(out.times.size());
  StateVector v = vectorize(rho0.matrix());
  out.states.emplace_back(rho0.matrix());
  for (int k = 0; k < n; ++k) {
    v = step * v;
    out.states.emplace_back(unvectorize(v));
  }
  if (!v.allFinite()) throw NumericalError("propagation produced non-finite state");
  return out;
}

// Step control for the fixed-step RK4 oracle. The step never exceeds
// min(duration/20, 1/(50 f_max)) and keeps h*||L||_inf <= phase_per_step.
struct StepPolicy {
  double phase_per_step = 0.005;
  std::optional<int> substeps_per_sample;

  static double max_frequency_khz(const SystemParams& p, const PulseSegment& seg, double delta) {
    return std::max({seg.omegaP, seg.omegaC, std::abs(p.Delta), std::abs(delta), p.Gamma31, p.Gamma32, p.Gamma21,
                     p.gamma31, p.gamma32, p.gamma21});
  }

  static double step_bound(const SystemParams& p, const PulseSegment& seg, double delta) {
    double bound = seg.duration / 20.0;
    const double f = max_frequency_khz(p, seg, delta);
    if (f > 0.0) bound = std::min(bound, 1.0 / (50.0 * f * units::khz_us));
    return bound;
  }

  // Substeps for one sample interval of length `interval`.
  int substeps(double interval, const Liouvillian& L, const SystemParams& p, const PulseSegment& seg,
               double delta) const {
    const double bound = step_bound(p, seg, delta);
    if (substeps_per_sample) {
      if (*substeps_per_sample <= 0) throw ValidationError("step policy produces zero steps");
      if (interval / *substeps_per_sample > bound * (1.0 + 1e-12)) {
        throw ValidationError("step policy exceeds the stability bound min(duration/20, 1/(50 f_max))");
      }
      return *substeps_per_sample;
    }
    double h = bound;
    const double norm = L.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm > 0.0) h = std::min(h, phase_per_step / norm);
    return std::max(1, static_cast<int>(std::ceil(interval / h - 1e-9)));
  }
};

// Classical fixed-step RK4 on eom_rhs, sampled on the same grid as the exact
// propagator.
inline SegmentTrajectory propagate_segment_rk4(const DensityMatrix& rho0, const PulseSegment& seg,
                                               const SystemParams& params, double two_photon_detuning,
                                               const Sampling& sampling, const StepPolicy& policy = {}) {
  seg.validate();
  const int n = sampling.intervals(seg);
  const Matrix3 h_mat = build_hamiltonian(params, seg, two_photon_detuning);
  const Liouvillian L = build_liouvillian(h_mat, params);

  SegmentTrajectory out;
  out.times = segment_times(seg, n);
  out.states.reserve(out.times.size());
  Matrix3 rho = rho0.matrix();
  out.states.emplace_back(rho);

  const auto f = [&](const Matrix3& r) { return eom_rhs(r, h_mat, params); };
  for (int k = 0; k < n; ++k) {
    const double interval = out.times[k + 1] - out.times[k];
    const int m = policy.substeps(interval, L, params, seg, two_photon_detuning);
    const double dt = interval / m;
    for (int s = 0; s < m; ++s) {
      const Matrix3 k1 = f(rho);
      const Matrix3 k2 = f(rho + (0.5 * dt) * k1);
      const Matrix3 k3 = f(rho + (0.5 * dt) * k2);
      const Matrix3 k4 = f(rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out.states.emplace_back(rho);
  }
  if (!rho.allFinite()) throw NumericalError("RK4 integration produced non-finite state");
  return out;
}

}  // namespace ramanecho
