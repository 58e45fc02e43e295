#pragma once

#include <cmath>
#include <string>

#include "density_matrix.hpp"
#include "error.hpp"
#include "units.hpp"

namespace ramanecho {

// Relaxation and detuning parameters of one lambda-system atom.
// All values are linear frequencies in kHz.
struct SystemParams {
  double Gamma31 = 0.0;  // |3> -> |1> population relaxation
  double Gamma32 = 0.0;  // |3> -> |2>
  double Gamma21 = 0.0;  // |2> -> |1>
  double gamma31 = 0.0;  // coherence linewidths (FWHM)
  double gamma32 = 0.0;
  double gamma21 = 0.0;
  double Delta = 0.0;  // one-photon detuning of both optical fields

  void validate() const {
    const double rates[] = {Gamma31, Gamma32, Gamma21, gamma31, gamma32, gamma21};
    for (double r : rates) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("SystemParams: rates must be finite and >= 0");
    }
    if (!std::isfinite(Delta)) throw ValidationError("SystemParams: Delta must be finite");
  }

  // Rare-earth parameter set used by the storage scenarios. The one-photon
  // detuning is quoted as an angular frequency, 100 krad/s.
  static SystemParams praseodymium_yso() {
    return SystemParams{1.0, 1.0, 0.0, 25.0, 25.0, 1.0, units::from_angular(100.0)};
  }

  static SystemParams decay_free(double delta_khz = 0.0) {
    SystemParams p;
    p.Delta = delta_khz;
    return p;
  }

  bool operator==(const SystemParams&) const = default;
};

// One rectangular drive interval. Times in us, Rabi frequencies in kHz.
struct PulseSegment {
  double t_start = 0.0;
  double duration = 0.0;
  double omegaP = 0.0;  // |1>-|3>
  double omegaC = 0.0;  // |2>-|3>
  double phaseP = 0.0;
  double phaseC = 0.0;

  double t_end() const { return t_start + duration; }
  bool driven() const { return omegaP != 0.0 || omegaC != 0.0; }

  void validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw ValidationError("PulseSegment: duration must be > 0");
    if (!(omegaP >= 0.0) || !(omegaC >= 0.0)) throw ValidationError("PulseSegment: Rabi frequencies must be >= 0");
    if (!std::isfinite(t_start) || !std::isfinite(omegaP) || !std::isfinite(omegaC) || !std::isfinite(phaseP) ||
        !std::isfinite(phaseC)) {
      throw ValidationError("PulseSegment: non-finite field");
    }
  }

  static PulseSegment gap(double t_start, double duration) { return PulseSegment{t_start, duration, 0, 0, 0, 0}; }

  bool operator==(const PulseSegment&) const = default;
};

// Amplitudes of the dark state |-> = c1|1> - c2|2> and bright state
// |+> = c2|1> + c1|2>.
struct SuperpositionBasis {
  double c1 = 1.0;
  double c2 = 0.0;

  Eigen::Vector3cd dark() const { return Eigen::Vector3cd(c1, -c2, 0.0); }
  Eigen::Vector3cd bright() const { return Eigen::Vector3cd(c2, c1, 0.0); }
};

// omega1 drives |1>-|3>, omega2 drives |2>-|3>.
inline SuperpositionBasis dark_state_coefficients(double omega1, double omega2) {
  const double omega = std::hypot(omega1, omega2);
  if (!(omega > 0.0)) throw ValidationError("undefined basis: both Rabi frequencies are zero");
  return SuperpositionBasis{omega2 / omega, omega1 / omega};
}

// Rotating-frame Hamiltonian divided by hbar, in rad/us.
inline Matrix3 build_hamiltonian(const SystemParams& params, const PulseSegment& seg, double two_photon_detuning) {
  using units::angular;
  Matrix3 h = Matrix3::Zero();
  const Complex cp = -0.5 * angular(seg.omegaP) * std::polar(1.0, seg.phaseP);
  const Complex cc = -0.5 * angular(seg.omegaC) * std::polar(1.0, seg.phaseC);
  h(2, 0) = cp;
  h(0, 2) = std::conj(cp);
  h(2, 1) = cc;
  h(1, 2) = std::conj(cc);
  h(2, 2) = -angular(params.Delta);
  h(1, 1) = -angular(two_photon_detuning);
  return h;
}

// Relaxation constants in 1/us.
struct DecayConstants {
  double k31, k32, k21;
  double g13, g23, g12;

  explicit DecayConstants(const SystemParams& p)
      : k31(units::population_rate(p.Gamma31)),
        k32(units::population_rate(p.Gamma32)),
        k21(units::population_rate(p.Gamma21)),
        g13(units::coherence_rate(p.gamma31)),
        g23(units::coherence_rate(p.gamma32)),
        g12(units::coherence_rate(p.gamma21)) {}
};

// d(rho)/dt = -i[H, rho] + relaxation.
inline Matrix3 eom_rhs(const Matrix3& rho, const Matrix3& h, const SystemParams& params) {
  const Complex i(0.0, 1.0);
  Matrix3 d = -i * (h * rho - rho * h);
  const DecayConstants k(params);

  const Complex r22 = rho(1, 1), r33 = rho(2, 2);
  d(2, 2) += -(k.k31 + k.k32) * r33;
  d(0, 0) += k.k31 * r33 + k.k21 * r22;
  d(1, 1) += k.k32 * r33 - k.k21 * r22;

  d(0, 2) += -k.g13 * rho(0, 2);
  d(2, 0) += -k.g13 * rho(2, 0);
  d(1, 2) += -k.g23 * rho(1, 2);
  d(2, 1) += -k.g23 * rho(2, 1);
  d(0, 1) += -k.g12 * rho(0, 1);
  d(1, 0) += -k.g12 * rho(1, 0);
  return d;
}

inline Matrix3 eom_rhs(const DensityMatrix& rho, const Matrix3& h, const SystemParams& params) {
  return eom_rhs(rho.matrix(), h, params);
}

}  // namespace ramanecho
