#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace ramanecho {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;

// Levels of the lambda system: two ground states and the shared excited state.
enum class Level : int { ground1 = 0, ground2 = 1, excited = 2 };

// 3x3 density matrix in the basis {|1>, |2>, |3>}.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix3::Zero()) {}
  explicit DensityMatrix(const Matrix3& m) : m_(m) {}

  static DensityMatrix populations(double p1, double p2, double p3) {
    Matrix3 m = Matrix3::Zero();
    m(0, 0) = p1;
    m(1, 1) = p2;
    m(2, 2) = p3;
    return DensityMatrix(m);
  }

  // Pure state |psi><psi| for an (unnormalized) amplitude vector.
  static DensityMatrix projector(const Eigen::Vector3cd& psi) {
    const Eigen::Vector3cd u = psi.normalized();
    return DensityMatrix(u * u.adjoint());
  }

  // Equal ground-state mixture, the default initial condition.
  static DensityMatrix mixed_ground() { return populations(0.5, 0.5, 0.0); }

  Complex operator()(Level a, Level b) const { return m_(static_cast<int>(a), static_cast<int>(b)); }

  Complex rho12() const { return m_(0, 1); }
  Complex rho13() const { return m_(0, 2); }
  Complex rho23() const { return m_(1, 2); }
  double rho11() const { return m_(0, 0).real(); }
  double rho22() const { return m_(1, 1).real(); }
  double rho33() const { return m_(2, 2).real(); }

  const Matrix3& matrix() const noexcept { return m_; }
  Matrix3& matrix() noexcept { return m_; }

  Complex trace() const { return m_.trace(); }

  double trace_error() const { return std::abs(m_.trace() - 1.0); }

  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

  // Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const {
    const Matrix3 h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

  double max_abs_difference(const DensityMatrix& other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

  bool operator==(const DensityMatrix& other) const { return m_ == other.m_; }

 private:
  Matrix3 m_;
};

}  // namespace ramanecho
