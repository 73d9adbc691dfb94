#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace posetoam {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Largest |entry| of a matrix or vector expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Sector parameters live in the half-open interval [0, 1).
inline void require_theta(double theta) {
  require(theta >= 0.0 && theta < 1.0, "theta must lie in [0, 1)");
}

}  // namespace detail

}  // namespace posetoam
