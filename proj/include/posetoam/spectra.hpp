#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "posetoam/spectral_triple.hpp"
#include "posetoam/types.hpp"

namespace posetoam {

/// Quantisation sector θ ∈ [0, 1).
class ThetaSector {
 public:
  explicit ThetaSector(double theta) : theta_(theta) { detail::require_theta(theta); }
  double value() const { return theta_; }

 private:
  double theta_;
};

/// One eigenvalue/eigenfunction record, in units of ℏ. scale_n = 1 marks the
/// continuum family e^{i(n+θ)φ}; scale_n = N the lattice family
/// e^{i(j+θ)φ/N}.
struct EigenPair {
  int index;
  double theta;
  int scale_n;
  double eigenvalue_hbar;  // (index + θ)/scale_n
  std::vector<std::pair<double, Complex>> samples;
};

inline Complex continuum_eigenfunction(int n, double theta, double phi) {
  return std::polar(1.0, (n + theta) * phi);
}

inline Complex scaled_eigenfunction(int j, double theta, int n, double phi) {
  return std::polar(1.0, (j + theta) * phi / n);
}

/// Uniform periodic grid φ_k = k·period/count, k = 0..count−1 (no endpoint
/// duplication).
inline std::vector<double> uniform_angles(double period, int count) {
  detail::require(period > 0.0, "uniform_angles needs period > 0");
  detail::require(count >= 1, "uniform_angles needs count >= 1");
  std::vector<double> angles(count);
  for (int k = 0; k < count; ++k) angles[k] = period * k / count;
  return angles;
}

inline EigenPair continuum_eigenpair(int n, const ThetaSector& sector, int num_samples = 0) {
  EigenPair pair{n, sector.value(), 1, n + sector.value(), {}};
  if (num_samples > 0) {
    for (double phi : uniform_angles(2.0 * kPi, num_samples))
      pair.samples.emplace_back(phi, continuum_eigenfunction(n, sector.value(), phi));
  }
  return pair;
}

inline EigenPair scaled_eigenpair(int j, const ThetaSector& sector, int n, int num_samples = 0) {
  detail::require(n >= 3, "scaled_eigenpair needs n >= 3");
  if (j < 1 || j > n) throw std::out_of_range("scaled_eigenpair needs 1 <= j <= n");
  EigenPair pair{j, sector.value(), n, (j + sector.value()) / n, {}};
  if (num_samples > 0) {
    // the scaled family is periodic over 2πN, not 2π
    for (double phi : uniform_angles(2.0 * kPi * n, num_samples))
      pair.samples.emplace_back(phi, scaled_eigenfunction(j, sector.value(), n, phi));
  }
  return pair;
}

/// Samples of e^{i(n+θ)φ} on the uniform 2π grid.
inline Vector sample_continuum(int n, double theta, int count) {
  detail::require(count >= 2, "sample_continuum needs count >= 2");
  Vector out(count);
  for (int k = 0; k < count; ++k)
    out[k] = continuum_eigenfunction(n, theta, 2.0 * kPi * k / count);
  return out;
}

/// Samples of e^{i(j+θ)φ/N} on the uniform grid over one 2πN period.
inline Vector sample_scaled(int j, double theta, int n, int count) {
  detail::require(count >= 2, "sample_scaled needs count >= 2");
  Vector out(count);
  for (int k = 0; k < count; ++k)
    out[k] = scaled_eigenfunction(j, theta, n, 2.0 * kPi * n * k / count);
  return out;
}

/// Lowering half of the covariant derivative, acting through the right
/// module action: η ↦ η·(D_minus + ρ_minus). For the twisted hopping data
/// this realises out_j = e^{iθφ/N} η_{j−1}/(√2 ε). Requires unit hopping
/// phase (M = 1), matching the regime in which the split is defined.
inline ModuleSection covariant_minus_apply(const SpectralTriple& triple,
                                           const GaugeConnection& connection,
                                           const ModuleSection& eta) {
  detail::require(std::abs(triple.hopping - 1.0) <= 1e-12,
                  "covariant_minus_apply needs hopping M = 1");
  detail::require(connection.rho.rows() == triple.n && eta.size() == triple.n,
                  "covariant_minus_apply dimension mismatch");
  const Matrix lowering =
      split_dirac(triple).minus + detail::cyclic_upper_part(connection.rho);
  return act_on_section(lowering, eta);
}

/// Mean-value quadrature (1/period)∫ f̄ g dφ on a uniform grid spanning one
/// period; for periodic sampling the trapezoid and rectangle rules coincide
/// and the estimate is exact (to rounding) for trigonometric integrands of
/// bandwidth below the sample count.
inline Complex quadrature_inner(const Vector& f, const Vector& g, double period) {
  detail::require(period > 0.0, "quadrature_inner needs period > 0");
  detail::require(f.size() == g.size(), "quadrature grid mismatch");
  detail::require(f.size() >= 2, "quadrature needs at least 2 samples");
  return f.dot(g) / static_cast<double>(f.size());
}

/// Sorted real spectrum, values kept with multiplicity.
struct SpectrumSet {
  std::vector<double> values;  // ascending
  double theta = 0.0;
  int scale_n = 1;

  /// Distinct values under tolerance merging.
  std::vector<double> distinct(double merge_tol = 1e-12) const {
    std::vector<double> out;
    for (double v : values)
      if (out.empty() || v - out.back() > merge_tol) out.push_back(v);
    return out;
  }
};

/// Continuum eigenvalues n + θ for n in [n_min, n_max].
inline SpectrumSet continuum_spectrum(const ThetaSector& sector, int n_min, int n_max) {
  detail::require(n_min <= n_max, "continuum_spectrum needs n_min <= n_max");
  SpectrumSet set;
  set.theta = sector.value();
  set.scale_n = 1;
  for (int n = n_min; n <= n_max; ++n) set.values.push_back(n + sector.value());
  return set;
}

/// Lattice eigenvalues (j + θ)/N for j = 1..N.
inline SpectrumSet lattice_spectrum(const ThetaSector& sector, int n) {
  detail::require(n >= 3, "lattice_spectrum needs n >= 3");
  SpectrumSet set;
  set.theta = sector.value();
  set.scale_n = n;
  for (int j = 1; j <= n; ++j) set.values.push_back((j + sector.value()) / n);
  return set;
}

/// Full spectrum of D through a dense self-adjoint eigensolver; the slow,
/// structure-blind reference path.
inline SpectrumSet dirac_spectrum_dense(const SpectralTriple& triple) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(triple.dirac, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed (NaN/Inf input?)");
  SpectrumSet set;
  set.scale_n = triple.n;
  set.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + triple.n);
  std::sort(set.values.begin(), set.values.end());
  return set;
}

/// Closed-form spectrum of D. The matrix is circulant, so the Fourier basis
/// diagonalises it with eigenvalues (√2/ε)·cos(2πk/N − arg M), k = 0..N−1;
/// O(N) work.
inline SpectrumSet dirac_spectrum_circulant(const SpectralTriple& triple) {
  SpectrumSet set;
  set.scale_n = triple.n;
  set.values.resize(triple.n);
  const double amplitude = std::numbers::sqrt2 / triple.epsilon;
  const double phase = std::arg(triple.hopping);
  for (int k = 0; k < triple.n; ++k)
    set.values[k] = amplitude * std::cos(2.0 * kPi * k / triple.n - phase);
  std::sort(set.values.begin(), set.values.end());
  return set;
}

/// Minimal gap between the spectra {(j+θ₁)/N} and {(k+θ₂)/N} over all
/// integer labels: dist(θ₁−θ₂, Z)/N. Positive exactly when the sectors
/// differ, which is what obstructs unitary equivalence.
inline double spectra_distance(double theta1, double theta2, int n) {
  detail::require_theta(theta1);
  detail::require_theta(theta2);
  detail::require(n >= 1, "spectra_distance needs n >= 1");
  const double delta = theta1 - theta2;
  return std::abs(delta - std::round(delta)) / n;
}

/// Euclidean-group generators on the truncated basis {e_{n,θ} : |n| ≤ n_max}:
/// L̃ = diag(n+θ), X₁ = (r/2)(raise+lower), X₂ = (r/2i)(raise−lower).
struct EuclideanGenerators {
  double radius;
  int n_max;
  double theta;
  Matrix l_theta;
  Matrix x1;
  Matrix x2;
};

inline EuclideanGenerators build_e2_generators(int n_max, double theta, double radius = 1.0) {
  detail::require(n_max >= 1, "build_e2_generators needs n_max >= 1");
  detail::require(radius > 0.0, "build_e2_generators needs radius > 0");
  const int dim = 2 * n_max + 1;
  Matrix l = Matrix::Zero(dim, dim);
  Matrix x1 = Matrix::Zero(dim, dim);
  Matrix x2 = Matrix::Zero(dim, dim);
  const Complex iu(0.0, 1.0);
  for (int t = 0; t < dim; ++t) {
    l(t, t) = (t - n_max) + theta;
    if (t + 1 < dim) {
      x1(t + 1, t) = radius / 2.0;   // raise
      x1(t, t + 1) = radius / 2.0;   // lower
      x2(t + 1, t) = -iu * radius / 2.0;
      x2(t, t + 1) = iu * radius / 2.0;
    }
  }
  return {radius, n_max, theta, std::move(l), std::move(x1), std::move(x2)};
}

/// Largest interior-row deviation of the three Euclidean commutation
/// relations [L̃,X₁] = iX₂, [L̃,X₂] = −iX₁, [X₁,X₂] = 0. Rows with
/// |n| > n_max − 2 are excluded: truncation corrupts the outermost rows
/// only. θ enters L̃ as a multiple of the identity, so the residual is
/// θ-independent.
inline double e2_commutator_residual(const EuclideanGenerators& gens, double theta) {
  detail::require(gens.n_max >= 4, "e2_commutator_residual needs n_max >= 4");
  const int dim = 2 * gens.n_max + 1;
  Matrix l = Matrix::Zero(dim, dim);
  for (int t = 0; t < dim; ++t) l(t, t) = (t - gens.n_max) + theta;
  const Complex iu(0.0, 1.0);
  const Matrix c1 = l * gens.x1 - gens.x1 * l - iu * gens.x2;
  const Matrix c2 = l * gens.x2 - gens.x2 * l + iu * gens.x1;
  const Matrix c3 = gens.x1 * gens.x2 - gens.x2 * gens.x1;
  double worst = 0.0;
  for (int t = 2; t <= dim - 3; ++t) {
    worst = std::max(worst, max_abs(c1.row(t)));
    worst = std::max(worst, max_abs(c2.row(t)));
    worst = std::max(worst, max_abs(c3.row(t)));
  }
  return worst;
}

}  // namespace posetoam
