#pragma once

#include <numbers>
#include <utility>

#include "posetoam/poset.hpp"
#include "posetoam/types.hpp"

namespace posetoam {

/// Lattice scale defaulting to the arc spacing of N sites on the unit circle.
inline double default_epsilon(int n) { return 2.0 * kPi / n; }

/// Cyclic nearest-neighbour Dirac data on N sites:
///   D_{i,i+1} = M̄/(ε√2),  D_{i+1,i} = M/(ε√2),  indices mod N.
struct SpectralTriple {
  int n;
  double epsilon;
  Complex hopping;  // M, |M| = 1
  Matrix dirac;
};

inline SpectralTriple build_dirac(int n, double epsilon, Complex m) {
  detail::require(n >= 3, "build_dirac needs n >= 3 (wrap entries collide below that)");
  detail::require(epsilon > 0.0, "build_dirac needs epsilon > 0");
  detail::require(std::abs(std::abs(m) - 1.0) <= 1e-12, "hopping phase must have modulus one");
  const double scale = 1.0 / (epsilon * std::numbers::sqrt2);
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    d(i, j) = std::conj(m) * scale;
    d(j, i) = m * scale;
  }
  return {n, epsilon, m, std::move(d)};
}

/// σ = e^{−iθφ/N} − 1; always sits on the circle |σ + 1| = 1.
inline Complex build_sigma(double theta, double phi, int n) {
  detail::require(n >= 3, "build_sigma needs n >= 3");
  detail::require_theta(theta);
  return std::polar(1.0, -theta * phi / n) - 1.0;
}

/// Hermitian connection ρ with the same cyclic band profile as D, each
/// hopping entry dressed by σ:
///   ρ_{i,i+1} = σ̄M̄/(ε√2),  ρ_{i+1,i} = σM/(ε√2).
struct GaugeConnection {
  double theta;
  double phi;
  Complex sigma;
  Matrix rho;
};

inline GaugeConnection build_connection(const SpectralTriple& triple, double theta, double phi) {
  const Complex sigma = build_sigma(theta, phi, triple.n);
  const double scale = 1.0 / (triple.epsilon * std::numbers::sqrt2);
  const int n = triple.n;
  Matrix rho = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    rho(i, j) = std::conj(sigma) * std::conj(triple.hopping) * scale;
    rho(j, i) = sigma * triple.hopping * scale;
  }
  return {theta, phi, sigma, std::move(rho)};
}

namespace detail {

/// Entries (i, i+1 mod N) of a cyclic band matrix; everything else zeroed.
inline Matrix cyclic_upper_part(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, (i + 1) % n) = a(i, (i + 1) % n);
  return out;
}

}  // namespace detail

/// Section η = (η1, …, ηN) of the trivial line bundle over the lattice.
/// Component labels are 1-based and cyclic (η_0 ≡ η_N, η_{N+1} ≡ η_1).
class ModuleSection {
 public:
  explicit ModuleSection(Vector components) : components_(std::move(components)) {
    detail::require(components_.size() >= 3, "ModuleSection needs at least 3 components");
  }

  int size() const { return static_cast<int>(components_.size()); }
  const Vector& components() const { return components_; }

  /// η_j for any integer label j, wrapped cyclically.
  Complex component(int j) const {
    const int n = size();
    return components_[((j - 1) % n + n) % n];
  }

 private:
  Vector components_;
};

/// Sections form a right module over the site algebra, so operators act on
/// them through the component row: (η·A)_j = Σ_i η_i A_{ij}. Under this
/// action the upper cyclic band of D shifts components downward,
/// (η·D_upper)_j = M̄ η_{j−1}/(ε√2).
inline ModuleSection act_on_section(const Matrix& op, const ModuleSection& eta) {
  detail::require(op.rows() == op.cols() && op.rows() == eta.size(),
                  "operator/section dimension mismatch");
  return ModuleSection(op.transpose() * eta.components());
}

/// D split by hopping direction, D = plus + minus. `minus` is the upper
/// cyclic band: acting on a section (see act_on_section) it realises the
/// transition j → j−1, with (η·minus)_j = η_{j−1}/(√2 ε) at M = 1.
struct DiracSplit {
  Matrix plus;
  Matrix minus;
};

inline DiracSplit split_dirac(const SpectralTriple& triple) {
  Matrix minus = detail::cyclic_upper_part(triple.dirac);
  Matrix plus = triple.dirac - minus;
  return {std::move(plus), std::move(minus)};
}

/// Pointwise pairing ⟨η', η⟩ = (η̄'_1 η_1, …, η̄'_N η_N), valued in the site
/// algebra.
inline AlgebraElement hermitian_structure(const ModuleSection& a, const ModuleSection& b) {
  detail::require(a.size() == b.size(), "hermitian_structure needs equal lengths");
  return AlgebraElement(a.components().conjugate().cwiseProduct(b.components()));
}

/// Scalar pairing tr⟨η', η⟩ = Σ_j η̄'_j η_j.
inline Complex trace_product(const ModuleSection& a, const ModuleSection& b) {
  detail::require(a.size() == b.size(), "trace_product needs equal lengths");
  return a.components().dot(b.components());
}

/// Right action of the site algebra: η·c = (η_1 λ_1, …, η_N λ_N).
inline ModuleSection module_action(const ModuleSection& eta, const AlgebraElement& c) {
  detail::require(eta.size() == c.size(), "module_action needs equal lengths");
  return ModuleSection(eta.components().cwiseProduct(c.values()));
}

/// The twisted diagonal family η_j = e^{i(j+θ)φ/N}, j = 1..N.
inline ModuleSection build_section(double theta, double phi, int n) {
  detail::require(n >= 3, "build_section needs n >= 3");
  detail::require_theta(theta);
  Vector v(n);
  for (int j = 1; j <= n; ++j) v[j - 1] = std::polar(1.0, (j + theta) * phi / n);
  return ModuleSection(std::move(v));
}

}  // namespace posetoam
