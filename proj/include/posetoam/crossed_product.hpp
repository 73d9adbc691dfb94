#pragma once

#include <algorithm>
#include <vector>

#include "posetoam/types.hpp"

namespace posetoam {

/// Clock matrix U = diag(1, λ, λ², …, λ^{N−1}) with λ = e^{2πi/N}.
inline Matrix build_clock(int n) {
  detail::require(n >= 2, "build_clock needs n >= 2");
  Matrix u = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) u(k, k) = std::polar(1.0, 2.0 * kPi * k / n);
  return u;
}

/// Cyclic shift V sending basis vector k to k+1 (mod N).
inline Matrix build_shift(int n) {
  detail::require(n >= 2, "build_shift needs n >= 2");
  Matrix v = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) v((k + 1) % n, k) = 1.0;
  return v;
}

/// Generators of the crossed product C(Z_N) ⋊ Z_N: the clock U (characters
/// of the dual group) and the shift V (translation), with UVU⁻¹ = λV.
struct CrossedProductAlgebra {
  int n;
  Complex lambda;  // e^{2πi/N}
  Matrix clock;    // U
  Matrix shift;    // V
};

inline CrossedProductAlgebra build_crossed_product(int n) {
  detail::require(n >= 2, "build_crossed_product needs n >= 2");
  return {n, std::polar(1.0, 2.0 * kPi / n), build_clock(n), build_shift(n)};
}

/// A^k by square-and-multiply, k >= 0.
inline Matrix matrix_power(Matrix base, long exponent) {
  detail::require(base.rows() == base.cols(), "matrix_power needs a square matrix");
  detail::require(exponent >= 0, "matrix_power needs a non-negative exponent");
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Largest entry deviations from the defining relations.
struct RelationReport {
  double clock_power;  // max |U^N − 1|
  double shift_power;  // max |V^N − 1|
  double conjugation;  // max |U V U⁻¹ − λ V|
  double worst() const { return std::max({clock_power, shift_power, conjugation}); }
  bool pass(double tol) const { return worst() < tol; }
};

inline RelationReport verify_relations(const CrossedProductAlgebra& alg, double tol) {
  detail::require(tol > 0.0, "verify_relations needs tol > 0");
  detail::require(alg.clock.rows() == alg.clock.cols() && alg.shift.rows() == alg.shift.cols() &&
                      alg.clock.rows() == alg.shift.rows(),
                  "clock/shift dimension mismatch");
  detail::require(alg.clock.rows() == alg.n, "generator dimension differs from n");
  const Matrix eye = Matrix::Identity(alg.n, alg.n);
  RelationReport report;
  report.clock_power = max_abs(matrix_power(alg.clock, alg.n) - eye);
  report.shift_power = max_abs(matrix_power(alg.shift, alg.n) - eye);
  report.conjugation = max_abs(alg.clock * alg.shift * alg.clock.inverse() - alg.lambda * alg.shift);
  return report;
}

/// Dimension spanned by {U^a V^b : 0 ≤ a,b < N} inside M_N(C), computed as
/// the rank of the Hilbert–Schmidt Gram matrix. Equals N² exactly when the
/// monomials exhaust the full matrix algebra.
inline int weyl_span_rank(const CrossedProductAlgebra& alg, double rel_tol = 1e-9) {
  const int n = alg.n;
  std::vector<Matrix> upow(n), vpow(n);
  upow[0] = Matrix::Identity(n, n);
  vpow[0] = Matrix::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    upow[k] = upow[k - 1] * alg.clock;
    vpow[k] = vpow[k - 1] * alg.shift;
  }
  std::vector<Matrix> monomials;
  monomials.reserve(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) monomials.push_back(upow[a] * vpow[b]);

  const int count = n * n;
  Matrix gram(count, count);
  for (int r = 0; r < count; ++r)
    for (int c = 0; c < count; ++c) gram(r, c) = (monomials[r].adjoint() * monomials[c]).trace();

  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (!(top > 0.0)) return 0;
  int rank = 0;
  for (int k = 0; k < count; ++k)
    if (es.eigenvalues()(k) > rel_tol * top) ++rank;
  return rank;
}

}  // namespace posetoam
