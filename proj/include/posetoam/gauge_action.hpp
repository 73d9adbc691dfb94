#pragma once

#include <cmath>
#include <vector>

#include "posetoam/spectral_triple.hpp"
#include "posetoam/types.hpp"

namespace posetoam {

/// Two-point differential calculus carried by the off-diagonal block M of
/// the Dirac operator on H_a ⊕ H_b. `multiplicity` is the dimension carried
/// by Trace((M̄M)²) when the block is scalar-times-identity.
struct TwoPointCalculus {
  Complex hopping;   // M, |M| = 1
  int multiplicity;  // dim, >= 1
};

inline TwoPointCalculus make_two_point_calculus(Complex m, int multiplicity = 1) {
  detail::require(std::abs(std::abs(m) - 1.0) <= 1e-12, "hopping phase must have modulus one");
  detail::require(multiplicity >= 1, "multiplicity must be at least 1");
  return {m, multiplicity};
}

/// π(de) = [[0, −M̄], [M, 0]].
inline Matrix2 pi_de(const TwoPointCalculus& calc) {
  Matrix2 out;
  out << 0.0, -std::conj(calc.hopping), calc.hopping, 0.0;
  return out;
}

/// π(de de) = diag(−M̄M, −MM̄); equals −1 for |M| = 1.
inline Matrix2 pi_de_de(const TwoPointCalculus& calc) {
  Matrix2 out = Matrix2::Zero();
  out(0, 0) = -std::conj(calc.hopping) * calc.hopping;
  out(1, 1) = -calc.hopping * std::conj(calc.hopping);
  return out;
}

/// Vector potential coefficient: any complex Φ is admissible.
struct GaugeCoefficient {
  Complex value;
};

/// π(V) = [[0, ΦM̄], [Φ̄M, 0]]; self-adjoint by construction.
inline Matrix2 vector_potential(const GaugeCoefficient& phi, const TwoPointCalculus& calc) {
  Matrix2 out;
  out << 0.0, phi.value * std::conj(calc.hopping), std::conj(phi.value) * calc.hopping, 0.0;
  return out;
}

/// Scalar c(Φ) with curvature Θ = dV + V² = −c(Φ)·de de. Reducing dV + V²
/// with the two-point identities e·de·(1−e) = e·de, e·de·e = 0,
/// (1−e)·de·(1−e) = 0 leaves c(Φ) = Φ + Φ̄ + ΦΦ̄, which equals |Φ+1|² − 1.
inline double curvature_coefficient(const GaugeCoefficient& phi) {
  return 2.0 * phi.value.real() + std::norm(phi.value);
}

/// YM(V) = 2(|Φ+1|² − 1)²·Trace((M̄M)²); non-negative, zero exactly on the
/// circle |Φ+1| = 1.
inline double ym_action(const GaugeCoefficient& phi, const TwoPointCalculus& calc) {
  const double u = std::norm(phi.value + 1.0) - 1.0;
  const double trace_msq = calc.multiplicity * std::norm(calc.hopping) * std::norm(calc.hopping);
  return 2.0 * u * u * trace_msq;
}

/// Gradient of YM with respect to (Re Φ, Im Φ), packed as a complex number:
/// 8·Tr((M̄M)²)·(|Φ+1|² − 1)·(Φ + 1).
inline Complex ym_gradient(const GaugeCoefficient& phi, const TwoPointCalculus& calc) {
  const double u = std::norm(phi.value + 1.0) - 1.0;
  const double trace_msq = calc.multiplicity * std::norm(calc.hopping) * std::norm(calc.hopping);
  return 8.0 * trace_msq * u * (phi.value + 1.0);
}

struct MinimizeStep {
  int iteration;
  Complex phi;
  double ym;
};

struct MinimizeResult {
  GaugeCoefficient phi;
  double ym;
  int iterations;
  bool converged;
  std::vector<MinimizeStep> trace;  // accepted iterates, ym strictly decreasing
};

/// Damped gradient descent on YM over (Re Φ, Im Φ) with Armijo backtracking.
/// The minimiser set is the whole circle |Φ+1| = 1, so the returned point
/// depends on the start. The stationary maximum at Φ = −1 is escaped by a
/// deterministic 1e−8 step in the +1 direction.
inline MinimizeResult minimize_ym(const TwoPointCalculus& calc, Complex init, double tol,
                                  int max_iters) {
  detail::require(tol >= 0.0, "minimize_ym needs tol >= 0");
  detail::require(max_iters >= 0, "minimize_ym needs max_iters >= 0");
  const auto objective = [&](Complex p) { return ym_action(GaugeCoefficient{p}, calc); };
  const auto gradient = [&](Complex p) { return ym_gradient(GaugeCoefficient{p}, calc); };

  Complex p = init;
  double f = objective(p);
  MinimizeResult result;
  result.trace.push_back({0, p, f});

  double step = 0.25;
  int it = 0;
  while (f >= tol && it < max_iters) {
    ++it;
    Complex g = gradient(p);
    double g2 = std::norm(g);
    if (g2 < 1e-30 * std::max(1.0, f)) {
      const double u = std::norm(p + 1.0) - 1.0;
      if (u < -0.5) {
        // stationary but not minimal (the apex at Φ = −1): nudge and continue
        p += 1e-8;
        f = objective(p);
        result.trace.push_back({it, p, f});
        continue;
      }
      break;  // gradient numerically zero away from the apex: stalled
    }
    double t = step;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      const Complex cand = p - t * g;
      const double fc = objective(cand);
      if (fc <= f - 1e-4 * t * g2) {
        p = cand;
        f = fc;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // step underflow: no further progress possible
    result.trace.push_back({it, p, f});
    step = std::min(t * 2.0, 1e6);
  }

  result.phi = {p};
  result.ym = f;
  result.iterations = it;
  result.converged = f < tol;
  return result;
}

/// Evaluates the action and curvature at Φ = σ(θ, φ, N); both vanish.
struct SigmaMinimumReport {
  Complex sigma;
  double ym_value;
  double curvature_value;
};

inline SigmaMinimumReport verify_sigma_minimum(double theta, double phi, int n) {
  const Complex sigma = build_sigma(theta, phi, n);
  const GaugeCoefficient coeff{sigma};
  const TwoPointCalculus calc = make_two_point_calculus(1.0);
  return {sigma, ym_action(coeff, calc), curvature_coefficient(coeff)};
}

}  // namespace posetoam
