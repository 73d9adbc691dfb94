#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "posetoam/crossed_product.hpp"
#include "posetoam/gauge_action.hpp"
#include "posetoam/poset.hpp"
#include "posetoam/spectra.hpp"
#include "posetoam/spectral_triple.hpp"

namespace posetoam {

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

namespace detail {

inline std::mt19937_64 check_rng(std::uint64_t seed, std::uint64_t salt) {
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + salt + 1);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Complex random_unit(std::mt19937_64& rng) {
  return std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
}

inline Complex random_disk(std::mt19937_64& rng, double radius) {
  return Complex(uniform(rng, -radius, radius), uniform(rng, -radius, radius));
}

inline Vector random_vector(std::mt19937_64& rng, int n, double radius = 1.0) {
  Vector v(n);
  for (int k = 0; k < n; ++k) v[k] = random_disk(rng, radius);
  return v;
}

// ---- circle-poset ---------------------------------------------------------

inline double check_poset_cover_structure(std::uint64_t) {
  double violations = 0;
  for (int n = 3; n <= 16; ++n) {
    const CirclePoset poset = build_poset(n);
    if (static_cast<int>(poset.points().size()) != 2 * n) violations += 1;
    if (static_cast<int>(poset.covers().size()) != 2 * n) violations += 1;
    std::vector<int> up_degree(2 * n + 1, 0), down_degree(2 * n + 1, 0);
    std::vector<std::vector<int>> adjacency(2 * n + 1);
    for (const auto& [lo, hi] : poset.covers()) {
      if (poset.point(lo).kind != PointKind::Bottom) violations += 1;
      if (poset.point(hi).kind != PointKind::Top) violations += 1;
      ++up_degree[lo];
      ++down_degree[hi];
      adjacency[lo].push_back(hi);
      adjacency[hi].push_back(lo);
    }
    for (int id = 1; id <= n; ++id)
      if (down_degree[id] != 2) violations += 1;  // each top covers two bottoms
    for (int id = n + 1; id <= 2 * n; ++id)
      if (up_degree[id] != 2) violations += 1;  // each bottom has two upper covers
    // the Hasse diagram is one alternating cycle of length 2N
    std::vector<bool> seen(2 * n + 1, false);
    std::queue<int> frontier;
    frontier.push(1);
    seen[1] = true;
    int reached = 0;
    while (!frontier.empty()) {
      const int id = frontier.front();
      frontier.pop();
      ++reached;
      for (int next : adjacency[id])
        if (!seen[next]) {
          seen[next] = true;
          frontier.push(next);
        }
    }
    if (reached != 2 * n) violations += 1;
  }
  return violations;
}

inline double check_poset_order_axioms(std::uint64_t) {
  double violations = 0;
  for (int n = 3; n <= 16; ++n) {
    const CirclePoset poset = build_poset(n);
    const auto rel = partial_order(poset);
    const int count = 2 * n;
    for (int p = 1; p <= count; ++p)
      if (!rel.count({p, p})) violations += 1;
    for (const auto& [p, q] : rel)
      if (p != q && rel.count({q, p})) violations += 1;  // antisymmetry
    for (const auto& [p, q] : rel)
      for (int r = 1; r <= count; ++r)
        if (rel.count({q, r}) && !rel.count({p, r})) violations += 1;  // transitivity
  }
  return violations;
}

inline double check_poset_kernel_inclusions(std::uint64_t) {
  double violations = 0;
  for (int n = 3; n <= 16; ++n) {
    const CirclePoset poset = build_poset(n);
    for (int i = 1; i <= n; ++i) {
      const auto bottom = kernel_indices(poset, n + i);
      const auto top = kernel_indices(poset, i);
      const auto top_next = kernel_indices(poset, i % n + 1);
      if (bottom.size() != 2 || top.size() != 1) violations += 1;
      if (!std::includes(bottom.begin(), bottom.end(), top.begin(), top.end())) violations += 1;
      if (!std::includes(bottom.begin(), bottom.end(), top_next.begin(), top_next.end()))
        violations += 1;
    }
  }
  return violations;
}

inline double check_poset_evaluation_consistency(std::uint64_t seed) {
  auto rng = check_rng(seed, 4);
  double worst = 0.0;
  for (int n : {3, 5, 8}) {
    const AlgebraElement c{random_vector(rng, n, 2.0)};
    for (int i = 1; i <= n; ++i) {
      const Matrix2 b = eval_bottom(c, i);
      worst = std::max(worst, std::abs(b(0, 0) - eval_top(c, i)));
      worst = std::max(worst, std::abs(b(1, 1) - eval_top(c, i % n + 1)));
      worst = std::max(worst, std::abs(b(0, 1)) + std::abs(b(1, 0)));
    }
  }
  return worst;
}

// ---- crossed-product ------------------------------------------------------

inline double check_crossed_unitarity(std::uint64_t) {
  double worst = 0.0;
  for (int n : {2, 3, 8, 64, 256, 1024}) {
    const CrossedProductAlgebra alg = build_crossed_product(n);
    const Matrix eye = Matrix::Identity(n, n);
    worst = std::max(worst, max_abs(alg.clock.adjoint() * alg.clock - eye));
    worst = std::max(worst, max_abs(alg.shift.adjoint() * alg.shift - eye));
  }
  return worst;
}

inline double check_crossed_relations(std::uint64_t) {
  double worst = 0.0;
  for (int n : {2, 3, 8, 64, 1024}) {
    const RelationReport report = verify_relations(build_crossed_product(n), 1.0);
    worst = std::max(worst, report.worst());
  }
  return worst;
}

inline double check_crossed_clock_traces(std::uint64_t) {
  double worst = 0.0;
  for (int n : {2, 3, 8, 16}) {
    const Matrix u = build_clock(n);
    Matrix power = Matrix::Identity(n, n);
    worst = std::max(worst, std::abs(power.trace() - Complex(n, 0)));
    for (int k = 1; k < n; ++k) {
      power = power * u;
      worst = std::max(worst, std::abs(power.trace()));
    }
  }
  return worst;
}

inline double check_crossed_weyl_span(std::uint64_t) {
  double violations = 0;
  for (int n : {2, 3, 5, 8})
    if (weyl_span_rank(build_crossed_product(n)) != n * n) violations += 1;
  return violations;
}

// ---- spectral-triple ------------------------------------------------------

inline double check_dirac_self_adjoint(std::uint64_t seed) {
  auto rng = check_rng(seed, 9);
  double worst = 0.0;
  for (int n : {3, 4, 8, 33, 128, 1024}) {
    const SpectralTriple triple = build_dirac(n, default_epsilon(n), random_unit(rng));
    worst = std::max(worst, max_abs(triple.dirac - triple.dirac.adjoint()));
  }
  return worst;
}

inline double check_connection_hermitian(std::uint64_t seed) {
  auto rng = check_rng(seed, 10);
  double worst = 0.0;
  for (int n : {3, 4, 8, 33, 128, 1024}) {
    const SpectralTriple triple = build_dirac(n, default_epsilon(n), random_unit(rng));
    const GaugeConnection conn =
        build_connection(triple, uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 2.0 * kPi));
    worst = std::max(worst, max_abs(conn.rho - conn.rho.adjoint()));
  }
  return worst;
}

inline double check_sigma_circle(std::uint64_t seed) {
  auto rng = check_rng(seed, 11);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Complex sigma = build_sigma(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 2.0 * kPi),
                                      uniform_int(rng, 3, 64));
    worst = std::max(worst, std::abs(std::abs(sigma + 1.0) - 1.0));
  }
  return worst;
}

inline double check_split_partition(std::uint64_t seed) {
  auto rng = check_rng(seed, 12);
  double worst = 0.0;
  for (int n : {3, 4, 9, 32}) {
    const SpectralTriple triple = build_dirac(n, uniform(rng, 0.1, 3.0), random_unit(rng));
    const DiracSplit split = split_dirac(triple);
    worst = std::max(worst, max_abs(split.plus + split.minus - triple.dirac));
  }
  return worst;
}

inline double check_lowering_map(std::uint64_t seed) {
  auto rng = check_rng(seed, 13);
  double worst = 0.0;
  for (int n : {3, 8, 17}) {
    const double epsilon = default_epsilon(n);
    const SpectralTriple triple = build_dirac(n, epsilon, 1.0);
    const ModuleSection eta{random_vector(rng, n)};
    const ModuleSection lowered = act_on_section(split_dirac(triple).minus, eta);
    const double back = std::numbers::sqrt2 * epsilon;
    for (int j = 1; j <= n; ++j)
      worst = std::max(worst, std::abs(back * lowered.component(j) - eta.component(j - 1)));
  }
  return worst;
}

inline double check_pairing_positivity(std::uint64_t seed) {
  auto rng = check_rng(seed, 14);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 3, 24);
    const ModuleSection eta{random_vector(rng, n)};
    const Complex norm2 = trace_product(eta, eta);
    worst = std::max(worst, std::abs(norm2.imag()));
    worst = std::max(worst, std::max(0.0, -norm2.real()));
    if (eta.components().norm() > 1e-6 && norm2.real() <= 0.0) worst = std::max(worst, 1.0);
  }
  const ModuleSection zero{Vector::Zero(5)};
  worst = std::max(worst, std::abs(trace_product(zero, zero)));
  return worst;
}

inline double check_sesquilinearity(std::uint64_t seed) {
  auto rng = check_rng(seed, 15);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 3, 8);
    const ModuleSection a{random_vector(rng, n)};
    const ModuleSection b{random_vector(rng, n)};
    const AlgebraElement c{random_vector(rng, n)};
    const AlgebraElement left = hermitian_structure(a, module_action(b, c));
    const AlgebraElement right = hermitian_structure(a, b) * c;
    worst = std::max(worst, max_abs(left.values() - right.values()));
  }
  return worst;
}

inline double check_module_associativity(std::uint64_t seed) {
  auto rng = check_rng(seed, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 3, 8);
    const ModuleSection eta{random_vector(rng, n)};
    const AlgebraElement c{random_vector(rng, n)};
    const AlgebraElement d{random_vector(rng, n)};
    const ModuleSection left = module_action(module_action(eta, c), d);
    const ModuleSection right = module_action(eta, c * d);
    worst = std::max(worst, max_abs(left.components() - right.components()));
  }
  return worst;
}

// ---- gauge-action ---------------------------------------------------------

inline double check_curvature_identity(std::uint64_t seed) {
  auto rng = check_rng(seed, 17);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Complex phi = random_disk(rng, 3.0);
    const double via_square = std::norm(phi + 1.0) - 1.0;
    worst = std::max(worst, std::abs(curvature_coefficient(GaugeCoefficient{phi}) - via_square));
  }
  return worst;
}

inline double check_ym_curvature_link(std::uint64_t seed) {
  auto rng = check_rng(seed, 18);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const TwoPointCalculus calc =
        make_two_point_calculus(random_unit(rng), uniform_int(rng, 1, 3));
    const GaugeCoefficient phi{random_disk(rng, 3.0)};
    // matrix route: Θ = −c(Φ)·de de, YM = multiplicity·Trace(π(Θ)²)/... with
    // the two-by-two block carrying |M|⁴ on both diagonal slots
    const Matrix2 theta_matrix = -curvature_coefficient(phi) * pi_de_de(calc);
    const double via_matrix =
        calc.multiplicity * (theta_matrix * theta_matrix).trace().real();
    worst = std::max(worst, std::abs(ym_action(phi, calc) - via_matrix));
  }
  return worst;
}

inline double check_ym_rotation_invariance(std::uint64_t seed) {
  auto rng = check_rng(seed, 19);
  const TwoPointCalculus calc = make_two_point_calculus(1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Complex phi = random_disk(rng, 3.0);
    const Complex rotated = std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi)) * (phi + 1.0) - 1.0;
    worst = std::max(worst, std::abs(ym_action(GaugeCoefficient{rotated}, calc) -
                                     ym_action(GaugeCoefficient{phi}, calc)));
  }
  return worst;
}

inline double check_ym_gradient_fd(std::uint64_t seed) {
  auto rng = check_rng(seed, 20);
  const TwoPointCalculus calc = make_two_point_calculus(1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Complex phi = random_disk(rng, 2.5);
    const Complex analytic = ym_gradient(GaugeCoefficient{phi}, calc);
    const double h = 1e-5;
    const auto f = [&](Complex p) { return ym_action(GaugeCoefficient{p}, calc); };
    const Complex fd((f(phi + h) - f(phi - h)) / (2.0 * h),
                     (f(phi + Complex(0, h)) - f(phi - Complex(0, h))) / (2.0 * h));
    const double scale = std::max(1.0, std::abs(analytic));
    worst = std::max(worst, std::abs(fd - analytic) / scale);
  }
  return worst;
}

inline double check_descent_monotone(std::uint64_t seed) {
  auto rng = check_rng(seed, 21);
  double violations = 0;
  std::vector<Complex> inits = {0.0, 1.0, {2.0, 1.0}, -1.0, random_disk(rng, 2.0)};
  for (const Complex init : inits) {
    const MinimizeResult result = minimize_ym(make_two_point_calculus(1.0), init, 1e-12, 10000);
    if (!result.converged) violations += 1;
    for (std::size_t k = 1; k < result.trace.size(); ++k)
      if (result.trace[k].ym > result.trace[k - 1].ym) violations += 1;
  }
  return violations;
}

inline double check_sigma_minimum_sweep(std::uint64_t seed) {
  auto rng = check_rng(seed, 22);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const SigmaMinimumReport report = verify_sigma_minimum(
        uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 2.0 * kPi), uniform_int(rng, 3, 64));
    worst = std::max(worst, std::max(report.ym_value, std::abs(report.curvature_value)));
  }
  return worst;
}

inline double check_pi_de_square(std::uint64_t seed) {
  auto rng = check_rng(seed, 23);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const TwoPointCalculus calc = make_two_point_calculus(random_unit(rng));
    const Matrix2 de = pi_de(calc);
    worst = std::max(worst, max_abs(Matrix2(de * de) - pi_de_de(calc)));
    worst = std::max(worst, max_abs(Matrix2(de * de) + Matrix2::Identity()));
  }
  return worst;
}

inline double check_potential_self_adjoint(std::uint64_t seed) {
  auto rng = check_rng(seed, 24);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix2 v = vector_potential(GaugeCoefficient{random_disk(rng, 3.0)},
                                       make_two_point_calculus(random_unit(rng)));
    worst = std::max(worst, max_abs(v - v.adjoint()));
  }
  return worst;
}

// ---- oam-spectra ----------------------------------------------------------

/// Independent first-derivative probe: central difference of −i d/dφ applied
/// to a sampled phase function, normalised at φ.
template <typename F>
double fd_eigenvalue(F&& function, double phi, double h) {
  const Complex derivative = (function(phi + h) - function(phi - h)) / (2.0 * h);
  const Complex ratio = derivative / (Complex(0.0, 1.0) * function(phi));
  return ratio.real();
}

inline double check_eigenvalue_fd(std::uint64_t) {
  double worst = 0.0;
  const double h = 1e-4;
  const double phi0 = 0.8;
  for (int n : {3, 4, 8, 16, 64})
    for (double theta : {0.0, 0.25, 0.5, 0.9})
      for (int j = 1; j <= n; ++j) {
        const double exact = (j + theta) / n;
        const double fd = fd_eigenvalue(
            [&](double phi) { return scaled_eigenfunction(j, theta, n, phi); }, phi0, h);
        worst = std::max(worst, std::abs(fd - exact) / exact);
      }
  for (int n : {-3, 0, 2, 5})
    for (double theta : {0.0, 0.25, 0.9}) {
      const double exact = n + theta;
      if (exact == 0.0) continue;  // relative error undefined at the zero mode
      const double fd = fd_eigenvalue(
          [&](double phi) { return continuum_eigenfunction(n, theta, phi); }, phi0, h);
      worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
  return worst;
}

inline double check_eigenvalue_fd_order(std::uint64_t) {
  double deficit = 0.0;
  const double h0 = 0.04;
  const double phi0 = 0.8;
  for (int n : {3, 8, 64})
    for (double theta : {0.0, 0.25, 0.9})
      for (int j = 1; j <= n; j += std::max(1, n / 4)) {
        const double exact = (j + theta) / n;
        const auto fn = [&](double phi) { return scaled_eigenfunction(j, theta, n, phi); };
        const double e0 = std::abs(fd_eigenvalue(fn, phi0, h0) - exact);
        const double e1 = std::abs(fd_eigenvalue(fn, phi0, h0 / 2) - exact);
        const double e2 = std::abs(fd_eigenvalue(fn, phi0, h0 / 4) - exact);
        const double order = std::min(std::log2(e0 / e1), std::log2(e1 / e2));
        deficit = std::max(deficit, 1.9 - order);
      }
  return std::max(0.0, deficit);
}

inline double check_covariant_closed_form(std::uint64_t seed) {
  auto rng = check_rng(seed, 27);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = uniform_int(rng, 3, 32);
    const double theta = uniform(rng, 0.0, 1.0);
    const double phi = uniform(rng, 0.0, 2.0 * kPi);
    const SpectralTriple triple = build_dirac(n, default_epsilon(n), 1.0);
    const GaugeConnection conn = build_connection(triple, theta, phi);
    const ModuleSection eta{random_vector(rng, n)};
    const ModuleSection out = covariant_minus_apply(triple, conn, eta);
    const Complex twist = std::polar(1.0, theta * phi / n);
    const double scale = 1.0 / (std::numbers::sqrt2 * triple.epsilon);
    for (int j = 1; j <= n; ++j)
      worst = std::max(worst,
                       std::abs(out.component(j) - scale * twist * eta.component(j - 1)));
  }
  return worst;
}

inline double check_covariant_section_ratio(std::uint64_t seed) {
  auto rng = check_rng(seed, 28);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 3, 32);
    const double theta = uniform(rng, 0.0, 1.0);
    const double phi = uniform(rng, 0.0, 2.0 * kPi);
    const SpectralTriple triple = build_dirac(n, default_epsilon(n), 1.0);
    const GaugeConnection conn = build_connection(triple, theta, phi);
    const ModuleSection eta = build_section(theta, phi, n);
    const ModuleSection out = covariant_minus_apply(triple, conn, eta);
    const Complex twist = std::polar(1.0, theta * phi / n);
    const double back = std::numbers::sqrt2 * triple.epsilon;
    for (int j = 1; j <= n; ++j)
      worst = std::max(worst,
                       std::abs(back * out.component(j) / eta.component(j - 1) - twist));
  }
  return worst;
}

inline double check_dense_vs_circulant(std::uint64_t seed) {
  auto rng = check_rng(seed, 29);
  double worst = 0.0;
  for (int n : {3, 4, 5, 8, 16, 33, 64, 128, 257, 512}) {
    const SpectralTriple triple = build_dirac(n, default_epsilon(n), random_unit(rng));
    const SpectrumSet dense = dirac_spectrum_dense(triple);
    const SpectrumSet fast = dirac_spectrum_circulant(triple);
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(dense.values[k] - fast.values[k]));
  }
  return worst;
}

inline double check_dirac_n4_exact(std::uint64_t) {
  const SpectralTriple triple = build_dirac(4, 1.0, 1.0);
  const std::vector<double> expected = {-std::numbers::sqrt2, 0.0, 0.0, std::numbers::sqrt2};
  double worst = 0.0;
  for (const SpectrumSet& set : {dirac_spectrum_dense(triple), dirac_spectrum_circulant(triple)})
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(set.values[k] - expected[k]));
  return worst;
}

inline double check_dirac_trace(std::uint64_t seed) {
  auto rng = check_rng(seed, 31);
  double worst = 0.0;
  for (int n : {3, 7, 32, 128, 256}) {
    const SpectralTriple triple = build_dirac(n, 1.0, random_unit(rng));
    const SpectrumSet dense = dirac_spectrum_dense(triple);
    double sum = 0.0;
    for (double v : dense.values) sum += v;
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

inline double check_gram_continuum(std::uint64_t) {
  const int half_width = 8;
  const int samples = 64;
  double worst = 0.0;
  for (double theta : {0.0, 0.4}) {
    for (int m = -half_width; m <= half_width; ++m)
      for (int n = -half_width; n <= half_width; ++n) {
        const Complex inner = quadrature_inner(sample_continuum(m, theta, samples),
                                               sample_continuum(n, theta, samples), 2.0 * kPi);
        worst = std::max(worst, std::abs(inner - (m == n ? 1.0 : 0.0)));
      }
  }
  return worst;
}

inline double check_gram_scaled(std::uint64_t) {
  const int samples = 64;
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n)
    for (double theta : {0.0, 0.4})
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          const Complex inner =
              quadrature_inner(sample_scaled(j, theta, n, samples),
                               sample_scaled(k, theta, n, samples), 2.0 * kPi * n);
          worst = std::max(worst, std::abs(inner - (j == k ? 1.0 : 0.0)));
        }
  return worst;
}

/// Brute-force spectra gap: min |(j+θ₁) − (k+θ₂)|/N over |j|,|k| ≤ window.
/// The difference is grouped as (j−k) + (θ₁−θ₂) so the enumeration is not
/// polluted by rounding at large labels.
inline double brute_spectra_distance(double theta1, double theta2, int n, int window = 50) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = -window; j <= window; ++j)
    for (int k = -window; k <= window; ++k)
      best = std::min(best, std::abs((j - k) + (theta1 - theta2)) / n);
  return best;
}

inline double check_distance_brute(std::uint64_t seed) {
  auto rng = check_rng(seed, 34);
  double worst = 0.0;
  std::vector<std::pair<double, double>> pairs = {
      {0.0, 0.0}, {0.25, 0.75}, {0.1, 0.9}, {0.5, 0.5}, {0.0, 0.999}};
  for (int trial = 0; trial < 40; ++trial)
    pairs.emplace_back(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0));
  for (int n : {1, 2, 4, 7})
    for (const auto& [t1, t2] : pairs) {
      const double closed = spectra_distance(t1, t2, n);
      worst = std::max(worst, std::abs(closed - brute_spectra_distance(t1, t2, n)));
      if (t1 != t2 && !(closed > 0.0)) worst = std::max(worst, 1.0);
      if (t1 == t2 && closed != 0.0) worst = std::max(worst, 1.0);
    }
  return worst;
}

inline double check_distance_symmetry_scaling(std::uint64_t seed) {
  auto rng = check_rng(seed, 35);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double t1 = uniform(rng, 0.0, 1.0);
    const double t2 = uniform(rng, 0.0, 1.0);
    const int n = uniform_int(rng, 1, 16);
    worst = std::max(worst, std::abs(spectra_distance(t1, t2, n) - spectra_distance(t2, t1, n)));
    worst = std::max(worst,
                     std::abs(spectra_distance(t1, t2, n) - spectra_distance(t1, t2, 1) / n));
  }
  return worst;
}

inline double check_e2_commutators(std::uint64_t) {
  double worst = 0.0;
  for (int n_max : {8, 16})
    for (double theta : {0.0, 0.5})
      for (double radius : {1.0, 2.5}) {
        const EuclideanGenerators gens = build_e2_generators(n_max, theta, radius);
        worst = std::max(worst, e2_commutator_residual(gens, theta));
      }
  return worst;
}

inline double check_e2_theta_shift(std::uint64_t) {
  const EuclideanGenerators gens = build_e2_generators(8, 0.0);
  return std::abs(e2_commutator_residual(gens, 0.0) - e2_commutator_residual(gens, 0.5));
}

inline double check_lattice_union(std::uint64_t) {
  double worst = 0.0;
  for (double theta : {0.0, 0.3, 0.9})
    for (int n : {3, 4, 8}) {
      const SpectrumSet set = lattice_spectrum(ThetaSector(theta), n);
      for (int j = 1; j <= n; ++j)
        worst = std::max(worst, std::abs(set.values[j - 1] - (j + theta) / n));
      const SpectrumSet again = lattice_spectrum(ThetaSector(theta), n);
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(set.values[j] - again.values[j]));
    }
  return worst;
}

struct Check {
  const char* name;
  double tolerance;
  double (*run)(std::uint64_t);
};

inline const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = {
      {"poset.cover_structure", 0.0, &check_poset_cover_structure},
      {"poset.partial_order_axioms", 0.0, &check_poset_order_axioms},
      {"poset.kernel_inclusions", 0.0, &check_poset_kernel_inclusions},
      {"poset.evaluation_consistency", 0.0, &check_poset_evaluation_consistency},
      {"crossed.unitarity", 1e-12, &check_crossed_unitarity},
      {"crossed.relations", 1e-10, &check_crossed_relations},
      {"crossed.clock_traces", 1e-10, &check_crossed_clock_traces},
      {"crossed.weyl_span", 0.0, &check_crossed_weyl_span},
      {"triple.dirac_self_adjoint", 1e-12, &check_dirac_self_adjoint},
      {"triple.connection_hermitian", 1e-12, &check_connection_hermitian},
      {"triple.sigma_circle", 1e-12, &check_sigma_circle},
      {"triple.split_partition", 0.0, &check_split_partition},
      {"triple.lowering_map", 1e-15, &check_lowering_map},
      {"triple.pairing_positivity", 1e-12, &check_pairing_positivity},
      {"triple.sesquilinearity", 1e-13, &check_sesquilinearity},
      {"triple.module_associativity", 1e-13, &check_module_associativity},
      {"gauge.curvature_identity", 1e-13, &check_curvature_identity},
      {"gauge.ym_curvature_link", 1e-11, &check_ym_curvature_link},
      {"gauge.ym_rotation_invariance", 1e-11, &check_ym_rotation_invariance},
      {"gauge.gradient_fd", 1e-6, &check_ym_gradient_fd},
      {"gauge.descent_monotone", 0.0, &check_descent_monotone},
      {"gauge.sigma_minimum", 1e-12, &check_sigma_minimum_sweep},
      {"gauge.pi_de_square", 1e-12, &check_pi_de_square},
      {"gauge.potential_self_adjoint", 0.0, &check_potential_self_adjoint},
      {"spectra.eigenvalue_fd", 1e-6, &check_eigenvalue_fd},
      {"spectra.fd_order", 0.0, &check_eigenvalue_fd_order},
      {"spectra.covariant_closed_form", 1e-12, &check_covariant_closed_form},
      {"spectra.covariant_section_ratio", 1e-12, &check_covariant_section_ratio},
      {"spectra.dense_vs_circulant", 1e-9, &check_dense_vs_circulant},
      {"spectra.dirac_n4_exact", 1e-12, &check_dirac_n4_exact},
      {"spectra.dirac_trace", 1e-10, &check_dirac_trace},
      {"spectra.gram_continuum", 1e-12, &check_gram_continuum},
      {"spectra.gram_scaled", 1e-12, &check_gram_scaled},
      {"spectra.distance_brute", 1e-14, &check_distance_brute},
      {"spectra.distance_symmetry_scaling", 0.0, &check_distance_symmetry_scaling},
      {"spectra.e2_commutators", 1e-10, &check_e2_commutators},
      {"spectra.e2_theta_shift", 1e-15, &check_e2_theta_shift},
      {"spectra.lattice_union", 0.0, &check_lattice_union},
  };
  return checks;
}

}  // namespace detail

/// Runs every named property check. Deterministic for a fixed seed; checks
/// are independent, so up to `threads` of them run concurrently while the
/// result order stays fixed.
inline std::vector<CheckResult> run_all_checks(std::uint64_t seed, int threads = 1) {
  const auto& checks = detail::all_checks();
  std::vector<CheckResult> results(checks.size());
  const auto run_one = [&](std::size_t index) {
    const detail::Check& check = checks[index];
    const double residual = check.run(seed);
    results[index] = {check.name, residual, check.tolerance, residual <= check.tolerance};
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    for (std::size_t k = 0; k < checks.size(); ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(threads, static_cast<int>(checks.size()));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < checks.size(); k = next.fetch_add(1))
          run_one(k);
      });
    for (std::thread& t : pool) t.join();
  }
  return results;
}

inline bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

/// Wall-clock comparison of the two spectrum paths.
struct SpectrumBench {
  int n;
  int reps;
  double dense_median_seconds;
  double circulant_median_seconds;
  double speedup() const { return dense_median_seconds / circulant_median_seconds; }
};

inline SpectrumBench bench_spectrum_paths(int n, int reps) {
  detail::require(reps >= 1, "bench needs reps >= 1");
  using Clock = std::chrono::steady_clock;
  const SpectralTriple triple = build_dirac(n, default_epsilon(n), 1.0);
  std::vector<double> dense_times(reps), fast_times(reps);
  double sink = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    const SpectrumSet dense = dirac_spectrum_dense(triple);
    const auto t1 = Clock::now();
    const SpectrumSet fast = dirac_spectrum_circulant(triple);
    const auto t2 = Clock::now();
    dense_times[r] = std::chrono::duration<double>(t1 - t0).count();
    fast_times[r] = std::chrono::duration<double>(t2 - t1).count();
    sink += dense.values.back() + fast.values.back();  // keep both paths live
  }
  std::sort(dense_times.begin(), dense_times.end());
  std::sort(fast_times.begin(), fast_times.end());
  volatile double keep_alive = sink;  // the timed calls must not be elided
  (void)keep_alive;
  return {n, reps, dense_times[reps / 2], fast_times[reps / 2]};
}

}  // namespace posetoam
