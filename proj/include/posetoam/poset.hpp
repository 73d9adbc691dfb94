#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "posetoam/types.hpp"

namespace posetoam {

/// Element c = (λ1, …, λN) of the commutative site algebra C^N.
///
/// Site labels are 1-based and cyclic throughout: site N+1 is site 1.
class AlgebraElement {
 public:
  explicit AlgebraElement(Vector values) : values_(std::move(values)) {
    detail::require(values_.size() >= 3, "AlgebraElement needs at least 3 components");
  }

  static AlgebraElement ones(int n) { return AlgebraElement(Vector::Ones(n)); }

  int size() const { return static_cast<int>(values_.size()); }
  const Vector& values() const { return values_; }

  /// λ_i for a site label i in 1..N.
  Complex value(int i) const {
    if (i < 1 || i > size()) throw std::out_of_range("AlgebraElement site label out of range");
    return values_[i - 1];
  }

  /// Pointwise algebra product.
  AlgebraElement operator*(const AlgebraElement& rhs) const {
    detail::require(size() == rhs.size(), "algebra product needs equal lengths");
    return AlgebraElement(values_.cwiseProduct(rhs.values_));
  }

 private:
  Vector values_;
};

enum class PointKind { Top, Bottom };

/// One of the 2N points: Top i carries the one-dimensional evaluation at
/// site i, Bottom i the two-dimensional evaluation at sites {i, i+1}.
struct PosetPoint {
  PointKind kind;
  int index;  // 1..N
};

/// The 2N-point circle lattice. Point ids run 1..2N: Top i has id i and
/// Bottom i has id N+i, matching the representation labels π_i and π_{i+N}.
class CirclePoset {
 public:
  explicit CirclePoset(int n) : n_(n) {
    detail::require(n >= 3, "circle poset needs n >= 3");
    points_.reserve(2 * n);
    for (int i = 1; i <= n; ++i) points_.push_back({PointKind::Top, i});
    for (int i = 1; i <= n; ++i) points_.push_back({PointKind::Bottom, i});
    covers_.reserve(2 * n);
    for (int i = 1; i <= n; ++i) {
      covers_.emplace_back(n + i, i);              // Bottom i < Top i
      covers_.emplace_back(n + i, i % n + 1);      // Bottom i < Top i+1 (cyclic)
    }
  }

  int n() const { return n_; }
  const std::vector<PosetPoint>& points() const { return points_; }

  /// Covering pairs as (lower id, upper id); exactly 2N of them.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  PosetPoint point(int id) const {
    if (id < 1 || id > 2 * n_) throw std::out_of_range("poset point id out of range");
    return points_[id - 1];
  }

  int id_of(const PosetPoint& p) const {
    return p.kind == PointKind::Top ? p.index : n_ + p.index;
  }

 private:
  int n_;
  std::vector<PosetPoint> points_;
  std::vector<std::pair<int, int>> covers_;
};

inline CirclePoset build_poset(int n) { return CirclePoset(n); }

/// Evaluation at Top i: c ↦ λ_i.
inline Complex eval_top(const AlgebraElement& c, int i) { return c.value(i); }

/// Evaluation at Bottom i: c ↦ diag(λ_i, λ_{i+1}), cyclic at i = N.
inline Matrix2 eval_bottom(const AlgebraElement& c, int i) {
  Matrix2 out = Matrix2::Zero();
  out(0, 0) = c.value(i);
  out(1, 1) = c.value(i % c.size() + 1);
  return out;
}

/// Index set S(p) describing the kernel of the point's evaluation:
/// ker π_p = {c : λ_s = 0 for all s in S(p)}. Top i gives {i}, Bottom i
/// gives {i, i+1}. Kernel inclusion reverses set inclusion:
/// ker π_p ⊆ ker π_q exactly when S(p) ⊇ S(q).
inline std::set<int> kernel_indices(const CirclePoset& poset, int point_id) {
  const PosetPoint p = poset.point(point_id);
  if (p.kind == PointKind::Top) return {p.index};
  return {p.index, p.index % poset.n() + 1};
}

/// p ≤ q in the kernel-inclusion order (bottoms below tops).
inline bool poset_leq(const CirclePoset& poset, int p_id, int q_id) {
  const std::set<int> sp = kernel_indices(poset, p_id);
  const std::set<int> sq = kernel_indices(poset, q_id);
  return std::includes(sp.begin(), sp.end(), sq.begin(), sq.end());
}

/// The full reflexive order relation as (lower, upper) id pairs.
inline std::set<std::pair<int, int>> partial_order(const CirclePoset& poset) {
  std::set<std::pair<int, int>> rel;
  const int count = 2 * poset.n();
  for (int p = 1; p <= count; ++p)
    for (int q = 1; q <= count; ++q)
      if (poset_leq(poset, p, q)) rel.emplace(p, q);
  return rel;
}

}  // namespace posetoam
