#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "posetoam/poset.hpp"

using namespace posetoam;

namespace {

AlgebraElement make_element(std::initializer_list<Complex> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (Complex z : values) v[k++] = z;
  return AlgebraElement(std::move(v));
}

}  // namespace

TEST_CASE("build_poset produces 2N points and 2N covering pairs") {
  for (int n : {3, 4, 7, 16}) {
    const CirclePoset poset = build_poset(n);
    CHECK(poset.n() == n);
    CHECK(poset.points().size() == static_cast<std::size_t>(2 * n));
    CHECK(poset.covers().size() == static_cast<std::size_t>(2 * n));
  }
}

TEST_CASE("build_poset rejects degenerate sizes") {
  CHECK_THROWS_AS(build_poset(2), std::invalid_argument);
  CHECK_THROWS_AS(build_poset(1), std::invalid_argument);
  CHECK_THROWS_AS(build_poset(0), std::invalid_argument);
}

TEST_CASE("cyclic wrap: Bottom N sits below Top N and Top 1") {
  const CirclePoset poset = build_poset(3);
  std::set<std::pair<int, int>> covers(poset.covers().begin(), poset.covers().end());
  // Bottom 3 has id 6; its upper covers are Top 3 (id 3) and Top 1 (id 1)
  CHECK(covers.count({6, 3}) == 1);
  CHECK(covers.count({6, 1}) == 1);
}

TEST_CASE("Hasse diagram is a single alternating 2N-cycle") {
  // oracle: exhaustive adjacency walk starting at Top 1
  const int n = 3;
  const CirclePoset poset = build_poset(n);
  std::map<int, std::set<int>> adjacency;
  for (const auto& [lo, hi] : poset.covers()) {
    adjacency[lo].insert(hi);
    adjacency[hi].insert(lo);
  }
  for (const auto& [id, neighbours] : adjacency) CHECK(neighbours.size() == 2);

  std::vector<int> walk = {1};
  std::set<int> visited = {1};
  int current = 1;
  while (true) {
    int next = -1;
    for (int candidate : adjacency[current])
      if (!visited.count(candidate)) next = candidate;
    if (next == -1) break;
    walk.push_back(next);
    visited.insert(next);
    current = next;
  }
  REQUIRE(walk.size() == static_cast<std::size_t>(2 * n));
  CHECK(adjacency[walk.back()].count(walk.front()) == 1);  // closes into a cycle
  for (std::size_t k = 0; k < walk.size(); ++k) {
    const PointKind kind = poset.point(walk[k]).kind;
    CHECK(kind == (k % 2 == 0 ? PointKind::Top : PointKind::Bottom));
  }
}

TEST_CASE("eval_top projects to the site value") {
  const AlgebraElement c = make_element({1.0, 2.0, 3.0});
  CHECK(eval_top(c, 2) == Complex(2.0, 0.0));

  const AlgebraElement zero{Vector::Zero(4)};
  for (int i = 1; i <= 4; ++i) CHECK(eval_top(zero, i) == Complex(0.0, 0.0));

  // diagonal family at φ = π: third component is e^{i2π/3}
  const double phi = kPi;
  const AlgebraElement family = make_element(
      {1.0, std::polar(1.0, phi / 3.0), std::polar(1.0, 2.0 * phi / 3.0)});
  CHECK(std::abs(eval_top(family, 3) - std::polar(1.0, 2.0 * kPi / 3.0)) < 1e-15);

  CHECK_THROWS_AS(eval_top(c, 0), std::out_of_range);
  CHECK_THROWS_AS(eval_top(c, 4), std::out_of_range);
}

TEST_CASE("eval_bottom pairs adjacent sites with cyclic wrap") {
  const AlgebraElement c = make_element({1.0, 2.0, 3.0});

  const Matrix2 first = eval_bottom(c, 1);
  CHECK(first(0, 0) == Complex(1.0));
  CHECK(first(1, 1) == Complex(2.0));
  CHECK(first(0, 1) == Complex(0.0));
  CHECK(first(1, 0) == Complex(0.0));

  const Matrix2 wrap = eval_bottom(c, 3);
  CHECK(wrap(0, 0) == Complex(3.0));
  CHECK(wrap(1, 1) == Complex(1.0));

  const AlgebraElement zero{Vector::Zero(5)};
  for (int i = 1; i <= 5; ++i) CHECK(eval_bottom(zero, i).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(eval_bottom(c, 0), std::out_of_range);
  CHECK_THROWS_AS(eval_bottom(c, 4), std::out_of_range);
}

TEST_CASE("eval_bottom diagonal agrees with eval_top on both slots") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int n : {3, 6, 11}) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v[k] = Complex(dist(rng), dist(rng));
    const AlgebraElement c{std::move(v)};
    for (int i = 1; i <= n; ++i) {
      const Matrix2 b = eval_bottom(c, i);
      CHECK(b(0, 0) == eval_top(c, i));
      CHECK(b(1, 1) == eval_top(c, i % n + 1));
    }
  }
}

TEST_CASE("partial order puts bottoms strictly below their two tops") {
  const CirclePoset poset = build_poset(3);
  const auto rel = partial_order(poset);

  // Bottom 1 (id 4) lies below Top 1 and Top 2
  CHECK(rel.count({4, 1}) == 1);
  CHECK(rel.count({4, 2}) == 1);
  CHECK(rel.count({4, 3}) == 0);

  for (int top = 1; top <= 3; ++top)
    for (int bottom = 4; bottom <= 6; ++bottom) CHECK(rel.count({top, bottom}) == 0);

  for (int id = 1; id <= 6; ++id) CHECK(rel.count({id, id}) == 1);
}

TEST_CASE("distinct bottoms are incomparable") {
  const CirclePoset poset = build_poset(4);
  // kernel index sets {2,3} and {3,4}: neither contains the other
  CHECK(kernel_indices(poset, 4 + 2) == std::set<int>{2, 3});
  CHECK(kernel_indices(poset, 4 + 3) == std::set<int>{3, 4});
  CHECK_FALSE(poset_leq(poset, 4 + 2, 4 + 3));
  CHECK_FALSE(poset_leq(poset, 4 + 3, 4 + 2));
}

TEST_CASE("order axioms hold for all small sizes") {
  // brute-force check of reflexivity, antisymmetry and transitivity
  for (int n = 3; n <= 16; ++n) {
    const CirclePoset poset = build_poset(n);
    const auto rel = partial_order(poset);
    const int count = 2 * n;
    for (int p = 1; p <= count; ++p) REQUIRE(rel.count({p, p}) == 1);
    for (const auto& [p, q] : rel) {
      if (p != q) REQUIRE(rel.count({q, p}) == 0);
      for (int r = 1; r <= count; ++r)
        if (rel.count({q, r})) REQUIRE(rel.count({p, r}) == 1);
    }
  }
}

TEST_CASE("kernel index sets grow downward") {
  for (int n : {3, 4, 9}) {
    const CirclePoset poset = build_poset(n);
    for (int i = 1; i <= n; ++i) {
      const auto bottom = kernel_indices(poset, n + i);
      const auto top = kernel_indices(poset, i);
      const auto next = kernel_indices(poset, i % n + 1);
      CHECK(std::includes(bottom.begin(), bottom.end(), top.begin(), top.end()));
      CHECK(std::includes(bottom.begin(), bottom.end(), next.begin(), next.end()));
    }
  }
}

TEST_CASE("algebra element validation") {
  CHECK_THROWS_AS(AlgebraElement{Vector::Ones(2)}, std::invalid_argument);
  const AlgebraElement a = make_element({1.0, Complex(0, 1), -1.0});
  const AlgebraElement b = make_element({2.0, 2.0, 2.0});
  const AlgebraElement product = a * b;
  CHECK(product.value(2) == Complex(0, 2));
  CHECK_THROWS_AS(a * AlgebraElement{Vector::Ones(4)}, std::invalid_argument);
}
