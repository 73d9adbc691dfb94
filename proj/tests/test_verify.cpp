#include <catch2/catch_amalgamated.hpp>

#include "posetoam/verify.hpp"

#include <set>
#include <string>

using namespace posetoam;

TEST_CASE("full property suite passes and is deterministic") {
  const auto first = run_all_checks(7);
  REQUIRE(!first.empty());

  std::set<std::string> names;
  for (const auto& result : first) {
    INFO(result.name << " residual=" << result.residual << " tol=" << result.tolerance);
    CHECK(result.pass);
    names.insert(result.name);
  }
  CHECK(names.size() == first.size());  // names are unique

  // same seed, multithreaded run: identical residuals in identical order
  const auto second = run_all_checks(7, 3);
  REQUIRE(second.size() == first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    CHECK(second[k].name == first[k].name);
    CHECK(second[k].residual == first[k].residual);
  }
  CHECK(all_pass(first));
}

TEST_CASE("spectrum bench keeps both paths honest") {
  const SpectrumBench bench = bench_spectrum_paths(128, 3);
  CHECK(bench.n == 128);
  CHECK(bench.reps == 3);
  CHECK(bench.dense_median_seconds > 0.0);
  CHECK(bench.circulant_median_seconds > 0.0);
  CHECK(bench.speedup() > 1.0);
}
