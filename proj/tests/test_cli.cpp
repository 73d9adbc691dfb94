#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "posetoam/spectra.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto base = std::filesystem::temp_directory_path() /
                    ("poset_oam_cli_" + std::to_string(++counter));
  const auto out_path = base.string() + ".out";
  const auto err_path = base.string() + ".err";
  const std::string command =
      std::string(POSET_OAM_BIN) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  for (std::string line; std::getline(stream, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("poset export") {
  const CliResult result = run_cli("poset --n 3");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["N"] == 3);
  CHECK(doc["points"].size() == 6);
  CHECK(doc["covers"].size() == 6);
  // wrap pair: Bottom 3 (id 6) under Top 3 and Top 1
  bool has_wrap_top = false, has_wrap_next = false;
  for (const auto& cover : doc["covers"]) {
    if (cover[0] == 6 && cover[1] == 3) has_wrap_top = true;
    if (cover[0] == 6 && cover[1] == 1) has_wrap_next = true;
  }
  CHECK(has_wrap_top);
  CHECK(has_wrap_next);
}

TEST_CASE("lattice spectrum matches the sector formula") {
  const CliResult result = run_cli("spectrum --mode lattice --n 4 --theta 0.25");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out == "index,eigenvalue_hbar\n1,0.3125\n2,0.5625\n3,0.8125\n4,1.0625\n");
}

TEST_CASE("usage errors exit non-zero with a one-line reason") {
  CHECK(run_cli("spectrum --mode lattice --n 2").exit_code != 0);
  CHECK(run_cli("spectrum --mode lattice --n 4 --bogus").exit_code != 0);
  CHECK(run_cli("poset --n 2").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);

  const CliResult bad = run_cli("spectrum --mode lattice --n 2");
  CHECK(!bad.err.empty());
}

TEST_CASE("theta outside the sector interval is normalised with a warning") {
  const CliResult wrapped = run_cli("spectrum --mode lattice --n 4 --theta 1.25");
  const CliResult direct = run_cli("spectrum --mode lattice --n 4 --theta 0.25");
  REQUIRE(wrapped.exit_code == 0);
  CHECK(wrapped.out == direct.out);
  CHECK(wrapped.err.find("warning") != std::string::npos);
  CHECK(direct.err.empty());
}

TEST_CASE("ym scan emits the full grid") {
  const CliResult result = run_cli("ym --scan -2 0 -1 1 --steps 3");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 10);  // header + 9 grid rows
  CHECK(lines[0] == "re_phi,im_phi,ym,curvature");
  // corner Φ = −2−i: |Φ+1|² − 1 = 1, action 2
  CHECK(lines[1] == "-2,-1,2,1");
  // centre of the flat circle: Φ = −1 gives the apex value 2
  CHECK(lines[5] == "-1,0,2,-1");
}

TEST_CASE("ym minimisation trace is monotone and converges") {
  const CliResult result = run_cli("ym --minimize --init -1");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["converged"] == true);
  CHECK(doc["ym"].get<double>() < 1e-10);
  const auto& trace = doc["trace"];
  REQUIRE(trace.size() >= 2);
  for (std::size_t k = 1; k < trace.size(); ++k)
    CHECK(trace[k]["ym"].get<double>() <= trace[k - 1]["ym"].get<double>());
  const double re = doc["phi"][0].get<double>();
  const double im = doc["phi"][1].get<double>();
  CHECK(std::abs(std::hypot(re + 1.0, im) - 1.0) < 1e-5);
}

TEST_CASE("identical invocations give byte-identical output") {
  const std::string commands[] = {
      "algebra --n 8",
      "spectrum --mode dirac --n 16 --theta 0.5 --fast",
      "triple --n 5 --theta 0.3 --phi 1.25 --format csv",
  };
  for (const std::string& command : commands) {
    const CliResult first = run_cli(command);
    const CliResult second = run_cli(command);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("CSV doubles round-trip to the exact binary values") {
  const CliResult result = run_cli("spectrum --mode dirac --n 6 --eps 1 --fast");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 7);

  const posetoam::SpectrumSet expected =
      posetoam::dirac_spectrum_circulant(posetoam::build_dirac(6, 1.0, 1.0));
  for (int k = 0; k < 6; ++k) {
    const std::string& line = lines[k + 1];
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stoi(line.substr(0, comma)) == k + 1);
    CHECK(std::stod(line.substr(comma + 1)) == expected.values[k]);
  }
}

TEST_CASE("failing tolerance yields a machine-readable failure and exit 1") {
  const CliResult result = run_cli("algebra --n 3 --tol 1e-30");
  CHECK(result.exit_code == 1);
  const json doc = json::parse(result.out);
  CHECK(doc["pass"] == false);
  CHECK(doc["residuals"]["conjugation"].get<double>() > 0.0);
}

TEST_CASE("output redirection to a file") {
  const auto path = std::filesystem::temp_directory_path() / "poset_oam_out.json";
  std::filesystem::remove(path);
  const CliResult result = run_cli("poset --n 4 --out " + path.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.empty());
  const json doc = json::parse(slurp(path));
  CHECK(doc["N"] == 4);
  std::filesystem::remove(path);

  CHECK(run_cli("poset --n 4 --out /nonexistent_dir_xyz/out.json").exit_code == 2);
}

TEST_CASE("full verification run passes") {
  const CliResult result = run_cli("verify --all --seed 7");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc["config"]["seed"] == 7);
  REQUIRE(doc["checks"].size() >= 30);
  for (const auto& check : doc["checks"]) {
    INFO(check["name"].get<std::string>() << " residual " << check["residual"].get<double>());
    CHECK(check["pass"] == true);
  }
}
