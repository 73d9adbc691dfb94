// poset-oam: construction, verification, landscape scans, spectra export and
// benchmarks for the circle-lattice angular momentum model.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posetoam/posetoam.hpp"

using namespace posetoam;
using nlohmann::json;

namespace {

// shortest round-trip decimal form
std::string fmt(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void matrix_csv(std::ostringstream& out, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
    }
    out << '\n';
  }
}

// "a+bi" (also "a", "bi", "i", "-i", "1e-3-2e-4i")
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  const auto to_double = [](const std::string& token) {
    if (token.empty() || token == "+") return 1.0;
    if (token == "-") return -1.0;
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad numeric literal: " + token);
    return value;
  };

  if (s.back() != 'i' && s.back() != 'I') return {to_double(s), 0.0};

  s.pop_back();  // strip the imaginary marker
  // split at the last +/- that starts the imaginary term (not an exponent sign)
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(s)};
  return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

double normalized_theta(double theta) {
  if (theta >= 0.0 && theta < 1.0) return theta;
  const double wrapped = theta - std::floor(theta);
  std::cerr << "warning: theta " << fmt(theta) << " outside [0, 1); using " << fmt(wrapped)
            << "\n";
  return wrapped;
}

int thread_cap() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("POSET_OAM_THREADS")) {
    try {
      cap = std::max(1, std::min(cap, std::stoi(env)));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable POSET_OAM_THREADS='" << env << "'\n";
    }
  }
  return cap;
}

// 0 on success, 2 on I/O failure
int emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return std::cout ? 0 : 2;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output path " << out_path << "\n";
    return 2;
  }
  file << payload;
  file.flush();
  if (!file) {
    std::cerr << "error: failed writing " << out_path << "\n";
    return 2;
  }
  return 0;
}

int run_poset(int n, const std::string& out_path) {
  const CirclePoset poset = build_poset(n);
  json points = json::array();
  for (const PosetPoint& point : poset.points())
    points.push_back({{"id", poset.id_of(point)},
                      {"kind", point.kind == PointKind::Top ? "top" : "bottom"},
                      {"index", point.index}});
  json covers = json::array();
  for (const auto& [lo, hi] : poset.covers()) covers.push_back(json::array({lo, hi}));
  const json doc = {{"N", n}, {"points", std::move(points)}, {"covers", std::move(covers)}};
  return emit(out_path, doc.dump(2) + "\n");
}

int run_algebra(int n, double tol, const std::string& out_path) {
  const CrossedProductAlgebra alg = build_crossed_product(n);
  const RelationReport report = verify_relations(alg, tol);
  const json doc = {{"n", n},
                    {"lambda", complex_json(alg.lambda)},
                    {"residuals",
                     {{"clock_power", report.clock_power},
                      {"shift_power", report.shift_power},
                      {"conjugation", report.conjugation}}},
                    {"tolerance", tol},
                    {"pass", report.pass(tol)}};
  const int io = emit(out_path, doc.dump(2) + "\n");
  if (io != 0) return io;
  return report.pass(tol) ? 0 : 1;
}

int run_triple(int n, double epsilon, double m_phase, double theta, double phi,
               const std::string& format, const std::string& out_path) {
  const SpectralTriple triple = build_dirac(n, epsilon, std::polar(1.0, m_phase));
  const GaugeConnection connection = build_connection(triple, theta, phi);
  if (format == "json") {
    const json doc = {{"n", n},
                      {"epsilon", epsilon},
                      {"m", complex_json(triple.hopping)},
                      {"theta", theta},
                      {"phi", phi},
                      {"sigma", complex_json(connection.sigma)},
                      {"dirac", matrix_json(triple.dirac)},
                      {"rho", matrix_json(connection.rho)}};
    return emit(out_path, doc.dump(2) + "\n");
  }
  std::ostringstream out;
  out << "# n=" << n << " epsilon=" << fmt(epsilon) << " m_phase=" << fmt(m_phase)
      << " theta=" << fmt(theta) << " phi=" << fmt(phi) << " sigma=" << fmt(connection.sigma.real())
      << (connection.sigma.imag() < 0 ? "" : "+") << fmt(connection.sigma.imag()) << "i\n";
  out << "# matrix=D rows of re,im pairs\n";
  matrix_csv(out, triple.dirac);
  out << "# matrix=rho rows of re,im pairs\n";
  matrix_csv(out, connection.rho);
  return emit(out_path, out.str());
}

int run_ym_scan(double re_min, double re_max, double im_min, double im_max, int steps,
                const std::string& out_path) {
  const TwoPointCalculus calc = make_two_point_calculus(1.0);
  std::ostringstream out;
  out << "re_phi,im_phi,ym,curvature\n";
  for (int r = 0; r < steps; ++r) {
    const double re = steps == 1 ? re_min : re_min + (re_max - re_min) * r / (steps - 1);
    for (int c = 0; c < steps; ++c) {
      const double im = steps == 1 ? im_min : im_min + (im_max - im_min) * c / (steps - 1);
      const GaugeCoefficient phi{{re, im}};
      out << fmt(re) << ',' << fmt(im) << ',' << fmt(ym_action(phi, calc)) << ','
          << fmt(curvature_coefficient(phi)) << '\n';
    }
  }
  return emit(out_path, out.str());
}

int run_ym_minimize(const std::string& init_text, double tol, int max_iters,
                    const std::string& out_path) {
  const Complex init = parse_complex(init_text);
  const MinimizeResult result = minimize_ym(make_two_point_calculus(1.0), init, tol, max_iters);
  json trace = json::array();
  for (const MinimizeStep& step : result.trace)
    trace.push_back(
        {{"iter", step.iteration}, {"phi", complex_json(step.phi)}, {"ym", step.ym}});
  const json doc = {{"init", complex_json(init)},
                    {"tolerance", tol},
                    {"max_iters", max_iters},
                    {"converged", result.converged},
                    {"iterations", result.iterations},
                    {"phi", complex_json(result.phi.value)},
                    {"ym", result.ym},
                    {"trace", std::move(trace)}};
  const int io = emit(out_path, doc.dump(2) + "\n");
  if (io != 0) return io;
  return result.converged ? 0 : 1;
}

int run_spectrum(const std::string& mode, int n, double theta, double epsilon, double m_phase,
                 bool fast, double hbar, const std::string& out_path) {
  std::ostringstream out;
  out << "index,eigenvalue_hbar\n";
  if (mode == "continuum") {
    for (int k = -n; k <= n; ++k) out << k << ',' << fmt(hbar * (k + theta)) << '\n';
  } else if (mode == "lattice") {
    const SpectrumSet set = lattice_spectrum(ThetaSector(theta), n);
    for (int j = 1; j <= n; ++j) out << j << ',' << fmt(hbar * set.values[j - 1]) << '\n';
  } else {  // dirac
    const SpectralTriple triple = build_dirac(n, epsilon, std::polar(1.0, m_phase));
    const SpectrumSet set =
        fast ? dirac_spectrum_circulant(triple) : dirac_spectrum_dense(triple);
    for (int k = 0; k < n; ++k) out << k + 1 << ',' << fmt(hbar * set.values[k]) << '\n';
  }
  return emit(out_path, out.str());
}

int run_verify(std::uint64_t seed, bool tol_overridden, double tol_override,
               const std::string& out_path) {
  const int threads = thread_cap();
  std::vector<CheckResult> results = run_all_checks(seed, threads);
  if (tol_overridden)
    for (CheckResult& result : results) {
      result.tolerance = tol_override;
      result.pass = result.residual <= tol_override;
    }
  json checks = json::array();
  bool pass = true;
  for (const CheckResult& result : results) {
    checks.push_back({{"name", result.name},
                      {"residual", result.residual},
                      {"tolerance", result.tolerance},
                      {"pass", result.pass}});
    pass = pass && result.pass;
  }
  const json doc = {{"version", kVersion},
                    {"config",
                     {{"seed", seed},
                      {"threads", threads},
                      {"tolerance_override", tol_overridden ? json(tol_override) : json()}}},
                    {"checks", std::move(checks)},
                    {"pass", pass}};
  const int io = emit(out_path, doc.dump(2) + "\n");
  if (io != 0) return io;
  return pass ? 0 : 1;
}

int run_bench(int n, int reps, const std::string& out_path) {
  const SpectrumBench bench = bench_spectrum_paths(n, reps);
  std::ostringstream out;
  out << "path,n,reps,median_seconds\n";
  out << "dense," << n << ',' << reps << ',' << fmt(bench.dense_median_seconds) << '\n';
  out << "circulant," << n << ',' << reps << ',' << fmt(bench.circulant_median_seconds) << '\n';
  out << "# speedup=" << fmt(bench.speedup()) << "x\n";
  return emit(out_path, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "circle-lattice angular momentum model: algebra, Dirac operator, gauge action, spectra"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --out appear after the subcommand name

  std::string out_path;
  app.add_option("--out", out_path, "write output to this path instead of stdout");

  // poset
  auto* poset_cmd = app.add_subcommand("poset", "export the 2N-point circle lattice as JSON");
  int poset_n = 0;
  poset_cmd->add_option("--n", poset_n, "number of sites (>= 3)")->required();

  // algebra
  auto* algebra_cmd =
      app.add_subcommand("algebra", "clock/shift generator relation report as JSON");
  int algebra_n = 0;
  double algebra_tol = 1e-10;
  algebra_cmd->add_option("--n", algebra_n, "generator size (>= 2)")->required();
  algebra_cmd->add_option("--tol", algebra_tol, "pass/fail tolerance")->capture_default_str();

  // triple
  auto* triple_cmd = app.add_subcommand("triple", "dump the Dirac matrix and gauge connection");
  int triple_n = 0;
  double triple_eps = 0.0, triple_m_phase = 0.0, triple_theta = 0.0, triple_phi = 0.0;
  std::string triple_format = "json";
  triple_cmd->add_option("--n", triple_n, "number of sites (>= 3)")->required();
  auto* triple_eps_opt =
      triple_cmd->add_option("--eps", triple_eps, "lattice scale (default 2*pi/n)");
  triple_cmd->add_option("--m-phase", triple_m_phase, "hopping phase arg(M) in radians")
      ->capture_default_str();
  triple_cmd->add_option("--theta", triple_theta, "sector parameter in [0,1)")
      ->capture_default_str();
  triple_cmd->add_option("--phi", triple_phi, "angle parameter")->capture_default_str();
  triple_cmd->add_option("--format", triple_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // ym
  auto* ym_cmd = app.add_subcommand("ym", "Yang-Mills landscape scan or minimisation");
  std::vector<double> scan_box;
  int ym_steps = 0;
  bool ym_minimize = false;
  std::string ym_init = "0";
  double ym_tol = 1e-10;
  int ym_max_iters = 10000;
  auto* scan_opt = ym_cmd->add_option("--scan", scan_box,
                                      "re_min re_max im_min im_max: emit a CSV action grid")
                       ->expected(4);
  auto* steps_opt = ym_cmd->add_option("--steps", ym_steps, "grid points per axis");
  auto* minimize_opt =
      ym_cmd->add_flag("--minimize", ym_minimize, "run gradient descent, emit JSON trace");
  ym_cmd->add_option("--init", ym_init, "start point as a+bi")->capture_default_str();
  ym_cmd->add_option("--tol", ym_tol, "target action value")->capture_default_str();
  ym_cmd->add_option("--max-iters", ym_max_iters, "iteration budget")->capture_default_str();
  scan_opt->needs(steps_opt);
  minimize_opt->excludes(scan_opt);

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "emit eigenvalues as CSV");
  std::string spectrum_mode;
  int spectrum_n = 0;
  double spectrum_theta = 0.0, spectrum_eps = 0.0, spectrum_m_phase = 0.0, spectrum_hbar = 1.0;
  bool spectrum_fast = false;
  spectrum_cmd->add_option("--mode", spectrum_mode, "continuum, lattice or dirac")
      ->required()
      ->check(CLI::IsMember({"continuum", "lattice", "dirac"}));
  spectrum_cmd->add_option("--n", spectrum_n, "lattice size / continuum label range (>= 3)")
      ->required();
  spectrum_cmd->add_option("--theta", spectrum_theta, "sector parameter in [0,1)")
      ->capture_default_str();
  auto* spectrum_eps_opt =
      spectrum_cmd->add_option("--eps", spectrum_eps, "lattice scale (default 2*pi/n)");
  spectrum_cmd->add_option("--m-phase", spectrum_m_phase, "hopping phase arg(M)")
      ->capture_default_str();
  spectrum_cmd->add_flag("--fast", spectrum_fast, "use the circulant closed form");
  spectrum_cmd->add_option("--hbar", spectrum_hbar, "display multiplier for eigenvalues")
      ->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the full property suite, emit JSON");
  bool verify_all = false;
  std::uint64_t verify_seed = 0;
  double verify_tol = 1e-10;
  verify_cmd->add_flag("--all", verify_all, "run every check");
  verify_cmd->add_option("--seed", verify_seed, "seed for randomised checks")
      ->capture_default_str();
  auto* verify_tol_opt = verify_cmd->add_option(
      "--tol", verify_tol, "override every check tolerance (default: per-check values)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "time dense vs circulant spectrum paths");
  int bench_n = 2048;
  int bench_reps = 5;
  bench_cmd->add_option("--n", bench_n, "matrix size")->capture_default_str();
  bench_cmd->add_option("--reps", bench_reps, "repetitions (median reported)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);

    if (poset_cmd->parsed()) {
      if (poset_n < 3) throw CLI::ValidationError("poset", "--n must be at least 3");
      return run_poset(poset_n, out_path);
    }

    if (algebra_cmd->parsed()) {
      if (algebra_n < 2) throw CLI::ValidationError("algebra", "--n must be at least 2");
      if (!(algebra_tol > 0.0)) throw CLI::ValidationError("algebra", "--tol must be positive");
      return run_algebra(algebra_n, algebra_tol, out_path);
    }

    if (triple_cmd->parsed()) {
      if (triple_n < 3) throw CLI::ValidationError("triple", "--n must be at least 3");
      const double epsilon = triple_eps_opt->count() ? triple_eps : default_epsilon(triple_n);
      if (!(epsilon > 0.0)) throw CLI::ValidationError("triple", "--eps must be positive");
      return run_triple(triple_n, epsilon, triple_m_phase, normalized_theta(triple_theta),
                        triple_phi, triple_format, out_path);
    }

    if (ym_cmd->parsed()) {
      if (ym_minimize) {
        if (ym_tol < 0.0) throw CLI::ValidationError("ym", "--tol must be non-negative");
        if (ym_max_iters < 0) throw CLI::ValidationError("ym", "--max-iters must be >= 0");
        return run_ym_minimize(ym_init, ym_tol, ym_max_iters, out_path);
      }
      if (scan_opt->count() == 0) throw CLI::ValidationError("ym", "choose --scan or --minimize");
      if (ym_steps < 1) throw CLI::ValidationError("ym", "--steps must be at least 1");
      return run_ym_scan(scan_box[0], scan_box[1], scan_box[2], scan_box[3], ym_steps, out_path);
    }

    if (spectrum_cmd->parsed()) {
      if (spectrum_n < 3) throw CLI::ValidationError("spectrum", "--n must be at least 3");
      const double epsilon =
          spectrum_eps_opt->count() ? spectrum_eps : default_epsilon(spectrum_n);
      if (!(epsilon > 0.0)) throw CLI::ValidationError("spectrum", "--eps must be positive");
      return run_spectrum(spectrum_mode, spectrum_n, normalized_theta(spectrum_theta), epsilon,
                          spectrum_m_phase, spectrum_fast, spectrum_hbar, out_path);
    }

    if (verify_cmd->parsed()) {
      (void)verify_all;  // the full suite is the only mode
      return run_verify(verify_seed, verify_tol_opt->count() > 0, verify_tol, out_path);
    }

    if (bench_cmd->parsed()) {
      if (bench_n < 3) throw CLI::ValidationError("bench", "--n must be at least 3");
      if (bench_reps < 1) throw CLI::ValidationError("bench", "--reps must be at least 1");
      return run_bench(bench_n, bench_reps, out_path);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // prints a one-line reason, non-zero for errors
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
