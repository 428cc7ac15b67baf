// curvlab: evaluate the ten invariants, solve for the identity, fuzz it and
// cross-check jets against finite differences.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvlab/catalog.hpp"
#include "curvlab/error.hpp"
#include "curvlab/finite_difference.hpp"
#include "curvlab/fuzz.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/metric_patch.hpp"
#include "curvlab/report.hpp"
#include "curvlab/solver.hpp"

using namespace curvlab;

namespace {

enum Exit : int { kOk = 0, kGeometry = 1, kUsage = 2, kNullspace = 3, kFuzz = 4, kOracle = 5 };

constexpr double kCoefficientTol = 1e-6;
constexpr double kOracleBound = 1e-5;
constexpr double kLooseTol = 1e-4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--params: expected name=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw UsageError("--params: '" + value + "' is not a number");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

std::string read_metric_file(const std::string& path) {
  std::ifstream in(path);
#ifdef CURVLAB_DATA_DIR
  if (!in && !path.empty() && path.front() != '/') in.open(std::string(CURVLAB_DATA_DIR) + "/" + path);
#endif
  if (!in) throw UsageError("cannot open metric file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CaseSpec resolve_case(const std::string& text, const std::map<std::string, double>& params, std::uint64_t seed, int n_points) {
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    MetricPatch patch = parse_metric_file(read_metric_file(path), path);
    if (!params.empty()) patch = patch.with_parameters(params);
    return make_file_case(std::move(patch), seed, n_points);
  }
  return make_case(parse_case_kind(text), params, seed, n_points);
}

std::optional<MetricPatch> chart_of(const CaseSpec& spec) {
  if (spec.kind == CaseKind::File) return spec.patch;
  auto m = realize(spec);
  if (auto* patch = std::get_if<MetricPatch>(&m)) return *patch;
  return std::nullopt;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("CURVLAB_SEED");
  if (!env) return flag;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*env == '\0' || *end != '\0') throw UsageError(std::string("CURVLAB_SEED is not an unsigned integer: '") + env + "'");
  return v;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Json point_json(const std::optional<Eigen::VectorXd>& x) { return x ? to_json(*x) : Json(nullptr); }

Eigen::MatrixXd matrix_of(const Json& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

// Fixed-width matrix print; dimension 4 is split into 2x2 blocks.
void print_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const bool blocks = n == 4;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (blocks && i == 2) os << "    " << std::string(4 * 13 + 2, '-') << "\n";
    os << "    ";
    for (Eigen::Index j = 0; j < n; ++j) {
      if (blocks && j == 2) os << " |";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%13.6g", std::abs(m(i, j)) < 1e-13 ? 0.0 : m(i, j));
      os << buf;
    }
    os << "\n";
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_point(const Json& p) {
  if (p.is_null()) return "(left-invariant)";
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + fmt(p[k].get<double>());
  return s + ")";
}

// eval

struct EvalArgs {
  std::string case_text;
  std::string params;
  std::vector<double> point;
  std::string frame = "orthonormal";
  std::string format = "pretty";
};

int run_eval(const EvalArgs& a, Report& report) {
  const CaseSpec spec = resolve_case(a.case_text, parse_params(a.params), 0, 1);
  const Frame frame = a.frame == "coordinate" ? Frame::Coordinate : Frame::Orthonormal;
  report.inputs() = {{"case", spec.label()}, {"params", spec.params}, {"frame", a.frame}, {"format", a.format}};

  CurvaturePackage pkg = [&] {
    const auto chart = chart_of(spec);
    if (!chart) {
      if (!a.point.empty()) report.warn("the Lie-group case is homogeneous; --point is ignored");
      if (frame == Frame::Coordinate) report.warn("the Lie-group case has no chart; components refer to the orthonormal left-invariant frame");
      return case_packages(spec).front();
    }
    const Eigen::VectorXd x = a.point.empty() ? Eigen::VectorXd::Zero(chart->dim()) : to_vector(a.point);
    if (x.size() != chart->dim()) {
      throw UsageError("--point has " + std::to_string(x.size()) + " coordinates, the metric has dimension " + std::to_string(chart->dim()));
    }
    return curvature_package(*chart, x);
  }();

  const InvariantVector v = frame == Frame::Orthonormal ? orthonormal_phi_vector(pkg) : phi_vector(pkg);
  const Frame used = v.frame();
  Json& out = report.outputs();
  out["case"] = spec.label();
  out["point"] = point_json(pkg.point);
  out["dim"] = pkg.dim;
  out["frame"] = to_string(used);
  out["phi"] = to_json(v);
  out["ricci"] = to_json(ricci_in_frame(pkg, used).matrix());
  out["tau"] = pkg.tau;
  out["riemann"] = riemann_components(riemann_in_frame(pkg, used));
  out["universal_residual"] = pkg.dim == 4 ? Json(relative_residual(v, Coefficients::universal())) : Json(nullptr);
  return kOk;
}

void print_eval(std::ostream& os, const Json& out, const std::string& format) {
  if (format == "csv") {
    os << "invariant,i,j,value\n";
    auto rows = [&](const std::string& name, const Json& m) {
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) os << name << "," << i + 1 << "," << j + 1 << "," << fmt(m[i][j]) << "\n";
    };
    for (const auto& phi : out["phi"]) rows(phi["name"], phi["matrix"]);
    rows("rho", out["ricci"]);
    os << "tau,,," << fmt(out["tau"].get<double>()) << "\n";
    for (const auto& r : out["riemann"]) {
      const auto& ix = r["index"];
      os << "R_" << ix[0] << ix[1] << ix[2] << ix[3] << ",,," << fmt(r["value"].get<double>()) << "\n";
    }
    return;
  }
  os << "case " << out["case"].get<std::string>() << "  point " << fmt_point(out["point"]) << "  frame "
     << out["frame"].get<std::string>() << "\n";
  os << "tau = " << fmt(out["tau"].get<double>()) << "\n";
  os << "rho\n";
  print_matrix(os, matrix_of(out["ricci"]));
  for (const auto& phi : out["phi"]) {
    os << phi["name"].get<std::string>() << "  " << phi["description"].get<std::string>() << "\n";
    print_matrix(os, matrix_of(phi["matrix"]));
  }
  os << "R_ijkl (i<j, k<l, nonzero)\n";
  for (const auto& r : out["riemann"]) {
    const auto& ix = r["index"];
    os << "    R_" << ix[0] << ix[1] << ix[2] << ix[3] << " = " << fmt(r["value"].get<double>()) << "\n";
  }
  if (!out["universal_residual"].is_null()) {
    os << "relative residual of the universal combination: " << fmt(out["universal_residual"].get<double>()) << "\n";
  }
}

// solve

struct SolveArgs {
  std::string cases = "I,II,III,IV,V";
  int points_per_case = 3;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string format = "pretty";
};

int run_solve(const SolveArgs& a, Report& report) {
  if (a.points_per_case < 1) throw UsageError("--points-per-case must be at least 1");
  if (!(a.tol > 0 && a.tol < 1)) throw UsageError("--tol must lie in (0, 1)");
  const std::uint64_t seed = effective_seed(a.seed);
  if (a.tol > kLooseTol) {
    report.warn("tolerance " + fmt(a.tol) + " is loose: singular values up to " + fmt(a.tol) +
                " sigma_max count as null directions, which may inflate the nullspace");
  }
  std::vector<CaseSpec> cases;
  Json labels = Json::array();
  for (const auto& text : split(a.cases, ',')) {
    cases.push_back(resolve_case(text, {}, seed, a.points_per_case));
    labels.push_back(cases.back().label());
  }
  if (cases.empty()) throw UsageError("--cases is empty");
  report.inputs() = {{"cases", labels}, {"points_per_case", a.points_per_case}, {"tol", a.tol}, {"seed", seed}, {"format", a.format}};
  if (std::getenv("CURVLAB_SEED")) report.inputs()["seed_source"] = "CURVLAB_SEED";

  const ConstraintSystem sys = assemble_constraints(cases);
  const Nullspace ns = nullspace(sys, a.tol);
  Json& out = report.outputs();
  out["rows"] = sys.size();
  out["nullspace_dimension"] = ns.dimension;
  out["tolerance"] = a.tol;
  out["singular_values"] = to_json(ns.singular_values);
  if (ns.dimension != 1) {
    out["coefficients"] = nullptr;
    out["nullspace_basis"] = to_json(Eigen::MatrixXd(ns.basis.transpose()));
    report.set_status(kNullspace, "nullspace dimension is " + std::to_string(ns.dimension) + ", not 1");
    return kNullspace;
  }
  const SolveReport r = recover_coefficients(sys, a.tol);
  const Json solved = to_json(r);
  for (const auto& [k, v] : solved.items()) out[k] = v;
  if (r.deviation_from_universal > kCoefficientTol) {
    report.set_status(kNullspace, "recovered vector deviates from the universal one by " + fmt(r.deviation_from_universal));
    return kNullspace;
  }
  return kOk;
}

void print_solve(std::ostream& os, const Json& in, const Json& out) {
  os << "cases";
  for (const auto& c : in["cases"]) os << " " << c.get<std::string>();
  os << "\nrows " << out["rows"] << ", tolerance " << fmt(out["tolerance"].get<double>()) << ", nullspace dimension "
     << out["nullspace_dimension"] << "\nsingular values";
  for (const auto& s : out["singular_values"]) os << " " << fmt(s.get<double>());
  os << "\n";
  if (out["coefficients"].is_null()) {
    os << "null directions (rows, c_1..c_10)\n";
    for (const auto& b : out["nullspace_basis"]) {
      os << "   ";
      for (const auto& c : b) os << " " << fmt(c.get<double>());
      os << "\n";
    }
    return;
  }
  os << "c (c_7 = -1):";
  for (const auto& c : out["coefficients"]) os << " " << fmt(std::abs(c.get<double>()) < 1e-12 ? 0.0 : c.get<double>());
  os << "\nmax deviation from the universal vector " << fmt(out["deviation_from_universal"].get<double>())
     << ", max row residual " << fmt(out["max_row_residual"].get<double>()) << "\n";
  int failed = 0;
  for (const auto& c : out["relation_checks"]) failed += c["passed"].get<bool>() ? 0 : 1;
  os << out["relation_checks"].size() - static_cast<std::size_t>(failed) << " of " << out["relation_checks"].size()
     << " relations hold\n";
  for (const auto& c : out["relation_checks"]) {
    if (!c["passed"].get<bool>()) os << "    fails: " << c["name"].get<std::string>() << "\n";
  }
}

// fuzz

struct FuzzArgs {
  int dim = 4;
  int trials = 100;
  std::uint64_t seed = 7;
  int degree = 3;
  double amplitude = 0.05;
  std::string format = "pretty";
};

int run_fuzz(const FuzzArgs& a, Report& report) {
  if (a.trials < 1) throw UsageError("--trials must be at least 1");
  if (a.dim < 2 || a.dim > 6) throw UsageError("--dim must lie in [2, 6]");
  if (a.degree < 1) throw UsageError("--degree must be at least 1");
  if (!(a.amplitude > 0)) throw UsageError("--amplitude must be positive");
  const std::uint64_t seed = effective_seed(a.seed);
  report.inputs() = {{"dim", a.dim}, {"trials", a.trials}, {"seed", seed}, {"degree", a.degree}, {"amplitude", a.amplitude},
                     {"format", a.format}};
  if (std::getenv("CURVLAB_SEED")) report.inputs()["seed_source"] = "CURVLAB_SEED";
  const FuzzReport r = fuzz_verify(seed, a.trials, a.dim, a.degree, a.amplitude);
  report.outputs() = to_json(r);
  if (r.judged && !r.all_passed) {
    std::string msg = "identity violated:";
    for (const auto& t : r.per_trial) {
      for (std::size_t p = 0; p < t.points.size(); ++p) {
        if (t.residuals[p] > r.threshold) msg += " metric seed " + std::to_string(t.metric_seed) + " point " + std::to_string(p);
      }
    }
    report.set_status(kFuzz, msg);
    return kFuzz;
  }
  return kOk;
}

void print_fuzz(std::ostream& os, const Json& in, const Json& out) {
  os << "dim " << out["dim"] << ", " << out["trials"] << " metrics of degree " << out["degree"] << ", amplitude "
     << fmt(out["amplitude"].get<double>()) << ", seed " << in["seed"] << "\n";
  os << "relative residual: max " << fmt(out["max_relative_residual"].get<double>()) << ", min "
     << fmt(out["min_relative_residual"].get<double>()) << "\n";
  if (out["judged"].get<bool>()) {
    os << (out["all_passed"].get<bool>() ? "all trials within " : "some trials above ") << fmt(out["threshold"].get<double>()) << "\n";
  } else {
    os << "dimension " << out["dim"] << ": report only; fraction above " << fmt(out["genericity_bound"].get<double>()) << " = "
       << fmt(out["fraction_above_genericity"].get<double>()) << "\n";
  }
  os << "resampled draws: " << out["generation_failures"] << "\n";
}

// oracle

struct OracleArgs {
  std::string case_text;
  std::string params;
  std::vector<double> point;
  double h = 1e-2;
  std::string format = "pretty";
};

int run_oracle(const OracleArgs& a, Report& report) {
  if (!(a.h > 0)) throw UsageError("--h must be positive");
  const CaseSpec spec = resolve_case(a.case_text, parse_params(a.params), 0, 1);
  const auto chart = chart_of(spec);
  if (!chart) throw UsageError("oracle unavailable for the Lie-group case: it is algebraic and has no chart");
  const Eigen::VectorXd x = a.point.empty() ? Eigen::VectorXd::Zero(chart->dim()) : to_vector(a.point);
  if (x.size() != chart->dim()) {
    throw UsageError("--point has " + std::to_string(x.size()) + " coordinates, the metric has dimension " + std::to_string(chart->dim()));
  }
  report.inputs() = {{"case", spec.label()}, {"params", spec.params}, {"point", to_json(x)}, {"h", a.h}, {"format", a.format}};
  const auto deviations = compare_packages(curvature_package(*chart, x), finite_difference_package(*chart, x, a.h));
  double worst = 0;
  for (const auto& d : deviations) worst = std::max(worst, d.relative);
  Json& out = report.outputs();
  out["bound"] = kOracleBound;
  out["fields"] = to_json(deviations, kOracleBound);
  out["max_relative"] = worst;
  out["passed"] = worst <= kOracleBound;
  if (worst > kOracleBound) {
    report.set_status(kOracle, "finite differences deviate by " + fmt(worst) + " relative");
    return kOracle;
  }
  return kOk;
}

void print_oracle(std::ostream& os, const Json& in, const Json& out) {
  os << "case " << in["case"].get<std::string>() << "  point " << fmt_point(in["point"]) << "  h " << fmt(in["h"].get<double>()) << "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "    %-16s %13s %13s %13s\n", "field", "max |diff|", "scale", "relative");
  os << buf;
  for (const auto& f : out["fields"]) {
    std::snprintf(buf, sizeof buf, "    %-16s %13.4g %13.4g %13.4g%s\n", f["field"].get<std::string>().c_str(), f["max_abs"].get<double>(),
                  f["scale"].get<double>(), f["relative"].get<double>(), f["passed"].get<bool>() ? "" : "  FAIL");
    os << buf;
  }
  os << "max relative deviation " << fmt(out["max_relative"].get<double>()) << " (bound " << fmt(out["bound"].get<double>()) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: quadratic curvature invariants of 4-manifolds"};
  app.set_version_flag("--version", std::string(CURVLAB_VERSION));
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate Phi_1..Phi_10, rho, tau and R at a point");
  eval_cmd->add_option("--case", eval.case_text, "I|II|III|IV|V|flat|random|file:PATH")->required();
  eval_cmd->add_option("--params", eval.params, "Parameter overrides, e.g. a=1,b=3");
  eval_cmd->add_option("--point", eval.point, "Chart coordinates x1,x2,... (default: origin)")->delimiter(',');
  eval_cmd->add_option("--frame", eval.frame, "Component frame")->check(CLI::IsMember({"orthonormal", "coordinate"}));
  eval_cmd->add_option("--format", eval.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Assemble the constraint system and recover c_1..c_10");
  solve_cmd->add_option("--cases", solve.cases, "Comma-separated cases");
  solve_cmd->add_option("--points-per-case", solve.points_per_case, "Sample points for point-dependent cases");
  solve_cmd->add_option("--tol", solve.tol, "Relative SVD tolerance");
  solve_cmd->add_option("--seed", solve.seed, "Seed for sample points (CURVLAB_SEED overrides)");
  solve_cmd->add_option("--format", solve.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  FuzzArgs fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Evaluate the universal combination on random polynomial metrics");
  fuzz_cmd->add_option("--dim", fuzz.dim, "Dimension");
  fuzz_cmd->add_option("--trials", fuzz.trials, "Number of metrics");
  fuzz_cmd->add_option("--seed", fuzz.seed, "Master seed (CURVLAB_SEED overrides)");
  fuzz_cmd->add_option("--degree", fuzz.degree, "Polynomial degree");
  fuzz_cmd->add_option("--amplitude", fuzz.amplitude, "Coefficient amplitude");
  fuzz_cmd->add_option("--format", fuzz.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare jet and finite-difference curvature packages");
  oracle_cmd->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  oracle_cmd->add_option("--case", oracle.case_text, "I|II|III|V|flat|random|file:PATH")->required();
  oracle_cmd->add_option("--params", oracle.params, "Parameter overrides, e.g. a=1,b=3");
  oracle_cmd->add_option("--point", oracle.point, "Chart coordinates x1,x2,... (default: origin)")->delimiter(',');
  oracle_cmd->add_option("--h", oracle.h, "Coarse finite-difference step");
  oracle_cmd->add_option("--format", oracle.format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Report report(cmd->get_name(), std::vector<std::string>(argv, argv + argc));
  std::string format;
  int rc = kOk;
  try {
    if (cmd == eval_cmd) format = eval.format, rc = run_eval(eval, report);
    if (cmd == solve_cmd) format = solve.format, rc = run_solve(solve, report);
    if (cmd == fuzz_cmd) format = fuzz.format, rc = run_fuzz(fuzz, report);
    if (cmd == oracle_cmd) format = oracle.format, rc = run_oracle(oracle, report);
  } catch (const UsageError& e) {
    std::cerr << "curvlab " << cmd->get_name() << ": " << e.what() << "\n" << cmd->help();
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "curvlab " << cmd->get_name() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "curvlab " << cmd->get_name() << ": metric file: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "curvlab " << cmd->get_name() << ": " << e.what() << "\n";
    return kGeometry;
  }

  for (const auto& w : report.warnings()) std::cerr << "warning: " << w << "\n";
  if (rc != kOk) std::cerr << "curvlab " << cmd->get_name() << ": " << report.json()["status"]["message"].get<std::string>() << "\n";

  std::ostringstream os;
  const Json j = report.json();
  if (format == "json") {
    os << j.dump(2) << "\n";
  } else if (cmd == eval_cmd) {
    print_eval(os, j["outputs"], format);
  } else if (cmd == solve_cmd) {
    print_solve(os, j["inputs"], j["outputs"]);
  } else if (cmd == fuzz_cmd) {
    print_fuzz(os, j["inputs"], j["outputs"]);
  } else {
    print_oracle(os, j["inputs"], j["outputs"]);
  }
  std::cout << os.str();
  return rc;
}
