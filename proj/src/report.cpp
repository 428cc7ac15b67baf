#include "curvlab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace curvlab {

namespace {

constexpr const char* kNames[kInvariantCount] = {"Phi_1", "Phi_2", "Phi_3", "Phi_4", "Phi_5",
                                                 "Phi_6", "Phi_7", "Phi_8", "Phi_9", "Phi_10"};
constexpr const char* kDescriptions[kInvariantCount] = {
    "|R|^2 g", "|rho|^2 g", "tau^2 g", "R_abci R^abc_j", "rho_ai rho^a_j",
    "2 R_iabj rho^ab", "tau rho", "(lap tau) g", "Hess tau", "rough lap rho"};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// JSON has no NaN or infinity.
double finite(double v) { return std::isfinite(v) ? v : 0.0; }

bool needs_frame_change(const CurvaturePackage& pkg, Frame frame) {
  return frame == Frame::Orthonormal && pkg.frame == Frame::Coordinate;
}

}  // namespace

const char* invariant_name(int i) { return kNames[i]; }
const char* invariant_description(int i) { return kDescriptions[i]; }

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(finite(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(finite(v(i)));
  return out;
}

Json to_json(const InvariantVector& v) {
  Json out = Json::array();
  for (int i = 0; i < kInvariantCount; ++i) {
    out.push_back({{"name", kNames[i]}, {"description", kDescriptions[i]}, {"matrix", to_json(v[i].matrix())}});
  }
  return out;
}

Json to_json(const SolveReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.relation_checks) checks.push_back({{"name", c.name}, {"residual", finite(c.residual)}, {"passed", c.passed}});
  return {{"rows", r.rows},
          {"nullspace_dimension", r.nullspace_dimension},
          {"tolerance", r.tolerance},
          {"singular_values", to_json(r.singular_values)},
          {"coefficients", r.coefficients.c},
          {"max_row_residual", finite(r.max_row_residual)},
          {"deviation_from_universal", finite(r.deviation_from_universal)},
          {"relation_checks", std::move(checks)}};
}

Json to_json(const FuzzReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.per_trial) {
    Json points = Json::array();
    for (const auto& x : t.points) points.push_back(to_json(x));
    trials.push_back({{"metric_seed", t.metric_seed},
                      {"points", std::move(points)},
                      {"residuals", t.residuals},
                      {"max_residual", finite(t.max_residual)},
                      {"passed", t.passed}});
  }
  return {{"dim", r.dim},
          {"trials", r.trials},
          {"degree", r.degree},
          {"amplitude", r.amplitude},
          {"threshold", r.threshold},
          {"genericity_bound", r.genericity_bound},
          {"judged", r.judged},
          {"all_passed", r.all_passed},
          {"max_relative_residual", finite(r.max_relative_residual)},
          {"min_relative_residual", finite(r.min_relative_residual)},
          {"fraction_above_genericity", finite(r.fraction_above_genericity)},
          {"generation_failures", r.generation_failures},
          {"per_trial", std::move(trials)}};
}

Json to_json(const std::vector<PackageDeviation>& d, double bound) {
  Json out = Json::array();
  for (const auto& f : d) {
    out.push_back({{"field", f.field},
                   {"max_abs", finite(f.max_abs)},
                   {"scale", finite(f.scale)},
                   {"relative", finite(f.relative)},
                   {"passed", f.relative <= bound}});
  }
  return out;
}

Json riemann_components(const Tensor<double>& riemann, double floor) {
  const int n = riemann.dim();
  Json out = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (k * n + l < i * n + j) continue;
          const double v = riemann(i, j, k, l);
          if (std::abs(v) <= floor) continue;
          out.push_back({{"index", {i + 1, j + 1, k + 1, l + 1}}, {"value", finite(v)}});
        }
  return out;
}

Tensor<double> riemann_in_frame(const CurvaturePackage& pkg, Frame frame) {
  return needs_frame_change(pkg, frame) ? change_frame(pkg.riemann, orthonormal_frame(pkg.g)) : pkg.riemann;
}

Sym2Form ricci_in_frame(const CurvaturePackage& pkg, Frame frame) {
  return needs_frame_change(pkg, frame) ? to_orthonormal_frame(pkg.g, pkg.ricci) : pkg.ricci;
}

Report::Report(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)),
      timestamp_(utc_now()) {}

void Report::set_status(int exit_code, std::string message) {
  exit_code_ = exit_code;
  message_ = std::move(message);
}

Json Report::json() const {
  return {{"schema_version", kReportSchemaVersion},
          {"command", command_},
          {"argv", argv_},
          {"engine", {{"name", "curvlab"}, {"version", CURVLAB_VERSION}}},
          {"timestamp", timestamp_},
          {"inputs", inputs_},
          {"outputs", outputs_},
          {"warnings", warnings_},
          {"status", {{"exit_code", exit_code_}, {"message", message_}}}};
}

}  // namespace curvlab
