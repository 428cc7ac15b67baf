#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "curvlab/finite_difference.hpp"
#include "curvlab/fuzz.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/solver.hpp"
#include "json.hpp"

namespace curvlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Names used in reports: "Phi_1".."Phi_10" and a short description of each.
const char* invariant_name(int i);
const char* invariant_description(int i);

Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const InvariantVector& v);
Json to_json(const SolveReport& r);
Json to_json(const FuzzReport& r);
Json to_json(const std::vector<PackageDeviation>& d, double bound);

/// Independent components R_ijkl (i < j, k < l, (i,j) <= (k,l)) with |R_ijkl| above `floor`, 1-based.
Json riemann_components(const Tensor<double>& riemann, double floor = 1e-14);

/// Riemann tensor of `pkg` in `frame`: unchanged for Frame::Coordinate or a package
/// already in an orthonormal frame, otherwise moved to the Cholesky orthonormal frame.
Tensor<double> riemann_in_frame(const CurvaturePackage& pkg, Frame frame);

/// Ricci form of `pkg` in `frame`, following the same rule.
Sym2Form ricci_in_frame(const CurvaturePackage& pkg, Frame frame);

/// Envelope shared by every command: schema version, command echo, engine version and timestamp.
class Report {
public:
  Report(std::string command, std::vector<std::string> argv);

  Json& inputs() { return inputs_; }
  Json& outputs() { return outputs_; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void set_status(int exit_code, std::string message);

  Json json() const;

private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string timestamp_;
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
  std::vector<std::string> warnings_;
  int exit_code_ = 0;
  std::string message_ = "ok";
};

}  // namespace curvlab
