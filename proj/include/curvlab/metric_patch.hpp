#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "curvlab/expression.hpp"
#include "curvlab/jet.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// A metric on one coordinate chart, g_ij(x) given as expression trees.
class MetricPatch {
public:
  /// `entries` is row-major dim*dim; throws SymmetryError-style ArgumentError if g_ij and g_ji differ.
  MetricPatch(std::string name, int dim, std::vector<Expr> entries, std::map<std::string, double> parameters = {},
              std::string domain_note = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Expr& entry(int i, int j) const { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  const std::string& domain_note() const { return domain_note_; }

  /// Plain numeric evaluation of g at `point`.
  Eigen::MatrixXd evaluate(const Eigen::VectorXd& point) const { return evaluate_as<double>(point); }

  /// Plain numeric evaluation in any floating-point type (the finite-difference oracle uses long double).
  template <class Real>
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> evaluate_as(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& point) const;

  /// g_ij as jets of the given order based at `point`.
  Tensor<Jet> jets(const Eigen::VectorXd& point, int order = kMaxJetOrder) const;

  /// Same patch with every component multiplied by the constant c.
  MetricPatch scaled(double c) const;

  /// Copy with some parameters overridden; unknown names are rejected.
  MetricPatch with_parameters(const std::map<std::string, double>& overrides) const;

private:
  std::string name_;
  int dim_;
  std::vector<Expr> entries_;
  std::map<std::string, double> parameters_;
  std::string domain_note_;
};

bool operator==(const MetricPatch& a, const MetricPatch& b);

namespace detail {
template <class Real>
struct PlainContext {
  const Eigen::Matrix<Real, Eigen::Dynamic, 1>& point;
  const std::map<std::string, double>& params;
  Real constant(double v) const { return static_cast<Real>(v); }
  Real variable(int i) const { return point(i); }
  Real parameter(const std::string& name) const { return static_cast<Real>(params.at(name)); }
};
}  // namespace detail

template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> MetricPatch::evaluate_as(
    const Eigen::Matrix<Real, Eigen::Dynamic, 1>& point) const {
  if (point.size() != dim_) throw ArgumentError("point dimension does not match metric");
  detail::PlainContext<Real> ctx{point, parameters_};
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> g(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) g(i, j) = g(j, i) = curvlab::evaluate<Real>(entry(i, j), ctx);
  }
  return g;
}

/// Parse the line-oriented metric-definition format:
///   dim = <n>
///   param <name> = <real>
///   g[i][j] = <expression>      (1-based indices)
/// Lines starting with '#' are comments. Missing off-diagonal entries are 0.
MetricPatch parse_metric_file(const std::string& text, const std::string& name = "file");

/// Inverse of parse_metric_file.
std::string serialize_metric(const MetricPatch& patch);

/// Parse a single expression; parameters must be listed in `known_parameters`.
Expr parse_expression(const std::string& text, int dim, const std::map<std::string, double>& known_parameters = {});

}  // namespace curvlab
