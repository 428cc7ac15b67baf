#include "curvlab/metric_patch.hpp"

namespace curvlab {

namespace {

struct JetContext {
  std::vector<Jet> vars;
  const std::map<std::string, double>& params;
  int dim;
  int order;
  Jet constant(double v) const { return Jet::constant(v, dim, order); }
  Jet variable(int i) const { return vars[static_cast<std::size_t>(i)]; }
  Jet parameter(const std::string& name) const { return Jet::constant(params.at(name), dim, order); }
};

void check_parameters(const Expr& e, const std::map<std::string, double>& params) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable: return;
    case Expr::Kind::Parameter:
      if (!params.count(e.name())) throw ArgumentError("metric references unknown parameter '" + e.name() + "'");
      return;
    case Expr::Kind::Neg:
    case Expr::Kind::Pow:
    case Expr::Kind::Exp: check_parameters(e.lhs(), params); return;
    default:
      check_parameters(e.lhs(), params);
      check_parameters(e.rhs(), params);
  }
}

}  // namespace

MetricPatch::MetricPatch(std::string name, int dim, std::vector<Expr> entries, std::map<std::string, double> parameters,
                         std::string domain_note)
    : name_(std::move(name)), dim_(dim), entries_(std::move(entries)), parameters_(std::move(parameters)),
      domain_note_(std::move(domain_note)) {
  if (dim < 1 || dim > kMaxJetDim) throw ArgumentError("metric dimension must be in [1, 6]");
  if (entries_.size() != static_cast<std::size_t>(dim * dim)) throw ArgumentError("metric needs dim*dim entries");
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (!(entry(i, j) == entry(j, i))) {
        throw ArgumentError("metric is not symmetric: g[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                            "] differs from g[" + std::to_string(j + 1) + "][" + std::to_string(i + 1) + "]");
      }
    }
  }
  for (const auto& e : entries_) {
    if (e.max_variable() >= dim) throw ArgumentError("metric entry references a coordinate beyond its dimension");
    check_parameters(e, parameters_);
  }
}

Tensor<Jet> MetricPatch::jets(const Eigen::VectorXd& point, int order) const {
  if (point.size() != dim_) throw ArgumentError("point dimension does not match metric");
  JetContext ctx{{}, parameters_, dim_, order};
  for (int i = 0; i < dim_; ++i) ctx.vars.push_back(jet_var(i, point(i), dim_, order));
  Tensor<Jet> g = Tensor<Jet>::lower(dim_, 2, Jet(dim_, order));
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) g(i, j) = g(j, i) = curvlab::evaluate<Jet>(entry(i, j), ctx);
  }
  return g;
}

MetricPatch MetricPatch::scaled(double c) const {
  std::vector<Expr> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(Expr::constant(c) * e);
  return MetricPatch(name_ + "*" + std::to_string(c), dim_, std::move(out), parameters_, domain_note_);
}

MetricPatch MetricPatch::with_parameters(const std::map<std::string, double>& overrides) const {
  auto params = parameters_;
  for (const auto& [k, v] : overrides) {
    if (!params.count(k)) throw ArgumentError("metric '" + name_ + "' has no parameter '" + k + "'");
    params[k] = v;
  }
  return MetricPatch(name_, dim_, entries_, std::move(params), domain_note_);
}

bool operator==(const MetricPatch& a, const MetricPatch& b) {
  if (a.dim() != b.dim() || a.parameters() != b.parameters()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (!(a.entry(i, j) == b.entry(i, j))) return false;
    }
  }
  return true;
}

}  // namespace curvlab
