#include "curvlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace curvlab {

namespace {

std::string component_name(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

/// Diagonal components first, then the upper triangle row by row.
std::vector<std::pair<int, int>> component_order(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) out.emplace_back(i, i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

using Rel = std::array<double, kInvariantCount + 1>;

Rel rel(std::initializer_list<double> c, double lambda) {
  Rel r{};
  std::copy(c.begin(), c.end(), r.begin());
  r[kInvariantCount] = lambda;
  return r;
}

}  // namespace

void ConstraintSystem::add(ConstraintRow row) {
  for (const auto& r : rows_) {
    if (r.provenance == row.provenance) throw ArgumentError("duplicate constraint row '" + row.provenance + "'");
  }
  rows_.push_back(std::move(row));
}

void ConstraintSystem::append(const ConstraintSystem& other) {
  for (const auto& r : other.rows()) add(r);
}

Eigen::MatrixXd ConstraintSystem::matrix() const {
  Eigen::MatrixXd m(size(), kInvariantCount);
  for (int r = 0; r < size(); ++r) {
    for (int c = 0; c < kInvariantCount; ++c) m(r, c) = rows_[static_cast<std::size_t>(r)].values[static_cast<std::size_t>(c)];
  }
  return m;
}

ConstraintSystem constraint_rows(const InvariantVector& v) {
  ConstraintSystem out;
  for (const auto& [i, j] : component_order(v.dim())) {
    ConstraintRow row{v.provenance + " " + component_name(i, j), {}};
    for (int k = 0; k < kInvariantCount; ++k) row.values[static_cast<std::size_t>(k)] = v[k](i, j);
    out.add(std::move(row));
  }
  return out;
}

ConstraintSystem assemble_constraints(const std::vector<CaseSpec>& cases) {
  ConstraintSystem system;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const CaseSpec& spec = cases[c];
    const std::string label = "#" + std::to_string(c + 1) + " " + spec.label();
    CaseSpec effective = spec;
    if (is_homogeneous(spec.kind) && effective.points.size() > 1) effective.points.resize(1);
    std::vector<CurvaturePackage> packages;
    try {
      packages = case_packages(effective);
    } catch (const GeometryError& e) {
      throw GeometryError(label + ": " + e.what());
    }
    for (std::size_t p = 0; p < packages.size(); ++p) {
      std::string where = label;
      if (packages[p].point) where += " @p" + std::to_string(p + 1);
      system.append(constraint_rows(orthonormal_phi_vector(packages[p], where)));
    }
  }
  return system;
}

Nullspace nullspace(const ConstraintSystem& system, double tol) {
  if (system.size() < kInvariantCount) {
    throw ArgumentError("nullspace: need at least " + std::to_string(kInvariantCount) + " rows, got " + std::to_string(system.size()));
  }
  const Eigen::MatrixXd m = system.matrix();
  if (m.cwiseAbs().maxCoeff() == 0.0) throw ArgumentError("nullspace: constraint matrix is identically zero");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cutoff = tol * sv(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++rank;
  }
  const int dim = kInvariantCount - rank;
  return {dim, svd.matrixV().rightCols(dim), sv};
}

const std::vector<NamedRelation>& reference_relations() {
  static const std::vector<NamedRelation> relations = {
      {"I (1,1): a^2 slot", rel({4, 2, 4, 2, 1, 2, 2, 0, 0, 0}, 0)},
      {"I (1,1): ab slot", rel({0, 0, 8, 0, 0, 0, 2, 0, 0, 0}, 0)},
      {"I (1,1): b^2 slot", rel({4, 2, 4, 0, 0, 0, 0, 0, 0, 0}, 0)},
      {"I: c3 = lambda/4", rel({0, 0, 4, 0, 0, 0, 0, 0, 0, 0}, -1)},
      {"I: 4c1 + 2c2 = -lambda", rel({4, 2, 0, 0, 0, 0, 0, 0, 0, 0}, 1)},
      {"I: 2c4 + c5 + 2c6 = 2lambda", rel({0, 0, 0, 2, 1, 2, 0, 0, 0, 0}, -2)},
      {"II (1,1)", rel({3, 3, 9, 1, 1, 2, 3, 0, 0, 0}, 0)},
      {"II (4,4)", rel({1, 1, 3, 0, 0, 0, 0, 0, 0, 0}, 0)},
      {"II: c4 + c5 + 2c6 + 3c7 = 0", rel({0, 0, 0, 1, 1, 2, 3, 0, 0, 0}, 0)},
      {"II: c4 + c5 + 2c6 = 3lambda", rel({0, 0, 0, 1, 1, 2, 0, 0, 0, 0}, -3)},
      {"I+II: c4 = -lambda", rel({0, 0, 0, 1, 0, 0, 0, 0, 0, 0}, 1)},
      {"I+II: c5 + 2c6 = 4lambda", rel({0, 0, 0, 0, 1, 2, 0, 0, 0, 0}, -4)},
      {"III (1,1)", rel({24, 36, 144, 6, 9, 18, 36, 0, 0, 0}, 0)},
      {"III reduced", rel({8, 12, 48, 2, 3, 6, 12, 0, 0, 0}, 0)},
      {"I-III: c1 = lambda/4", rel({4, 0, 0, 0, 0, 0, 0, 0, 0, 0}, -1)},
      {"I-III: c2 = -lambda", rel({0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, 1)},
      {"IV (1,1)", rel({24, 12, 16, 6, 9, 2, 12, 0, 0, 8}, 0)},
      {"IV (2,2)", rel({24, 12, 16, 6, 1, 2, -4, 0, 0, -8}, 0)},
      {"IV (3,3)", rel({24, 12, 16, 6, 1, 10, 4, 0, 0, -4}, 0)},
      {"IV (1,1) reduced: 9c5 + 2c6 + 8c10 = 20lambda", rel({0, 0, 0, 0, 9, 2, 0, 0, 0, 8}, -20)},
      {"IV (1,1) as computed", rel({24, 12, 16, 6, 9, 2, 12, 0, 0, 16}, 0)},
      {"IV (1,1) as computed, reduced: 9c5 + 2c6 + 16c10 = 20lambda", rel({0, 0, 0, 0, 9, 2, 0, 0, 0, 16}, -20)},
      {"IV (2,2) reduced: c5 + 2c6 - 8c10 = 4lambda", rel({0, 0, 0, 0, 1, 2, 0, 0, 0, -8}, -4)},
      {"IV: 5c5 + 2c6 = 12lambda", rel({0, 0, 0, 0, 5, 2, 0, 0, 0, 0}, -12)},
      {"IV: c5 = 2lambda", rel({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}, -2)},
      {"IV: c6 = lambda", rel({0, 0, 0, 0, 0, 1, 0, 0, 0, 0}, -1)},
      {"IV: c10 = 0", rel({0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 0)},
      {"V: c8 = 0", rel({0, 0, 0, 0, 0, 0, 0, 1, 0, 0}, 0)},
      {"V: c9 = 0", rel({0, 0, 0, 0, 0, 0, 0, 0, 1, 0}, 0)},
      {"normalisation: c7 = -lambda", rel({0, 0, 0, 0, 0, 0, 1, 0, 0, 0}, 1)},
  };
  return relations;
}

SolveReport recover_coefficients(const ConstraintSystem& system, double tol) {
  const Nullspace ns = nullspace(system, tol);
  std::vector<double> sv(ns.singular_values.data(), ns.singular_values.data() + ns.singular_values.size());
  if (ns.dimension != 1) {
    std::ostringstream msg;
    msg << "constraint system has a " << ns.dimension << "-dimensional nullspace (expected 1) at tol " << tol
        << "; singular values:";
    for (double s : sv) msg << " " << s;
    throw NullspaceError(msg.str(), ns.dimension, sv);
  }
  Eigen::VectorXd v = ns.basis.col(0);
  if (std::abs(v(6)) < 1e-12) {
    throw NullspaceError("nullspace vector has vanishing c7; cannot normalise c7 = -1", 1, sv);
  }
  v /= -v(6);

  SolveReport report;
  report.nullspace_dimension = 1;
  for (int k = 0; k < kInvariantCount; ++k) report.coefficients.c[static_cast<std::size_t>(k)] = v(k);
  report.coefficients.lambda = 1.0;
  report.singular_values = ns.singular_values;
  report.tolerance = tol;
  report.rows = system.size();

  const Eigen::MatrixXd m = system.matrix();
  const Eigen::VectorXd r = m * v;
  report.max_row_residual = r.cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff();

  const Coefficients target = Coefficients::universal(1.0);
  report.deviation_from_universal = 0.0;
  for (int k = 0; k < kInvariantCount; ++k) {
    report.deviation_from_universal = std::max(report.deviation_from_universal, std::abs(v(k) - target[k]));
  }
  for (const auto& relation : reference_relations()) {
    double s = relation.coefficients[kInvariantCount] * report.coefficients.lambda;
    for (int k = 0; k < kInvariantCount; ++k) s += relation.coefficients[static_cast<std::size_t>(k)] * v(k);
    report.relation_checks.push_back({relation.name, std::abs(s), std::abs(s) <= 1e-9});
  }
  return report;
}

std::array<long long, kInvariantCount> CaseRelation::primitive() const {
  std::array<long long, kInvariantCount> out{};
  long long g = 0;
  for (int k = 0; k < kInvariantCount; ++k) {
    out[static_cast<std::size_t>(k)] = std::llround(coefficients[static_cast<std::size_t>(k)]);
    g = std::gcd(g, std::llabs(out[static_cast<std::size_t>(k)]));
  }
  if (g == 0) return out;
  long long sign = 1;
  for (long long v : out) {
    if (v != 0) {
      sign = v > 0 ? 1 : -1;
      break;
    }
  }
  for (long long& v : out) v = sign * v / g;
  return out;
}

namespace {

struct ParametricModel {
  std::vector<std::string> names;  // parameter names
  int degree;
};

std::optional<ParametricModel> parametric_model(CaseKind kind) {
  switch (kind) {
    case CaseKind::CaseI: return ParametricModel{{"a", "b"}, 2};
    case CaseKind::CaseII:
    case CaseKind::CaseIII: return ParametricModel{{"a"}, 2};
    case CaseKind::CaseIV: return ParametricModel{{"a", "b"}, 4};
    default: return std::nullopt;
  }
}

std::string monomial_name(const std::vector<std::string>& names, const std::vector<int>& powers) {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (powers[k] == 0) continue;
    out += names[k];
    if (powers[k] > 1) out += "^" + std::to_string(powers[k]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::vector<CaseRelation> case_reduction(const CaseSpec& spec) {
  std::vector<CaseRelation> out;
  auto push_unique = [&](CaseRelation r) {
    bool zero = std::all_of(r.coefficients.begin(), r.coefficients.end(), [](double v) { return v == 0.0; });
    if (zero) return;
    for (auto& existing : out) {
      if (existing.coefficients == r.coefficients) {
        existing.provenance += ", " + r.provenance;
        return;
      }
    }
    out.push_back(std::move(r));
  };

  const auto model = parametric_model(spec.kind);
  if (!model) {
    // point-dependent metric: its rows are the relations, with real coefficients
    for (const auto& pkg : case_packages(spec)) {
      const auto rows = constraint_rows(orthonormal_phi_vector(pkg, spec.label()));
      for (const auto& row : rows.rows()) push_unique({row.provenance, row.values, false});
    }
    return out;
  }

  // monomials a^p b^(d-p) (or a^d for one parameter)
  std::vector<std::vector<int>> monomials;
  if (model->names.size() == 1) {
    monomials.push_back({model->degree});
  } else {
    for (int p = model->degree; p >= 0; --p) monomials.push_back({p, model->degree - p});
  }
  // distinct ratios b/a keep the homogeneous Vandermonde system nonsingular
  static const std::vector<std::array<double, 2>> kSamples = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {1, -1}, {2, 3}};
  const int n_samples = static_cast<int>(monomials.size()) + 1;

  Eigen::MatrixXd vandermonde(n_samples, static_cast<Eigen::Index>(monomials.size()));
  std::vector<InvariantVector> samples;
  for (int s = 0; s < n_samples; ++s) {
    std::array<double, 2> values = kSamples[static_cast<std::size_t>(s)];
    if (model->names.size() == 1) values[0] = s + 1.0;
    std::map<std::string, double> params;
    for (std::size_t k = 0; k < model->names.size(); ++k) params[model->names[k]] = values[k];
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      double v = 1.0;
      for (std::size_t k = 0; k < model->names.size(); ++k) v *= std::pow(values[k], monomials[m][k]);
      vandermonde(s, static_cast<Eigen::Index>(m)) = v;
    }
    CaseSpec sample = make_case(spec.kind, params, 0, 1);
    samples.push_back(orthonormal_phi_vector(case_packages(sample).front()));
  }
  const auto qr = vandermonde.colPivHouseholderQr();

  const int n = samples.front().dim();
  for (const auto& [i, j] : component_order(n)) {
    // fit[m][k]: coefficient of monomial m in Phi_k(i, j)
    std::vector<std::array<double, kInvariantCount>> fit(monomials.size());
    for (int k = 0; k < kInvariantCount; ++k) {
      Eigen::VectorXd y(n_samples);
      for (int s = 0; s < n_samples; ++s) y(s) = samples[static_cast<std::size_t>(s)][k](i, j);
      const Eigen::VectorXd coef = qr.solve(y);
      const double misfit = (vandermonde * coef - y).cwiseAbs().maxCoeff();
      if (misfit > 1e-8 * std::max(1.0, y.cwiseAbs().maxCoeff())) {
        throw Error("case_reduction: invariant " + std::to_string(k + 1) + " is not a homogeneous polynomial of degree " +
                    std::to_string(model->degree) + " in the case parameters");
      }
      for (std::size_t m = 0; m < monomials.size(); ++m) {
        const double rounded = std::round(coef(static_cast<Eigen::Index>(m)));
        if (std::abs(rounded - coef(static_cast<Eigen::Index>(m))) >= 1e-6) {
          throw Error("case_reduction: non-integer monomial coefficient " + std::to_string(coef(static_cast<Eigen::Index>(m))));
        }
        fit[m][static_cast<std::size_t>(k)] = rounded == 0.0 ? 0.0 : rounded;
      }
    }
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      push_unique({component_name(i, j) + " " + monomial_name(model->names, monomials[m]), fit[m], true});
    }
  }
  return out;
}

bool relation_implied(const std::array<double, kInvariantCount + 1>& r,
                      const std::vector<std::array<double, kInvariantCount + 1>>& premises, double tol) {
  const auto rank_of = [tol](const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return Eigen::Index{0};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return Eigen::Index{0};
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > tol * sv(0)) ++rank;
    }
    return rank;
  };
  Eigen::MatrixXd p(static_cast<Eigen::Index>(premises.size()), kInvariantCount + 1);
  for (std::size_t i = 0; i < premises.size(); ++i) {
    for (int k = 0; k <= kInvariantCount; ++k) p(static_cast<Eigen::Index>(i), k) = premises[i][static_cast<std::size_t>(k)];
  }
  Eigen::MatrixXd with(p.rows() + 1, kInvariantCount + 1);
  with << p, Eigen::Map<const Eigen::RowVectorXd>(r.data(), kInvariantCount + 1);
  return rank_of(with) == rank_of(p);
}

}  // namespace curvlab
