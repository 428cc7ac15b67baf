#include "curvlab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "curvlab/random.hpp"

namespace curvlab {

namespace {

Expr x(int i) { return Expr::variable(i); }

Expr radius_sq(int first, int count) {
  Expr r2 = pow(x(first), 2);
  for (int k = first + 1; k < first + count; ++k) r2 = r2 + pow(x(k), 2);
  return r2;
}

std::vector<Expr> diagonal(const std::vector<Expr>& diag) {
  const int n = static_cast<int>(diag.size());
  std::vector<Expr> entries(static_cast<std::size_t>(n * n), Expr::constant(0.0));
  for (int i = 0; i < n; ++i) entries[static_cast<std::size_t>(i * n + i)] = diag[static_cast<std::size_t>(i)];
  return entries;
}

void require_nonzero(double v, const char* what) {
  if (v == 0.0 || !std::isfinite(v)) throw ArgumentError(std::string(what) + " must be a nonzero finite curvature");
}

double param_or(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

Expr stereographic_factor(const Expr& kappa, int first, int count) {
  return pow(1.0 + kappa * Expr::constant(0.25) * radius_sq(first, count), -2);
}

MetricPatch product_surfaces(double a, double b) {
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  const Expr fa = stereographic_factor(Expr::parameter("a"), 0, 2);
  const Expr fb = stereographic_factor(Expr::parameter("b"), 2, 2);
  return MetricPatch("product_surfaces", 4, diagonal({fa, fa, fb, fb}), {{"a", a}, {"b", b}},
                     "M2(a) x M2(b); chart singular where 1 + k|x|^2/4 = 0");
}

MetricPatch space_form_cross_line(double a) {
  require_nonzero(a, "a");
  const Expr f = stereographic_factor(Expr::parameter("a"), 0, 3);
  return MetricPatch("space_form_cross_line", 4, diagonal({f, f, f, Expr::constant(1.0)}), {{"a", a}},
                     "M3(a) x R; chart singular where 1 + a|x|^2/4 = 0");
}

MetricPatch space_form4(double a) {
  require_nonzero(a, "a");
  const Expr f = stereographic_factor(Expr::parameter("a"), 0, 4);
  return MetricPatch("space_form4", 4, diagonal({f, f, f, f}), {{"a", a}}, "M4(a); chart singular where 1 + a|x|^2/4 = 0");
}

StructureConstants solvable_lie_algebra(double a, double b) {
  require_nonzero(a, "a");
  StructureConstants sc(4);
  Eigen::VectorXd v(4);
  v << 0, a, 0, 0;
  sc.set_bracket(0, 1, v);
  v << 0, 0, -a, -b;
  sc.set_bracket(0, 2, v);
  v << 0, 0, b, -a;
  sc.set_bracket(0, 3, v);
  if (sc.jacobi_defect() > 1e-12) throw Error("solvable_lie_algebra: Jacobi identity failed");
  return sc;
}

MetricPatch conformal_product() {
  const Expr f1 = exp(Expr::constant(2.0) * radius_sq(0, 2));
  const Expr f2 = exp(Expr::constant(2.0) * radius_sq(2, 2));
  return MetricPatch("conformal_product", 4, diagonal({f1, f1, f2, f2}), {}, "all of R^4");
}

MetricPatch flat(int dim) {
  if (dim < 1 || dim > kMaxJetDim) throw ArgumentError("flat: dimension must be in [1, 6]");
  return MetricPatch("flat" + std::to_string(dim), dim, diagonal(std::vector<Expr>(static_cast<std::size_t>(dim), Expr::constant(1.0))));
}

MetricPatch random_polynomial_metric(std::uint64_t seed, int dim, int degree, double amplitude) {
  if (dim < 2 || dim > kMaxJetDim) throw ArgumentError("random metric dimension must be in [2, 6]");
  if (degree < 0 || degree > 3) throw ArgumentError("random metric degree must be in [0, 3]");
  if (!(amplitude >= 0.0)) throw ArgumentError("random metric amplitude must be non-negative");
  const auto& monomials = JetLayout::get(dim, degree).indices;

  Rng check_rng(derive_seed(seed, 0x5bd1e995));
  std::vector<Eigen::VectorXd> probes;
  for (int p = 0; p < 64; ++p) {
    Eigen::VectorXd q(dim);
    for (int k = 0; k < dim; ++k) q(k) = check_rng.uniform(-1.0, 1.0);
    probes.push_back(q);
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Expr> entries(static_cast<std::size_t>(dim * dim));
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        Expr e = Expr::constant(i == j ? 1.0 : 0.0);
        for (const auto& alpha : monomials) {
          Expr term = Expr::constant(rng.uniform(-amplitude, amplitude));
          for (int k = 0; k < dim; ++k) {
            const int p = alpha[static_cast<std::size_t>(k)];
            if (p == 1) term = term * x(k);
            else if (p > 1) term = term * pow(x(k), p);
          }
          e = e + term;
        }
        entries[static_cast<std::size_t>(i * dim + j)] = e;
        entries[static_cast<std::size_t>(j * dim + i)] = e;
      }
    }
    MetricPatch patch("random(seed=" + std::to_string(seed) + ",dim=" + std::to_string(dim) + ",degree=" +
                          std::to_string(degree) + ")",
                      dim, std::move(entries), {}, "SPD-checked on [-1, 1]^dim");
    const bool ok = std::all_of(probes.begin(), probes.end(), [&](const Eigen::VectorXd& q) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(patch.evaluate(q), Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= 0.25;
    });
    if (ok) return patch;
  }
  throw GenerationError("random_polynomial_metric: no positive definite sample after 100 draws");
}

const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::CaseI: return "I";
    case CaseKind::CaseII: return "II";
    case CaseKind::CaseIII: return "III";
    case CaseKind::CaseIV: return "IV";
    case CaseKind::CaseV: return "V";
    case CaseKind::Flat: return "flat";
    case CaseKind::RandomPoly: return "random";
    case CaseKind::File: return "file";
  }
  return "?";
}

CaseKind parse_case_kind(const std::string& text) {
  std::string t = text;
  if (t.rfind("Case", 0) == 0) t = t.substr(4);
  if (t == "I") return CaseKind::CaseI;
  if (t == "II") return CaseKind::CaseII;
  if (t == "III") return CaseKind::CaseIII;
  if (t == "IV") return CaseKind::CaseIV;
  if (t == "V") return CaseKind::CaseV;
  if (t == "flat") return CaseKind::Flat;
  if (t == "random") return CaseKind::RandomPoly;
  throw ArgumentError("unknown case '" + text + "' (expected I, II, III, IV, V, flat or random)");
}

std::string CaseSpec::label() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == CaseKind::File && patch) out << ":" << patch->name();
  if (!params.empty()) {
    out << "(";
    bool first = true;
    for (const auto& [k, v] : params) {
      out << (first ? "" : ",") << k << "=" << v;
      first = false;
    }
    out << ")";
  }
  return out.str();
}

bool is_homogeneous(CaseKind kind) {
  return kind == CaseKind::CaseI || kind == CaseKind::CaseII || kind == CaseKind::CaseIII || kind == CaseKind::CaseIV ||
         kind == CaseKind::Flat;
}

namespace {

std::map<std::string, double> defaults_for(CaseKind kind) {
  switch (kind) {
    case CaseKind::CaseI: return {{"a", 1.0}, {"b", 2.0}};
    case CaseKind::CaseII:
    case CaseKind::CaseIII: return {{"a", 1.0}};
    case CaseKind::CaseIV: return {{"a", 1.0}, {"b", 1.0}};
    case CaseKind::Flat: return {{"dim", 4.0}};
    case CaseKind::RandomPoly: return {{"seed", 1.0}, {"dim", 4.0}, {"degree", 3.0}, {"amplitude", 0.05}};
    default: return {};
  }
}

std::vector<Eigen::VectorXd> sample_points(std::uint64_t seed, std::uint64_t stream, int dim, int n_points) {
  Rng rng(derive_seed(seed, stream));
  std::vector<Eigen::VectorXd> pts;
  for (int p = 0; p < n_points; ++p) {
    Eigen::VectorXd q(dim);
    for (int k = 0; k < dim; ++k) q(k) = rng.uniform(-0.4, 0.4);
    pts.push_back(q);
  }
  return pts;
}

}  // namespace

CaseSpec make_case(CaseKind kind, const std::map<std::string, double>& params, std::uint64_t seed, int n_points) {
  if (kind == CaseKind::File) throw ArgumentError("use make_file_case for metric files");
  if (n_points < 1) throw ArgumentError("a case needs at least one sample point");
  CaseSpec spec{kind, defaults_for(kind), {}, std::nullopt};
  for (const auto& [k, v] : params) {
    if (!spec.params.count(k)) throw ArgumentError(std::string("case ") + to_string(kind) + " has no parameter '" + k + "'");
    spec.params[k] = v;
  }
  switch (kind) {
    case CaseKind::CaseI:
      require_nonzero(spec.params["a"], "a");
      require_nonzero(spec.params["b"], "b");
      break;
    case CaseKind::CaseII:
    case CaseKind::CaseIII:
    case CaseKind::CaseIV: require_nonzero(spec.params["a"], "a"); break;
    default: break;
  }
  if (kind != CaseKind::CaseIV) {
    const int dim = static_cast<int>(param_or(spec.params, "dim", 4.0));
    spec.points = sample_points(seed, static_cast<std::uint64_t>(kind), dim, n_points);
  }
  return spec;
}

CaseSpec make_file_case(MetricPatch patch, std::uint64_t seed, int n_points) {
  CaseSpec spec{CaseKind::File, patch.parameters(), {}, std::nullopt};
  spec.points = sample_points(seed, static_cast<std::uint64_t>(CaseKind::File), patch.dim(), n_points);
  spec.patch = std::move(patch);
  return spec;
}

TestManifold realize(const CaseSpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case CaseKind::CaseI: return product_surfaces(p.at("a"), p.at("b"));
    case CaseKind::CaseII: return space_form_cross_line(p.at("a"));
    case CaseKind::CaseIII: return space_form4(p.at("a"));
    case CaseKind::CaseIV: return solvable_lie_algebra(p.at("a"), p.at("b"));
    case CaseKind::CaseV: return conformal_product();
    case CaseKind::Flat: return flat(static_cast<int>(p.at("dim")));
    case CaseKind::RandomPoly:
      return random_polynomial_metric(static_cast<std::uint64_t>(p.at("seed")), static_cast<int>(p.at("dim")),
                                      static_cast<int>(p.at("degree")), p.at("amplitude"));
    case CaseKind::File:
      if (!spec.patch) throw ArgumentError("file case without a metric");
      return spec.patch->with_parameters(spec.params);
  }
  throw Error("unreachable case kind");
}

std::vector<CurvaturePackage> case_packages(const CaseSpec& spec) {
  const TestManifold m = realize(spec);
  std::vector<CurvaturePackage> out;
  if (const auto* sc = std::get_if<StructureConstants>(&m)) {
    out.push_back(lie_group_package(*sc));
    return out;
  }
  const auto& patch = std::get<MetricPatch>(m);
  for (const auto& q : spec.points) out.push_back(curvature_package(patch, q));
  return out;
}

}  // namespace curvlab
