#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curvlab/geometry.hpp"
#include "curvlab/lie_group.hpp"
#include "curvlab/metric_patch.hpp"

namespace curvlab {

/// Product of two surfaces of constant Gaussian curvature a and b.
MetricPatch product_surfaces(double a, double b);
/// M^3(a) x R.
MetricPatch space_form_cross_line(double a);
/// M^4(a).
MetricPatch space_form4(double a);
/// Solvable algebra [e1,e2]=a e2, [e1,e3]=-a e3 - b e4, [e1,e4]=b e3 - a e4, orthonormal basis.
StructureConstants solvable_lie_algebra(double a, double b);
/// e^{2 s1} (dx1^2 + dx2^2) + e^{2 s2} (dx3^2 + dx4^2), s1 = x1^2 + x2^2, s2 = x3^2 + x4^2.
MetricPatch conformal_product();
MetricPatch flat(int dim);
/// delta + a random symmetric polynomial perturbation of the given degree.
///
/// Coefficients are uniform in [-amplitude, amplitude]. Candidates whose
/// smallest eigenvalue drops below 1/4 at any of 64 seeded points of the box
/// [-1, 1]^dim are redrawn; after 100 redraws GenerationError is thrown.
MetricPatch random_polynomial_metric(std::uint64_t seed, int dim, int degree, double amplitude);

/// Conformal block (1 + (kappa/4)|x|^2)^{-2} delta over coordinates [first, first+count).
Expr stereographic_factor(const Expr& kappa, int first, int count);

enum class CaseKind { CaseI, CaseII, CaseIII, CaseIV, CaseV, Flat, RandomPoly, File };

const char* to_string(CaseKind kind);
/// Accepts I..V (optionally prefixed "Case"), flat, random.
CaseKind parse_case_kind(const std::string& text);

/// One test manifold with its parameters and sample points.
struct CaseSpec {
  CaseKind kind;
  std::map<std::string, double> params;
  std::vector<Eigen::VectorXd> points;   // empty for the Lie-group case
  std::optional<MetricPatch> patch;      // File kind only

  std::string label() const;
};

/// Case with default parameters (overridable) and `n_points` seeded sample points in [-0.4, 0.4]^dim.
///
/// Defaults: I a=1 b=2; II, III a=1; IV a=1 b=1; RandomPoly seed=1 dim=4 degree=3 amplitude=0.05.
/// Throws ArgumentError for vanishing curvature parameters.
CaseSpec make_case(CaseKind kind, const std::map<std::string, double>& params = {}, std::uint64_t seed = 0,
                   int n_points = 5);

/// A case backed by an arbitrary chart metric.
CaseSpec make_file_case(MetricPatch patch, std::uint64_t seed = 0, int n_points = 5);

/// Chart metric or structure constants behind a case.
using TestManifold = std::variant<MetricPatch, StructureConstants>;
TestManifold realize(const CaseSpec& spec);

/// True for cases whose curvature tables do not depend on the point.
bool is_homogeneous(CaseKind kind);

/// Curvature packages at the case's sample points (one package for the Lie-group case).
std::vector<CurvaturePackage> case_packages(const CaseSpec& spec);

}  // namespace curvlab
