#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "curvlab/catalog.hpp"
#include "curvlab/invariants.hpp"

namespace curvlab {

/// One scalar equation sum_i c_i Phi_i(slot) = 0 taken from a test manifold.
struct ConstraintRow {
  std::string provenance;  // case label, point and component
  std::array<double, kInvariantCount> values;
};

class ConstraintSystem {
public:
  /// Throws ArgumentError on a repeated provenance.
  void add(ConstraintRow row);
  void append(const ConstraintSystem& other);

  const std::vector<ConstraintRow>& rows() const { return rows_; }
  int size() const { return static_cast<int>(rows_.size()); }
  /// N x 10 view.
  Eigen::MatrixXd matrix() const;

private:
  std::vector<ConstraintRow> rows_;
};

/// Rows from orthonormal-frame components (i <= j) of Phi_1..Phi_10.
///
/// Point-independent cases contribute their first sample point only; the
/// Lie-group case contributes its single algebraic package.
ConstraintSystem assemble_constraints(const std::vector<CaseSpec>& cases);

/// Constraint rows of one invariant vector, 10 per point in dimension 4.
ConstraintSystem constraint_rows(const InvariantVector& v);

struct Nullspace {
  int dimension;
  Eigen::MatrixXd basis;  // 10 x dimension, orthonormal columns
  Eigen::VectorXd singular_values;
};

/// Right singular vectors with sigma <= tol * sigma_max.
Nullspace nullspace(const ConstraintSystem& system, double tol = 1e-8);

/// A linear relation sum_i r_i c_i + r_lambda * lambda = 0 quoted in the literature.
struct NamedRelation {
  std::string name;
  std::array<double, kInvariantCount + 1> coefficients;  // c_1..c_10, lambda
};

/// The per-case relations and the elimination chain, with c_7 = -lambda.
const std::vector<NamedRelation>& reference_relations();

struct RelationCheck {
  std::string name;
  double residual;
  bool passed;
};

struct SolveReport {
  int nullspace_dimension;
  Coefficients coefficients;  // normalised so c_7 = -1 (lambda = 1)
  Eigen::VectorXd singular_values;
  double tolerance;
  std::vector<RelationCheck> relation_checks;
  double max_row_residual;   // max |row . c| / max |row|
  double deviation_from_universal;
  int rows;
};

/// Solve for the unique identity. Throws NullspaceError unless the nullspace is one-dimensional.
SolveReport recover_coefficients(const ConstraintSystem& system, double tol = 1e-8);

/// Integer (or, for point-dependent cases, real) relation produced by case_reduction.
struct CaseRelation {
  std::string provenance;  // component and parameter monomial, e.g. "(1,1) a^2"
  std::array<double, kInvariantCount> coefficients;
  bool exact;              // integer coefficients recovered exactly

  /// Integer relation divided by the gcd of its entries, first nonzero entry positive.
  std::array<long long, kInvariantCount> primitive() const;
};

/// Relations on c_1..c_10 obtained from one case, with parameters treated symbolically.
///
/// For the parametric cases each Phi entry is a homogeneous polynomial in the
/// curvature parameters (degree 2 for I-III, 4 for IV). Its monomial
/// coefficients are recovered by sampling the parameters and solving the
/// resulting Vandermonde-type system, then rounded to integers. Identical
/// relations from different components are reported once.
std::vector<CaseRelation> case_reduction(const CaseSpec& spec);

/// True if `r` lies in the span of `premises` (all over c_1..c_10, lambda).
bool relation_implied(const std::array<double, kInvariantCount + 1>& r,
                      const std::vector<std::array<double, kInvariantCount + 1>>& premises, double tol = 1e-9);

}  // namespace curvlab
