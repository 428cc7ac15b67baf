#pragma once

#include <Eigen/Dense>

#include "curvlab/geometry.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// Structure constants [e_i, e_j] = c^k_ij e_k of a real Lie algebra with an inner product.
class StructureConstants {
public:
  /// All brackets zero, identity inner product.
  explicit StructureConstants(int dim);

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v (0-based indices).
  StructureConstants& set_bracket(int i, int j, const Eigen::VectorXd& v);
  StructureConstants& set_inner_product(const Eigen::MatrixXd& m);

  int dim() const { return dim_; }
  double c(int k, int i, int j) const { return c_(k, i, j); }
  const Tensor<double>& tensor() const { return c_; }
  const Eigen::MatrixXd& inner_product() const { return inner_; }
  Eigen::VectorXd bracket(int i, int j) const;

  /// max |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]| over all triples.
  double jacobi_defect() const;

  /// The same algebra expressed in a basis orthonormal for the inner product.
  StructureConstants orthonormalized() const;

private:
  int dim_;
  Tensor<double> c_;  // slot order (k, i, j)
  Eigen::MatrixXd inner_;
};

/// Curvature of the left-invariant metric, in the left-invariant orthonormal frame.
///
/// The connection comes from the Koszul formula, so everything is algebraic:
/// frame components of rho are constant, tau is constant (its derivatives
/// vanish) but nabla rho and the rough Laplacian of rho generally do not.
/// Throws ArgumentError if the Jacobi identity fails beyond 1e-12.
CurvaturePackage lie_group_package(const StructureConstants& sc);

/// <nabla_{e_i} e_j, e_k> in an orthonormal basis.
Tensor<double> koszul_connection(const StructureConstants& orthonormal_sc);

}  // namespace curvlab
