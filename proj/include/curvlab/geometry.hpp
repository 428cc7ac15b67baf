#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>

#include "curvlab/jet.hpp"
#include "curvlab/metric_patch.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

/// Every pointwise curvature quantity the invariants need, at one point.
///
/// Components refer to `frame`: coordinate components on the chart path,
/// orthonormal left-invariant frame components on the Lie-group path.
///
/// Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
/// R_ijkl = g(R(e_i,e_j)e_k, e_l), rho_ij = g^ab R_iabj (so a round sphere
/// has rho = +K g), and Laplacians are div grad.
struct CurvaturePackage {
  int dim;
  std::optional<Eigen::VectorXd> point;
  Frame frame;
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Tensor<double> riemann;    // R_ijkl
  Sym2Form ricci;            // rho_ij
  double tau;
  Eigen::VectorXd grad_tau;  // d_i tau
  Sym2Form hess_tau;
  double lap_tau;
  Tensor<double> cov_ricci;  // (nabla_a rho)_ij, slot order (a, i, j)
  Sym2Form rough_lap_ricci;  // g^ab (nabla_a nabla_b rho)_ij
};

/// g^ij as jets; throws GeometryError unless the base value is positive definite.
Tensor<Jet> inverse_metric(const Tensor<Jet>& g);

/// Gamma^k_ij with slot order (k, i, j), one jet order below the metric.
Tensor<Jet> christoffel(const Tensor<Jet>& metric_jets);

/// R_ijkl, two jet orders below the metric.
Tensor<Jet> riemann(const Tensor<Jet>& metric_jets);

/// rho_ij = g^ab R_iabj and tau = g^ij rho_ij. Works for jets or plain values.
template <class Scalar>
std::pair<Tensor<Scalar>, Scalar> ricci_tau(const Tensor<Scalar>& riemann, const Tensor<Scalar>& g_inv) {
  const int n = riemann.dim();
  const Scalar zero = zero_like(riemann.entries()[0]);
  Tensor<Scalar> rho = Tensor<Scalar>::lower(n, 2, zero);
  Scalar tau = zero;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Scalar acc = zero;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) acc += g_inv(a, b) * riemann(i, a, b, j);
      }
      rho(i, j) = acc;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) tau += g_inv(i, j) * rho(i, j);
  }
  return {std::move(rho), std::move(tau)};
}

struct ScalarCurvatureDerivatives {
  Eigen::VectorXd grad_tau;
  Sym2Form hess_tau;
  double lap_tau;
};

/// Gradient, Hessian and Laplacian of tau at the base point; needs order-4 metric jets.
ScalarCurvatureDerivatives scalar_derivatives(const Tensor<Jet>& metric_jets);

/// Rough Laplacian of the Ricci tensor at the base point; needs order-4 metric jets.
Sym2Form rough_laplacian_ricci(const Tensor<Jet>& metric_jets);

/// Full package from order-4 metric jets (coordinate frame).
CurvaturePackage curvature_package_from_jets(const Tensor<Jet>& metric_jets, std::optional<Eigen::VectorXd> point = {});

/// Full package of a chart metric at `point`, derivatives taken exactly by jets.
CurvaturePackage curvature_package(const MetricPatch& patch, const Eigen::VectorXd& point);

}  // namespace curvlab
