#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "curvlab/geometry.hpp"
#include "curvlab/invariants.hpp"

// Independent structural checks on a curvature package. Each returns a defect
// relative to the size of the quantity checked (absolute when that is zero).
namespace checks {

inline double relative(double defect, double scale) { return scale > 0 ? defect / scale : defect; }

inline double riemann_scale(const curvlab::CurvaturePackage& p) {
  double s = 0;
  for (double v : p.riemann.entries()) s = std::max(s, std::abs(v));
  return s;
}

/// Antisymmetry in each pair, pair symmetry and the first Bianchi identity.
inline double riemann_symmetry_defect(const curvlab::CurvaturePackage& p) {
  const int n = p.dim;
  const auto& R = p.riemann;
  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          d = std::max(d, std::abs(R(i, j, k, l) + R(j, i, k, l)));
          d = std::max(d, std::abs(R(i, j, k, l) + R(i, j, l, k)));
          d = std::max(d, std::abs(R(i, j, k, l) - R(k, l, i, j)));
          d = std::max(d, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
        }
  return relative(d, riemann_scale(p));
}

/// div rho = (1/2) d tau.
inline double contracted_bianchi_defect(const curvlab::CurvaturePackage& p) {
  const int n = p.dim;
  double d = 0, s = 0;
  for (int j = 0; j < n; ++j) {
    double div = 0;
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) div += p.g_inv(a, i) * p.cov_ricci(a, i, j);
    d = std::max(d, std::abs(div - 0.5 * p.grad_tau(j)));
    s = std::max(s, std::abs(p.grad_tau(j)));
  }
  for (double v : p.cov_ricci.entries()) s = std::max(s, std::abs(v));
  // nabla rho vanishes on parallel-Ricci metrics; measure against R there
  return relative(d, std::max(s, riemann_scale(p)));
}

/// tr_g Hess tau = lap tau.
inline double hessian_trace_defect(const curvlab::CurvaturePackage& p) {
  const double tr = (p.g_inv.cwiseProduct(p.hess_tau.matrix())).sum();
  return relative(std::abs(tr - p.lap_tau), std::max(std::abs(p.lap_tau), p.hess_tau.max_abs()));
}

/// tr_g rough lap rho = lap tau.
inline double rough_laplacian_trace_defect(const curvlab::CurvaturePackage& p) {
  const double tr = (p.g_inv.cwiseProduct(p.rough_lap_ricci.matrix())).sum();
  return relative(std::abs(tr - p.lap_tau), std::max(std::abs(p.lap_tau), p.rough_lap_ricci.max_abs()));
}

/// Trace of sum c_i Phi_i for the universal coefficients, in any dimension.
inline double universal_trace_defect(const curvlab::CurvaturePackage& p) {
  const auto v = curvlab::orthonormal_phi_vector(p);
  const auto r = curvlab::identity_residual(v, curvlab::Coefficients::universal());
  return relative(std::abs(r.matrix().trace()), v.scale());
}

}  // namespace checks
