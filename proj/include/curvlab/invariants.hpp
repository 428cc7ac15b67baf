#pragma once

#include <array>
#include <string>

#include "curvlab/geometry.hpp"
#include "curvlab/tensor.hpp"

namespace curvlab {

inline constexpr int kInvariantCount = 10;

/// The ten quadratic symmetric-2-form invariants, in order:
///   0 |R|^2 g     1 |rho|^2 g   2 tau^2 g     3 R-check     4 rho-check
///   5 L rho       6 tau rho     7 (lap tau) g 8 Hess tau    9 rough lap rho
/// with R-check_ij = R_abci R^abc_j, rho-check_ij = rho_ai rho^a_j and
/// (L rho)_ij = 2 R_iabj rho^ab.
struct InvariantVector {
  std::array<Sym2Form, kInvariantCount> phi;
  std::string provenance;

  Frame frame() const { return phi[0].frame(); }
  int dim() const { return phi[0].dim(); }
  const Sym2Form& operator[](int i) const { return phi[static_cast<std::size_t>(i)]; }
  /// Largest entry over all ten forms; the yardstick for relative residuals.
  double scale() const;
};

/// Coefficients c_1..c_10 of a candidate identity sum c_i Phi_i = 0.
struct Coefficients {
  std::array<double, kInvariantCount> c{};
  double lambda = 1.0;

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  /// lambda * (1/4, -1, 1/4, -1, 2, 1, -1, 0, 0, 0).
  static Coefficients universal(double lambda = 1.0);
};

InvariantVector phi_vector(const CurvaturePackage& pkg, std::string provenance = {});

/// The same invariants against the Cholesky orthonormal frame of pkg.g.
InvariantVector to_orthonormal(const InvariantVector& v, const Eigen::MatrixXd& g);

/// phi_vector followed by the change to an orthonormal frame when needed.
InvariantVector orthonormal_phi_vector(const CurvaturePackage& pkg, std::string provenance = {});

struct LowDegreeBasis {
  Sym2Form g;
  Sym2Form tau_g;
  Sym2Form rho;
};

/// Degree-0 and degree-2 invariants: g, then tau g and rho.
LowDegreeBasis low_degree_basis(const CurvaturePackage& pkg);

Sym2Form identity_residual(const InvariantVector& v, const Coefficients& coeffs);
Sym2Form identity_residual(const CurvaturePackage& pkg, const Coefficients& coeffs);

/// max |residual entry| / scale, 0 when every invariant vanishes.
double relative_residual(const InvariantVector& v, const Coefficients& coeffs);

/// Pointwise Gauss-Bonnet integrand tau^2 - 4|rho|^2 + |R|^2 (dimension 4 only).
double gauss_bonnet_integrand(const CurvaturePackage& pkg);

double riemann_norm_sq(const CurvaturePackage& pkg);
double ricci_norm_sq(const CurvaturePackage& pkg);

}  // namespace curvlab
