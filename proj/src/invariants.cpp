#include "curvlab/invariants.hpp"

#include <algorithm>

namespace curvlab {

namespace {

Tensor<double> metric_tensor(const CurvaturePackage& pkg) { return from_matrix(pkg.g, Slot::Lower, Slot::Lower); }
Tensor<double> inverse_tensor(const CurvaturePackage& pkg) { return from_matrix(pkg.g_inv, Slot::Upper, Slot::Upper); }

}  // namespace

double InvariantVector::scale() const {
  double s = 0.0;
  for (const auto& f : phi) s = std::max(s, f.max_abs());
  return s;
}

Coefficients Coefficients::universal(double lambda) {
  Coefficients out;
  out.lambda = lambda;
  out.c = {0.25, -1.0, 0.25, -1.0, 2.0, 1.0, -1.0, 0.0, 0.0, 0.0};
  for (double& v : out.c) v *= lambda;
  return out;
}

double riemann_norm_sq(const CurvaturePackage& pkg) {
  return norm_sq(metric_tensor(pkg), inverse_tensor(pkg), pkg.riemann);
}

double ricci_norm_sq(const CurvaturePackage& pkg) {
  return norm_sq(metric_tensor(pkg), inverse_tensor(pkg), from_matrix(pkg.ricci.matrix(), Slot::Lower, Slot::Lower));
}

InvariantVector phi_vector(const CurvaturePackage& pkg, std::string provenance) {
  const int n = pkg.dim;
  const Frame frame = pkg.frame;
  const Tensor<double> g_inv = inverse_tensor(pkg);
  const Eigen::MatrixXd& rho = pkg.ricci.matrix();

  const double r2 = riemann_norm_sq(pkg);
  const double rho2 = ricci_norm_sq(pkg);
  const double tau = pkg.tau;

  // R^{abc}_j: raise the first three slots
  Tensor<double> r_up = pkg.riemann;
  for (int s = 0; s < 3; ++s) r_up = raise_index(g_inv, r_up, s);
  Eigen::MatrixXd r_check = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < n; ++c) acc += pkg.riemann(a, b, c, i) * r_up(a, b, c, j);
        }
      }
      r_check(i, j) = acc;
    }
  }

  const Eigen::MatrixXd rho_check = rho.transpose() * pkg.g_inv * rho;
  const Eigen::MatrixXd rho_up = pkg.g_inv * rho * pkg.g_inv;
  Eigen::MatrixXd l_rho = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) acc += pkg.riemann(i, a, b, j) * rho_up(a, b);
      }
      l_rho(i, j) = 2.0 * acc;
    }
  }

  const Sym2Form g(pkg.g, frame);
  return InvariantVector{{r2 * g, rho2 * g, (tau * tau) * g, Sym2Form(r_check, frame), Sym2Form(rho_check, frame),
                          Sym2Form(l_rho, frame), tau * pkg.ricci, pkg.lap_tau * g, pkg.hess_tau, pkg.rough_lap_ricci},
                         std::move(provenance)};
}

InvariantVector to_orthonormal(const InvariantVector& v, const Eigen::MatrixXd& g) {
  if (v.frame() == Frame::Orthonormal) return v;
  const Eigen::MatrixXd e = orthonormal_frame(g);
  auto convert = [&](const Sym2Form& s) { return Sym2Form(e.transpose() * s.matrix() * e, Frame::Orthonormal); };
  return InvariantVector{{convert(v.phi[0]), convert(v.phi[1]), convert(v.phi[2]), convert(v.phi[3]), convert(v.phi[4]),
                          convert(v.phi[5]), convert(v.phi[6]), convert(v.phi[7]), convert(v.phi[8]), convert(v.phi[9])},
                         v.provenance};
}

InvariantVector orthonormal_phi_vector(const CurvaturePackage& pkg, std::string provenance) {
  return to_orthonormal(phi_vector(pkg, std::move(provenance)), pkg.g);
}

LowDegreeBasis low_degree_basis(const CurvaturePackage& pkg) {
  const Sym2Form g(pkg.g, pkg.frame);
  return {g, pkg.tau * g, pkg.ricci};
}

Sym2Form identity_residual(const InvariantVector& v, const Coefficients& coeffs) {
  Sym2Form sum = Sym2Form::zero(v.dim(), v.frame());
  for (int i = 0; i < kInvariantCount; ++i) {
    if (coeffs[i] != 0.0) sum += coeffs[i] * v[i];
  }
  return sum;
}

Sym2Form identity_residual(const CurvaturePackage& pkg, const Coefficients& coeffs) {
  return identity_residual(phi_vector(pkg), coeffs);
}

double relative_residual(const InvariantVector& v, const Coefficients& coeffs) {
  const double scale = v.scale();
  const double r = identity_residual(v, coeffs).max_abs();
  return scale > 0.0 ? r / scale : r;
}

double gauss_bonnet_integrand(const CurvaturePackage& pkg) {
  if (pkg.dim != 4) throw ArgumentError("the Gauss-Bonnet integrand is defined here for dimension 4 only");
  return pkg.tau * pkg.tau - 4.0 * ricci_norm_sq(pkg) + riemann_norm_sq(pkg);
}

}  // namespace curvlab
