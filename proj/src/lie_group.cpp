#include "curvlab/lie_group.hpp"

#include <cmath>

namespace curvlab {

StructureConstants::StructureConstants(int dim)
    : dim_(dim), c_(dim, {Slot::Upper, Slot::Lower, Slot::Lower}, 0.0), inner_(Eigen::MatrixXd::Identity(dim, dim)) {}

StructureConstants& StructureConstants::set_bracket(int i, int j, const Eigen::VectorXd& v) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || v.size() != dim_) throw ArgumentError("set_bracket: bad index or vector size");
  if (i == j && !v.isZero()) throw ArgumentError("set_bracket: [e_i, e_i] must vanish");
  for (int k = 0; k < dim_; ++k) {
    c_(k, i, j) = v(k);
    c_(k, j, i) = -v(k);
  }
  return *this;
}

StructureConstants& StructureConstants::set_inner_product(const Eigen::MatrixXd& m) {
  if (m.rows() != dim_ || m.cols() != dim_) throw ArgumentError("inner product has the wrong size");
  if (!m.isApprox(m.transpose())) throw ArgumentError("inner product is not symmetric");
  inner_ = m;
  return *this;
}

Eigen::VectorXd StructureConstants::bracket(int i, int j) const {
  Eigen::VectorXd v(dim_);
  for (int k = 0; k < dim_; ++k) v(k) = c_(k, i, j);
  return v;
}

double StructureConstants::jacobi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        for (int p = 0; p < dim_; ++p) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m) s += c_(m, i, j) * c_(p, m, k) + c_(m, j, k) * c_(p, m, i) + c_(m, k, i) * c_(p, m, j);
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  }
  return worst;
}

StructureConstants StructureConstants::orthonormalized() const {
  const Eigen::MatrixXd e = orthonormal_frame(inner_);  // f_a = sum_i e(i, a) e_i
  const Eigen::MatrixXd e_inv = e.inverse();
  StructureConstants out(dim_);
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      for (int c = 0; c < dim_; ++c) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
          for (int j = 0; j < dim_; ++j) {
            for (int k = 0; k < dim_; ++k) s += e(i, a) * e(j, b) * c_(k, i, j) * e_inv(c, k);
          }
        }
        out.c_(c, a, b) = s;
      }
    }
  }
  return out;
}

Tensor<double> koszul_connection(const StructureConstants& sc) {
  const int n = sc.dim();
  // 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>
  Tensor<double> gamma = Tensor<double>::lower(n, 3, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) gamma(i, j, k) = 0.5 * (sc.c(k, i, j) - sc.c(i, j, k) + sc.c(j, k, i));
    }
  }
  return gamma;
}

CurvaturePackage lie_group_package(const StructureConstants& input) {
  if (input.jacobi_defect() > 1e-12) throw ArgumentError("structure constants violate the Jacobi identity");
  const StructureConstants sc = input.orthonormalized();
  const int n = sc.dim();
  const Tensor<double> gamma = koszul_connection(sc);

  // R_ijkl = <nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k, e_l>
  Tensor<double> r = Tensor<double>::lower(n, 4, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += gamma(j, k, m) * gamma(i, m, l) - gamma(i, k, m) * gamma(j, m, l) - sc.c(m, i, j) * gamma(m, k, l);
          }
          r(i, j, k, l) = s;
        }
      }
    }
  }
  const Tensor<double> identity = from_matrix(Eigen::MatrixXd::Identity(n, n), Slot::Upper, Slot::Upper);
  auto [rho, tau] = ricci_tau(r, identity);

  // frame components of rho are constant, so only connection terms survive
  Tensor<double> cov = Tensor<double>::lower(n, 3, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s -= gamma(a, i, m) * rho(m, j) + gamma(a, j, m) * rho(i, m);
        cov(a, i, j) = s;
      }
    }
  }
  Eigen::MatrixXd rough = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int m = 0; m < n; ++m) s -= gamma(a, a, m) * cov(m, i, j) + gamma(a, i, m) * cov(a, m, j) + gamma(a, j, m) * cov(a, i, m);
      }
      rough(i, j) = s;
    }
  }

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  return CurvaturePackage{n,
                          std::nullopt,
                          Frame::Orthonormal,
                          id,
                          id,
                          std::move(r),
                          Sym2Form(to_matrix(rho), Frame::Orthonormal),
                          tau,
                          Eigen::VectorXd::Zero(n),
                          Sym2Form::zero(n, Frame::Orthonormal),
                          0.0,
                          std::move(cov),
                          Sym2Form(rough, Frame::Orthonormal)};
}

}  // namespace curvlab
