#include "curvlab/tensor.hpp"

namespace curvlab {

Eigen::MatrixXd to_matrix(const Tensor<double>& t) {
  if (t.rank() != 2) throw ArgumentError("to_matrix: rank-2 tensor required");
  Eigen::MatrixXd m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  }
  return m;
}

Tensor<double> from_matrix(const Eigen::MatrixXd& m, Slot first, Slot second) {
  if (m.rows() != m.cols()) throw ArgumentError("from_matrix: square matrix required");
  Tensor<double> t(static_cast<int>(m.rows()), {first, second}, 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  }
  return t;
}

const char* to_string(Frame frame) { return frame == Frame::Coordinate ? "coordinate" : "orthonormal"; }

Sym2Form::Sym2Form(const Eigen::MatrixXd& entries, Frame frame) : entries_(0.5 * (entries + entries.transpose())), frame_(frame) {
  if (entries.rows() != entries.cols()) throw ArgumentError("Sym2Form: square matrix required");
}

Sym2Form& Sym2Form::operator+=(const Sym2Form& rhs) {
  if (rhs.frame_ != frame_) throw ArgumentError("Sym2Form: cannot add forms expressed in different frames");
  if (rhs.dim() != dim()) throw ArgumentError("Sym2Form: dimension mismatch");
  entries_ += rhs.entries_;
  return *this;
}

double max_abs_diff(const Sym2Form& a, const Sym2Form& b) {
  if (a.frame() != b.frame()) throw ArgumentError("comparing forms expressed in different frames");
  if (a.dim() != b.dim()) throw ArgumentError("comparing forms of different dimension");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g_value) {
  Eigen::LLT<Eigen::MatrixXd> llt(g_value);
  if (llt.info() != Eigen::Success) throw GeometryError("metric is not positive definite");
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(g_value.rows(), g_value.cols());
  // E = L^{-T}
  return llt.matrixU().solve(identity);
}

Sym2Form to_orthonormal_frame(const Eigen::MatrixXd& g_value, const Sym2Form& s) {
  if (s.frame() != Frame::Coordinate) throw ArgumentError("to_orthonormal_frame: form is not in the coordinate frame");
  const Eigen::MatrixXd e = orthonormal_frame(g_value);
  return Sym2Form(e.transpose() * s.matrix() * e, Frame::Orthonormal);
}

Tensor<double> change_frame(const Tensor<double>& t, const Eigen::MatrixXd& frame) {
  for (Slot s : t.variance()) {
    if (s != Slot::Lower) throw ArgumentError("change_frame: tensor must be fully lower");
  }
  Tensor<double> current = t;
  // transform one slot at a time: out(..a..) = sum_i t(..i..) E(i, a)
  for (int slot = 0; slot < t.rank(); ++slot) {
    Tensor<double> next(t.dim(), t.variance(), 0.0);
    for (std::size_t flat = 0; flat < next.entries().size(); ++flat) {
      auto idx = next.unflatten(flat);
      const int a = idx[static_cast<std::size_t>(slot)];
      double acc = 0.0;
      for (int i = 0; i < t.dim(); ++i) {
        idx[static_cast<std::size_t>(slot)] = i;
        acc += current.at(idx) * frame(i, a);
      }
      next.entries()[flat] = acc;
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace curvlab
