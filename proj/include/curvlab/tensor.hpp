#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/error.hpp"
#include "curvlab/jet.hpp"

namespace curvlab {

enum class Slot { Lower, Upper };

inline double zero_like(double) { return 0.0; }
inline Jet zero_like(const Jet& j) { return Jet(j.dim(), j.order()); }

/// Dense tensor over a small index range, with a variance marker per slot.
///
/// Entries are stored row-major: the last slot varies fastest. Scalar is
/// either double or Jet; all operations below are written once for both.
template <class Scalar>
class Tensor {
public:
  Tensor(int dim, std::vector<Slot> variance, Scalar fill)
      : dim_(dim), variance_(std::move(variance)), entries_(count(dim, static_cast<int>(variance_.size())), fill) {
    if (dim < 1) throw ArgumentError("tensor dimension must be positive");
    if (variance_.size() > 4) throw ArgumentError("tensor rank must be at most 4");
  }

  static Tensor lower(int dim, int rank, Scalar fill) {
    return Tensor(dim, std::vector<Slot>(static_cast<std::size_t>(rank), Slot::Lower), std::move(fill));
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Slot>& variance() const { return variance_; }
  std::span<const Scalar> entries() const { return entries_; }
  std::span<Scalar> entries() { return entries_; }

  template <class... I>
  Scalar& operator()(I... idx) {
    return entries_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const Scalar& operator()(I... idx) const {
    return entries_[offset({static_cast<int>(idx)...})];
  }
  Scalar& at(std::span<const int> idx) { return entries_[offset(idx)]; }
  const Scalar& at(std::span<const int> idx) const { return entries_[offset(idx)]; }

  /// Multi-index of the entry stored at `flat`.
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(variance_.size());
    for (std::size_t s = idx.size(); s-- > 0;) {
      idx[s] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  std::size_t offset(std::span<const int> idx) const {
    if (idx.size() != variance_.size()) throw ArgumentError("tensor index count does not match rank");
    std::size_t flat = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw ArgumentError("tensor index out of range");
      flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return flat;
  }
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }

private:
  static std::size_t count(int dim, int rank) {
    std::size_t n = 1;
    for (int r = 0; r < rank; ++r) n *= static_cast<std::size_t>(dim);
    return n;
  }

  int dim_;
  std::vector<Slot> variance_;
  std::vector<Scalar> entries_;
};

namespace detail {

template <class Scalar>
void check_metric(const Tensor<Scalar>& m, int dim, Slot expected, const char* what) {
  if (m.rank() != 2 || m.dim() != dim || m.variance()[0] != expected || m.variance()[1] != expected) {
    throw ArgumentError(std::string(what) + ": metric argument has the wrong shape or variance");
  }
}

/// Contract slot `slot` of t against the matrix m (either g or g_inv), flipping the marker.
template <class Scalar>
Tensor<Scalar> move_index(const Tensor<Scalar>& m, const Tensor<Scalar>& t, int slot, Slot to) {
  auto variance = t.variance();
  variance[static_cast<std::size_t>(slot)] = to;
  Tensor<Scalar> out(t.dim(), variance, zero_like(t.entries()[0]));
  for (std::size_t flat = 0; flat < out.entries().size(); ++flat) {
    auto idx = out.unflatten(flat);
    const int free = idx[static_cast<std::size_t>(slot)];
    Scalar acc = zero_like(t.entries()[0]);
    for (int b = 0; b < t.dim(); ++b) {
      idx[static_cast<std::size_t>(slot)] = b;
      acc += m(free, b) * t.at(idx);
    }
    out.entries()[flat] = std::move(acc);
  }
  return out;
}

}  // namespace detail

/// Raise lower slot `slot` of t with the inverse metric.
template <class Scalar>
Tensor<Scalar> raise_index(const Tensor<Scalar>& g_inv, const Tensor<Scalar>& t, int slot) {
  detail::check_metric(g_inv, t.dim(), Slot::Upper, "raise_index");
  if (slot < 0 || slot >= t.rank()) throw ArgumentError("raise_index: slot out of range");
  if (t.variance()[static_cast<std::size_t>(slot)] != Slot::Lower) throw ArgumentError("raise_index: slot is already upper");
  return detail::move_index(g_inv, t, slot, Slot::Upper);
}

/// Lower upper slot `slot` of t with the metric.
template <class Scalar>
Tensor<Scalar> lower_index(const Tensor<Scalar>& g, const Tensor<Scalar>& t, int slot) {
  detail::check_metric(g, t.dim(), Slot::Lower, "lower_index");
  if (slot < 0 || slot >= t.rank()) throw ArgumentError("lower_index: slot out of range");
  if (t.variance()[static_cast<std::size_t>(slot)] != Slot::Upper) throw ArgumentError("lower_index: slot is already lower");
  return detail::move_index(g, t, slot, Slot::Lower);
}

/// Trace over one upper and one lower slot.
template <class Scalar>
Tensor<Scalar> contract(const Tensor<Scalar>& t, int slot_a, int slot_b) {
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= t.rank() || slot_b >= t.rank()) {
    throw ArgumentError("contract: invalid slot pair");
  }
  if (t.variance()[static_cast<std::size_t>(slot_a)] == t.variance()[static_cast<std::size_t>(slot_b)]) {
    throw ArgumentError("contract: slots have the same variance; raise or lower one first");
  }
  std::vector<Slot> variance;
  for (int s = 0; s < t.rank(); ++s) {
    if (s != slot_a && s != slot_b) variance.push_back(t.variance()[static_cast<std::size_t>(s)]);
  }
  Tensor<Scalar> out(t.dim(), variance, zero_like(t.entries()[0]));
  std::vector<int> full(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.entries().size(); ++flat) {
    const auto idx = out.unflatten(flat);
    Scalar acc = zero_like(t.entries()[0]);
    for (int a = 0; a < t.dim(); ++a) {
      for (int s = 0, k = 0; s < t.rank(); ++s) {
        full[static_cast<std::size_t>(s)] = (s == slot_a || s == slot_b) ? a : idx[static_cast<std::size_t>(k++)];
      }
      acc += t.at(full);
    }
    out.entries()[flat] = std::move(acc);
  }
  return out;
}

template <class Scalar>
Tensor<Scalar> outer(const Tensor<Scalar>& u, const Tensor<Scalar>& v) {
  if (u.dim() != v.dim()) throw ArgumentError("outer: dimension mismatch");
  auto variance = u.variance();
  variance.insert(variance.end(), v.variance().begin(), v.variance().end());
  Tensor<Scalar> out(u.dim(), variance, zero_like(u.entries()[0]));
  const std::size_t nv = v.entries().size();
  for (std::size_t i = 0; i < u.entries().size(); ++i) {
    for (std::size_t j = 0; j < nv; ++j) out.entries()[i * nv + j] = u.entries()[i] * v.entries()[j];
  }
  return out;
}

/// |t|^2 with every slot of the fully-lower tensor t raised through g_inv.
template <class Scalar>
Scalar norm_sq(const Tensor<Scalar>& g, const Tensor<Scalar>& g_inv, const Tensor<Scalar>& t) {
  detail::check_metric(g, t.dim(), Slot::Lower, "norm_sq");
  for (Slot s : t.variance()) {
    if (s != Slot::Lower) throw ArgumentError("norm_sq: tensor must be fully lower");
  }
  Tensor<Scalar> raised = t;
  for (int s = 0; s < t.rank(); ++s) raised = raise_index(g_inv, raised, s);
  Scalar acc = zero_like(t.entries()[0]);
  for (std::size_t k = 0; k < t.entries().size(); ++k) acc += t.entries()[k] * raised.entries()[k];
  return acc;
}

/// Matrix view of a rank-2 tensor of doubles, and back.
Eigen::MatrixXd to_matrix(const Tensor<double>& t);
Tensor<double> from_matrix(const Eigen::MatrixXd& m, Slot first, Slot second);

enum class Frame { Coordinate, Orthonormal };

const char* to_string(Frame frame);

/// Symmetric bilinear form at a point, tagged with the frame its components refer to.
class Sym2Form {
public:
  /// Symmetrizes `entries`.
  Sym2Form(const Eigen::MatrixXd& entries, Frame frame);

  static Sym2Form zero(int dim, Frame frame) { return Sym2Form(Eigen::MatrixXd::Zero(dim, dim), frame); }

  int dim() const { return static_cast<int>(entries_.rows()); }
  Frame frame() const { return frame_; }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

  Sym2Form& operator+=(const Sym2Form& rhs);
  Sym2Form& operator*=(double s) {
    entries_ *= s;
    return *this;
  }

private:
  Eigen::MatrixXd entries_;
  Frame frame_;
};

inline Sym2Form operator+(Sym2Form a, const Sym2Form& b) { return a += b; }
inline Sym2Form operator*(double s, Sym2Form a) { return a *= s; }

/// Max-abs entrywise difference; throws if the frames differ.
double max_abs_diff(const Sym2Form& a, const Sym2Form& b);

/// Orthonormal frame of g_value from its Cholesky factor: E = L^{-T}, one frame vector per column.
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g_value);

/// Components of a coordinate-frame form against the Cholesky orthonormal frame.
Sym2Form to_orthonormal_frame(const Eigen::MatrixXd& g_value, const Sym2Form& s);

/// Components of a fully-lower tensor against the frame whose vectors are the columns of `frame`.
Tensor<double> change_frame(const Tensor<double>& t, const Eigen::MatrixXd& frame);

}  // namespace curvlab
