#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

namespace curvlab {

inline constexpr int kMaxJetDim = 6;
inline constexpr int kMaxJetOrder = 4;

using MultiIndex = std::array<int, kMaxJetDim>;

/// Enumeration of the multi-indices |alpha| <= order in `dim` variables.
///
/// Indices are sorted by total degree first, so the layout of a lower order is
/// a prefix of the layout of a higher one and truncation is a resize. Layouts
/// are built once per (dim, order) and live for the whole program.
struct JetLayout {
  struct Product {
    int lhs;
    int rhs;
    int out;
  };
  struct PartialTerm {
    int source;     // index in this layout
    double factor;  // alpha_i + 1
  };

  int dim = 0;
  int order = 0;
  std::vector<MultiIndex> indices;
  std::vector<int> degree;
  std::vector<int> lookup;  // base-5 key -> position, -1 if absent
  std::vector<Product> products;
  // partials[i][r]: coefficient r of d/dx_i lands on layout(order-1)
  std::vector<std::vector<PartialTerm>> partials;

  int size() const { return static_cast<int>(indices.size()); }
  int find(const MultiIndex& alpha) const;

  static const JetLayout& get(int dim, int order);
};

/// Truncated multivariate Taylor polynomial in binary64.
///
/// Coefficients are Taylor coefficients, d^alpha f / alpha!, at an implicit
/// base point. Arithmetic between jets requires equal dimension and order;
/// lower one side with truncated() first when they differ.
class Jet {
public:
  Jet(int dim, int order);

  static Jet constant(double value, int dim, int order);
  static Jet variable(int index, double value, int dim, int order);

  int dim() const { return layout_->dim; }
  int order() const { return layout_->order; }
  int size() const { return layout_->size(); }
  const JetLayout& layout() const { return *layout_; }

  double value() const { return coeffs_[0]; }
  double coeff(std::span<const int> alpha) const;
  double coeff(std::initializer_list<int> alpha) const {
    return coeff(std::span<const int>(alpha.begin(), alpha.size()));
  }
  /// Partial derivative d^alpha f at the base point (coefficient times alpha!).
  double derivative(std::span<const int> alpha) const;
  double derivative(std::initializer_list<int> alpha) const {
    return derivative(std::span<const int>(alpha.begin(), alpha.size()));
  }

  std::span<const double> coefficients() const { return coeffs_; }
  std::span<double> coefficients() { return coeffs_; }
  double& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  Jet truncated(int order) const;
  bool same_shape(const Jet& other) const { return layout_ == other.layout_; }

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator+=(double rhs) { coeffs_[0] += rhs; return *this; }
  Jet& operator-=(double rhs) { coeffs_[0] -= rhs; return *this; }
  Jet& operator*=(double rhs);

private:
  const JetLayout* layout_;
  std::vector<double> coeffs_;
};

Jet jet_var(int index, double value, int dim, int order);
Jet jet_linear(const Jet& a, const Jet& b, double alpha, double beta);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_invert(const Jet& a);
Jet jet_exp(const Jet& a);
Jet jet_partial(const Jet& a, int index);
Jet jet_pow(const Jet& a, int exponent);

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return jet_mul(a, jet_invert(b)); }
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator+(double a, Jet b) { return b += a; }
inline Jet operator-(Jet a, double b) { return a -= b; }
inline Jet operator-(double a, const Jet& b) { return jet_linear(b, b, -1.0, 0.0) += a; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator*(double a, Jet b) { return b *= a; }
inline Jet operator/(Jet a, double b) { return a *= 1.0 / b; }
inline Jet operator-(Jet a) { return a *= -1.0; }

inline Jet exp(const Jet& a) { return jet_exp(a); }

}  // namespace curvlab
