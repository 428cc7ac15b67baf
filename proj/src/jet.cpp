#include "curvlab/jet.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "curvlab/error.hpp"

namespace curvlab {

namespace {

int key_of(const MultiIndex& alpha) {
  int key = 0;
  for (int k = kMaxJetDim - 1; k >= 0; --k) key = key * (kMaxJetOrder + 1) + alpha[static_cast<std::size_t>(k)];
  return key;
}

constexpr int kKeySpace = 15625;  // 5^6

void enumerate_degree(int dim, int remaining, int slot, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (slot == dim - 1) {
    current[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(current);
    current[static_cast<std::size_t>(slot)] = 0;
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(slot)] = k;
    enumerate_degree(dim, remaining - k, slot + 1, current, out);
  }
  current[static_cast<std::size_t>(slot)] = 0;
}

std::unique_ptr<JetLayout> build_layout(int dim, int order) {
  auto layout = std::make_unique<JetLayout>();
  layout->dim = dim;
  layout->order = order;
  MultiIndex current{};
  for (int d = 0; d <= order; ++d) enumerate_degree(dim, d, 0, current, layout->indices);

  layout->lookup.assign(kKeySpace, -1);
  for (int k = 0; k < layout->size(); ++k) {
    const auto& alpha = layout->indices[static_cast<std::size_t>(k)];
    layout->lookup[static_cast<std::size_t>(key_of(alpha))] = k;
    layout->degree.push_back(std::accumulate(alpha.begin(), alpha.end(), 0));
  }

  for (int i = 0; i < layout->size(); ++i) {
    for (int j = 0; j < layout->size(); ++j) {
      if (layout->degree[static_cast<std::size_t>(i)] + layout->degree[static_cast<std::size_t>(j)] > order) continue;
      MultiIndex sum{};
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = layout->indices[static_cast<std::size_t>(i)][k] + layout->indices[static_cast<std::size_t>(j)][k];
      layout->products.push_back({i, j, layout->lookup[static_cast<std::size_t>(key_of(sum))]});
    }
  }
  return layout;
}

void require_same_shape(const Jet& a, const Jet& b, const char* op) {
  if (!a.same_shape(b)) {
    throw ArgumentError(std::string(op) + ": jet shape mismatch (dim " + std::to_string(a.dim()) + " order " +
                        std::to_string(a.order()) + " vs dim " + std::to_string(b.dim()) + " order " +
                        std::to_string(b.order()) + ")");
  }
}

MultiIndex to_multi_index(std::span<const int> alpha, int dim) {
  if (static_cast<int>(alpha.size()) != dim) throw ArgumentError("multi-index length does not match jet dimension");
  MultiIndex out{};
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] < 0) throw ArgumentError("negative multi-index entry");
    out[k] = alpha[k];
  }
  return out;
}

}  // namespace

int JetLayout::find(const MultiIndex& alpha) const {
  int total = 0;
  for (int k = 0; k < kMaxJetDim; ++k) {
    if (alpha[static_cast<std::size_t>(k)] < 0) return -1;
    if (k >= dim && alpha[static_cast<std::size_t>(k)] != 0) return -1;
    total += alpha[static_cast<std::size_t>(k)];
  }
  if (total > order) return -1;
  return lookup[static_cast<std::size_t>(key_of(alpha))];
}

const JetLayout& JetLayout::get(int dim, int order) {
  static const auto table = [] {
    std::array<std::array<std::unique_ptr<JetLayout>, kMaxJetOrder + 1>, kMaxJetDim + 1> t;
    for (int d = 1; d <= kMaxJetDim; ++d) {
      for (int n = 0; n <= kMaxJetOrder; ++n) t[static_cast<std::size_t>(d)][static_cast<std::size_t>(n)] = build_layout(d, n);
    }
    // derivative maps point into the next-lower layout, so fill them once all exist
    for (int d = 1; d <= kMaxJetDim; ++d) {
      for (int n = 1; n <= kMaxJetOrder; ++n) {
        auto& layout = *t[static_cast<std::size_t>(d)][static_cast<std::size_t>(n)];
        const auto& lower = *t[static_cast<std::size_t>(d)][static_cast<std::size_t>(n - 1)];
        layout.partials.resize(static_cast<std::size_t>(d));
        for (int v = 0; v < d; ++v) {
          for (const auto& alpha : lower.indices) {
            MultiIndex shifted = alpha;
            shifted[static_cast<std::size_t>(v)] += 1;
            layout.partials[static_cast<std::size_t>(v)].push_back(
                {layout.find(shifted), static_cast<double>(alpha[static_cast<std::size_t>(v)] + 1)});
          }
        }
      }
    }
    return t;
  }();
  if (dim < 1 || dim > kMaxJetDim) throw ArgumentError("jet dimension must be in [1, 6], got " + std::to_string(dim));
  if (order < 0 || order > kMaxJetOrder) throw ArgumentError("jet order must be in [0, 4], got " + std::to_string(order));
  return *table[static_cast<std::size_t>(dim)][static_cast<std::size_t>(order)];
}

Jet::Jet(int dim, int order) : layout_(&JetLayout::get(dim, order)), coeffs_(static_cast<std::size_t>(layout_->size()), 0.0) {}

Jet Jet::constant(double value, int dim, int order) {
  Jet out(dim, order);
  out.coeffs_[0] = value;
  return out;
}

Jet Jet::variable(int index, double value, int dim, int order) { return jet_var(index, value, dim, order); }

double Jet::coeff(std::span<const int> alpha) const {
  const int k = layout_->find(to_multi_index(alpha, dim()));
  return k < 0 ? 0.0 : coeffs_[static_cast<std::size_t>(k)];
}

double Jet::derivative(std::span<const int> alpha) const {
  double factorial = 1.0;
  for (int a : alpha) {
    for (int k = 2; k <= a; ++k) factorial *= k;
  }
  return coeff(alpha) * factorial;
}

Jet Jet::truncated(int order) const {
  if (order > this->order()) throw ArgumentError("cannot raise jet order by truncation");
  Jet out(dim(), order);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(*this, rhs, "jet add");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(*this, rhs, "jet subtract");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = jet_mul(*this, rhs); }

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet jet_var(int index, double value, int dim, int order) {
  if (index < 0 || index >= dim) {
    throw ArgumentError("jet_var: index " + std::to_string(index) + " out of range for dim " + std::to_string(dim));
  }
  Jet out = Jet::constant(value, dim, order);
  if (order >= 1) {
    MultiIndex unit{};
    unit[static_cast<std::size_t>(index)] = 1;
    out[out.layout().find(unit)] = 1.0;
  }
  return out;
}

Jet jet_linear(const Jet& a, const Jet& b, double alpha, double beta) {
  require_same_shape(a, b, "jet_linear");
  Jet out(a.dim(), a.order());
  for (int k = 0; k < a.size(); ++k) out[k] = alpha * a[k] + beta * b[k];
  return out;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  require_same_shape(a, b, "jet_mul");
  Jet out(a.dim(), a.order());
  for (const auto& p : a.layout().products) out[p.out] += a[p.lhs] * b[p.rhs];
  return out;
}

Jet jet_invert(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0 || !std::isfinite(a0)) throw SingularValueError("jet_invert: base value is zero");
  // a = a0 (1 + u) with u nilpotent of degree order+1, so 1/a is a finite geometric series
  Jet u = a * (1.0 / a0);
  u[0] = 0.0;
  Jet sum = Jet::constant(1.0, a.dim(), a.order());
  for (int k = 0; k < a.order(); ++k) sum = 1.0 - jet_mul(u, sum);
  return sum * (1.0 / a0);
}

Jet jet_exp(const Jet& a) {
  const double a0 = a.value();
  Jet u = a;
  u[0] = 0.0;
  Jet sum = Jet::constant(1.0, a.dim(), a.order());
  for (int k = a.order(); k >= 1; --k) sum = 1.0 + jet_mul(u, sum) * (1.0 / k);
  return sum * std::exp(a0);
}

Jet jet_partial(const Jet& a, int index) {
  if (a.order() < 1) throw DegenerateOrderError("jet_partial: order-0 jet has no derivative information");
  if (index < 0 || index >= a.dim()) throw ArgumentError("jet_partial: index out of range");
  Jet out(a.dim(), a.order() - 1);
  const auto& terms = a.layout().partials[static_cast<std::size_t>(index)];
  for (int r = 0; r < out.size(); ++r) {
    const auto& t = terms[static_cast<std::size_t>(r)];
    out[r] = t.factor * a[t.source];
  }
  return out;
}

Jet jet_pow(const Jet& a, int exponent) {
  if (exponent < 0) return jet_invert(jet_pow(a, -exponent));
  Jet result = Jet::constant(1.0, a.dim(), a.order());
  Jet base = a;
  while (exponent > 0) {
    if (exponent & 1) result = jet_mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = jet_mul(base, base);
  }
  return result;
}

}  // namespace curvlab
