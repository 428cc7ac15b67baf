#include "curvlab/finite_difference.hpp"

#include <array>
#include <cmath>

namespace curvlab {

namespace {

// Central stencils on offsets -2..2 (times step^-k), all second-order accurate.
constexpr std::array<std::array<long double, 5>, 5> kStencil{{
    {0.0, 0.0, 1.0, 0.0, 0.0},
    {0.0, -0.5, 0.0, 0.5, 0.0},
    {0.0, 1.0, -2.0, 1.0, 0.0},
    {-0.5, 1.0, 0.0, -1.0, 0.5},
    {1.0, -4.0, 6.0, -4.0, 1.0},
}};

// Samples are taken in extended precision: fourth differences at step ~3e-3
// lose ~10 digits to cancellation, which binary64 cannot spare.
using Real = long double;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// g sampled on point + step * {-2..2}^dim, flattened with the last coordinate fastest.
std::vector<RealMatrix> sample_grid(const MetricPatch& patch, const Eigen::VectorXd& point, Real step) {
  const int n = patch.dim();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= 5;
  std::vector<RealMatrix> grid;
  grid.reserve(total);
  RealVector x(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int k = n - 1; k >= 0; --k) {
      x(k) = static_cast<Real>(point(k)) + step * (static_cast<Real>(rest % 5) - 2);
      rest /= 5;
    }
    grid.push_back(patch.evaluate_as<Real>(x));
  }
  return grid;
}

/// d^alpha g at the centre from one grid.
RealMatrix stencil_derivative(const std::vector<RealMatrix>& grid, const MultiIndex& alpha, int n, Real step) {
  RealMatrix acc = RealMatrix::Zero(n, n);
  // iterate over the support of the product stencil only
  std::array<int, kMaxJetDim> offset{};
  std::array<int, kMaxJetDim> lo{};
  std::array<int, kMaxJetDim> hi{};
  Real scale = 1;
  for (int k = 0; k < n; ++k) {
    const int order = alpha[static_cast<std::size_t>(k)];
    const int reach = order == 0 ? 0 : (order <= 2 ? 1 : 2);
    lo[static_cast<std::size_t>(k)] = -reach;
    hi[static_cast<std::size_t>(k)] = reach;
    offset[static_cast<std::size_t>(k)] = -reach;
    scale /= std::pow(step, order);
  }
  for (;;) {
    Real w = 1;
    std::size_t flat = 0;
    for (int k = 0; k < n; ++k) {
      const int o = offset[static_cast<std::size_t>(k)];
      w *= kStencil[static_cast<std::size_t>(alpha[static_cast<std::size_t>(k)])][static_cast<std::size_t>(o + 2)];
      flat = flat * 5 + static_cast<std::size_t>(o + 2);
    }
    if (w != 0) acc += w * grid[flat];
    int k = n - 1;
    for (; k >= 0; --k) {
      if (++offset[static_cast<std::size_t>(k)] <= hi[static_cast<std::size_t>(k)]) break;
      offset[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
    }
    if (k < 0) break;
  }
  return acc * scale;
}

}  // namespace

Tensor<Jet> finite_difference_jets(const MetricPatch& patch, const Eigen::VectorXd& point, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite difference step must be positive");
  const int n = patch.dim();
  constexpr Real kRatio = 3;
  const Real step = h;
  const auto coarse = sample_grid(patch, point, step);
  const auto fine = sample_grid(patch, point, step / kRatio);

  const JetLayout& layout = JetLayout::get(n, kMaxJetOrder);
  Tensor<Jet> g = Tensor<Jet>::lower(n, 2, Jet(n, kMaxJetOrder));
  for (int k = 0; k < layout.size(); ++k) {
    const MultiIndex& alpha = layout.indices[static_cast<std::size_t>(k)];
    RealMatrix d;
    if (layout.degree[static_cast<std::size_t>(k)] == 0) {
      d = fine[fine.size() / 2];
    } else {
      const RealMatrix dc = stencil_derivative(coarse, alpha, n, step);
      const RealMatrix df = stencil_derivative(fine, alpha, n, step / kRatio);
      // leading error is O(step^2): eliminate it
      d = (kRatio * kRatio * df - dc) / (kRatio * kRatio - 1);
    }
    Real factorial = 1;
    for (int v = 0; v < n; ++v) {
      for (int m = 2; m <= alpha[static_cast<std::size_t>(v)]; ++m) factorial *= m;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j)[k] = static_cast<double>((d(i, j) + d(j, i)) / (2 * factorial));
    }
  }
  return g;
}

CurvaturePackage finite_difference_package(const MetricPatch& patch, const Eigen::VectorXd& point, double h) {
  return curvature_package_from_jets(finite_difference_jets(patch, point, h), point);
}

std::vector<PackageDeviation> compare_packages(const CurvaturePackage& ref, const CurvaturePackage& cand, double floor) {
  if (ref.frame != cand.frame || ref.dim != cand.dim) throw ArgumentError("compare_packages: packages are not comparable");
  std::vector<PackageDeviation> out;
  auto add = [&](const std::string& name, const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
    const double diff = a.size() ? (a - b).abs().maxCoeff() : 0.0;
    const double scale = a.size() ? a.abs().maxCoeff() : 0.0;
    out.push_back({name, diff, scale, diff / std::max(scale, floor)});
  };
  auto flat = [](std::span<const double> s) { return Eigen::Map<const Eigen::ArrayXd>(s.data(), static_cast<Eigen::Index>(s.size())).eval(); };
  auto mat = [](const Eigen::MatrixXd& m) { return Eigen::Map<const Eigen::ArrayXd>(m.data(), m.size()).eval(); };
  auto scalar = [](double v) { return Eigen::ArrayXd::Constant(1, v).eval(); };
  add("g_inv", mat(ref.g_inv), mat(cand.g_inv));
  add("riemann", flat(ref.riemann.entries()), flat(cand.riemann.entries()));
  add("ricci", mat(ref.ricci.matrix()), mat(cand.ricci.matrix()));
  add("tau", scalar(ref.tau), scalar(cand.tau));
  add("grad_tau", ref.grad_tau.array(), cand.grad_tau.array());
  add("hess_tau", mat(ref.hess_tau.matrix()), mat(cand.hess_tau.matrix()));
  add("lap_tau", scalar(ref.lap_tau), scalar(cand.lap_tau));
  add("cov_ricci", flat(ref.cov_ricci.entries()), flat(cand.cov_ricci.entries()));
  add("rough_lap_ricci", mat(ref.rough_lap_ricci.matrix()), mat(cand.rough_lap_ricci.matrix()));
  return out;
}

}  // namespace curvlab
