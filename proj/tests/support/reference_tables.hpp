#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <vector>

// Hand-transcribed reference values for the test manifolds, orthonormal frames.
// Index k holds Phi_{k+1}.
namespace reference {

using Table = std::array<Eigen::Matrix4d, 10>;

inline Eigen::Matrix4d diag(double d0, double d1, double d2, double d3) {
  return Eigen::Vector4d(d0, d1, d2, d3).asDiagonal();
}

inline Eigen::Matrix4d eye(double s) { return s * Eigen::Matrix4d::Identity(); }

inline Table case_i(double a, double b) {
  const double s = a * a + b * b;
  return {eye(4 * s),
          eye(2 * s),
          eye(4 * (a + b) * (a + b)),
          diag(2 * a * a, 2 * a * a, 2 * b * b, 2 * b * b),
          diag(a * a, a * a, b * b, b * b),
          diag(2 * a * a, 2 * a * a, 2 * b * b, 2 * b * b),
          2 * (a + b) * diag(a, a, b, b),
          eye(0),
          eye(0),
          eye(0)};
}

inline Table case_ii(double a) {
  const double a2 = a * a;
  return {eye(12 * a2),
          eye(12 * a2),
          eye(36 * a2),
          4 * a2 * diag(1, 1, 1, 0),
          4 * a2 * diag(1, 1, 1, 0),
          8 * a2 * diag(1, 1, 1, 0),
          12 * a2 * diag(1, 1, 1, 0),
          eye(0),
          eye(0),
          eye(0)};
}

inline Table case_iii(double a) {
  const double a2 = a * a;
  return {eye(24 * a2), eye(36 * a2), eye(144 * a2), eye(6 * a2), eye(9 * a2),
          eye(18 * a2), eye(36 * a2), eye(0),        eye(0),       eye(0)};
}

/// As tabulated in the literature, Phi_10(1,1) = 8 a^4 included.
inline Table case_iv(double a) {
  const double a4 = a * a * a * a;
  return {eye(24 * a4),
          eye(12 * a4),
          eye(16 * a4),
          eye(6 * a4),
          a4 * diag(9, 1, 1, 1),
          2 * a4 * diag(1, 1, 5, 5),
          4 * a4 * diag(3, -1, 1, 1),
          eye(0),
          eye(0),
          a4 * diag(8, -8, -4, -4)};
}

/// Phi_10 for the same algebra as computed here. The tabulated 8 a^4 in the (1,1)
/// slot contradicts tr(rough lap rho) = lap tau = 0 for constant tau.
inline Eigen::Matrix4d case_iv_rough_laplacian(double a) { return a * a * a * a * diag(16, -8, -4, -4); }

inline double sigma1(const Eigen::Vector4d& x) { return x(0) * x(0) + x(1) * x(1); }
inline double sigma2(const Eigen::Vector4d& x) { return x(2) * x(2) + x(3) * x(3); }

inline double case_v_tau(const Eigen::Vector4d& x) {
  return -8 * std::exp(-2 * sigma1(x)) - 8 * std::exp(-2 * sigma2(x));
}

/// lap tau for e^{2 s1}(dx1^2+dx2^2) + e^{2 s2}(dx3^2+dx4^2).
inline double case_v_lap_tau(const Eigen::Vector4d& x) {
  const double s1 = sigma1(x), s2 = sigma2(x);
  return -64 * (std::exp(-4 * s1) * (2 * s1 - 1) + std::exp(-4 * s2) * (2 * s2 - 1));
}

/// Orthonormal Hess tau restricted to a factor with coordinates (u, v) and s = u^2 + v^2.
inline Eigen::Matrix2d case_v_block(double u, double v) {
  const double s = u * u + v * v;
  Eigen::Matrix2d m;
  m << 6 * u * u - 2 * v * v - 1, 8 * u * v, 8 * u * v, -2 * u * u + 6 * v * v - 1;
  return -32 * std::exp(-4 * s) * m;
}

/// Block B as tabulated, with prefactor e^{-4 s1} instead of e^{-4 s2}.
inline Eigen::Matrix2d case_v_block_b_tabulated(const Eigen::Vector4d& x) {
  return std::exp(-4 * sigma1(x)) / std::exp(-4 * sigma2(x)) * case_v_block(x(2), x(3));
}

struct Relation {
  std::string name;
  std::array<long long, 10> c;  // over c_1..c_10, primitive, first nonzero positive
};

/// Integer relations each case yields, one per parameter monomial or component.
inline std::vector<Relation> case_i_relations() {
  return {{"(I) a^2 slot", {4, 2, 4, 2, 1, 2, 2, 0, 0, 0}},
          {"(I) ab slot", {0, 0, 4, 0, 0, 0, 1, 0, 0, 0}},
          {"(I) b^2 slot", {2, 1, 2, 0, 0, 0, 0, 0, 0, 0}}};
}

inline std::vector<Relation> case_ii_relations() {
  return {{"(II-i)", {3, 3, 9, 1, 1, 2, 3, 0, 0, 0}}, {"(II-ii)", {1, 1, 3, 0, 0, 0, 0, 0, 0, 0}}};
}

inline std::vector<Relation> case_iii_relations() { return {{"(III)", {8, 12, 48, 2, 3, 6, 12, 0, 0, 0}}}; }

/// As tabulated: the (1,1) relation carries +8 c_10.
inline std::vector<Relation> case_iv_relations() {
  return {{"(IV-i)", {24, 12, 16, 6, 9, 2, 12, 0, 0, 8}},
          {"(IV-ii)", {24, 12, 16, 6, 1, 2, -4, 0, 0, -8}},
          {"(IV-iii)", {24, 12, 16, 6, 1, 10, 4, 0, 0, -4}}};
}

inline std::array<double, 10> universal() { return {0.25, -1, 0.25, -1, 2, 1, -1, 0, 0, 0}; }

}  // namespace reference
