#pragma once

#include <Eigen/Dense>

#include "curvlab/geometry.hpp"
#include "curvlab/metric_patch.hpp"

namespace curvlab {

/// Taylor jets of g_ij built from central differences of the plain metric
/// evaluator, Richardson-extrapolated over the step pair (h, h/3).
///
/// Every mixed partial up to order 4 uses a tensor product of 1D central
/// stencils of width at most 5, so g is sampled on the grid point + s*{-2..2}^dim.
Tensor<Jet> finite_difference_jets(const MetricPatch& patch, const Eigen::VectorXd& point, double h);

/// Same quantities as curvature_package, with metric derivatives taken by finite differences.
CurvaturePackage finite_difference_package(const MetricPatch& patch, const Eigen::VectorXd& point, double h);

/// Field-by-field comparison of two packages expressed in the same frame.
struct PackageDeviation {
  std::string field;
  double max_abs;    // largest entrywise difference
  double scale;      // largest entry of the reference field
  double relative;   // max_abs / max(scale, floor)
};

/// `floor` keeps identically-zero reference fields from dividing by zero.
std::vector<PackageDeviation> compare_packages(const CurvaturePackage& reference, const CurvaturePackage& candidate,
                                               double floor = 1e-12);

}  // namespace curvlab
