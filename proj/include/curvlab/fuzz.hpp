#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace curvlab {

struct FuzzTrial {
  std::uint64_t metric_seed;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> residuals;  // relative residual at each point
  double max_residual;
  bool passed;                    // meaningful only in dimension 4
};

struct FuzzReport {
  std::uint64_t seed;
  int trials;
  int dim;
  int degree;
  double amplitude;
  double threshold;           // pass bound in dimension 4
  double genericity_bound;    // "clearly nonzero" bound used off dimension 4
  std::vector<FuzzTrial> per_trial;
  double max_relative_residual;
  double min_relative_residual;
  int generation_failures;    // draws rejected by the SPD check and resampled
  bool judged;                // pass/fail applies (dimension 4)
  bool all_passed;
  double fraction_above_genericity;
};

/// Evaluate the universal combination on `trials` random polynomial metrics at 3 random points each.
FuzzReport fuzz_verify(std::uint64_t seed, int trials, int dim, int degree = 3, double amplitude = 0.05);

}  // namespace curvlab
