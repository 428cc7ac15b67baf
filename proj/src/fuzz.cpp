#include "curvlab/fuzz.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "curvlab/catalog.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/random.hpp"

namespace curvlab {

FuzzReport fuzz_verify(std::uint64_t seed, int trials, int dim, int degree, double amplitude) {
  if (trials < 1) throw ArgumentError("fuzz_verify: trials must be at least 1");
  if (dim < 2 || dim > kMaxJetDim) throw ArgumentError("fuzz_verify: dim must be in [2, 6]");

  FuzzReport report{seed, trials, dim, degree, amplitude, 1e-7, 1e-3, {}, 0.0, std::numeric_limits<double>::infinity(),
                    0, dim == 4, true, 0.0};
  const Coefficients universal = Coefficients::universal();
  int above = 0;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t metric_seed = 0;
    std::optional<MetricPatch> patch;
    for (int attempt = 0; !patch; ++attempt) {
      metric_seed = derive_seed(seed, static_cast<std::uint64_t>(t) * 1000u + static_cast<std::uint64_t>(attempt));
      try {
        patch = random_polynomial_metric(metric_seed, dim, degree, amplitude);
      } catch (const GenerationError&) {
        ++report.generation_failures;
        if (attempt >= 100) throw;
      }
    }
    FuzzTrial trial{metric_seed, {}, {}, 0.0, true};
    Rng rng(derive_seed(metric_seed, 0x706f696e));
    for (int p = 0; p < 3; ++p) {
      Eigen::VectorXd q(dim);
      for (int k = 0; k < dim; ++k) q(k) = rng.uniform(-0.5, 0.5);
      const double r = relative_residual(phi_vector(curvature_package(*patch, q)), universal);
      trial.points.push_back(q);
      trial.residuals.push_back(r);
      trial.max_residual = std::max(trial.max_residual, r);
    }
    trial.passed = trial.max_residual <= report.threshold;
    if (report.judged && !trial.passed) report.all_passed = false;
    if (trial.max_residual > report.genericity_bound) ++above;
    report.max_relative_residual = std::max(report.max_relative_residual, trial.max_residual);
    report.min_relative_residual = std::min(report.min_relative_residual, trial.max_residual);
    report.per_trial.push_back(std::move(trial));
  }
  report.fraction_above_genericity = static_cast<double>(above) / trials;
  return report;
}

}  // namespace curvlab
