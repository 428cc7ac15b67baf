#include <gtest/gtest.h>

#include "curvlab/catalog.hpp"
#include "curvlab/error.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/random.hpp"

using namespace curvlab;

TEST(Catalog, RandomMetricsArePositiveDefiniteOnTheBox) {
  Rng rng(31);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int dim = 2 + static_cast<int>(seed % 5);
    const MetricPatch m = random_polynomial_metric(seed, dim, 3, 0.05);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(dim);
      for (int k = 0; k < dim; ++k) x(k) = rng.uniform(-1.0, 1.0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.evaluate(x));
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
  }
}

TEST(Catalog, RandomMetricsAreReproducible) {
  const MetricPatch a = random_polynomial_metric(1, 4, 3, 0.05);
  const MetricPatch b = random_polynomial_metric(1, 4, 3, 0.05);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(serialize_metric(a), serialize_metric(b));
  EXPECT_FALSE(a == random_polynomial_metric(2, 4, 3, 0.05));
  const auto s1 = make_case(CaseKind::CaseV, {}, 17, 5);
  const auto s2 = make_case(CaseKind::CaseV, {}, 17, 5);
  for (std::size_t k = 0; k < s1.points.size(); ++k) EXPECT_EQ(s1.points[k], s2.points[k]);
}

TEST(Catalog, HugeAmplitudeExhaustsResampling) {
  EXPECT_THROW(random_polynomial_metric(1, 4, 3, 50.0), GenerationError);
}

TEST(Catalog, CaseDefaultsAndValidation) {
  EXPECT_EQ(make_case(CaseKind::CaseI).params.at("a"), 1.0);
  EXPECT_EQ(make_case(CaseKind::CaseI).params.at("b"), 2.0);
  EXPECT_EQ(make_case(CaseKind::CaseIV).params.at("b"), 1.0);
  EXPECT_EQ(make_case(CaseKind::CaseV).points.size(), 5u);
  for (const auto& x : make_case(CaseKind::CaseV).points) EXPECT_LE(x.cwiseAbs().maxCoeff(), 0.4);
  EXPECT_THROW(make_case(CaseKind::CaseIII, {{"a", 0.0}}), ArgumentError);
  EXPECT_THROW(make_case(CaseKind::CaseII, {{"b", 1.0}}), ArgumentError);
  EXPECT_EQ(parse_case_kind("IV"), CaseKind::CaseIV);
  EXPECT_EQ(parse_case_kind("CaseV"), CaseKind::CaseV);
  EXPECT_THROW(parse_case_kind("VI"), ArgumentError);
}

TEST(Catalog, SphereTimesSphereIsNotASpaceForm) {
  const auto s2s2 = orthonormal_phi_vector(case_packages(make_case(CaseKind::CaseI, {{"a", 1}, {"b", 1}})).front());
  const auto s4 = orthonormal_phi_vector(case_packages(make_case(CaseKind::CaseIII, {{"a", 1}})).front());
  EXPECT_LE((s2s2[3].matrix() - 2 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((s4[3].matrix() - 6 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Catalog, ProductWithLineHasFlatDirection) {
  Eigen::VectorXd x(4);
  x << 0.1, 0.2, -0.3, 0.4;
  const auto p = curvature_package(space_form_cross_line(2.0), x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_orthonormal_frame(p.g, p.ricci).matrix());
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 4.0, 1e-12);
}

TEST(Catalog, PackagesPerCase) {
  EXPECT_EQ(case_packages(make_case(CaseKind::CaseIV)).size(), 1u);
  EXPECT_EQ(case_packages(make_case(CaseKind::CaseV, {}, 0, 3)).size(), 3u);
  EXPECT_EQ(case_packages(make_case(CaseKind::CaseI)).size(), 5u);
  EXPECT_TRUE(is_homogeneous(CaseKind::CaseIII));
  EXPECT_FALSE(is_homogeneous(CaseKind::CaseV));
}
