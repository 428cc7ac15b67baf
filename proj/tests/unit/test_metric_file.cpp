#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "curvlab/catalog.hpp"
#include "curvlab/error.hpp"
#include "curvlab/finite_difference.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/metric_patch.hpp"

using namespace curvlab;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CURVLAB_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(MetricFile, ParsesExpressions) {
  const Expr e = parse_expression("2*x1^2 - exp(-x2) / (1 + a)^(-2)", 2, {{"a", 0.5}});
  EXPECT_EQ(e.max_variable(), 1);
  Eigen::VectorXd p(2);
  p << 0.3, -0.4;
  const MetricPatch m("m", 2, {e, Expr::constant(0.0), Expr::constant(0.0), e}, {{"a", 0.5}});
  EXPECT_NEAR(m.evaluate(p)(0, 0), 2 * 0.09 - std::exp(0.4) * 1.5 * 1.5, 1e-14);
}

TEST(MetricFile, RoundTripsCatalogPatches) {
  for (const MetricPatch& patch : {product_surfaces(1, 2), space_form_cross_line(-0.5), space_form4(3), conformal_product(),
                                   flat(3), random_polynomial_metric(9, 4, 3, 0.05)}) {
    const MetricPatch back = parse_metric_file(serialize_metric(patch), patch.name());
    EXPECT_TRUE(back == patch) << patch.name();
  }
}

TEST(MetricFile, AsymmetricEntriesAreRejected) {
  const std::string text = "dim = 2\ng[1][1] = 1\ng[2][2] = 1\ng[1][2] = x1\ng[2][1] = x2\n";
  try {
    parse_metric_file(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_NE(std::string(e.what()).find("asymmetric"), std::string::npos);
  }
  EXPECT_NO_THROW(parse_metric_file("dim = 2\ng[1][1] = 1\ng[2][2] = 1\ng[1][2] = x1/10\ng[2][1] = x1/10\n"));
}

TEST(MetricFile, ErrorsCarryPositions) {
  try {
    parse_metric_file("dim = 2\ng[1][1] = 1 + y\ng[2][2] = 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 15);
  }
  EXPECT_THROW(parse_metric_file("dim = 2\ng[1][1] = x3\ng[2][2] = 1\n"), ParseError);
  EXPECT_THROW(parse_metric_file("dim = 2\ng[1][1] = 1\n"), ParseError);
  EXPECT_THROW(parse_metric_file("dim = 2\ng[1][1] = 1\ng[1][1] = 2\ng[2][2] = 1\n"), ParseError);
  EXPECT_THROW(parse_metric_file("dim = 2\ng[1][3] = 1\n"), ParseError);
  EXPECT_THROW(parse_metric_file("g[1][1] = 1\n"), ParseError);
  EXPECT_THROW(parse_metric_file("dim = 1\nmetric g = 1\n"), ParseError);
  EXPECT_THROW(parse_expression("x1^1.5", 1), ParseError);
  EXPECT_THROW(parse_expression("(x1", 1), ParseError);
}

TEST(MetricFile, ConformalProductFileMatchesBuiltIn) {
  const MetricPatch file = parse_metric_file(read_data("conformal_product.metric"), "conformal");
  const MetricPatch builtin = conformal_product();
  for (const auto& x : {Eigen::Vector4d(0.3, 0.1, 0.2, 0.4), Eigen::Vector4d(-0.2, 0.25, 0.0, 0.1),
                        Eigen::Vector4d(0.5, -0.2, 0.1, 0.3)}) {
    const auto a = curvature_package(file, x);
    const auto b = curvature_package(builtin, x);
    for (const auto& d : compare_packages(b, a)) EXPECT_LE(d.relative, 1e-12) << d.field;
  }
}

TEST(MetricFile, ParametersCanBeOverridden) {
  const MetricPatch file = parse_metric_file(read_data("product_surfaces.metric"));
  const MetricPatch other = file.with_parameters({{"b", -3.0}});
  EXPECT_EQ(other.parameters().at("b"), -3.0);
  EXPECT_THROW(file.with_parameters({{"c", 1.0}}), ArgumentError);
  Eigen::VectorXd x(4);
  x << 0.1, 0.2, 0.3, -0.1;
  const auto p = curvature_package(other, x);
  const auto q = curvature_package(product_surfaces(1, -3), x);
  EXPECT_NEAR(p.tau, q.tau, 1e-12);
}
