#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gafcell/verify.hpp"

using namespace gafcell;

namespace {
constexpr double kPi = std::numbers::pi;
}

class MetricsOracle : public ::testing::TestWithParam<ShapeKind> {};

TEST_P(MetricsOracle, AgreesWithClosedForms) {
  OracleOptions opt;
  opt.samples = 200'000;
  const auto v = verify_metrics(GetParam(), 1.0, opt);
  ASSERT_EQ(v.checks.size(), 4u);
  for (const auto& c : v.checks) EXPECT_TRUE(c.pass) << c.quantity << " rel " << c.relative_error;
}

INSTANTIATE_TEST_SUITE_P(Shapes, MetricsOracle, ::testing::ValuesIn(kAllShapeKinds),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Compare, RelativeErrorAndVerdict) {
  const auto ok = compare("x", 2.0, 1.99, 0.01);
  EXPECT_NEAR(ok.relative_error, 0.005, 1e-15);
  EXPECT_TRUE(ok.pass);
  EXPECT_FALSE(compare("x", 2.0, 1.9, 0.01).pass);
}

TEST(ConstraintOracle, EverySupportedPairInfinitesimal) {
  OracleOptions opt;
  opt.samples = 50'000;
  for (Protocol p : {Protocol::GAF, Protocol::HGAF, Protocol::eHGAF}) {
    for (ShapeKind s : kAllShapeKinds) {
      if (!is_supported(p, s)) continue;
      const auto v = verify_constraints(p, s, 1.0, SubcellRegime::infinitesimal(), opt);
      EXPECT_TRUE(v.pass()) << to_string(p) << " " << to_string(s) << " req1 " << v.req1_at_max.sampled << " req2 "
                            << v.req2_at_max.sampled;
    }
  }
}

TEST(ConstraintOracle, FiniteSubcells) {
  OracleOptions opt;
  opt.samples = 50'000;
  for (double d : {0.05, 0.1, 0.2}) {
    for (auto [p, s] : {std::pair{Protocol::HGAF, ShapeKind::Square}, std::pair{Protocol::eHGAF, ShapeKind::Square},
                        std::pair{Protocol::eHGAF, ShapeKind::EquilateralTriangle}}) {
      const auto v = verify_constraints(p, s, 1.0, SubcellRegime::finite(d), opt);
      EXPECT_TRUE(v.pass()) << to_string(p) << " " << to_string(s) << " d=" << d;
    }
  }
}

TEST(ConstraintOracle, ScaledRange) {
  OracleOptions opt;
  opt.samples = 50'000;
  EXPECT_TRUE(verify_constraints(Protocol::eHGAF, ShapeKind::Cube, 3.5, SubcellRegime::infinitesimal(), opt).pass());
}

TEST(WorstCase, GafSquareCornerPair) {
  OracleOptions opt;
  opt.samples = 10'000;
  const double r = 1 / std::sqrt(5.0);
  const auto w = worst_case_distances(Protocol::GAF, ShapeKind::Square, r, SubcellRegime::infinitesimal(), opt);
  EXPECT_NEAR(w.req1, 1.0, 1e-12);
  EXPECT_NEAR(w.req2, std::sqrt(2.0) * r, 1e-12);
}

TEST(SphereChainOracle, WithinThreeStandardErrors) {
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto v = verify_lemma1(n, 1.0, 1'000'000, 11);
    EXPECT_LT(std::abs(v.estimate.value - v.closed_form), 3 * v.estimate.standard_error) << n;
    EXPECT_TRUE(v.pass());
    EXPECT_EQ(v.estimate.samples, 1'000'000u);
  }
}

TEST(SphereChainOracle, DeterministicPerSeed) {
  EXPECT_EQ(sphere_chain_union_volume(2, 1.0, 1'000'000, 5), sphere_chain_union_volume(2, 1.0, 1'000'000, 5));
  EXPECT_NE(sphere_chain_union_volume(2, 1.0, 1'000'000, 5).value,
            sphere_chain_union_volume(2, 1.0, 1'000'000, 6).value);
}

TEST(SphereChainOracle, SingleSphere) {
  const auto e = sphere_chain_union_volume(1, 1.0, 1'000'000, 3);
  EXPECT_NEAR(e.value, 4 * kPi / 3, 3 * e.standard_error);
}

TEST(SphereChainOracle, Errors) {
  EXPECT_THROW(sphere_chain_union_volume(0, 1.0, 1'000'000, 1), InvalidArgument);
  EXPECT_THROW(sphere_chain_union_volume(2, 1.0, 1000, 1), InvalidArgument);
  try {
    sphere_chain_union_volume(2, 1.0, 1000, 1);
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("below minimum samples"), std::string::npos);
  }
}
