#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "vispace/experiments.hpp"

namespace {

using vispace::AlleyConfig;
using vispace::ObserverProfile;
using vispace::PhysicalPoint;
using vispace::SeparationTrial;
using vispace::SigmaProfile;

constexpr double kSqrt2 = std::numbers::sqrt2;

ObserverProfile observer_aj() { return ObserverProfile("A.J", 10.68, 6.48); }

double pair_distance_expr(double d, double s1, double s2) {
  const double arg =
      1.0 + (0.5 * d * d + (s1 - s2) * (s1 - s2)) / (2.0 * s1 * s2);
  return kSqrt2 * std::acosh(arg);
}

TEST(EccentricityWidth, LinearRuleAndUnitCrossing) {
  EXPECT_NEAR(vispace::sigma2_of_eccentricity(0.0), 126.540 / 167.785, 1e-15);
  // widths reach 1 once eccentricity makes up the offset difference
  EXPECT_NEAR(vispace::sigma2_of_eccentricity(167.785 - 126.540), 1.0, 1e-12);
  EXPECT_THROW(vispace::sigma2_of_eccentricity(-0.1), std::invalid_argument);
}

TEST(SigmaProfileTest, LinearEvaluationAndDomainGuards) {
  const auto prof = SigmaProfile::linear(1.44, -0.04, 2.0, 16.0, true);
  EXPECT_DOUBLE_EQ(prof(2.0), 1.36);
  EXPECT_DOUBLE_EQ(prof(16.0), 0.8);
  EXPECT_DOUBLE_EQ(prof.domain_lo(), 2.0);
  EXPECT_DOUBLE_EQ(prof.domain_hi(), 16.0);
  EXPECT_TRUE(prof.declared_monotone());
  // representation noise at the ends snaps instead of throwing
  EXPECT_NO_THROW(prof(16.0 + 1e-11));
  EXPECT_NO_THROW(prof(2.0 - 1e-11));
  EXPECT_THROW(prof(1.0), std::invalid_argument);
  EXPECT_THROW(prof(17.0), std::invalid_argument);
  // widths must stay positive across the whole domain
  EXPECT_THROW(SigmaProfile::linear(1.0, -0.1, 0.0, 20.0, false),
               std::invalid_argument);
  EXPECT_THROW(SigmaProfile::linear(1.0, 0.0, 5.0, 5.0, false),
               std::invalid_argument);
}

TEST(SigmaProfileTest, TableInterpolation) {
  const auto prof = SigmaProfile::table({{1.0, 0.5}, {2.0, 0.7}, {4.0, 0.7}}, false);
  EXPECT_DOUBLE_EQ(prof(1.0), 0.5);
  EXPECT_DOUBLE_EQ(prof(1.5), 0.6);
  EXPECT_DOUBLE_EQ(prof(3.0), 0.7);
  EXPECT_THROW(prof(0.5), std::invalid_argument);
  EXPECT_THROW(SigmaProfile::table({{1.0, 0.5}}, false), std::invalid_argument);
  EXPECT_THROW(SigmaProfile::table({{1.0, 0.5}, {1.0, 0.6}}, false),
               std::invalid_argument);
  EXPECT_THROW(SigmaProfile::table({{1.0, 0.5}, {2.0, -0.1}}, false),
               std::invalid_argument);
}

TEST(EstimationError, MatchesTheDistanceExpression) {
  const SeparationTrial trial(4.0, 1.28, vispace::sigma2_of_eccentricity(4.0));
  const double expect =
      std::abs(pair_distance_expr(4.0, trial.sigma1, trial.sigma2) - 4.0);
  EXPECT_NEAR(vispace::estimation_error(trial), expect, 1e-12);
  EXPECT_THROW(SeparationTrial(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SeparationTrial(2.0, -1.0, 1.0), std::invalid_argument);
}

TEST(EstimationError, SymmetricInTheTwoWidths) {
  const SeparationTrial a(3.0, 0.9, 1.7);
  const SeparationTrial b(3.0, 1.7, 0.9);
  EXPECT_DOUBLE_EQ(vispace::estimation_error(a), vispace::estimation_error(b));
}

TEST(ErrorCurve, DefaultProfileGrowsMonotonically) {
  const auto rows =
      vispace::error_curve(vispace::default_sigma1_profile(),
                           vispace::default_separations());
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    EXPECT_DOUBLE_EQ(r.separation_deg, 2.0 * (i + 1));
    EXPECT_NEAR(r.sigma1, 1.44 - 0.04 * r.separation_deg, 1e-15);
    EXPECT_NEAR(r.sigma2, vispace::sigma2_of_eccentricity(r.separation_deg),
                1e-15);
    const double expect =
        std::abs(pair_distance_expr(r.separation_deg, r.sigma1, r.sigma2) -
                 r.separation_deg);
    EXPECT_NEAR(r.error, expect, 1e-12);
    if (i > 0) {
      EXPECT_GE(r.error, rows[i - 1].error);
    }
  }
  EXPECT_NEAR(rows.front().error, 0.0364276533, 1e-9);
  EXPECT_NEAR(rows.back().error, 8.577091, 1e-5);
}

TEST(ErrorCurve, RejectsEmptyOrNonPositiveSeparations) {
  const auto prof = vispace::default_sigma1_profile();
  EXPECT_THROW(vispace::error_curve(prof, {}), std::invalid_argument);
  EXPECT_THROW(vispace::error_curve(prof, {2.0, -1.0}), std::invalid_argument);
}

TEST(Table1, NineObserversWithinFiveHundredthsOfReference) {
  // straight-horopter distances recomputed independently from tau and nu
  const double reference[] = {89.70, 101.51, 71.93, 60.78, 98.46,
                              28.46, 79.21,  76.74, 127.03};
  const auto rows = vispace::table1_report();
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].computed_L0, reference[i], 0.05) << rows[i].name;
    EXPECT_DOUBLE_EQ(rows[i].abs_diff,
                     std::abs(rows[i].computed_L0 - rows[i].observed_L0));
  }
  EXPECT_EQ(rows.front().name, "A.J");
  EXPECT_EQ(rows.back().name, "W.K");
  EXPECT_DOUBLE_EQ(rows.front().tau, 10.68);
  EXPECT_DOUBLE_EQ(rows.front().nu, 6.48);
}

TEST(Alleys, DefaultConfigShape) {
  const auto config = vispace::default_alley_config(observer_aj());
  EXPECT_EQ(config.depth_lambdas.size(), 12u);
  const double lam0 = vispace::solve_lambda0(observer_aj()).lambda0;
  EXPECT_NEAR(config.anchor_lambda, 0.5 * lam0, 1e-15);
  EXPECT_NEAR(config.depth_lambdas.front(), config.anchor_lambda, 1e-15);
  EXPECT_NEAR(config.depth_lambdas.back(), 3.0 * config.anchor_lambda, 1e-12);
  // both width profiles agree at the anchor
  EXPECT_DOUBLE_EQ(config.sigma_parallel(1.0), config.sigma_distance(1.0));
}

TEST(Alleys, PairDistancesStayAtTheAnchorValue) {
  const auto result =
      vispace::alley_curves(vispace::default_alley_config(observer_aj()));
  EXPECT_NEAR(result.anchor_mu, 2.522109204079469, 1e-9);
  EXPECT_DOUBLE_EQ(result.dstar_parallel, result.dstar_distance);
  ASSERT_EQ(result.parallel.size(), 12u);
  ASSERT_EQ(result.distance.size(), 12u);
  for (const auto& p : result.parallel) {
    EXPECT_NEAR(p.pair_distance, result.dstar_parallel, 1e-9);
  }
  for (const auto& p : result.distance) {
    EXPECT_NEAR(p.pair_distance, result.dstar_distance, 1e-9);
  }
}

TEST(Alleys, EqualProfilesProduceIdenticalCurves) {
  auto config = vispace::default_alley_config(observer_aj());
  config.sigma_distance = config.sigma_parallel;
  const auto result = vispace::alley_curves(config);
  ASSERT_EQ(result.parallel.size(), result.distance.size());
  for (std::size_t i = 0; i < result.parallel.size(); ++i) {
    EXPECT_EQ(result.parallel[i].point.x, result.distance[i].point.x);
    EXPECT_EQ(result.parallel[i].point.y, result.distance[i].point.y);
    EXPECT_EQ(result.parallel[i].mu, result.distance[i].mu);
  }
}

TEST(Alleys, WiderProfileSitsLaterallyOutside) {
  // the default parallel profile grows faster than the distance profile, so
  // beyond the shared anchor its pairs sit wider in both charts
  const auto result =
      vispace::alley_curves(vispace::default_alley_config(observer_aj()));
  EXPECT_EQ(result.parallel.front().mu, result.distance.front().mu);
  for (std::size_t i = 1; i < result.parallel.size(); ++i) {
    EXPECT_GT(result.parallel[i].sigma, result.distance[i].sigma);
    EXPECT_GT(result.parallel[i].mu, result.distance[i].mu);
    EXPECT_GT(result.parallel[i].point.y, result.distance[i].point.y);
  }
}

TEST(Alleys, RightBranchStaysInTheForwardRightQuadrant) {
  const auto result =
      vispace::alley_curves(vispace::default_alley_config(observer_aj()));
  for (const auto& p : result.parallel) {
    EXPECT_GT(p.point.y, 0.0);
    EXPECT_GT(p.point.x, 0.0);
    EXPECT_GT(p.phi1, 0.0);
    EXPECT_LT(p.phi1, 0.5 * std::numbers::pi);
  }
  // growing widths push the reconstructed pairs deeper
  for (std::size_t i = 1; i < result.parallel.size(); ++i) {
    EXPECT_GT(result.parallel[i].point.x, result.parallel[i - 1].point.x);
    EXPECT_LT(result.parallel[i].lambda_, result.parallel[i - 1].lambda_);
  }
}

TEST(Alleys, ValidatesConfiguration) {
  const auto base = vispace::default_alley_config(observer_aj());

  auto bad = base;
  bad.anchor_psi = 0.0;
  EXPECT_THROW(vispace::alley_curves(bad), std::invalid_argument);

  bad = base;
  bad.depth_lambdas.clear();
  EXPECT_THROW(vispace::alley_curves(bad), std::invalid_argument);

  bad = base;
  std::swap(bad.depth_lambdas[3], bad.depth_lambdas[4]);
  EXPECT_THROW(vispace::alley_curves(bad), std::invalid_argument);

  bad = base;
  bad.depth_lambdas.front() = 0.5 * bad.anchor_lambda;
  EXPECT_THROW(vispace::alley_curves(bad), std::invalid_argument);

  EXPECT_THROW(vispace::default_alley_config(observer_aj(), 0.35, 1),
               std::invalid_argument);
  EXPECT_THROW(vispace::default_alley_config(observer_aj(), 0.35, 12, 0.5),
               std::invalid_argument);
}

// counts proper intersections between two polylines
int polyline_crossings(const std::vector<PhysicalPoint>& a,
                       const std::vector<PhysicalPoint>& b) {
  const auto orient = [](const PhysicalPoint& p, const PhysicalPoint& q,
                         const PhysicalPoint& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  };
  int count = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const double d1 = orient(b[j], b[j + 1], a[i]);
      const double d2 = orient(b[j], b[j + 1], a[i + 1]);
      const double d3 = orient(a[i], a[i + 1], b[j]);
      const double d4 = orient(a[i], a[i + 1], b[j + 1]);
      if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) {
        ++count;
      }
    }
  }
  return count;
}

TEST(Alleys, EachHoropterCrossesABranchAtMostOnce) {
  const auto obs = observer_aj();
  const double lam0 = vispace::solve_lambda0(obs).lambda0;
  const auto result = vispace::alley_curves(vispace::default_alley_config(obs));
  std::vector<PhysicalPoint> branch;
  branch.reserve(result.parallel.size());
  for (const auto& p : result.parallel) {
    branch.push_back(p.point);
  }

  int total = 0;
  for (const double f : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const auto horopter = vispace::horopter_curve(obs, lam0 / f, 201);
    const int n = polyline_crossings(horopter, branch);
    EXPECT_LE(n, 1) << "vertex multiple " << f;
    total += n;
  }
  EXPECT_GE(total, 1);
}

}  // namespace
