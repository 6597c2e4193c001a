#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <variant>

#include <gtest/gtest.h>

#include "vispace/disk_model.hpp"
#include "vispace/geodesic.hpp"
#include "vispace/manifold.hpp"

namespace {

using vispace::CircleArc;
using vispace::DiskCircle;
using vispace::DiskDiameter;
using vispace::DiskPoint;
using vispace::GaussianPoint;
using vispace::VerticalLine;

constexpr double kSqrt2 = std::numbers::sqrt2;

TEST(BasicRadius, ScalesWithCurvatureParameter) {
  EXPECT_DOUBLE_EQ(vispace::basic_radius(-1.0), 2.0);
  EXPECT_DOUBLE_EQ(vispace::basic_radius(-4.0), 1.0);
  EXPECT_THROW(vispace::basic_radius(0.0), std::invalid_argument);
  EXPECT_THROW(vispace::basic_radius(1.0), std::invalid_argument);
}

TEST(DiskMap, CenterAndAxisLandmarks) {
  // (0, 1/sqrt(2)) is the point mapped to the disk center
  const auto c = vispace::half_plane_to_disk(GaussianPoint(0.0, 1.0 / kSqrt2));
  EXPECT_NEAR(c.alpha, 0.0, 1e-15);
  EXPECT_NEAR(c.beta, 0.0, 1e-15);

  // widening along the vertical axis moves along the alpha axis
  const auto w = vispace::half_plane_to_disk(GaussianPoint(0.0, 3.0 / kSqrt2));
  EXPECT_NEAR(w.beta, 0.0, 1e-15);
  EXPECT_NEAR(w.alpha, 1.0, 1e-12);  // (3i - i)/(3i + i) = 1/2, scaled by 2

  // positive mu lands on the negative beta side
  const auto r = vispace::half_plane_to_disk(GaussianPoint(1.0, 1.0));
  EXPECT_LT(r.beta, 0.0);
}

TEST(DiskMap, RoundTripIsExactToTolerance) {
  std::mt19937 rng(211u);
  std::uniform_real_distribution<double> mu_d(-5.0, 5.0);
  std::uniform_real_distribution<double> sg_d(0.05, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const GaussianPoint p(mu_d(rng), sg_d(rng));
    const auto z = vispace::half_plane_to_disk(p);
    EXPECT_LT(std::hypot(z.alpha, z.beta), 2.0);
    const auto back = vispace::disk_to_half_plane(z);
    EXPECT_NEAR(back.mu, p.mu, 1e-12 * std::max(1.0, std::abs(p.mu)));
    EXPECT_NEAR(back.sigma, p.sigma, 1e-12 * std::max(1.0, p.sigma));
  }
}

TEST(DiskMap, RoundTripFromDiskSide) {
  std::mt19937 rng(223u);
  std::uniform_real_distribution<double> rad(0.0, 1.95);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const double rho = rad(rng), th = ang(rng);
    const DiskPoint z{rho * std::cos(th), rho * std::sin(th)};
    const auto p = vispace::disk_to_half_plane(z);
    const auto back = vispace::half_plane_to_disk(p);
    EXPECT_NEAR(back.alpha, z.alpha, 1e-12);
    EXPECT_NEAR(back.beta, z.beta, 1e-12);
  }
}

TEST(DiskMap, RejectsIdealAndExteriorPoints) {
  EXPECT_THROW(vispace::disk_to_half_plane(DiskPoint{2.0, 0.0}),
               std::domain_error);
  EXPECT_THROW(vispace::disk_to_half_plane(DiskPoint{1.5, 1.5}),
               std::domain_error);
}

TEST(DiskMap, HonorsCurvatureParameter) {
  // with K3 = -4 the disk has unit radius
  const auto z =
      vispace::half_plane_to_disk(GaussianPoint(0.0, 1.0 / kSqrt2), -4.0);
  EXPECT_NEAR(z.alpha, 0.0, 1e-15);
  EXPECT_NEAR(z.beta, 0.0, 1e-15);
  const auto p = vispace::disk_to_half_plane(DiskPoint{0.5, 0.0}, -4.0);
  const auto back = vispace::half_plane_to_disk(p, -4.0);
  EXPECT_NEAR(back.alpha, 0.5, 1e-12);
  EXPECT_THROW(vispace::disk_to_half_plane(DiskPoint{1.2, 0.0}, -4.0),
               std::domain_error);
}

TEST(GeodesicImage, VerticalLineThroughOriginIsAlphaDiameter) {
  const auto img = vispace::geodesic_image_in_disk(VerticalLine{0.0});
  const auto* d = std::get_if<DiskDiameter>(&img);
  ASSERT_NE(d, nullptr);
  EXPECT_NEAR(d->angle, 0.0, 1e-12);
}

TEST(GeodesicImage, UnitArcAtOriginIsBetaDiameter) {
  // the arc through (0, 1/sqrt(2)) maps to a diameter through the center
  const auto img = vispace::geodesic_image_in_disk(CircleArc{0.0, 1.0});
  const auto* d = std::get_if<DiskDiameter>(&img);
  ASSERT_NE(d, nullptr);
  EXPECT_NEAR(d->angle, std::numbers::pi / 2.0, 1e-12);
}

TEST(GeodesicImage, CirclesMeetTheRimAtRightAngles) {
  std::mt19937 rng(227u);
  std::uniform_real_distribution<double> c_d(-3.0, 3.0);
  std::uniform_real_distribution<double> r_d(0.2, 3.0);
  int circles = 0;
  for (int i = 0; i < 50; ++i) {
    const CircleArc arc{c_d(rng), r_d(rng)};
    const auto img = vispace::geodesic_image_in_disk(arc);
    EXPECT_LT(vispace::orthogonality_residual(img), 1e-8);
    circles += std::holds_alternative<DiskCircle>(img);
  }
  EXPECT_GT(circles, 40);  // diameters only arise from centered arcs
}

TEST(GeodesicImage, MappedArcPointsLieOnTheImageCircle) {
  const CircleArc arc{1.2, 0.9};
  const auto img = vispace::geodesic_image_in_disk(arc);
  const auto* circ = std::get_if<DiskCircle>(&img);
  ASSERT_NE(circ, nullptr);
  for (const double t : {0.3, 0.9, 1.5, 2.1, 2.8}) {
    const auto z = vispace::half_plane_to_disk(vispace::circle_point(arc, t));
    const double dist =
        std::hypot(z.alpha - circ->center_alpha, z.beta - circ->center_beta);
    EXPECT_NEAR(dist, circ->radius, 1e-9);
  }
}

TEST(GeodesicImage, OffsetVerticalLineMapsToOrthogonalCircle) {
  const VerticalLine line{2.0};
  const auto img = vispace::geodesic_image_in_disk(line);
  EXPECT_LT(vispace::orthogonality_residual(img), 1e-8);
  const auto* circ = std::get_if<DiskCircle>(&img);
  ASSERT_NE(circ, nullptr);
  for (const double sigma : {0.2, 1.0, 5.0}) {
    const auto z = vispace::half_plane_to_disk(GaussianPoint(2.0, sigma));
    const double dist =
        std::hypot(z.alpha - circ->center_alpha, z.beta - circ->center_beta);
    EXPECT_NEAR(dist, circ->radius, 1e-9);
  }
}

TEST(ConformalFactor, HalfRatioEverywhereAndEveryDirection) {
  std::mt19937 rng(229u);
  std::uniform_real_distribution<double> mu_d(-2.0, 2.0);
  std::uniform_real_distribution<double> sg_d(0.4, 3.0);
  std::uniform_real_distribution<double> th_d(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 25; ++i) {
    const GaussianPoint p(mu_d(rng), sg_d(rng));
    const double th = th_d(rng);
    const double ratio = vispace::conformal_factor_check(
        p, -1.0, 1e-6, std::cos(th), std::sin(th));
    EXPECT_NEAR(ratio, 0.5, 1e-4) << "mu=" << p.mu << " sigma=" << p.sigma;
  }
}

TEST(ConformalFactor, RejectsVanishingStepOrDirection) {
  EXPECT_THROW(
      vispace::conformal_factor_check(GaussianPoint(0.0, 1.0), -1.0, 0.0, 1.0, 0.0),
      std::invalid_argument);
  EXPECT_THROW(
      vispace::conformal_factor_check(GaussianPoint(0.0, 1.0), -1.0, 1e-6, 0.0, 0.0),
      std::invalid_argument);
}

TEST(DiskDistance, ScaledDiskDistanceMatchesFisherRao) {
  std::mt19937 rng(233u);
  std::uniform_real_distribution<double> mu_d(-3.0, 3.0);
  std::uniform_real_distribution<double> sg_d(0.3, 3.0);
  for (int i = 0; i < 200; ++i) {
    const GaussianPoint p(mu_d(rng), sg_d(rng)), q(mu_d(rng), sg_d(rng));
    const auto zp = vispace::half_plane_to_disk(p);
    const auto zq = vispace::half_plane_to_disk(q);
    const double dd = vispace::poincare_disk_distance(zp, zq);
    const double df = vispace::fisher_rao_distance(p, q);
    EXPECT_NEAR(kSqrt2 * dd, df, 1e-9 * std::max(1.0, df));
  }
}

TEST(OrthogonalityResidual, ZeroForDiameters) {
  EXPECT_DOUBLE_EQ(vispace::orthogonality_residual(
                       vispace::DiskCircleDescriptor(DiskDiameter{0.7})),
                   0.0);
}

}  // namespace
