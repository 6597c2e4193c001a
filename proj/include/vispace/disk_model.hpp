#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "vispace/geodesic.hpp"
#include "vispace/manifold.hpp"

namespace vispace {

// Cartesian point of the Poincare disk chart. Valid points lie strictly
// inside the basic circle of radius 2 / sqrt(-K3).
struct DiskPoint {
  double alpha;
  double beta;
};

// Complex coordinate of the half-plane chart: omega = mu + i sqrt(2) sigma.
struct HalfPlaneComplex {
  double re;
  double im;
};

inline double basic_radius(double K3) {
  if (!(K3 < 0.0) || !std::isfinite(K3)) {
    throw std::invalid_argument("basic_radius: K3 must be negative");
  }
  return 2.0 / std::sqrt(-K3);
}

inline HalfPlaneComplex half_plane_complex(const GaussianPoint& p) {
  return HalfPlaneComplex{p.mu, kSqrt2 * p.sigma};
}

// Mobius map omega = i (1 + z) / (1 - z) after normalizing the disk point to
// the unit disk; interior points land strictly inside the upper half-plane.
inline GaussianPoint disk_to_half_plane(const DiskPoint& d, double K3 = -1.0) {
  const double rb = basic_radius(K3);
  const double rho2 = d.alpha * d.alpha + d.beta * d.beta;
  if (rho2 >= rb * rb) {
    throw std::domain_error("ideal point has no half-plane image");
  }
  const std::complex<double> z(d.alpha / rb, d.beta / rb);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> omega = i * (1.0 + z) / (1.0 - z);
  return GaussianPoint(omega.real(), omega.imag() / kSqrt2);
}

// Inverse map z = (omega - i) / (omega + i), scaled back to the basic circle.
inline DiskPoint half_plane_to_disk(const GaussianPoint& p, double K3 = -1.0) {
  const double rb = basic_radius(K3);
  const std::complex<double> omega(p.mu, kSqrt2 * p.sigma);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> z = (omega - i) / (omega + i);
  return DiskPoint{rb * z.real(), rb * z.imag()};
}

// Image of a half-plane geodesic: either a diameter of the basic circle or a
// circle orthogonal to it.
struct DiskDiameter {
  double angle;  // direction of the diameter line through the origin
};

struct DiskCircle {
  double center_alpha;
  double center_beta;
  double radius;
};

using DiskCircleDescriptor = std::variant<DiskDiameter, DiskCircle>;

// Orthogonality defect |center|^2 - radius^2 - R_b^2; zero for circles meeting
// the basic circle at right angles, and for diameters by convention.
inline double orthogonality_residual(const DiskCircleDescriptor& desc,
                                     double K3 = -1.0) {
  const double rb = basic_radius(K3);
  if (std::get_if<DiskDiameter>(&desc) != nullptr) {
    return 0.0;
  }
  const auto& c = std::get<DiskCircle>(desc);
  const double d2 = c.center_alpha * c.center_alpha + c.center_beta * c.center_beta;
  return std::abs(d2 - c.radius * c.radius - rb * rb);
}

namespace detail {

// Boundary extension of the half-plane-to-disk map for an ideal point mu on
// the sigma = 0 axis; lands on the unit circle.
inline std::complex<double> ideal_to_unit_circle(double mu) {
  const std::complex<double> omega(mu, 0.0);
  const std::complex<double> i(0.0, 1.0);
  return (omega - i) / (omega + i);
}

}  // namespace detail

// Maps the two ideal endpoints of the arc through the boundary extension of
// the Mobius map and returns the orthogonal circle (or diameter) through them.
inline DiskCircleDescriptor geodesic_image_in_disk(const GeodesicArc& arc,
                                                   double K3 = -1.0) {
  const double rb = basic_radius(K3);
  std::complex<double> z1, z2;
  if (const auto* line = std::get_if<VerticalLine>(&arc)) {
    z1 = detail::ideal_to_unit_circle(line->mu0);
    z2 = std::complex<double>(1.0, 0.0);  // image of sigma -> infinity
  } else {
    const auto& c = std::get<CircleArc>(arc);
    z1 = detail::ideal_to_unit_circle(c.center - c.radius);
    z2 = detail::ideal_to_unit_circle(c.center + c.radius);
  }
  const std::complex<double> b1 = rb * z1;
  const std::complex<double> b2 = rb * z2;
  // Orthogonal circle center solves <center, b_k> = R_b^2 for both boundary
  // points; a vanishing determinant means the points are antipodal and the
  // image is a diameter.
  const double det = b1.real() * b2.imag() - b1.imag() * b2.real();
  const double scale = rb * rb;
  if (std::abs(det) <= 1e-12 * scale) {
    // Reduce the direction to [0, pi): a diameter is a line, not a ray.
    const double raw = std::atan2(b1.imag(), b1.real());
    return DiskDiameter{std::fmod(raw + 2.0 * std::numbers::pi, std::numbers::pi)};
  }
  const double cx = scale * (b2.imag() - b1.imag()) / det;
  const double cy = scale * (b1.real() - b2.real()) / det;
  const double d2 = cx * cx + cy * cy;
  return DiskCircle{cx, cy, std::sqrt(d2 - scale)};
}

// Ratio of the disk line element to the half-plane line element for a small
// displacement at p; the maps are conformal with a constant factor, so the
// ratio is 0.5 regardless of point or direction.
inline double conformal_factor_check(const GaussianPoint& p, double K3 = -1.0,
                                     double h = 1e-6, double dir_mu = 1.0,
                                     double dir_sigma = 0.0) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("conformal_factor_check: step must be positive");
  }
  const double norm = std::hypot(dir_mu, dir_sigma);
  if (!(norm > 0.0)) {
    throw std::invalid_argument("conformal_factor_check: direction must be nonzero");
  }
  const double dmu = h * dir_mu / norm;
  const double dsigma = h * dir_sigma / norm;
  if (p.sigma + dsigma <= 0.0) {
    throw std::invalid_argument("conformal_factor_check: step leaves the half-plane");
  }
  const GaussianPoint q(p.mu + dmu, p.sigma + dsigma);

  const double ds2_half = (dmu * dmu + 2.0 * dsigma * dsigma) / (p.sigma * p.sigma);

  const double rb = basic_radius(K3);
  const DiskPoint zp = half_plane_to_disk(p, K3);
  const DiskPoint zq = half_plane_to_disk(q, K3);
  const double za = zp.alpha / rb, zb = zp.beta / rb;
  const double da = (zq.alpha - zp.alpha) / rb;
  const double db = (zq.beta - zp.beta) / rb;
  const double dz2 = da * da + db * db;
  if (dz2 < 1e3 * std::numeric_limits<double>::epsilon() *
                 std::numeric_limits<double>::epsilon()) {
    throw std::runtime_error(
        "conformal_factor_check: step too small, cancellation dominates");
  }
  const double one_minus = 1.0 - (za * za + zb * zb);
  const double ds2_disk = 4.0 * dz2 / (one_minus * one_minus);
  return ds2_disk / ds2_half;
}

// Hyperbolic distance between disk points in the normalized unit-disk chart.
// The half-plane Fisher distance equals sqrt(2) times this value.
inline double poincare_disk_distance(const DiskPoint& a, const DiskPoint& b,
                                     double K3 = -1.0) {
  const double rb = basic_radius(K3);
  const double ax = a.alpha / rb, ay = a.beta / rb;
  const double bx = b.alpha / rb, by = b.beta / rb;
  const double na = ax * ax + ay * ay;
  const double nb = bx * bx + by * by;
  if (na >= 1.0 || nb >= 1.0) {
    throw std::domain_error("poincare_disk_distance: point outside the disk");
  }
  const double dx = ax - bx, dy = ay - by;
  const double d2 = dx * dx + dy * dy;
  return std::acosh(1.0 + 2.0 * d2 / ((1.0 - na) * (1.0 - nb)));
}

}  // namespace vispace
