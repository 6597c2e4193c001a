#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vispace/manifold.hpp"

namespace vispace {

// Geodesics of the Fisher metric are vertical lines and arcs of the ellipse
// family (mu - center)^2 + 2 sigma^2 = radius^2, which are semicircles in the
// scaled coordinates (mu / sqrt(2), sigma).
struct VerticalLine {
  double mu0;
};

struct CircleArc {
  double center;
  double radius;
};

using GeodesicArc = std::variant<VerticalLine, CircleArc>;

// Residual of the arc's defining equation at a point; zero on the arc.
inline double arc_residual(const GeodesicArc& arc, const GaussianPoint& p) {
  if (const auto* line = std::get_if<VerticalLine>(&arc)) {
    return std::abs(p.mu - line->mu0);
  }
  const auto& c = std::get<CircleArc>(arc);
  const double dm = p.mu - c.center;
  return std::abs(dm * dm + 2.0 * p.sigma * p.sigma - c.radius * c.radius);
}

// Position plus tangent along a geodesic, parameterized by arc length.
struct GeodesicState {
  double mu;
  double sigma;
  double dmu_ds;
  double dsigma_ds;

  GeodesicState(double mu_, double sigma_, double dmu_ds_, double dsigma_ds_)
      : mu(mu_), sigma(sigma_), dmu_ds(dmu_ds_), dsigma_ds(dsigma_ds_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(dmu_ds) ||
        !std::isfinite(dsigma_ds)) {
      throw std::invalid_argument("GeodesicState: components must be finite");
    }
    if (sigma <= 0.0) {
      throw std::invalid_argument("GeodesicState: sigma must be positive");
    }
  }

  // Squared metric speed (dmu^2 + 2 dsigma^2) / sigma^2; 1 on unit-speed states.
  double speed_squared() const {
    return (dmu_ds * dmu_ds + 2.0 * dsigma_ds * dsigma_ds) / (sigma * sigma);
  }
};

// Normalizes a direction at a point to metric unit speed.
inline GeodesicState unit_speed_state(const GaussianPoint& p, double dir_mu,
                                      double dir_sigma) {
  const double n = std::sqrt(dir_mu * dir_mu + 2.0 * dir_sigma * dir_sigma) /
                   p.sigma;
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("unit_speed_state: direction must be nonzero");
  }
  return GeodesicState(p.mu, p.sigma, dir_mu / n, dir_sigma / n);
}

struct GeodesicPath {
  std::vector<GeodesicState> states;
  double arc_length;
};

// Right-hand side of the geodesic equation in arc-length parameterization:
//   mu'' = (2 / sigma) mu' sigma',  sigma'' = -(1 / sigma)(mu'^2 / 2 - sigma'^2).
inline std::pair<double, double> geodesic_ode_rhs(const GeodesicState& s) {
  const double accel_mu = 2.0 / s.sigma * s.dmu_ds * s.dsigma_ds;
  const double accel_sigma =
      -(0.5 * s.dmu_ds * s.dmu_ds - s.dsigma_ds * s.dsigma_ds) / s.sigma;
  return {accel_mu, accel_sigma};
}

namespace detail {

struct OdeVec4 {
  double mu, sigma, dmu, dsigma;
};

inline OdeVec4 ode_rhs_raw(const OdeVec4& y, std::size_t step_index) {
  if (y.sigma <= 0.0) {
    throw std::runtime_error(
        "integrate_geodesic: sigma reached zero near step " +
        std::to_string(step_index) + "; step size too coarse");
  }
  const double accel_mu = 2.0 / y.sigma * y.dmu * y.dsigma;
  const double accel_sigma =
      -(0.5 * y.dmu * y.dmu - y.dsigma * y.dsigma) / y.sigma;
  return OdeVec4{y.dmu, y.dsigma, accel_mu, accel_sigma};
}

inline OdeVec4 ode_axpy(const OdeVec4& y, double a, const OdeVec4& d) {
  return OdeVec4{y.mu + a * d.mu, y.sigma + a * d.sigma, y.dmu + a * d.dmu,
                 y.dsigma + a * d.dsigma};
}

}  // namespace detail

// Classical fixed-step RK4 along arc length. The start tangent is normalized
// to unit speed on entry, so the trajectory's parameter is arc length and the
// accumulated length is steps * h exactly. steps == 0 selects the default
// step of 1e-3.
inline GeodesicPath integrate_geodesic(const GeodesicState& start, double length,
                                       std::size_t steps = 0) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("integrate_geodesic: length must be nonnegative");
  }
  GeodesicState s0 = start;
  const double speed = std::sqrt(start.speed_squared());
  if (!(speed > 0.0)) {
    throw std::invalid_argument("integrate_geodesic: zero tangent");
  }
  s0 = GeodesicState(start.mu, start.sigma, start.dmu_ds / speed,
                     start.dsigma_ds / speed);
  if (length == 0.0) {
    return GeodesicPath{{s0}, 0.0};
  }
  if (steps == 0) {
    steps = static_cast<std::size_t>(std::ceil(length / 1e-3));
  }
  const double h = length / static_cast<double>(steps);

  GeodesicPath path;
  path.states.reserve(steps + 1);
  path.states.push_back(s0);
  detail::OdeVec4 y{s0.mu, s0.sigma, s0.dmu_ds, s0.dsigma_ds};
  for (std::size_t i = 0; i < steps; ++i) {
    const auto k1 = detail::ode_rhs_raw(y, i);
    const auto k2 = detail::ode_rhs_raw(detail::ode_axpy(y, 0.5 * h, k1), i);
    const auto k3 = detail::ode_rhs_raw(detail::ode_axpy(y, 0.5 * h, k2), i);
    const auto k4 = detail::ode_rhs_raw(detail::ode_axpy(y, h, k3), i);
    y.mu += h / 6.0 * (k1.mu + 2.0 * k2.mu + 2.0 * k3.mu + k4.mu);
    y.sigma += h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma);
    y.dmu += h / 6.0 * (k1.dmu + 2.0 * k2.dmu + 2.0 * k3.dmu + k4.dmu);
    y.dsigma +=
        h / 6.0 * (k1.dsigma + 2.0 * k2.dsigma + 2.0 * k3.dsigma + k4.dsigma);
    if (y.sigma <= 0.0) {
      throw std::runtime_error(
          "integrate_geodesic: sigma reached zero at step " +
          std::to_string(i + 1) + "; step size too coarse");
    }
    path.states.emplace_back(y.mu, y.sigma, y.dmu, y.dsigma);
  }
  path.arc_length = length;
  return path;
}

// First integral P = 2 sigma sigma' / mu' + mu, constant along non-vertical
// geodesics and equal to the circle center of the arc being traced.
inline double conserved_quantity(const GeodesicState& s) {
  if (std::abs(s.dmu_ds) <= 1e-12) {
    throw std::domain_error(
        "conserved quantity undefined for vertical geodesics");
  }
  return 2.0 * s.sigma * s.dsigma_ds / s.dmu_ds + s.mu;
}

// Unique geodesic through two distinct points.
inline GeodesicArc geodesic_through(const GaussianPoint& p1,
                                    const GaussianPoint& p2) {
  if (std::abs(p1.mu - p2.mu) <= 1e-12) {
    if (std::abs(p1.sigma - p2.sigma) <= 1e-12) {
      throw std::invalid_argument("degenerate geodesic");
    }
    return VerticalLine{0.5 * (p1.mu + p2.mu)};
  }
  const double num = p1.mu * p1.mu + 2.0 * p1.sigma * p1.sigma -
                     p2.mu * p2.mu - 2.0 * p2.sigma * p2.sigma;
  const double c = num / (2.0 * (p1.mu - p2.mu));
  const double dm = p1.mu - c;
  const double r = std::sqrt(dm * dm + 2.0 * p1.sigma * p1.sigma);
  return CircleArc{c, r};
}

// Angle parameterization of a CircleArc: mu = c + r cos t, sigma = (r/sqrt(2))
// sin t with t in (0, pi). Arc length grows with t.
inline double circle_angle_of(const CircleArc& arc, const GaussianPoint& p) {
  return std::atan2(kSqrt2 * p.sigma, p.mu - arc.center);
}

inline GaussianPoint circle_point(const CircleArc& arc, double t) {
  return GaussianPoint(arc.center + arc.radius * std::cos(t),
                       arc.radius / kSqrt2 * std::sin(t));
}

// Unit-speed tangent at angle t, oriented toward increasing t.
inline GeodesicState circle_tangent(const CircleArc& arc, double t) {
  const GaussianPoint p = circle_point(arc, t);
  const double st = std::sin(t);
  const double ct = std::cos(t);
  return GeodesicState(p.mu, p.sigma, -arc.radius * st * st / kSqrt2,
                       0.5 * arc.radius * st * ct);
}

// Closed-form arc length between two points known to lie on the arc.
inline double arc_length_between(const GeodesicArc& arc, const GaussianPoint& p1,
                                 const GaussianPoint& p2) {
  if (std::get_if<VerticalLine>(&arc) != nullptr) {
    return kSqrt2 * std::abs(std::log(p2.sigma / p1.sigma));
  }
  const auto& c = std::get<CircleArc>(arc);
  const double t1 = circle_angle_of(c, p1);
  const double t2 = circle_angle_of(c, p2);
  return kSqrt2 * std::abs(std::log(std::tan(0.5 * t2) / std::tan(0.5 * t1)));
}

// Arc length by composite Simpson quadrature of the metric line element,
// independent of the closed form above. n must be odd and >= 3.
inline double arc_length_quadrature(const GeodesicArc& arc,
                                    const GaussianPoint& p1,
                                    const GaussianPoint& p2, int n = 2001) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("arc_length_quadrature: n must be odd and >= 3");
  }
  double a, b;
  // Integrand sqrt(g_ij x'_i x'_j) in the chosen parameter.
  const CircleArc* circ = std::get_if<CircleArc>(&arc);
  if (circ != nullptr) {
    a = circle_angle_of(*circ, p1);
    b = circle_angle_of(*circ, p2);
  } else {
    a = p1.sigma;
    b = p2.sigma;
  }
  const double h = (b - a) / (n - 1);
  const auto integrand = [&](double t) {
    if (circ != nullptr) {
      // |d gamma / dt|^2 = r^2, sigma(t) = (r/sqrt2) sin t.
      return kSqrt2 / std::sin(t);
    }
    return kSqrt2 / t;
  };
  double sum = integrand(a) + integrand(b);
  for (int i = 1; i < n - 1; ++i) {
    sum += integrand(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return std::abs(sum * h / 3.0);
}

// Evenly spaced samples (in the arc parameter) between two points on the arc,
// endpoints included.
inline std::vector<GaussianPoint> sample_between(const GeodesicArc& arc,
                                                 const GaussianPoint& p1,
                                                 const GaussianPoint& p2,
                                                 std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("sample_between: need at least two samples");
  }
  std::vector<GaussianPoint> out;
  out.reserve(n);
  if (const auto* circ = std::get_if<CircleArc>(&arc)) {
    const double t1 = circle_angle_of(*circ, p1);
    const double t2 = circle_angle_of(*circ, p2);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(circle_point(*circ, t1 + f * (t2 - t1)));
    }
    return out;
  }
  const auto& line = std::get<VerticalLine>(arc);
  // Geometric spacing in sigma gives uniform arc-length spacing.
  const double ratio = p2.sigma / p1.sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(GaussianPoint(line.mu0, p1.sigma * std::pow(ratio, f)));
  }
  return out;
}

// Unit-speed state at p1 pointing along the connecting geodesic toward p2.
inline GeodesicState initial_state_towards(const GaussianPoint& p1,
                                           const GaussianPoint& p2) {
  const GeodesicArc arc = geodesic_through(p1, p2);
  if (std::get_if<VerticalLine>(&arc) != nullptr) {
    const double sign = p2.sigma > p1.sigma ? 1.0 : -1.0;
    return unit_speed_state(p1, 0.0, sign);
  }
  const auto& c = std::get<CircleArc>(arc);
  const double t1 = circle_angle_of(c, p1);
  const double t2 = circle_angle_of(c, p2);
  const GeodesicState tangent = circle_tangent(c, t1);
  const double sign = t2 > t1 ? 1.0 : -1.0;
  return GeodesicState(tangent.mu, tangent.sigma, sign * tangent.dmu_ds,
                       sign * tangent.dsigma_ds);
}

}  // namespace vispace
