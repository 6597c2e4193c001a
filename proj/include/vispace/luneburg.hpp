#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vispace/disk_model.hpp"
#include "vispace/manifold.hpp"

namespace vispace {

// Physical-plane bipolar coordinates: parallax (convergence angle) and
// latitude (mean inclination from the median), both in radians.
struct BipolarPoint {
  double lambda_;
  double psi;

  BipolarPoint(double lambda_in, double psi_in)
      : lambda_(lambda_in), psi(psi_in) {
    if (!std::isfinite(lambda_) || !std::isfinite(psi)) {
      throw std::invalid_argument("BipolarPoint: coordinates must be finite");
    }
    if (lambda_ <= 0.0) {
      throw std::invalid_argument("BipolarPoint: lambda must be positive");
    }
    if (std::abs(psi) >= 0.5 * std::numbers::pi) {
      throw std::invalid_argument("BipolarPoint: |psi| must be below pi/2");
    }
  }
};

// Polar coordinates of visual space; in disk usage rho stays inside the
// basic circle.
struct PolarVisual {
  double rho;
  double phi;
};

// Per-observer constants: depth constant tau, interpupillary distance nu in
// cm, curvature constant K3 with kappa derived from it.
struct ObserverProfile {
  std::string name;
  double tau;
  double nu;
  double K3;

  ObserverProfile(std::string name_, double tau_, double nu_, double K3_ = -1.0)
      : name(std::move(name_)), tau(tau_), nu(nu_), K3(K3_) {
    if (!std::isfinite(tau) || tau <= 0.0) {
      throw std::invalid_argument("ObserverProfile: tau must be positive");
    }
    if (!std::isfinite(nu) || nu <= 0.0) {
      throw std::invalid_argument("ObserverProfile: nu must be positive");
    }
    if (!std::isfinite(K3) || K3 >= 0.0) {
      throw std::invalid_argument("ObserverProfile: K3 must be negative");
    }
  }

  double kappa() const { return std::log(1.0 / (-K3)) / (2.0 * tau); }
};

// Horizontal-plane physical coordinates in cm: x along the median direction,
// y lateral.
struct PhysicalPoint {
  double x;
  double y;
};

inline std::pair<double, double> polar_to_cartesian(const PolarVisual& pv) {
  return {pv.rho * std::cos(pv.phi), pv.rho * std::sin(pv.phi)};
}

inline PolarVisual cartesian_to_polar(double x, double y) {
  return PolarVisual{std::hypot(x, y), std::atan2(y, x)};
}

// Half-plane reading of the polar chart: phi in (0, pi) so sigma > 0.
inline GaussianPoint polar_to_half_plane(const PolarVisual& pv) {
  if (!(pv.phi > 0.0) || !(pv.phi < std::numbers::pi)) {
    throw std::invalid_argument(
        "polar_to_half_plane: phi must lie in (0, pi)");
  }
  return GaussianPoint(pv.rho * std::cos(pv.phi), pv.rho * std::sin(pv.phi));
}

// Egocentric mapping into the disk: rho1 = R_b exp(-tau (lambda + kappa)),
// which reduces to 2 exp(-tau lambda) for every K3, and phi1 = psi.
inline PolarVisual luneburg_map(const BipolarPoint& b,
                                const ObserverProfile& profile) {
  const double rb = basic_radius(profile.K3);
  const double rho = rb * std::exp(-profile.tau * (b.lambda_ + profile.kappa()));
  if (rho >= rb) {
    throw std::domain_error(
        "luneburg_map: stimulus maps onto or outside the basic circle");
  }
  return PolarVisual{rho, b.psi};
}

// Inverse of the radial mapping; valid for rho1 in (0, 2).
inline double inverse_luneburg(double rho1, const ObserverProfile& profile) {
  if (!(rho1 > 0.0) || !(rho1 < 2.0)) {
    throw std::domain_error("inverse_luneburg: rho1 must lie in (0, 2)");
  }
  return -std::log(0.5 * rho1) / profile.tau;
}

struct Lambda0Result {
  double lambda0;
  double residual;
  int iterations;
};

// Parallax of the straight-line horopter: unique root of
//   tan(lambda/2) tanh(tau (lambda + kappa)) - 1 / (4 tau) = 0
// on the bracket [1e-6, 1.5], found by bisection.
inline Lambda0Result solve_lambda0(const ObserverProfile& profile) {
  const double kappa = profile.kappa();
  const auto f = [&](double lam) {
    return std::tan(0.5 * lam) * std::tanh(profile.tau * (lam + kappa)) -
           0.25 / profile.tau;
  };
  double lo = 1e-6, hi = 1.5;
  double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0.0) {
    throw std::runtime_error("solve_lambda0: no sign change in bracket");
  }
  double mid = 0.5 * (lo + hi), fmid = f(mid);
  int iterations = 0;
  while (std::abs(fmid) >= 1e-12 && iterations < 200) {
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
    mid = 0.5 * (lo + hi);
    fmid = f(mid);
    ++iterations;
  }
  if (std::abs(fmid) >= 1e-12) {
    throw std::runtime_error("solve_lambda0: bisection did not converge");
  }
  return Lambda0Result{mid, std::abs(fmid), iterations};
}

// Physical depth of the straight-line horopter, L0 = nu / lambda0, in cm.
inline double straight_horopter_distance(const ObserverProfile& profile) {
  return profile.nu / solve_lambda0(profile).lambda0;
}

// Physical coordinates from bipolar ones:
//   x = nu (cos 2 phi1 + cos lambda) / (2 sin lambda),
//   y = nu sin 2 phi1 / (2 sin lambda).
inline PhysicalPoint physical_from_bipolar(double lambda_, double phi1,
                                           double nu) {
  if (!std::isfinite(lambda_) || !(lambda_ > 0.0) ||
      !(lambda_ < std::numbers::pi)) {
    throw std::invalid_argument(
        "physical_from_bipolar: lambda must lie in (0, pi)");
  }
  if (std::abs(phi1) >= 0.5 * std::numbers::pi) {
    throw std::invalid_argument(
        "physical_from_bipolar: |phi1| must be below pi/2");
  }
  const double s = std::sin(lambda_);
  if (s == 0.0) {
    throw std::domain_error("physical_from_bipolar: sin(lambda) vanishes");
  }
  const double x = nu * (std::cos(2.0 * phi1) + std::cos(lambda_)) / (2.0 * s);
  const double y = nu * std::sin(2.0 * phi1) / (2.0 * s);
  return PhysicalPoint{x, y};
}

struct HoropterSample {
  double phi1;
  double rho1;
  double lambda_;
  double x;
  double y;
};

namespace detail {

// Disk geodesic symmetric about the alpha-axis with its vertex at rho_v:
// circle center (rho_v^2 + R_b^2) / (2 rho_v) on the axis, orthogonal to the
// basic circle. Rays at angle phi meet it while |phi| < acos(R_b / center).
struct HoropterGeometry {
  double center;
  double phi_max;
};

inline HoropterGeometry horopter_geometry(const ObserverProfile& profile,
                                          double lambda_vertex) {
  if (!std::isfinite(lambda_vertex) || lambda_vertex <= 0.0) {
    throw std::invalid_argument("horopter: lambda_vertex must be positive");
  }
  const double rb = basic_radius(profile.K3);
  const double rho_v =
      rb * std::exp(-profile.tau * (lambda_vertex + profile.kappa()));
  if (rho_v >= rb) {
    throw std::domain_error("horopter: vertex on or outside the basic circle");
  }
  const double center = 0.5 * (rho_v * rho_v + rb * rb) / rho_v;
  return HoropterGeometry{center, std::acos(rb / center)};
}

// Near intersection of the ray at angle phi with the horopter circle.
inline double horopter_rho(const HoropterGeometry& geom, double rb, double phi) {
  const double c = geom.center * std::cos(phi);
  const double disc = c * c - rb * rb;
  if (disc < 0.0) {
    throw std::domain_error("horopter: sample angle beyond the tangency angle");
  }
  return c - std::sqrt(disc);
}

inline HoropterSample horopter_sample_at(const ObserverProfile& profile,
                                         const HoropterGeometry& geom,
                                         double phi) {
  const double rb = basic_radius(profile.K3);
  const double rho = horopter_rho(geom, rb, phi);
  const double lambda_ = inverse_luneburg(rho, profile);
  const PhysicalPoint p = physical_from_bipolar(lambda_, phi, profile.nu);
  return HoropterSample{phi, rho, lambda_, p.x, p.y};
}

}  // namespace detail

// Samples the horopter with vertex parallax lambda_vertex, symmetric about
// the median. Angles cover the fraction of the tangency angle given by
// phi_fraction; negative-angle samples mirror the positive ones exactly.
inline std::vector<HoropterSample> horopter_samples(
    const ObserverProfile& profile, double lambda_vertex,
    std::size_t n_samples, double phi_fraction = 0.95) {
  if (n_samples < 3) {
    throw std::invalid_argument("horopter_samples: need at least 3 samples");
  }
  if (!(phi_fraction > 0.0) || !(phi_fraction < 1.0)) {
    throw std::invalid_argument(
        "horopter_samples: phi_fraction must lie in (0, 1)");
  }
  const auto geom = detail::horopter_geometry(profile, lambda_vertex);
  const double span = phi_fraction * geom.phi_max;
  std::vector<HoropterSample> out(n_samples,
                                  HoropterSample{0.0, 0.0, 0.0, 0.0, 0.0});
  const std::size_t last = n_samples - 1;
  for (std::size_t j = 0; j <= last; ++j) {
    const double t = (2.0 * static_cast<double>(j) - static_cast<double>(last)) /
                     static_cast<double>(last);
    if (t < 0.0) {
      continue;  // filled by mirroring below
    }
    out[j] = detail::horopter_sample_at(profile, geom, span * t);
  }
  for (std::size_t j = 0; 2 * j < last; ++j) {
    const HoropterSample& src = out[last - j];
    out[j] = HoropterSample{-src.phi1, src.rho1, src.lambda_, src.x, -src.y};
  }
  return out;
}

inline std::vector<PhysicalPoint> horopter_curve(const ObserverProfile& profile,
                                                 double lambda_vertex,
                                                 std::size_t n_samples,
                                                 double phi_fraction = 0.95) {
  std::vector<PhysicalPoint> pts;
  const auto samples =
      horopter_samples(profile, lambda_vertex, n_samples, phi_fraction);
  pts.reserve(samples.size());
  for (const auto& s : samples) {
    pts.push_back(PhysicalPoint{s.x, s.y});
  }
  return pts;
}

// Median curvature d^2x/dy^2 at y = 0 by Richardson-extrapolated finite
// differences on the exact construction; x is even in phi and y is odd, so
// one-sided samples suffice. Negative for vertices nearer than the
// straight-line distance (concave toward the observer), positive farther.
inline double horopter_median_curvature(const ObserverProfile& profile,
                                        double lambda_vertex,
                                        double dphi = 5e-4) {
  if (!(dphi > 0.0)) {
    throw std::invalid_argument("horopter_median_curvature: dphi must be positive");
  }
  const auto geom = detail::horopter_geometry(profile, lambda_vertex);
  if (2.0 * dphi >= geom.phi_max) {
    throw std::invalid_argument("horopter_median_curvature: dphi too large");
  }
  const auto s0 = detail::horopter_sample_at(profile, geom, 0.0);
  const auto s1 = detail::horopter_sample_at(profile, geom, dphi);
  const auto s2 = detail::horopter_sample_at(profile, geom, 2.0 * dphi);
  const double c1 = 2.0 * (s1.x - s0.x) / (s1.y * s1.y);
  const double c2 = 2.0 * (s2.x - s0.x) / (s2.y * s2.y);
  return (4.0 * c1 - c2) / 3.0;
}

}  // namespace vispace
