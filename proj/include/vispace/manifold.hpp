#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vispace {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

// Point of the univariate Gaussian family, identified with the open upper
// half-plane {(mu, sigma) : sigma > 0}.
struct GaussianPoint {
  double mu;
  double sigma;

  GaussianPoint(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma)) {
      throw std::invalid_argument("GaussianPoint: coordinates must be finite");
    }
    if (sigma <= 0.0) {
      throw std::invalid_argument("GaussianPoint: sigma must be positive");
    }
  }
};

// Gaussian tuning curve: peak firing rate at the preferred stimulus, falling
// off with the width of the underlying density. peak_rate only scales the
// response; all information-geometric quantities use the normalized density.
struct TuningCurve {
  double peak_rate;
  GaussianPoint point;

  TuningCurve(double peak_rate_, GaussianPoint point_)
      : peak_rate(peak_rate_), point(point_) {
    if (!std::isfinite(peak_rate) || peak_rate <= 0.0) {
      throw std::invalid_argument("TuningCurve: peak_rate must be positive");
    }
  }
};

// Symmetric 2x2 metric at a point; the off-diagonal term is stored once.
struct MetricTensor2 {
  double g_mumu;
  double g_sigmasigma;
  double g_musigma;

  double determinant() const {
    return g_mumu * g_sigmasigma - g_musigma * g_musigma;
  }
};

// Six independent Christoffel symbols, indexed (upper; lower, lower).
struct ChristoffelSymbols2 {
  double mu_mumu;
  double mu_musigma;
  double mu_sigmasigma;
  double sigma_mumu;
  double sigma_musigma;
  double sigma_sigmasigma;
};

// Quadrature used for the numeric Fisher matrix and the KL cross-check.
// Trapezoid on a symmetric window; integrands here decay like a Gaussian, so
// the trapezoid rule converges geometrically in the node count.
struct QuadratureSpec {
  double half_width_sigmas = 12.0;
  int nodes = 4096;
};

struct NumericFisherResult {
  MetricTensor2 metric;
  double normalization_residual;
  int nodes;
  std::string method;
};

inline double tuning_curve_eval(const TuningCurve& tc, double stimulus) {
  const double z = (stimulus - tc.point.mu) / tc.point.sigma;
  return tc.peak_rate * std::exp(-0.5 * z * z);
}

// Normalized density of the point's Gaussian.
inline double normal_density(const GaussianPoint& p, double x) {
  const double z = (x - p.mu) / p.sigma;
  const double norm = 1.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi));
  return norm * std::exp(-0.5 * z * z);
}

// Closed-form Fisher metric: ds^2 = (dmu^2 + 2 dsigma^2) / sigma^2.
inline MetricTensor2 metric_tensor(const GaussianPoint& p) {
  const double inv_s2 = 1.0 / (p.sigma * p.sigma);
  return MetricTensor2{inv_s2, 2.0 * inv_s2, 0.0};
}

// Fisher matrix by direct quadrature of E[score_i * score_j]. Serves as the
// oracle for metric_tensor; the normalization integral guards the window.
inline NumericFisherResult fisher_matrix_numeric(const GaussianPoint& p,
                                                 const QuadratureSpec& quad = {}) {
  if (quad.nodes < 8) {
    throw std::invalid_argument("fisher_matrix_numeric: too few quadrature nodes");
  }
  if (quad.half_width_sigmas <= 0.0) {
    throw std::invalid_argument("fisher_matrix_numeric: half width must be positive");
  }
  const double lo = p.mu - quad.half_width_sigmas * p.sigma;
  const double hi = p.mu + quad.half_width_sigmas * p.sigma;
  const double h = (hi - lo) / (quad.nodes - 1);
  const double s2 = p.sigma * p.sigma;
  const double s3 = s2 * p.sigma;

  double sum_norm = 0.0, sum_mm = 0.0, sum_ss = 0.0, sum_ms = 0.0;
  for (int i = 0; i < quad.nodes; ++i) {
    const double x = lo + h * i;
    const double w = (i == 0 || i == quad.nodes - 1) ? 0.5 : 1.0;
    const double d = x - p.mu;
    const double rho = normal_density(p, x);
    const double score_mu = d / s2;
    const double score_sigma = (d * d - s2) / s3;
    sum_norm += w * rho;
    sum_mm += w * rho * score_mu * score_mu;
    sum_ss += w * rho * score_sigma * score_sigma;
    sum_ms += w * rho * score_mu * score_sigma;
  }
  const double residual = std::abs(sum_norm * h - 1.0);
  if (residual > 1e-6) {
    throw std::runtime_error(
        "fisher_matrix_numeric: quadrature window too small, normalization "
        "residual " + std::to_string(residual));
  }
  return NumericFisherResult{
      MetricTensor2{sum_mm * h, sum_ss * h, sum_ms * h}, residual, quad.nodes,
      "trapezoid"};
}

// KL(p1 || p2) for Gaussians in closed form.
inline double kl_divergence(const GaussianPoint& p1, const GaussianPoint& p2) {
  const double r = p1.sigma / p2.sigma;
  const double dm = p1.mu - p2.mu;
  return std::log(p2.sigma / p1.sigma) +
         (p1.sigma * p1.sigma + dm * dm) / (2.0 * p2.sigma * p2.sigma) - 0.5;
}

// Quadrature mode of the divergence; exists purely as an oracle for the
// closed form. Integrates p1 * ln(p1/p2) over a window centered on p1.
inline double kl_divergence_quadrature(const GaussianPoint& p1,
                                       const GaussianPoint& p2,
                                       const QuadratureSpec& quad = {}) {
  const double spread = std::max(p1.sigma, p2.sigma);
  const double lo = p1.mu - quad.half_width_sigmas * spread;
  const double hi = p1.mu + quad.half_width_sigmas * spread;
  const double h = (hi - lo) / (quad.nodes - 1);
  double sum = 0.0, sum_norm = 0.0;
  for (int i = 0; i < quad.nodes; ++i) {
    const double x = lo + h * i;
    const double w = (i == 0 || i == quad.nodes - 1) ? 0.5 : 1.0;
    const double rho1 = normal_density(p1, x);
    const double z1 = (x - p1.mu) / p1.sigma;
    const double z2 = (x - p2.mu) / p2.sigma;
    // ln(p1/p2) expanded analytically to avoid evaluating a vanishing p2.
    const double log_ratio = std::log(p2.sigma / p1.sigma) +
                             0.5 * (z2 * z2 - z1 * z1);
    sum += w * rho1 * log_ratio;
    sum_norm += w * rho1;
  }
  const double residual = std::abs(sum_norm * h - 1.0);
  if (residual > 1e-6) {
    throw std::runtime_error(
        "kl_divergence_quadrature: quadrature window too small");
  }
  return sum * h;
}

// Nonzero symbols of the Fisher metric's Levi-Civita connection.
inline ChristoffelSymbols2 christoffel_symbols(const GaussianPoint& p) {
  const double inv_s = 1.0 / p.sigma;
  return ChristoffelSymbols2{
      0.0,            // mu_mumu
      -inv_s,         // mu_musigma
      0.0,            // mu_sigmasigma
      0.5 * inv_s,    // sigma_mumu
      0.0,            // sigma_musigma
      -inv_s,         // sigma_sigmasigma
  };
}

// The manifold has constant scalar curvature -1.
inline double scalar_curvature(const GaussianPoint& p) {
  (void)p;
  return -1.0;
}

// Finite-difference scalar curvature from metric samples alone, using the
// orthogonal-coordinates Gauss curvature formula
//   K = -(d_mu(G_mu / sqrt(EG)) + d_sigma(E_sigma / sqrt(EG))) / (2 sqrt(EG))
// with E = g_mumu, G = g_sigmasigma, and R = 2K in two dimensions.
inline double scalar_curvature_numeric(const GaussianPoint& p, double h = 1e-3) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("scalar_curvature_numeric: step must be positive");
  }
  if (h < 1e-6 * p.sigma) {
    throw std::runtime_error(
        "scalar_curvature_numeric: step underflow, cancellation would dominate");
  }
  if (p.sigma <= 2.0 * h) {
    throw std::runtime_error(
        "scalar_curvature_numeric: step too large for this sigma");
  }
  const auto sqrt_eg = [](double mu, double sigma) {
    const MetricTensor2 g = metric_tensor(GaussianPoint(mu, sigma));
    return std::sqrt(g.g_mumu * g.g_sigmasigma);
  };
  const auto term_mu = [&](double mu, double sigma) {
    const double g_plus = metric_tensor(GaussianPoint(mu + h, sigma)).g_sigmasigma;
    const double g_minus = metric_tensor(GaussianPoint(mu - h, sigma)).g_sigmasigma;
    return (g_plus - g_minus) / (2.0 * h) / sqrt_eg(mu, sigma);
  };
  const auto term_sigma = [&](double mu, double sigma) {
    const double e_plus = metric_tensor(GaussianPoint(mu, sigma + h)).g_mumu;
    const double e_minus = metric_tensor(GaussianPoint(mu, sigma - h)).g_mumu;
    return (e_plus - e_minus) / (2.0 * h) / sqrt_eg(mu, sigma);
  };
  const double d_mu = (term_mu(p.mu + h, p.sigma) - term_mu(p.mu - h, p.sigma)) /
                      (2.0 * h);
  const double d_sigma =
      (term_sigma(p.mu, p.sigma + h) - term_sigma(p.mu, p.sigma - h)) / (2.0 * h);
  const double gauss = -(d_mu + d_sigma) / (2.0 * sqrt_eg(p.mu, p.sigma));
  return 2.0 * gauss;
}

// Geodesic distance of the Fisher metric. The arccosh form below is the
// closed-form length of the connecting arc and is symmetric by construction.
inline double fisher_rao_distance(const GaussianPoint& p1,
                                  const GaussianPoint& p2) {
  const double dm = p1.mu - p2.mu;
  const double ds = p1.sigma - p2.sigma;
  const double arg = 1.0 + (0.5 * dm * dm + ds * ds) / (2.0 * p1.sigma * p2.sigma);
  return kSqrt2 * std::acosh(arg);
}

}  // namespace vispace
