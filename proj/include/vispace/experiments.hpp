#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vispace/disk_model.hpp"
#include "vispace/luneburg.hpp"
#include "vispace/manifold.hpp"

namespace vispace {

// Receptive-field width against eccentricity, sigma = (ecc + offset) / slope.
// The constant names avoid clashing with the disk chart's alpha and beta.
inline constexpr double kEccOffset = 126.540;
inline constexpr double kEccSlope = 167.785;

inline double sigma2_of_eccentricity(double ecc_deg) {
  if (!std::isfinite(ecc_deg) || ecc_deg < 0.0) {
    throw std::invalid_argument(
        "sigma2_of_eccentricity: eccentricity must be nonnegative");
  }
  return (ecc_deg + kEccOffset) / kEccSlope;
}

// Tuning width as a function of a scalar argument (separation in degrees for
// the error curve, normalized depth for alleys). Either linear or a table
// with linear interpolation; extrapolation is rejected.
class SigmaProfile {
 public:
  struct Linear {
    double offset;
    double slope;
  };
  using TableRows = std::vector<std::pair<double, double>>;

  static SigmaProfile linear(double offset, double slope, double lo, double hi,
                             bool monotone) {
    if (!(lo < hi)) {
      throw std::invalid_argument("SigmaProfile: empty domain");
    }
    const double at_lo = offset + slope * lo;
    const double at_hi = offset + slope * hi;
    if (at_lo <= 0.0 || at_hi <= 0.0) {
      throw std::invalid_argument(
          "SigmaProfile: sigma must stay positive over the domain");
    }
    return SigmaProfile(Linear{offset, slope}, lo, hi, monotone);
  }

  static SigmaProfile table(TableRows rows, bool monotone) {
    if (rows.size() < 2) {
      throw std::invalid_argument("SigmaProfile: table needs at least 2 rows");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].second <= 0.0) {
        throw std::invalid_argument("SigmaProfile: table sigma must be positive");
      }
      if (i > 0 && !(rows[i].first > rows[i - 1].first)) {
        throw std::invalid_argument(
            "SigmaProfile: table abscissae must be strictly increasing");
      }
    }
    const double lo = rows.front().first;
    const double hi = rows.back().first;
    return SigmaProfile(std::move(rows), lo, hi, monotone);
  }

  double operator()(double x) const {
    // Snap to the domain ends across representation noise in the callers'
    // normalized abscissae.
    const double snap = 1e-9 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
    if (x < lo_ - snap || x > hi_ + snap) {
      throw std::invalid_argument("SigmaProfile: argument " + std::to_string(x) +
                                  " outside domain [" + std::to_string(lo_) +
                                  ", " + std::to_string(hi_) + "]");
    }
    x = std::clamp(x, lo_, hi_);
    if (const auto* lin = std::get_if<Linear>(&mode_)) {
      return lin->offset + lin->slope * x;
    }
    const auto& rows = std::get<TableRows>(mode_);
    const auto it = std::upper_bound(
        rows.begin(), rows.end(), x,
        [](double v, const std::pair<double, double>& row) { return v < row.first; });
    if (it == rows.begin()) {
      return rows.front().second;
    }
    if (it == rows.end()) {
      return rows.back().second;
    }
    const auto& hi_row = *it;
    const auto& lo_row = *(it - 1);
    const double f = (x - lo_row.first) / (hi_row.first - lo_row.first);
    return lo_row.second + f * (hi_row.second - lo_row.second);
  }

  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  bool declared_monotone() const { return monotone_; }

 private:
  SigmaProfile(std::variant<Linear, TableRows> mode, double lo, double hi,
               bool monotone)
      : mode_(std::move(mode)), lo_(lo), hi_(hi), monotone_(monotone) {}

  std::variant<Linear, TableRows> mode_;
  double lo_;
  double hi_;
  bool monotone_;
};

// Two-dot separation trial: the foveal dot sits at mu = 0 and the peripheral
// one at mu = separation, with per-dot tuning widths.
struct SeparationTrial {
  double separation_deg;
  double sigma1;
  double sigma2;

  SeparationTrial(double separation, double s1, double s2)
      : separation_deg(separation), sigma1(s1), sigma2(s2) {
    if (!(separation > 0.0) || !(s1 > 0.0) || !(s2 > 0.0)) {
      throw std::invalid_argument("SeparationTrial: all fields must be positive");
    }
  }
};

// Absolute mismatch between the perceived (geodesic) separation and the
// physical one. The physical separation is in degrees while the geodesic
// distance is dimensionless; the subtraction is intentional and literal.
inline double estimation_error(const SeparationTrial& trial) {
  const GaussianPoint foveal(0.0, trial.sigma1);
  const GaussianPoint peripheral(trial.separation_deg, trial.sigma2);
  return std::abs(fisher_rao_distance(foveal, peripheral) - trial.separation_deg);
}

struct ErrorCurveRow {
  double separation_deg;
  double sigma1;
  double sigma2;
  double error;
};

inline std::vector<double> default_separations() {
  return {2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0};
}

// Shipped default for the manually tuned foveal width: linear and decreasing
// over the 2..16 degree range, calibrated only to make the error trend match
// the qualitative shape; not a measured quantity.
inline SigmaProfile default_sigma1_profile() {
  return SigmaProfile::linear(1.44, -0.04, 2.0, 16.0, true);
}

// Error rows across separations; sigma2 follows the eccentricity rule with
// eccentricity equal to the separation.
inline std::vector<ErrorCurveRow> error_curve(
    const SigmaProfile& sigma1_profile, const std::vector<double>& separations) {
  if (separations.empty()) {
    throw std::invalid_argument("error_curve: no separations given");
  }
  std::vector<ErrorCurveRow> rows;
  rows.reserve(separations.size());
  for (double d : separations) {
    if (!(d > 0.0)) {
      throw std::invalid_argument("error_curve: separations must be positive");
    }
    const double s1 = sigma1_profile(d);
    const double s2 = sigma2_of_eccentricity(d);
    rows.push_back(ErrorCurveRow{d, s1, s2, estimation_error(SeparationTrial(d, s1, s2))});
  }
  return rows;
}

struct Table1Entry {
  const char* name;
  double tau;
  double nu;
  double observed_L0;
};

// The nine observers with depth constants, interpupillary distances, and
// experimentally observed straight-line horopter distances.
inline const std::vector<Table1Entry>& table1_observers() {
  static const std::vector<Table1Entry> entries = {
      {"A.J", 10.68, 6.48, 108.0},  {"T.K", 11.69, 6.70, 106.0},
      {"M.K", 8.67, 6.40, 108.0},   {"M.V.S", 7.50, 6.25, 121.0},
      {"B.A", 11.87, 6.40, 137.0},  {"S.V.S", 3.32, 6.60, 44.0},
      {"H.S", 9.70, 6.30, 78.0},    {"K.G", 8.58, 6.90, 82.0},
      {"W.K", 16.90, 5.80, 145.0},
  };
  return entries;
}

struct Table1Row {
  std::string name;
  double tau;
  double nu;
  double observed_L0;
  double computed_L0;
  double abs_diff;
};

inline std::vector<Table1Row> table1_report() {
  std::vector<Table1Row> rows;
  rows.reserve(table1_observers().size());
  for (const auto& e : table1_observers()) {
    const ObserverProfile profile(e.name, e.tau, e.nu);
    const double computed = straight_horopter_distance(profile);
    rows.push_back(Table1Row{e.name, e.tau, e.nu, e.observed_L0, computed,
                             std::abs(computed - e.observed_L0)});
  }
  return rows;
}

// Alley simulation: a fixed far anchor pair plus a sequence of nearer pairs,
// each placed so its pairwise geodesic distance matches the anchor's. The two
// alleys share the construction and differ only in their width profiles,
// which are evaluated at normalized depth lambda / anchor_lambda.
struct AlleyConfig {
  ObserverProfile profile;
  double anchor_lambda;
  double anchor_psi;
  std::vector<double> depth_lambdas;
  SigmaProfile sigma_parallel;
  SigmaProfile sigma_distance;
};

struct AlleyPoint {
  double depth_lambda;    // profile index along the depth sequence
  double sigma;           // tuning width at this depth
  double mu;              // half-plane lateral offset, right branch
  double phi1;            // visual polar angle of the right branch
  double lambda_;         // recovered bipolar parallax
  PhysicalPoint point;    // physical position, y >= 0 branch
  double pair_distance;   // geodesic distance between the mirrored pair
};

struct AlleyResult {
  std::vector<AlleyPoint> parallel;
  std::vector<AlleyPoint> distance;
  double anchor_mu;        // half-plane lateral offset of the anchor pair
  double dstar_parallel;   // anchor pairwise distance, parallel profile
  double dstar_distance;   // anchor pairwise distance, distance profile
};

namespace detail {

inline void validate_alley_config(const AlleyConfig& config) {
  if (!(config.anchor_lambda > 0.0) || !std::isfinite(config.anchor_lambda)) {
    throw std::invalid_argument("AlleyConfig: anchor_lambda must be positive");
  }
  if (config.anchor_psi == 0.0 ||
      std::abs(config.anchor_psi) >= 0.5 * std::numbers::pi) {
    throw std::invalid_argument(
        "AlleyConfig: anchor_psi must be nonzero and inside (-pi/2, pi/2)");
  }
  if (config.depth_lambdas.empty()) {
    throw std::invalid_argument("AlleyConfig: depth sequence is empty");
  }
  if (config.depth_lambdas.front() < config.anchor_lambda * (1.0 - 1e-9)) {
    throw std::invalid_argument(
        "AlleyConfig: depth sequence must start at the anchor parallax");
  }
  for (std::size_t i = 1; i < config.depth_lambdas.size(); ++i) {
    if (!(config.depth_lambdas[i] > config.depth_lambdas[i - 1])) {
      throw std::invalid_argument(
          "AlleyConfig: depth sequence must be strictly increasing");
    }
  }
}

inline std::vector<AlleyPoint> build_alley(const AlleyConfig& config,
                                           const SigmaProfile& widths,
                                           double anchor_mu, double* dstar_out) {
  const double sigma_anchor = widths(1.0);
  const double dstar =
      fisher_rao_distance(GaussianPoint(-anchor_mu, sigma_anchor),
                          GaussianPoint(anchor_mu, sigma_anchor));
  *dstar_out = dstar;
  // Lateral offset keeping the mirrored pair at distance dstar for a given
  // width: d_F((-mu, s), (mu, s)) = sqrt(2) arccosh(1 + mu^2 / s^2).
  const double spread = std::sqrt(std::cosh(dstar / kSqrt2) - 1.0);

  std::vector<AlleyPoint> out;
  out.reserve(config.depth_lambdas.size());
  for (double lambda_k : config.depth_lambdas) {
    const double t = lambda_k / config.anchor_lambda;
    const double sigma_k = widths(t);
    const double mu_k = sigma_k * spread;
    const double pair_d = fisher_rao_distance(GaussianPoint(-mu_k, sigma_k),
                                              GaussianPoint(mu_k, sigma_k));
    // The map sends -mu to positive beta, so the right (y >= 0) physical
    // branch comes from the negative-mu member of the pair.
    const DiskPoint d =
        half_plane_to_disk(GaussianPoint(-mu_k, sigma_k), config.profile.K3);
    const PolarVisual pv = cartesian_to_polar(d.alpha, d.beta);
    if (std::abs(pv.phi) >= 0.5 * std::numbers::pi) {
      throw std::runtime_error(
          "alley_curves: width profile pushes a pair outside the forward "
          "hemifield");
    }
    const double lambda_rec = inverse_luneburg(pv.rho, config.profile);
    const PhysicalPoint p =
        physical_from_bipolar(lambda_rec, pv.phi, config.profile.nu);
    out.push_back(
        AlleyPoint{lambda_k, sigma_k, mu_k, pv.phi, lambda_rec, p, pair_d});
  }
  return out;
}

}  // namespace detail

// Builds both alleys (right halves; mirror y for the left halves).
inline AlleyResult alley_curves(const AlleyConfig& config) {
  detail::validate_alley_config(config);
  const PolarVisual anchor_visual = luneburg_map(
      BipolarPoint(config.anchor_lambda, std::abs(config.anchor_psi)),
      config.profile);
  const auto [ax, ay] = polar_to_cartesian(anchor_visual);
  const GaussianPoint anchor_hp =
      disk_to_half_plane(DiskPoint{ax, ay}, config.profile.K3);
  const double anchor_mu = std::abs(anchor_hp.mu);
  if (anchor_mu <= 0.0) {
    throw std::runtime_error("alley_curves: anchor pair collapses onto the median");
  }

  AlleyResult result{{}, {}, anchor_mu, 0.0, 0.0};
  result.parallel = detail::build_alley(config, config.sigma_parallel, anchor_mu,
                                        &result.dstar_parallel);
  result.distance = detail::build_alley(config, config.sigma_distance, anchor_mu,
                                        &result.dstar_distance);
  return result;
}

// Default configuration: anchor at half the straight-horopter parallax (well
// beyond L0), 12 geometrically spaced depths spanning a factor of 3, and
// linear width profiles that agree at the anchor, the parallel alley growing
// faster.
inline AlleyConfig default_alley_config(const ObserverProfile& profile,
                                        double anchor_psi = 0.35,
                                        std::size_t depths = 12,
                                        double depth_span = 3.0) {
  if (depths < 2) {
    throw std::invalid_argument("default_alley_config: need at least 2 depths");
  }
  if (!(depth_span > 1.0)) {
    throw std::invalid_argument("default_alley_config: span must exceed 1");
  }
  const double lambda_anchor = 0.5 * solve_lambda0(profile).lambda0;
  std::vector<double> depth_lambdas;
  depth_lambdas.reserve(depths);
  for (std::size_t k = 0; k < depths; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(depths - 1);
    depth_lambdas.push_back(lambda_anchor * std::pow(depth_span, f));
  }
  const double hi = depth_span + 1e-9;
  return AlleyConfig{profile,
                     lambda_anchor,
                     anchor_psi,
                     std::move(depth_lambdas),
                     SigmaProfile::linear(0.55, 0.25, 1.0 - 1e-9, hi, true),
                     SigmaProfile::linear(0.65, 0.15, 1.0 - 1e-9, hi, true)};
}

}  // namespace vispace
