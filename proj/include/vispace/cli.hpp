#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vispace/config.hpp"
#include "vispace/csv.hpp"
#include "vispace/disk_model.hpp"
#include "vispace/experiments.hpp"
#include "vispace/geodesic.hpp"
#include "vispace/luneburg.hpp"
#include "vispace/manifold.hpp"
#include "vispace/svg.hpp"

namespace vispace {
namespace cli_detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

inline std::pair<double, double> parse_pair(const std::string& text,
                                            const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument(what + ": expected 'a,b', got '" + text + "'");
  }
  return {detail::parse_double(parts[0], what), detail::parse_double(parts[1], what)};
}

inline std::vector<double> parse_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) {
    values.push_back(detail::parse_double(part, what));
  }
  return values;
}

inline ObserverProfile resolve_observer(const std::string& name,
                                        const std::string& config_path) {
  if (!config_path.empty()) {
    return find_observer(load_observer_file(config_path), name);
  }
  for (const auto& e : table1_observers()) {
    if (name == e.name) {
      return ObserverProfile(e.name, e.tau, e.nu);
    }
  }
  std::string known;
  for (const auto& e : table1_observers()) {
    if (!known.empty()) {
      known += ", ";
    }
    known += e.name;
  }
  throw std::invalid_argument("unknown observer '" + name +
                              "' (built-in: " + known + ")");
}

// Vertex specs are either a parallax in radians ("0.08") or a multiple of the
// straight-horopter depth ("0.5L0" places the vertex at half of L0, so at
// twice the parallax lambda0).
inline double parse_vertex(const std::string& token, double lambda0) {
  if (token.size() > 2 && token.substr(token.size() - 2) == "L0") {
    const double f = detail::parse_double(token.substr(0, token.size() - 2),
                                          "vertex multiplier");
    if (!(f > 0.0)) {
      throw std::invalid_argument("vertex multiplier must be positive: '" +
                                  token + "'");
    }
    return lambda0 / f;
  }
  const double lam = detail::parse_double(token, "vertex parallax");
  if (!(lam > 0.0)) {
    throw std::invalid_argument("vertex parallax must be positive: '" + token +
                                "'");
  }
  return lam;
}

inline std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::string(buf);
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Fisher information geometry of frameless visual space"};
  app.require_subcommand(1);

  auto* cmd_metric = app.add_subcommand(
      "metric", "Metric tensor at a point, closed form and optional quadrature");
  std::string metric_point;
  bool metric_numeric = false;
  int metric_nodes = 4096;
  double metric_half_width = 12.0;
  cmd_metric->add_option("--point", metric_point, "point as mu,sigma")->required();
  cmd_metric->add_flag("--numeric", metric_numeric,
                       "also evaluate the Fisher integrals by quadrature");
  cmd_metric->add_option("--nodes", metric_nodes, "quadrature nodes");
  cmd_metric->add_option("--half-width", metric_half_width,
                         "quadrature half width in sigmas");

  auto* cmd_distance =
      app.add_subcommand("distance", "Geodesic distance between two points");
  std::string dist_p1, dist_p2;
  cmd_distance->add_option("--p1", dist_p1, "first point as mu,sigma")->required();
  cmd_distance->add_option("--p2", dist_p2, "second point as mu,sigma")->required();

  auto* cmd_geodesic = app.add_subcommand(
      "geodesic", "Geodesic arc through two points, optionally sampled to CSV");
  std::string geo_p1, geo_p2, geo_out;
  std::size_t geo_samples = 33;
  cmd_geodesic->add_option("--p1", geo_p1, "first point as mu,sigma")->required();
  cmd_geodesic->add_option("--p2", geo_p2, "second point as mu,sigma")->required();
  cmd_geodesic->add_option("--samples", geo_samples, "sample count for CSV");
  cmd_geodesic->add_option("--out", geo_out, "CSV output path");

  auto* cmd_map = app.add_subcommand(
      "map", "Map between the half-plane and the Poincare disk");
  std::string map_to_disk, map_to_half;
  double map_k3 = -1.0;
  cmd_map->add_option("--to-disk", map_to_disk, "half-plane point as mu,sigma");
  cmd_map->add_option("--to-half-plane", map_to_half,
                      "disk point as alpha,beta");
  cmd_map->add_option("--K3", map_k3, "curvature constant, negative");

  auto* cmd_horopter = app.add_subcommand(
      "horopter", "Horopter curves for an observer at chosen vertex depths");
  std::string hor_observer, hor_config, hor_vertices = "0.5L0,1L0,2L0";
  std::string hor_csv, hor_svg;
  std::size_t hor_samples = 101;
  double hor_fraction = 0.95;
  cmd_horopter->add_option("--observer", hor_observer, "observer name")->required();
  cmd_horopter->add_option("--config", hor_config, "observer config file");
  cmd_horopter->add_option("--vertices", hor_vertices,
                           "comma list: multiples of L0 (e.g. 0.5L0) or radians");
  cmd_horopter->add_option("--samples", hor_samples, "samples per curve");
  cmd_horopter->add_option("--phi-fraction", hor_fraction,
                           "fraction of the tangency angle to cover");
  cmd_horopter->add_option("--csv", hor_csv, "CSV output path");
  cmd_horopter->add_option("--svg", hor_svg, "SVG output path");

  auto* cmd_table1 = app.add_subcommand(
      "table1", "Straight-line horopter distances for the built-in observers");
  std::string table1_out = "table1.csv";
  cmd_table1->add_option("--out", table1_out, "CSV output path");

  auto* cmd_error = app.add_subcommand(
      "error-sim", "Distance-estimation error across dot separations");
  std::string err_sigma1 = "1.44,-0.04";
  std::string err_separations = "2,4,6,8,10,12,14,16";
  std::string err_csv = "error_curve.csv", err_svg;
  cmd_error->add_option("--sigma1", err_sigma1,
                        "foveal width profile as offset,slope");
  cmd_error->add_option("--separations", err_separations,
                        "comma list of separations in degrees");
  cmd_error->add_option("--csv", err_csv, "CSV output path");
  cmd_error->add_option("--svg", err_svg, "SVG output path");

  auto* cmd_alleys = app.add_subcommand(
      "alleys", "Parallel and distance alleys for an observer");
  std::string alley_observer, alley_config_path;
  double alley_anchor_frac = 0.5, alley_anchor_lambda = 0.0, alley_psi = 0.35;
  std::size_t alley_depths = 12;
  double alley_span = 3.0;
  std::string alley_par = "0.55,0.25", alley_dist = "0.65,0.15";
  std::string alley_csv = "alleys.csv", alley_svg;
  cmd_alleys->add_option("--observer", alley_observer, "observer name")->required();
  cmd_alleys->add_option("--config", alley_config_path, "observer config file");
  cmd_alleys->add_option("--anchor-frac", alley_anchor_frac,
                         "anchor parallax as a fraction of lambda0");
  cmd_alleys->add_option("--anchor-lambda", alley_anchor_lambda,
                         "anchor parallax in radians (overrides --anchor-frac)");
  cmd_alleys->add_option("--anchor-psi", alley_psi, "anchor latitude in radians");
  cmd_alleys->add_option("--depths", alley_depths, "number of depth samples");
  cmd_alleys->add_option("--span", alley_span,
                         "depth range as a multiple of the anchor parallax");
  cmd_alleys->add_option("--parallel-sigma", alley_par,
                         "parallel width profile as offset,slope in "
                         "normalized depth");
  cmd_alleys->add_option("--distance-sigma", alley_dist,
                         "distance width profile as offset,slope in "
                         "normalized depth");
  cmd_alleys->add_option("--csv", alley_csv, "CSV output path");
  cmd_alleys->add_option("--svg", alley_svg, "SVG output path");

  try {
    app.parse(argc, argv);

    if (cmd_metric->parsed()) {
      const auto [mu, sigma] = cli_detail::parse_pair(metric_point, "--point");
      const GaussianPoint p(mu, sigma);
      const MetricTensor2 g = metric_tensor(p);
      std::string line = "g_mumu=" + format_sig9(g.g_mumu) +
                         " g_sigmasigma=" + format_sig9(g.g_sigmasigma) +
                         " g_musigma=" + format_sig9(g.g_musigma);
      if (metric_numeric) {
        const auto numeric =
            fisher_matrix_numeric(p, QuadratureSpec{metric_half_width, metric_nodes});
        line += " | numeric g_mumu=" + format_sig9(numeric.metric.g_mumu) +
                " g_sigmasigma=" + format_sig9(numeric.metric.g_sigmasigma) +
                " g_musigma=" + format_sig9(numeric.metric.g_musigma) +
                " residual=" + format_sig9(numeric.normalization_residual) +
                " nodes=" + std::to_string(numeric.nodes) + " method=" +
                numeric.method;
      }
      std::printf("%s\n", line.c_str());
    } else if (cmd_distance->parsed()) {
      const auto [mu1, sigma1] = cli_detail::parse_pair(dist_p1, "--p1");
      const auto [mu2, sigma2] = cli_detail::parse_pair(dist_p2, "--p2");
      const double d = fisher_rao_distance(GaussianPoint(mu1, sigma1),
                                           GaussianPoint(mu2, sigma2));
      std::printf("%s\n", cli_detail::fmt6(d).c_str());
    } else if (cmd_geodesic->parsed()) {
      const auto [mu1, sigma1] = cli_detail::parse_pair(geo_p1, "--p1");
      const auto [mu2, sigma2] = cli_detail::parse_pair(geo_p2, "--p2");
      const GaussianPoint p1(mu1, sigma1), p2(mu2, sigma2);
      const GeodesicArc arc = geodesic_through(p1, p2);
      const double length = arc_length_between(arc, p1, p2);
      std::string line;
      if (const auto* line_arc = std::get_if<VerticalLine>(&arc)) {
        line = "vertical mu0=" + format_sig9(line_arc->mu0);
      } else {
        const auto& c = std::get<CircleArc>(arc);
        line = "arc center=" + format_sig9(c.center) +
               " radius=" + format_sig9(c.radius);
      }
      line += " length=" + format_sig9(length);
      if (!geo_out.empty()) {
        const auto points = sample_between(arc, p1, p2, geo_samples);
        std::vector<CsvRow> rows;
        rows.reserve(points.size());
        for (const auto& q : points) {
          rows.push_back({format_sig9(q.mu), format_sig9(q.sigma)});
        }
        emit_csv(geo_out, {"mu", "sigma"}, rows);
        line += " csv=" + geo_out + " rows=" + std::to_string(rows.size());
      }
      std::printf("%s\n", line.c_str());
    } else if (cmd_map->parsed()) {
      if (map_to_disk.empty() == map_to_half.empty()) {
        throw std::invalid_argument(
            "map: give exactly one of --to-disk or --to-half-plane");
      }
      if (!map_to_disk.empty()) {
        const auto [mu, sigma] = cli_detail::parse_pair(map_to_disk, "--to-disk");
        const DiskPoint d = half_plane_to_disk(GaussianPoint(mu, sigma), map_k3);
        std::printf("alpha=%s beta=%s\n", format_sig9(d.alpha).c_str(),
                    format_sig9(d.beta).c_str());
      } else {
        const auto [alpha, beta] =
            cli_detail::parse_pair(map_to_half, "--to-half-plane");
        const GaussianPoint p = disk_to_half_plane(DiskPoint{alpha, beta}, map_k3);
        std::printf("mu=%s sigma=%s\n", format_sig9(p.mu).c_str(),
                    format_sig9(p.sigma).c_str());
      }
    } else if (cmd_horopter->parsed()) {
      const ObserverProfile profile =
          cli_detail::resolve_observer(hor_observer, hor_config);
      const double lambda0 = solve_lambda0(profile).lambda0;
      const double L0 = profile.nu / lambda0;
      const auto tokens = cli_detail::split(hor_vertices, ',');
      std::vector<CsvRow> rows;
      std::vector<SvgCurve> curves;
      for (const auto& token : tokens) {
        const double lambda_v = cli_detail::parse_vertex(token, lambda0);
        const auto samples =
            horopter_samples(profile, lambda_v, hor_samples, hor_fraction);
        SvgCurve curve{token, {}};
        curve.points.reserve(samples.size());
        for (const auto& s : samples) {
          rows.push_back({token, format_sig9(s.phi1), format_sig9(s.lambda_),
                          format_sig9(s.x), format_sig9(s.y)});
          curve.points.emplace_back(s.y, s.x);
        }
        curves.push_back(std::move(curve));
      }
      std::string line = "horopter " + profile.name +
                         " lambda0=" + cli_detail::fmt6(lambda0) +
                         " L0=" + cli_detail::fmt6(L0) +
                         " curves=" + std::to_string(curves.size());
      if (!hor_csv.empty()) {
        emit_csv(hor_csv, {"vertex", "phi1", "lambda", "x_cm", "y_cm"}, rows);
        line += " csv=" + hor_csv;
      }
      if (!hor_svg.empty()) {
        emit_svg(hor_svg, curves,
                 SvgStyle{800.0, 600.0, "horopters " + profile.name, "y (cm)",
                          "x (cm)"});
        line += " svg=" + hor_svg;
      }
      std::printf("%s\n", line.c_str());
    } else if (cmd_table1->parsed()) {
      const auto rows = table1_report();
      std::vector<CsvRow> cells;
      cells.reserve(rows.size());
      for (const auto& r : rows) {
        cells.push_back({r.name, format_sig9(r.tau), format_sig9(r.nu),
                         format_sig9(r.observed_L0), format_sig9(r.computed_L0),
                         format_sig9(r.abs_diff)});
      }
      emit_csv(table1_out,
               {"name", "tau", "nu", "observed_L0", "computed_L0", "abs_diff"},
               cells);
      std::printf("table1 rows=%zu csv=%s\n", cells.size(), table1_out.c_str());
    } else if (cmd_error->parsed()) {
      const auto [offset, slope] = cli_detail::parse_pair(err_sigma1, "--sigma1");
      const auto separations =
          cli_detail::parse_list(err_separations, "--separations");
      if (separations.empty()) {
        throw std::invalid_argument("error-sim: no separations given");
      }
      double lo = separations.front(), hi = separations.front();
      for (double s : separations) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
      }
      const SigmaProfile sigma1 =
          SigmaProfile::linear(offset, slope, lo, hi, slope <= 0.0);
      const auto rows = error_curve(sigma1, separations);
      bool monotone = true;
      std::vector<CsvRow> cells;
      SvgCurve curve{"error", {}};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].error < rows[i - 1].error) {
          monotone = false;
        }
        cells.push_back({format_sig9(rows[i].separation_deg),
                         format_sig9(rows[i].sigma1), format_sig9(rows[i].sigma2),
                         format_sig9(rows[i].error)});
        curve.points.emplace_back(rows[i].separation_deg, rows[i].error);
      }
      emit_csv(err_csv, {"separation_deg", "sigma1", "sigma2", "error"}, cells);
      std::string line = "error-sim rows=" + std::to_string(cells.size()) +
                         " monotone=" + (monotone ? "yes" : "no") +
                         " csv=" + err_csv;
      if (!err_svg.empty()) {
        emit_svg(err_svg, {curve},
                 SvgStyle{800.0, 600.0, "distance estimation error",
                          "separation (deg)", "absolute error"});
        line += " svg=" + err_svg;
      }
      std::printf("%s\n", line.c_str());
    } else if (cmd_alleys->parsed()) {
      const ObserverProfile profile =
          cli_detail::resolve_observer(alley_observer, alley_config_path);
      if (alley_depths < 2) {
        throw std::invalid_argument("alleys: need at least 2 depths");
      }
      if (!(alley_span > 1.0)) {
        throw std::invalid_argument("alleys: span must exceed 1");
      }
      double anchor_lambda = alley_anchor_lambda;
      if (anchor_lambda == 0.0) {
        if (!(alley_anchor_frac > 0.0)) {
          throw std::invalid_argument("alleys: anchor fraction must be positive");
        }
        anchor_lambda = alley_anchor_frac * solve_lambda0(profile).lambda0;
      } else if (!(anchor_lambda > 0.0)) {
        throw std::invalid_argument("alleys: anchor parallax must be positive");
      }
      std::vector<double> depth_lambdas;
      depth_lambdas.reserve(alley_depths);
      for (std::size_t k = 0; k < alley_depths; ++k) {
        const double f =
            static_cast<double>(k) / static_cast<double>(alley_depths - 1);
        depth_lambdas.push_back(anchor_lambda * std::pow(alley_span, f));
      }
      const auto [par_offset, par_slope] =
          cli_detail::parse_pair(alley_par, "--parallel-sigma");
      const auto [dist_offset, dist_slope] =
          cli_detail::parse_pair(alley_dist, "--distance-sigma");
      const double domain_hi = alley_span + 1e-9;
      const AlleyConfig config{
          profile,
          anchor_lambda,
          alley_psi,
          std::move(depth_lambdas),
          SigmaProfile::linear(par_offset, par_slope, 1.0 - 1e-9, domain_hi, true),
          SigmaProfile::linear(dist_offset, dist_slope, 1.0 - 1e-9, domain_hi,
                               true)};
      const AlleyResult result = alley_curves(config);

      std::vector<CsvRow> cells;
      const auto add_rows = [&cells](const char* label,
                                     const std::vector<AlleyPoint>& pts) {
        for (const auto& p : pts) {
          cells.push_back({label, format_sig9(p.depth_lambda),
                           format_sig9(p.sigma), format_sig9(p.mu),
                           format_sig9(p.phi1), format_sig9(p.lambda_),
                           format_sig9(p.point.x), format_sig9(p.point.y),
                           format_sig9(p.pair_distance)});
        }
      };
      add_rows("parallel", result.parallel);
      add_rows("distance", result.distance);
      emit_csv(alley_csv,
               {"alley", "depth_lambda", "sigma", "mu", "phi1", "lambda", "x_cm",
                "y_cm", "pair_distance"},
               cells);

      std::size_t outside = 0;
      for (std::size_t i = 0; i < result.parallel.size(); ++i) {
        if (result.parallel[i].point.y > result.distance[i].point.y) {
          ++outside;
        }
      }
      std::string line =
          "alleys " + profile.name + " anchor_lambda=" +
          cli_detail::fmt6(config.anchor_lambda) +
          " dstar_parallel=" + cli_detail::fmt6(result.dstar_parallel) +
          " dstar_distance=" + cli_detail::fmt6(result.dstar_distance) +
          " parallel_outside=" + std::to_string(outside) + "/" +
          std::to_string(result.parallel.size()) + " csv=" + alley_csv;
      if (!alley_svg.empty()) {
        const auto branch = [](const std::vector<AlleyPoint>& pts, double sign) {
          std::vector<std::pair<double, double>> points;
          points.reserve(pts.size());
          for (const auto& p : pts) {
            points.emplace_back(sign * p.point.y, p.point.x);
          }
          return points;
        };
        emit_svg(alley_svg,
                 {SvgCurve{"parallel +y", branch(result.parallel, 1.0)},
                  SvgCurve{"parallel -y", branch(result.parallel, -1.0)},
                  SvgCurve{"distance +y", branch(result.distance, 1.0)},
                  SvgCurve{"distance -y", branch(result.distance, -1.0)}},
                 SvgStyle{800.0, 600.0, "alleys " + profile.name, "y (cm)",
                          "x (cm)"});
        line += " svg=" + alley_svg;
      }
      std::printf("%s\n", line.c_str());
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace vispace
