// Copyright 2026 The Collcone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "collcone/cone.hpp"
#include "collcone/error.hpp"
#include "collcone/montecarlo.hpp"
#include "collcone/scenario.hpp"
#include "collcone/sim.hpp"
#include "collcone/tangents.hpp"

namespace collcone::cli {

namespace {

using nlohmann::json;

struct SimulateArgs {
  std::string scenario;
  std::string out_dir = "out";
  std::optional<int> planes;
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
  std::optional<double> k_gain;
  std::optional<double> w_ref;
  std::optional<double> mu;
};

struct MonteCarloArgs {
  int trials = 200;
  std::vector<int> planes_list{6, 12, 36, 90};
  std::uint64_t seed = 7;
  int threads = 0;
  std::string out;
};

// Tangent case files describe 2-D conics directly.
ConicMatrix parse_conic(const YAML::Node& n, const std::string& what) {
  if (!n || !n.IsMap()) throw Error(ErrorCode::kConfigInvalid, what + ": expected a mapping");
  if (const YAML::Node m = n["conic"]) {
    if (!m.IsSequence() || m.size() != 3) {
      throw Error(ErrorCode::kConfigInvalid, what + ".conic: expected a 3x3 matrix");
    }
    Mat3 c;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) c(i, j) = m[i][j].as<double>();
    }
    return ConicMatrix(c);
  }
  const YAML::Node center = n["center"];
  const YAML::Node axes = n["semi_axes"];
  if (!center || !axes || center.size() != 2 || axes.size() != 2) {
    throw Error(ErrorCode::kConfigInvalid, what + ": need conic or center + semi_axes");
  }
  const double angle = n["angle_deg"] ? n["angle_deg"].as<double>() : 0.0;
  const double a = axes[0].as<double>();
  const double b = axes[1].as<double>();
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kNonPositiveAxis, what + ": semi-axes must be positive");
  }
  return ellipse_conic(Vec2(center[0].as<double>(), center[1].as<double>()), a, b,
                       angle * std::numbers::pi / 180.0);
}

json point_json(const Vec3& p) { return json::array({p.x() / p.z(), p.y() / p.z()}); }

int run_tangents(const std::string& path, std::ostream& out) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfigInvalid, path + ": " + e.what());
  }
  const ConicMatrix a = interior_negative(parse_conic(root["a"], "a"));
  TangentSolution sol;
  Vec2 center_b;
  if (const YAML::Node pts = root["b_points"]) {
    std::vector<Vec2> boundary;
    for (const auto& p : pts) boundary.emplace_back(p[0].as<double>(), p[1].as<double>());
    sol = tangents_ellipse_vs_pointcloud(a, boundary);
    center_b = Vec2::Zero();
    for (const Vec2& p : boundary) center_b += p;
    center_b /= static_cast<double>(std::max<std::size_t>(1, boundary.size()));
  } else {
    const ConicMatrix b = interior_negative(parse_conic(root["b"], "b"));
    std::optional<ConicMatrix> delim;
    if (root["b_delimiter"]) delim = parse_conic(root["b_delimiter"], "b_delimiter");
    const std::string keep = root["keep"] ? root["keep"].as<std::string>() : "positive";
    if (keep != "positive" && keep != "negative") {
      throw Error(ErrorCode::kConfigInvalid, "keep: expected positive or negative");
    }
    sol = tangents_ellipse_vs_biconcave(
        a, b, delim, keep == "positive" ? KeepSide::kPositive : KeepSide::kNegative);
    center_b = conic_center(b);
  }
  const Vec2 los = center_b - conic_center(a);
  PlanarStates geo;
  geo.theta_p = std::atan2(los.y(), los.x());
  const PlanarCone cone = planar_cone_params(sol, geo);

  json j;
  j["intersecting_sections"] = sol.intersecting_sections;
  j["lines"] = json::array();
  for (std::size_t i = 0; i < sol.lines.size(); ++i) {
    const Vec3& l = sol.lines[i].coeffs;
    j["lines"].push_back({{"coeffs", {l.x(), l.y(), l.z()}},
                          {"provenance", provenance_name(sol.lines[i].provenance)},
                          {"touch_a", point_json(sol.touch_a[i])},
                          {"touch_b", point_json(sol.touch_b[i])}});
  }
  j["psi"] = cone.psi;
  j["theta_b"] = cone.theta_b;
  j["engulfing"] = cone.engulfing;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_cone(const std::string& path, std::optional<int> planes, std::ostream& out) {
  const GeometryCase g = load_geometry(path);
  const CompositeShape a = build_shape(g.agent_shape, g.agent_motion.position);
  const Body b = build_body(g.obstacle, g.base_dir);
  const Cone3D c = cone_3d(a, b, g.agent_motion.velocity(), g.obstacle.motion.velocity(),
                           planes.value_or(g.planes));
  out.precision(10);
  out << "j,psi,theta_b,y,v_hat_r,engulfing\n";
  for (const PlaneResult& p : c.planes) {
    out << p.frame.index << ',' << p.cone.psi << ',' << p.cone.theta_b << ',' << p.y.y << ','
        << p.y.v_hat_r << ',' << (p.cone.engulfing ? 1 : 0) << '\n';
  }
  out << "# velocity_plane azimuth=" << c.velocity_plane.azimuth
      << " psi=" << c.velocity_plane.psi << " y=" << c.velocity_plane.y.y
      << " v_hat_r=" << c.velocity_plane.y.v_hat_r << '\n';
  out << "any_collision=" << (c.any_collision ? "true" : "false") << '\n';
  return kExitOk;
}

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  Scenario sc = load_scenario(args.scenario);
  if (args.planes) sc.planes = *args.planes;
  if (args.dt) sc.dt = *args.dt;
  if (args.seed) sc.seed = *args.seed;
  if (args.k_gain) sc.guidance.k_gain = *args.k_gain;
  if (args.w_ref) sc.guidance.w_ref = *args.w_ref;
  if (args.mu) sc.guidance.mu = *args.mu;
  validate_scenario(sc);
  const Telemetry tel = run_scenario(sc);

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  {
    std::ofstream csv(dir / "telemetry.csv");
    if (!csv) throw Error(ErrorCode::kConfigInvalid, "cannot write to " + args.out_dir);
    write_telemetry_csv(tel, csv);
  }
  {
    std::ofstream js(dir / "summary.json");
    js << summary_json(tel.summary);
  }
  out << tel.summary.verdict << '\n';
  if (tel.summary.collision) {
    err << "error: " << error_code_name(ErrorCode::kCollisionOccurred) << ": "
        << tel.summary.verdict << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

int run_montecarlo(const MonteCarloArgs& args, std::ostream& out) {
  MonteCarloConfig cfg;
  cfg.trials = args.trials;
  cfg.n_values = args.planes_list;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  const MonteCarloResult r = monte_carlo_accuracy(cfg);
  if (args.out.empty()) {
    write_montecarlo_csv(r, out);
  } else {
    std::ofstream f(args.out);
    if (!f) throw Error(ErrorCode::kConfigInvalid, "cannot write " + args.out);
    write_montecarlo_csv(r, f);
    out << "wrote " << args.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Collision cones between quadric bodies, and avoidance simulation", "collcone"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COLLCONE_VERSION_STRING));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write telemetry");
  simulate->add_option("scenario", sim.scenario, "Scenario YAML")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim.out_dir, "Output directory")->capture_default_str();
  simulate->add_option("--planes", sim.planes, "Number of section planes")->check(CLI::PositiveNumber);
  simulate->add_option("--dt", sim.dt, "Time step [s]")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--K", sim.k_gain, "Guidance gain [1/s]");
  simulate->add_option("--w", sim.w_ref, "Reference value for y");
  simulate->add_option("--mu", sim.mu, "Cooperative acceleration ratio");

  std::string cone_path;
  std::optional<int> cone_planes;
  auto* cone = app.add_subcommand("cone", "Per-plane cone of a static geometry");
  cone->add_option("geometry", cone_path, "Geometry YAML")->required()->check(CLI::ExistingFile);
  cone->add_option("--planes", cone_planes, "Number of section planes")->check(CLI::PositiveNumber);

  std::string tangent_path;
  auto* tangents = app.add_subcommand("tangents", "Inner common tangents of a 2-D case");
  tangents->add_option("case", tangent_path, "Case YAML or JSON")->required()->check(CLI::ExistingFile);

  MonteCarloArgs mc;
  auto* montecarlo = app.add_subcommand("montecarlo", "Cone area error versus plane count");
  montecarlo->add_option("--trials", mc.trials, "Random geometries")->capture_default_str()->check(CLI::PositiveNumber);
  montecarlo->add_option("--planes-list", mc.planes_list, "Plane counts")->delimiter(',')->capture_default_str();
  montecarlo->add_option("--seed", mc.seed, "Master seed")->capture_default_str();
  montecarlo->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");
  montecarlo->add_option("--out", mc.out, "Output CSV (default stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_path, "Scenario YAML")->required()->check(CLI::ExistingFile);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << COLLCONE_VERSION_STRING << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim, out, err);
    if (*cone) return run_cone(cone_path, cone_planes, out);
    if (*tangents) return run_tangents(tangent_path, out);
    if (*montecarlo) return run_montecarlo(mc, out);
    if (*validate) {
      load_scenario(validate_path);
      out << "OK\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const YAML::Exception& e) {
    err << "error: " << error_code_name(ErrorCode::kConfigInvalid) << ": " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace collcone::cli
