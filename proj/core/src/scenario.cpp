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

#include "collcone/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "collcone/error.hpp"

namespace collcone {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kConfigInvalid, where + ": " + what);
}

void check_keys(const YAML::Node& n, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!n.IsMap()) fail(where, "expected a mapping");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : n) {
    const std::string key = kv.first.as<std::string>();
    if (!ok.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

template <typename T>
T get(const YAML::Node& n, const char* key, const std::string& where, T fallback) {
  const YAML::Node v = n[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    fail(where + "." + key, "bad value");
  }
}

template <typename T>
T require(const YAML::Node& n, const char* key, const std::string& where) {
  if (!n[key]) fail(where, std::string("missing '") + key + "'");
  return get<T>(n, key, where, T{});
}

Vec3 get_vec3(const YAML::Node& n, const char* key, const std::string& where,
              const Vec3& fallback) {
  const YAML::Node v = n[key];
  if (!v) return fallback;
  if (!v.IsSequence() || v.size() != 3) fail(where + "." + key, "expected [x, y, z]");
  try {
    return Vec3(v[0].as<double>(), v[1].as<double>(), v[2].as<double>());
  } catch (const YAML::Exception&) {
    fail(where + "." + key, "bad number");
  }
}

CompositeKind parse_kind(const std::string& s, const std::string& where) {
  for (CompositeKind k : {CompositeKind::kPure, CompositeKind::kEDH, CompositeKind::kHDE,
                          CompositeKind::kBiconcave, CompositeKind::kBiconvex}) {
    if (s == composite_kind_name(k)) return k;
  }
  fail(where, "unknown shape kind '" + s + "'");
}

ShapeSpec parse_shape(const YAML::Node& n, const std::string& where) {
  check_keys(n, where, {"kind", "semi_axes", "ypr_deg", "delimiter"});
  ShapeSpec s;
  s.kind = parse_kind(get<std::string>(n, "kind", where, "pure"), where + ".kind");
  if (!n["semi_axes"]) fail(where, "missing 'semi_axes'");
  s.semi_axes = get_vec3(n, "semi_axes", where, Vec3::Ones());
  s.ypr_deg = get_vec3(n, "ypr_deg", where, Vec3::Zero());
  if (const YAML::Node d = n["delimiter"]) {
    const std::string dw = where + ".delimiter";
    check_keys(d, dw, {"semi_axes", "ypr_deg", "offset"});
    DelimiterSpec ds;
    if (!d["semi_axes"]) fail(dw, "missing 'semi_axes'");
    ds.semi_axes = get_vec3(d, "semi_axes", dw, Vec3::Ones());
    ds.ypr_deg = get_vec3(d, "ypr_deg", dw, Vec3::Zero());
    ds.offset = get_vec3(d, "offset", dw, Vec3::Zero());
    s.delimiter = ds;
  }
  return s;
}

MotionSpec parse_motion(const YAML::Node& n, const std::string& where) {
  MotionSpec m;
  if (!n["position"]) fail(where, "missing 'position'");
  m.position = get_vec3(n, "position", where, Vec3::Zero());
  m.speed = get<double>(n, "speed", where, 0.0);
  if (const YAML::Node h = n["heading_deg"]) {
    if (!h.IsSequence() || h.size() != 2) {
      fail(where + ".heading_deg", "expected [azimuth, elevation]");
    }
    m.azimuth_deg = h[0].as<double>();
    m.elevation_deg = h[1].as<double>();
  }
  return m;
}

ObstacleSpec parse_obstacle(const YAML::Node& o, const std::string& w,
                            const std::string& default_name) {
  check_keys(o, w, {"name", "shape", "point_cloud", "position", "speed", "heading_deg",
                    "activation_time", "morph"});
  ObstacleSpec spec;
  spec.name = get<std::string>(o, "name", w, default_name);
  if (o["shape"]) spec.shape = parse_shape(o["shape"], w + ".shape");
  if (const YAML::Node pc = o["point_cloud"]) {
    const std::string pw = w + ".point_cloud";
    check_keys(pc, pw, {"file", "radius", "half_height", "count", "seed"});
    CloudSpec c;
    c.file = get<std::string>(pc, "file", pw, "");
    c.radius = get<double>(pc, "radius", pw, 0.0);
    c.half_height = get<double>(pc, "half_height", pw, 0.0);
    c.count = get<int>(pc, "count", pw, c.count);
    c.seed = get<std::uint64_t>(pc, "seed", pw, c.seed);
    spec.cloud = c;
  }
  spec.motion = parse_motion(o, w);
  spec.activation_time = get<double>(o, "activation_time", w, 0.0);
  if (const YAML::Node m = o["morph"]) {
    const std::string mw = w + ".morph";
    check_keys(m, mw, {"start", "end", "vertex_from", "vertex_to"});
    MorphSpec ms;
    ms.start = require<double>(m, "start", mw);
    ms.end = require<double>(m, "end", mw);
    ms.vertex_from = require<double>(m, "vertex_from", mw);
    ms.vertex_to = require<double>(m, "vertex_to", mw);
    spec.morph = ms;
  }
  return spec;
}

void parse_agent(const YAML::Node& root, ShapeSpec& shape, MotionSpec& motion) {
  const YAML::Node agent = root["agent"];
  if (!agent) fail("scenario", "missing 'agent'");
  check_keys(agent, "agent", {"shape", "position", "speed", "heading_deg"});
  if (!agent["shape"]) fail("agent", "missing 'shape'");
  shape = parse_shape(agent["shape"], "agent.shape");
  motion = parse_motion(agent, "agent");
}

YAML::Node load_yaml(const std::string& text, const std::string& what) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(what, std::string("YAML parse error: ") + e.what());
  }
}

std::string slurp(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot open " + what + " " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parent_dir(const std::string& path) {
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  return dir.empty() ? "." : dir.string();
}

Mat3 ypr_rotation(const Vec3& deg) {
  return rotation_from_ypr(deg[0] * kDeg, deg[1] * kDeg, deg[2] * kDeg);
}

}  // namespace

const char* mode_name(Mode m) {
  return m == Mode::kCooperative ? "cooperative" : "noncooperative";
}

double MorphSpec::vertex_at(double t) const {
  if (!(end > start)) return t < start ? vertex_from : vertex_to;
  const double s = std::clamp((t - start) / (end - start), 0.0, 1.0);
  return vertex_from + s * (vertex_to - vertex_from);
}

Vec3 MotionSpec::velocity() const {
  const double az = azimuth_deg * kDeg;
  const double el = elevation_deg * kDeg;
  return speed * Vec3(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
}

Scenario parse_scenario(const std::string& yaml_text, const std::string& base_dir) {
  const YAML::Node root = load_yaml(yaml_text, "scenario");
  check_keys(root, "scenario",
             {"name", "mode", "planes", "dt", "duration", "seed", "guidance", "agent",
              "obstacles"});
  Scenario sc;
  sc.base_dir = base_dir;
  sc.name = get<std::string>(root, "name", "scenario", sc.name);
  const std::string mode = get<std::string>(root, "mode", "scenario", "noncooperative");
  if (mode == "cooperative") {
    sc.mode = Mode::kCooperative;
  } else if (mode != "noncooperative") {
    fail("scenario.mode", "expected noncooperative or cooperative");
  }
  sc.planes = get<int>(root, "planes", "scenario", sc.planes);
  sc.dt = get<double>(root, "dt", "scenario", sc.dt);
  sc.duration = get<double>(root, "duration", "scenario", sc.duration);
  sc.seed = get<std::uint64_t>(root, "seed", "scenario", sc.seed);

  if (const YAML::Node g = root["guidance"]) {
    const std::string w = "guidance";
    check_keys(g, w, {"K", "w", "mu", "plane_rule", "rate_window", "accel_limit",
                      "release_hold", "coast_outside"});
    GuidanceConfig& c = sc.guidance;
    c.k_gain = get<double>(g, "K", w, c.k_gain);
    c.w_ref = get<double>(g, "w", w, c.w_ref);
    c.mu = get<double>(g, "mu", w, c.mu);
    c.plane_rule = parse_plane_rule(get<std::string>(g, "plane_rule", w, "max_psi"));
    c.rate_window = get<int>(g, "rate_window", w, c.rate_window);
    c.accel_limit = get<double>(g, "accel_limit", w, c.accel_limit);
    c.release_hold = get<double>(g, "release_hold", w, c.release_hold);
    c.coast_outside = get<bool>(g, "coast_outside", w, c.coast_outside);
  }

  parse_agent(root, sc.agent_shape, sc.agent_motion);

  const YAML::Node obs = root["obstacles"];
  if (obs && !obs.IsSequence()) fail("obstacles", "expected a list");
  for (std::size_t i = 0; obs && i < obs.size(); ++i) {
    sc.obstacles.push_back(parse_obstacle(obs[i], "obstacles[" + std::to_string(i) + "]",
                                          "obstacle" + std::to_string(i)));
  }
  validate_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(slurp(path, "scenario"), parent_dir(path));
}

GeometryCase parse_geometry(const std::string& yaml_text, const std::string& base_dir) {
  const YAML::Node root = load_yaml(yaml_text, "geometry");
  check_keys(root, "geometry", {"planes", "agent", "obstacle"});
  GeometryCase g;
  g.base_dir = base_dir;
  g.planes = get<int>(root, "planes", "geometry", g.planes);
  if (g.planes < 1) fail("geometry.planes", "must be >= 1");
  parse_agent(root, g.agent_shape, g.agent_motion);
  if (!root["obstacle"]) fail("geometry", "missing 'obstacle'");
  g.obstacle = parse_obstacle(root["obstacle"], "obstacle", "B");
  if (g.obstacle.shape.has_value() == g.obstacle.cloud.has_value()) {
    fail("obstacle", "needs exactly one of 'shape' or 'point_cloud'");
  }
  return g;
}

GeometryCase load_geometry(const std::string& path) {
  return parse_geometry(slurp(path, "geometry"), parent_dir(path));
}

Body build_body(const ObstacleSpec& o, const std::string& base_dir, double t) {
  if (o.shape) {
    std::optional<double> vertex;
    if (o.morph) vertex = o.morph->vertex_at(t);
    return build_shape(*o.shape, o.motion.position, vertex);
  }
  return PointCloud{o.motion.position, load_cloud(*o.cloud, base_dir)};
}

CompositeShape build_shape(const ShapeSpec& s, const Vec3& center,
                           std::optional<double> delimiter_vertex) {
  const Mat3 rot = ypr_rotation(s.ypr_deg);
  const QuadricMatrix primary =
      build_quadric(center, s.semi_axes, rot, QuadricClass::kEllipsoid);
  std::optional<QuadricMatrix> delim;
  if (s.delimiter) {
    Vec3 axes = s.delimiter->semi_axes;
    if (delimiter_vertex) axes[2] = *delimiter_vertex;
    const QuadricClass cls = s.kind == CompositeKind::kBiconvex
                                 ? QuadricClass::kOneSheetHyperboloid
                                 : QuadricClass::kTwoSheetHyperboloid;
    delim = build_quadric(center + rot * s.delimiter->offset, axes,
                          rot * ypr_rotation(s.delimiter->ypr_deg), cls);
  }
  return make_composite(s.kind, primary, delim, center);
}

std::vector<Vec3> load_cloud(const CloudSpec& c, const std::string& base_dir) {
  if (!c.file.empty()) {
    std::filesystem::path p(c.file);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return read_point_cloud_csv(p.string());
  }
  return pentagonal_bipyramid_cloud(c.radius, c.half_height, c.count, c.seed);
}

void validate_scenario(const Scenario& sc) {
  if (!(sc.duration > 0.0)) fail("scenario.duration", "must be positive");
  if (!(sc.dt > 0.0) || sc.dt > sc.duration) fail("scenario.dt", "must be in (0, duration]");
  if (sc.planes < 1) fail("scenario.planes", "must be >= 1");
  sc.guidance.validate();
  if (sc.agent_shape.kind == CompositeKind::kHDE) {
    fail("agent.shape", "agent needs an ellipsoid-bounded shape");
  }
  build_shape(sc.agent_shape, sc.agent_motion.position);
  double last_activation = -std::numeric_limits<double>::infinity();
  for (const ObstacleSpec& o : sc.obstacles) {
    const std::string w = "obstacle " + o.name;
    if (o.shape.has_value() == o.cloud.has_value()) {
      fail(w, "needs exactly one of 'shape' or 'point_cloud'");
    }
    if (o.activation_time < last_activation) {
      fail(w, "activation times must be non-decreasing");
    }
    last_activation = o.activation_time;
    if (o.shape) {
      if (o.shape->kind == CompositeKind::kHDE) fail(w, "hde obstacles are not supported");
      try {
        build_shape(*o.shape, o.motion.position);
        if (o.morph) {
          build_shape(*o.shape, o.motion.position, o.morph->vertex_from);
          build_shape(*o.shape, o.motion.position, o.morph->vertex_to);
        }
      } catch (const Error& e) {
        fail(w, e.what());
      }
      if (o.morph && !o.shape->delimiter) fail(w, "morph needs a delimiter");
    } else {
      if (o.morph) fail(w, "point clouds cannot morph");
      if (o.cloud->file.empty() &&
          (!(o.cloud->radius > 0.0) || !(o.cloud->half_height > 0.0) || o.cloud->count < 2)) {
        fail(w, "generated cloud needs radius, half_height > 0 and count >= 2");
      }
      if (!o.cloud->file.empty()) load_cloud(*o.cloud, sc.base_dir);
    }
  }
}

std::vector<std::string> describe_scenario(const Scenario& sc) {
  std::vector<std::string> out;
  const auto add = [&](const std::string& k, const auto& v) {
    std::ostringstream os;
    os.precision(12);
    os << std::boolalpha;
    os << k << '=' << v;
    out.push_back(os.str());
  };
  const auto vec = [](const Vec3& v) {
    std::ostringstream os;
    os.precision(12);
    os << '[' << v.x() << ',' << v.y() << ',' << v.z() << ']';
    return os.str();
  };
  const auto heading = [](const MotionSpec& m) {
    std::ostringstream os;
    os << '[' << m.azimuth_deg << ',' << m.elevation_deg << ']';
    return os.str();
  };
  add("name", sc.name);
  add("mode", mode_name(sc.mode));
  add("planes", sc.planes);
  add("dt", sc.dt);
  add("duration", sc.duration);
  add("seed", sc.seed);
  add("guidance.K", sc.guidance.k_gain);
  add("guidance.w", sc.guidance.w_ref);
  add("guidance.mu", sc.guidance.mu);
  add("guidance.plane_rule", plane_rule_name(sc.guidance.plane_rule));
  add("guidance.rate_window", sc.guidance.rate_window);
  add("guidance.accel_limit", sc.guidance.accel_limit);
  add("guidance.release_hold", sc.guidance.release_hold);
  add("guidance.coast_outside", sc.guidance.coast_outside);
  add("agent.kind", composite_kind_name(sc.agent_shape.kind));
  add("agent.semi_axes", vec(sc.agent_shape.semi_axes));
  add("agent.position", vec(sc.agent_motion.position));
  add("agent.speed", sc.agent_motion.speed);
  add("agent.heading_deg", heading(sc.agent_motion));
  for (const ObstacleSpec& o : sc.obstacles) {
    const std::string p = "obstacle." + o.name + ".";
    if (o.shape) {
      add(p + "kind", composite_kind_name(o.shape->kind));
      add(p + "semi_axes", vec(o.shape->semi_axes));
      if (o.shape->delimiter) add(p + "delimiter_axes", vec(o.shape->delimiter->semi_axes));
    } else {
      add(p + "kind", "point_cloud");
      add(p + "cloud", o.cloud->file.empty() ? std::string("generated") : o.cloud->file);
    }
    add(p + "position", vec(o.motion.position));
    add(p + "speed", o.motion.speed);
    add(p + "heading_deg", heading(o.motion));
    add(p + "activation_time", o.activation_time);
    if (o.morph) {
      std::ostringstream os;
      os << o.morph->start << ':' << o.morph->end << ':' << o.morph->vertex_from << "->"
         << o.morph->vertex_to;
      add(p + "morph", os.str());
    }
  }
  return out;
}

}  // namespace collcone
