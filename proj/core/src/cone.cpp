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

#include "collcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collcone/error.hpp"

namespace collcone {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

PlanarCone engulfing_cone(double theta_p, int frame_index) {
  PlanarCone c;
  c.psi = kPi;
  c.theta_b = theta_p;
  c.engulfing = true;
  c.frame_index = frame_index;
  c.tangents.intersecting_sections = true;
  return c;
}

ConicMatrix ellipse_section(const QuadricMatrix& q, const PlaneFrame& f) {
  const ConicMatrix m = section_conic(q, f);
  if (classify_conic(m) != ConicClass::kEllipse) {
    throw Error(ErrorCode::kDegenerateConic, "section through center is not an ellipse");
  }
  return interior_negative(m);
}

void require_ellipsoid_primary(const CompositeShape& s, const char* who) {
  if (s.primary_class != QuadricClass::kEllipsoid) {
    throw Error(ErrorCode::kUnsupportedShape,
                std::string(who) + " needs an ellipsoid primary quadric");
  }
}

// Slab of cloud points around the plane, in plane coordinates.
std::vector<Vec2> cloud_slice(const PointCloud& c, const PlaneFrame& f) {
  std::vector<Vec2> out;
  if (c.offsets.empty()) return out;
  const Vec3 normal = f.normal().normalized();
  double r = 0.0;
  for (const Vec3& o : c.offsets) r = std::max(r, o.norm());
  double h = std::sqrt(4.0 * kPi * r * r / static_cast<double>(c.offsets.size()));
  for (int attempt = 0; attempt < 8; ++attempt, h *= 2.0) {
    out.clear();
    for (const Vec3& o : c.offsets) {
      const Vec3 p = c.center + o;
      if (std::abs((p - f.origin).dot(normal)) < h) out.push_back(f.to_local(p));
    }
    if (out.size() >= 2) break;
  }
  return out;
}

PlanarCone plane_cone_once(const CompositeShape& a, const Body& b, const PlaneFrame& f) {
  PlanarStates geo;
  geo.theta_p = std::atan2((body_center(b) - f.origin).dot(f.r_y),
                           (body_center(b) - f.origin).dot(f.r_x));
  const ConicMatrix sec_a = ellipse_section(a.primary, f);
  TangentSolution t;
  try {
    if (const auto* s = std::get_if<CompositeShape>(&b)) {
      const ConicMatrix sec_b = ellipse_section(s->primary, f);
      std::optional<ConicMatrix> sec_h;
      KeepSide keep = KeepSide::kPositive;
      if (s->delimiter) {
        sec_h = section_conic(*s->delimiter, f);
        if (classify_quadric(*s->delimiter) == QuadricClass::kOneSheetHyperboloid) {
          keep = KeepSide::kNegative;
        }
      }
      t = tangents_ellipse_vs_biconcave(sec_a, sec_b, sec_h, keep);
    } else {
      const std::vector<Vec2> slice = cloud_slice(std::get<PointCloud>(b), f);
      t = tangents_ellipse_vs_pointcloud(sec_a, slice);
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kCornerFilterEmpty:
      case ErrorCode::kCloudIntersectsEllipse:
      case ErrorCode::kSearchExhausted:
        return engulfing_cone(geo.theta_p, f.index);
      default:
        throw;
    }
  }
  PlanarCone c = planar_cone_params(t, geo);
  c.frame_index = f.index;
  return c;
}

// Boundary angle samples at azimuths k*pi/n, k = 0..2n-1.
std::vector<double> boundary_samples(const Cone3D& c) {
  const int n = static_cast<int>(c.planes.size());
  std::vector<double> lam(2 * n);
  for (int j = 0; j < n; ++j) {
    lam[j] = boundary_angle_positive(c.planes[j].cone, c.planes[j].states);
    lam[j + n] = boundary_angle_negative(c.planes[j].cone, c.planes[j].states);
  }
  return lam;
}

double interpolate_periodic(const std::vector<double>& samples, double azimuth) {
  const int m = static_cast<int>(samples.size());
  const double step = 2.0 * kPi / m;
  double u = std::fmod(azimuth, 2.0 * kPi);
  if (u < 0.0) u += 2.0 * kPi;
  const double pos = u / step;
  const int i = static_cast<int>(std::floor(pos)) % m;
  const double frac = pos - std::floor(pos);
  return (1.0 - frac) * samples[i] + frac * samples[(i + 1) % m];
}

}  // namespace

PlanarStates project_states(const PlaneFrame& f, const Vec3& rel_pos,
                            const Vec3& vel_a, const Vec3& vel_b) {
  PlanarStates s;
  s.r_p = rel_pos.norm();
  s.theta_p = std::atan2(rel_pos.dot(f.r_y), rel_pos.dot(f.r_x));
  const Vec3 v = vel_b - vel_a;
  const Vec3 r_hat = rel_pos / s.r_p;
  s.v_rp = v.dot(r_hat);
  s.v_theta_p = (v - s.v_rp * r_hat).dot(f.r_x);
  s.heading_a = std::atan2(vel_a.dot(f.r_y), vel_a.dot(f.r_x));
  s.heading_b = std::atan2(vel_b.dot(f.r_y), vel_b.dot(f.r_x));
  return s;
}

PlanarCone planar_cone_params(const TangentSolution& t, const PlanarStates& s) {
  if (t.intersecting_sections || t.lines.size() != 2) {
    return engulfing_cone(s.theta_p, 0);
  }
  PlanarCone c;
  c.tangents = t;
  std::array<Vec2, 2> rays;
  const Vec3 o = t.lines[0].coeffs.cross(t.lines[1].coeffs);
  const bool parallel = std::abs(o.z()) <= 1e-10 * o.norm();
  for (int i = 0; i < 2; ++i) {
    const Vec2 tb = t.touch_b[i].head<2>() / t.touch_b[i].z();
    const Vec2 ta = t.touch_a[i].head<2>() / t.touch_a[i].z();
    Vec2 dir = t.lines[i].direction();
    if (!parallel) {
      const Vec2 from_o = tb - o.head<2>() / o.z();
      if (from_o.norm() > 1e-12 * (1.0 + tb.norm())) dir = from_o;
    }
    if (dir.dot(tb - ta) < 0.0) dir = -dir;
    if (!(dir.norm() > 0.0)) {
      throw Error(ErrorCode::kParallelTangents, "cannot orient sector ray");
    }
    rays[i] = dir.normalized();
  }
  c.psi = std::acos(std::clamp(rays[0].dot(rays[1]), -1.0, 1.0));
  const Vec2 mid = rays[0] + rays[1];
  c.theta_b = mid.norm() > 1e-15 ? std::atan2(mid.y(), mid.x()) : s.theta_p;
  return c;
}

YValue y_value(const PlanarStates& s, const PlanarCone& c) {
  const double v2 = s.v_rp * s.v_rp + s.v_theta_p * s.v_theta_p;
  if (!(v2 > 0.0)) {
    throw Error(ErrorCode::kZeroRelativeSpeed, "relative velocity is zero in plane");
  }
  const double d = s.theta_p - c.theta_b;
  YValue out;
  out.v_hat_r = std::cos(d) * s.v_rp + std::sin(d) * s.v_theta_p;
  out.v_hat_theta = -std::sin(d) * s.v_rp + std::cos(d) * s.v_theta_p;
  const double half = std::sin(0.5 * c.psi);
  out.y = out.v_hat_theta * out.v_hat_theta / v2 - half * half;
  return out;
}

double boundary_angle_positive(const PlanarCone& c, const PlanarStates& s) {
  return wrap_pi(c.theta_b - s.theta_p) + 0.5 * c.psi;
}

double boundary_angle_negative(const PlanarCone& c, const PlanarStates& s) {
  return wrap_pi(s.theta_p - c.theta_b) + 0.5 * c.psi;
}

PlanarCone plane_cone(const CompositeShape& a, const Body& b, const PlaneFrame& f) {
  require_ellipsoid_primary(a, "body A");
  if (const auto* s = std::get_if<CompositeShape>(&b)) {
    require_ellipsoid_primary(*s, "body B");
    if (s->kind == CompositeKind::kHDE) {
      throw Error(ErrorCode::kUnsupportedShape, "HDE obstacles have no cone pipeline");
    }
  }
  PlaneFrame g = f;
  for (int attempt = 0;; ++attempt) {
    try {
      return plane_cone_once(a, b, g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNumericalBreakdown || attempt >= 4) throw;
      // Nudge the plane about the line of centers and retry.
      const double eps = 1e-7 * (attempt + 1);
      const Vec3 r_x = std::cos(eps) * f.r_x + std::sin(eps) * f.r_y.cross(f.r_x);
      g.r_x = r_x.normalized();
    }
  }
}

Cone3D cone_3d(const CompositeShape& a, const Body& b, const Vec3& vel_a,
               const Vec3& vel_b, int n, const ConeOptions& opts) {
  if (opts.check_overlap) {
    const Body body_a = a;
    if (bodies_overlap(body_a, surface_samples(body_a, opts.overlap_samples), b,
                       surface_samples(b, opts.overlap_samples))) {
      throw Error(ErrorCode::kBodiesOverlap, "bodies already overlap");
    }
  }
  const Vec3 ca = a.center;
  const Vec3 cb = body_center(b);
  const Vec3 rel = cb - ca;
  const Vec3 v = vel_b - vel_a;

  Cone3D out;
  out.n = n;
  const std::vector<PlaneFrame> frames = build_plane_frames(ca, cb, n);
  out.planes.reserve(frames.size());
  for (const PlaneFrame& f : frames) {
    PlaneResult p;
    p.frame = f;
    p.states = project_states(f, rel, vel_a, vel_b);
    p.cone = plane_cone(a, b, f);
    try {
      p.y = y_value(p.states, p.cone);
      p.in_cone = p.y.y < 0.0 && p.y.v_hat_r < 0.0;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroRelativeSpeed) throw;
      p.y = YValue{1.0, 0.0, 0.0};
    }
    out.planes.push_back(std::move(p));
  }

  if (!(v.norm() > 0.0)) {
    out.zero_relative_speed = true;
    return out;
  }

  // Rebuild the cone on the plane holding V.
  const PlaneFrame& f0 = frames.front();
  const Vec3 r_hat = rel.normalized();
  const Vec3 v_t = v - v.dot(r_hat) * r_hat;
  const Vec3 r_z0 = f0.r_y.cross(f0.r_x);
  VelocityPlane& vp = out.velocity_plane;
  vp.azimuth = v_t.norm() > 1e-12 * v.norm() ? std::atan2(v_t.dot(r_z0), v_t.dot(f0.r_x))
                                             : 0.0;
  const std::vector<double> lam = boundary_samples(out);
  const double lp = interpolate_periodic(lam, vp.azimuth);
  const double lm = interpolate_periodic(lam, vp.azimuth + kPi);
  PlanarStates s;
  s.r_p = rel.norm();
  s.theta_p = 0.5 * kPi;
  s.v_rp = v.dot(r_hat);
  s.v_theta_p = v_t.norm();
  PlanarCone c;
  c.psi = std::min(lp + lm, kPi);
  c.theta_b = s.theta_p + 0.5 * (lp - lm);
  vp.psi = c.psi;
  vp.theta_b = c.theta_b;
  vp.y = y_value(s, c);
  out.any_collision = vp.y.y < 0.0 && vp.y.v_hat_r < 0.0;
  return out;
}

double cross_section_area(const Cone3D& c, double probe_distance) {
  if (c.planes.empty()) return 0.0;
  const std::vector<double> lam = boundary_samples(c);
  const int segments = static_cast<int>(lam.size());
  const double step = 2.0 * kPi / segments;
  int sub = std::max(4, (4096 + segments - 1) / segments);
  sub += sub % 2;
  const double cap = 0.5 * kPi - 1e-6;
  const auto rho2 = [&](double l) {
    const double r = probe_distance * std::tan(std::clamp(l, 0.0, cap));
    return r * r;
  };
  // Composite Simpson on each piecewise-linear segment.
  double area = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double l0 = lam[k];
    const double l1 = lam[(k + 1) % segments];
    const double h = step / sub;
    double acc = rho2(l0) + rho2(l1);
    for (int i = 1; i < sub; ++i) {
      const double frac = static_cast<double>(i) / sub;
      acc += (i % 2 ? 4.0 : 2.0) * rho2(l0 + frac * (l1 - l0));
    }
    area += 0.5 * acc * h / 3.0;
  }
  return area;
}

}  // namespace collcone
