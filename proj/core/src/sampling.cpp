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

#include "collcone/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "collcone/error.hpp"

namespace collcone {

Vec3 body_center(const Body& b) {
  if (const auto* s = std::get_if<CompositeShape>(&b)) return s->center;
  return std::get<PointCloud>(b).center;
}

Body translated(const Body& b, const Vec3& offset) {
  if (const auto* s = std::get_if<CompositeShape>(&b)) return translated(*s, offset);
  PointCloud c = std::get<PointCloud>(b);
  c.center += offset;
  return c;
}

double bounding_radius(const Body& b) {
  if (const auto* s = std::get_if<CompositeShape>(&b)) {
    const CanonicalForm f = canonical_form(s->primary);
    return f.semi_axes.maxCoeff() + (f.center - s->center).norm();
  }
  double r = 0.0;
  for (const Vec3& o : std::get<PointCloud>(b).offsets) r = std::max(r, o.norm());
  return r;
}

std::vector<Vec3> fibonacci_directions(int count) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return out;
}

namespace {

// Parametric delimiter samples (local frame, symmetry axis z) inside the
// primary ellipsoid.
std::vector<Vec3> delimiter_samples(const CanonicalForm& h, const CanonicalForm& e,
                                    int count) {
  std::vector<Vec3> out;
  if (count <= 0) return out;
  const double reach = e.semi_axes.maxCoeff() + (e.center - h.center).norm();
  const double a = h.semi_axes[0], b = h.semi_axes[1], c = h.semi_axes[2];
  const int rings = std::max(4, static_cast<int>(std::sqrt(count / 2.0)));
  const int per_ring = std::max(8, count / (2 * rings));
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    for (int i = 0; i < rings; ++i) {
      // One-sheet rings run in z; two-sheet rings run in the radial parameter.
      const double s = (i + 0.5) / rings;
      double rho = 0.0, z = 0.0;
      if (h.kind == QuadricClass::kTwoSheetHyperboloid) {
        rho = s * reach / std::min(a, b);
        z = sign * c * std::sqrt(1.0 + rho * rho);
      } else {
        z = sign * s * reach;
        rho = std::sqrt(1.0 + z * z / (c * c));
      }
      for (int k = 0; k < per_ring; ++k) {
        const double t = 2.0 * std::numbers::pi * (k + 0.5 * (i % 2)) / per_ring;
        const Vec3 local(a * rho * std::cos(t), b * rho * std::sin(t), z);
        out.push_back(h.center + h.rotation * local);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Vec3> surface_samples(const CompositeShape& s, int count) {
  std::vector<Vec3> out;
  const CanonicalForm e = canonical_form(s.primary);
  const bool primary_ellipsoid = e.kind == QuadricClass::kEllipsoid;
  const bool keeps_primary_skin = s.kind != CompositeKind::kHDE;
  if (primary_ellipsoid && keeps_primary_skin) {
    for (const Vec3& d : fibonacci_directions(count)) {
      const Vec3 p = e.center + e.rotation * e.semi_axes.cwiseProduct(d);
      if (!s.delimiter || delimiter_keeps(s, p)) out.push_back(p);
    }
  }
  if (s.delimiter && primary_ellipsoid && s.kind != CompositeKind::kEDH) {
    const CanonicalForm h = canonical_form(*s.delimiter);
    for (const Vec3& p : delimiter_samples(h, e, count / 2)) {
      if (evaluate(s.primary, p) < 0.0) out.push_back(p);
    }
  }
  return out;
}

std::vector<Vec3> surface_samples(const Body& b, int count) {
  if (const auto* s = std::get_if<CompositeShape>(&b)) return surface_samples(*s, count);
  const PointCloud& c = std::get<PointCloud>(b);
  std::vector<Vec3> out;
  out.reserve(c.offsets.size());
  for (const Vec3& o : c.offsets) out.push_back(c.center + o);
  return out;
}

std::vector<Vec3> pentagonal_bipyramid_cloud(double radius, double half_height,
                                             int count, std::uint64_t seed) {
  std::array<Vec3, 5> ring;
  for (int i = 0; i < 5; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 5.0;
    ring[i] = Vec3(radius * std::cos(t), radius * std::sin(t), 0.0);
  }
  // All ten faces are congruent, so face choice is uniform.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> face(0, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const int f = face(rng);
    const Vec3 apex(0.0, 0.0, f < 5 ? half_height : -half_height);
    const Vec3& p1 = ring[f % 5];
    const Vec3& p2 = ring[(f % 5 + 1) % 5];
    double u = unit(rng), v = unit(rng);
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    out.push_back(apex + u * (p1 - apex) + v * (p2 - apex));
  }
  return out;
}

std::vector<Vec3> read_point_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot open point cloud " + path);
  std::vector<Vec3> out;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Vec3 p;
    if (!(ss >> p.x() >> p.y() >> p.z())) {
      if (out.empty()) continue;  // header row
      throw Error(ErrorCode::kConfigInvalid,
                  path + ": bad point at row " + std::to_string(row));
    }
    out.push_back(p);
  }
  if (out.empty()) throw Error(ErrorCode::kConfigInvalid, path + ": no points");
  return out;
}

void write_point_cloud_csv(const std::string& path, const std::vector<Vec3>& pts) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kConfigInvalid, "cannot write " + path);
  out.precision(10);
  out << "x,y,z\n";
  for (const Vec3& p : pts) out << p.x() << ',' << p.y() << ',' << p.z() << '\n';
}

double signed_distance_to_ellipsoid(const CanonicalForm& e, const Vec3& p) {
  const Vec3 y = (e.rotation.transpose() * (p - e.center)).cwiseAbs();
  const Vec3 a2 = e.semi_axes.cwiseAbs2();
  const double level = y.cwiseQuotient(e.semi_axes).squaredNorm();
  if (level <= 1.0) {
    // Inside: a lower bound on depth is enough for contact reporting.
    return -(1.0 - std::sqrt(level)) * e.semi_axes.minCoeff();
  }
  // Closest point x_i = a_i^2 y_i / (t + a_i^2) with t >= 0 the root of
  // sum (a_i y_i / (t + a_i^2))^2 = 1, which is decreasing in t.
  const auto f = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double r = e.semi_axes[i] * y[i] / (t + a2[i]);
      s += r * r;
    }
    return s - 1.0;
  };
  double lo = 0.0;
  double hi = e.semi_axes.maxCoeff() * y.norm();
  for (int it = 0; it < 100 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = a2[i] * y[i] / (t + a2[i]);
  return (x - y).norm();
}

namespace {

bool inside_body(const Body& b, const Vec3& p) {
  if (const auto* s = std::get_if<CompositeShape>(&b)) return inside_solid(*s, p);
  return false;  // a bare cloud has no interior test
}

}  // namespace

bool bodies_overlap(const Body& a, const std::vector<Vec3>& samples_a,
                    const Body& b, const std::vector<Vec3>& samples_b) {
  const double reach = bounding_radius(a) + bounding_radius(b);
  if ((body_center(a) - body_center(b)).norm() > reach) return false;
  for (const Vec3& p : samples_b) {
    if (inside_body(a, p)) return true;
  }
  for (const Vec3& p : samples_a) {
    if (inside_body(b, p)) return true;
  }
  return false;
}

}  // namespace collcone
