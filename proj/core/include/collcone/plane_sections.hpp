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

#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "collcone/quadric.hpp"

namespace collcone {

using PlaneMatrix = Eigen::Matrix<double, 4, 3>;

// One cutting plane through the line of centers. Local coordinates (u, v)
// map to origin + u * r_x + v * r_y; r_y points from body A to body B.
struct PlaneFrame {
  Vec3 r_x = Vec3::UnitX();
  Vec3 r_y = Vec3::UnitY();
  Vec3 origin = Vec3::Zero();
  int index = 0;

  // [r_x r_y origin; 0 0 1]
  PlaneMatrix matrix() const;
  Vec3 normal() const { return r_x.cross(r_y); }
  Vec3 to_world(const Vec2& uv) const { return origin + uv.x() * r_x + uv.y() * r_y; }
  Vec2 to_local(const Vec3& p) const {
    const Vec3 d = p - origin;
    return Vec2(d.dot(r_x), d.dot(r_y));
  }
};

// n frames sharing r_y; frame j has r_x rotated about r_y by j * pi / n from
// frame 0, whose r_x comes from the global axis least aligned with r_y.
// Throws kCoincidentCenters when the centers are closer than 1e-9.
std::vector<PlaneFrame> build_plane_frames(const Vec3& center_a,
                                           const Vec3& center_b, int n);

// Same family seeded from an explicit first in-plane axis (orthogonalized
// against r_y). Used to jitter a plane that hits a numerical breakdown.
std::vector<PlaneFrame> build_plane_frames(const Vec3& center_a,
                                           const Vec3& center_b, int n,
                                           const Vec3& seed_axis);

struct ConicMatrix {
  Mat3 m = Mat3::Identity();
  int frame_index = 0;

  ConicMatrix() = default;
  explicit ConicMatrix(const Mat3& entries, int frame = 0);
};

enum class ConicClass { kEllipse, kHyperbola, kDegenerate };

const char* conic_class_name(ConicClass c);

// P^T Q P.
ConicMatrix section_conic(const QuadricMatrix& q, const PlaneFrame& f);

// m^-1; throws kDegenerateConic when |det m| < 1e-12 ||m||^3.
ConicMatrix dual_conic(const ConicMatrix& m);

// Sign of the determinant of the leading 2x2 block.
ConicClass classify_conic(const ConicMatrix& m);

// Conic-level helpers shared by the tangent solvers and tests.

// Returns m or -m so that an ellipse conic is negative inside.
ConicMatrix interior_negative(const ConicMatrix& m);

double conic_value(const ConicMatrix& m, const Vec2& p);

// Center -A^-1 b of a central conic.
Vec2 conic_center(const ConicMatrix& m);

// True if an ellipse conic has real points (an actual curve, not imaginary).
bool ellipse_is_real(const ConicMatrix& m);

// Evenly spaced parameter samples along a real ellipse conic.
std::vector<Vec2> sample_ellipse(const ConicMatrix& m, int count);

// Point conic of an ellipse with the given center, semi-axes and rotation.
ConicMatrix ellipse_conic(const Vec2& center, double semi_a, double semi_b,
                          double angle);

}  // namespace collcone
