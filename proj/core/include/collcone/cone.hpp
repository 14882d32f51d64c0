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

#include "collcone/plane_sections.hpp"
#include "collcone/sampling.hpp"
#include "collcone/tangents.hpp"

namespace collcone {

// Relative state of B with respect to A projected onto one plane. Velocity
// components use V = v_b - v_a; v_theta_p is measured along the plane's r_x.
struct PlanarStates {
  double r_p = 0.0;
  double theta_p = 0.0;
  double v_rp = 0.0;
  double v_theta_p = 0.0;
  double heading_a = 0.0;
  double heading_b = 0.0;
};

// Sector with its vertex between the bodies that contains both sections.
// theta_b is the bisector direction pointing from the vertex toward B.
struct PlanarCone {
  double psi = 0.0;
  double theta_b = 0.0;
  TangentSolution tangents;
  bool engulfing = false;
  int frame_index = 0;
};

struct YValue {
  double y = 0.0;
  double v_hat_r = 0.0;
  double v_hat_theta = 0.0;
};

struct PlaneResult {
  PlaneFrame frame;
  PlanarStates states;
  PlanarCone cone;
  YValue y;
  bool in_cone = false;  // y < 0 and v_hat_r < 0 on this plane
};

// Cone evaluated on the plane that contains the relative velocity, with the
// aperture interpolated from the neighbouring section planes.
struct VelocityPlane {
  double azimuth = 0.0;  // about r_y, measured from frame 0's r_x
  double psi = 0.0;
  double theta_b = 0.0;
  YValue y;
};

struct Cone3D {
  std::vector<PlaneResult> planes;
  int n = 0;
  VelocityPlane velocity_plane;
  bool any_collision = false;
  bool zero_relative_speed = false;
};

PlanarStates project_states(const PlaneFrame& f, const Vec3& rel_pos,
                            const Vec3& vel_a, const Vec3& vel_b);

// Throws kParallelTangents only when the lines coincide in direction and no
// touch points are available for the fallback.
PlanarCone planar_cone_params(const TangentSolution& t, const PlanarStates& s);

// Throws kZeroRelativeSpeed when both in-plane velocity components vanish.
YValue y_value(const PlanarStates& s, const PlanarCone& c);

// Half-apertures measured from the closing direction -r toward +r_x and
// toward -r_x of the plane.
double boundary_angle_positive(const PlanarCone& c, const PlanarStates& s);
double boundary_angle_negative(const PlanarCone& c, const PlanarStates& s);

struct ConeOptions {
  bool check_overlap = true;
  int overlap_samples = 1000;
};

// A must have an ellipsoid primary. B may be any composite with an ellipsoid
// primary except HDE, or a point cloud. Throws kBodiesOverlap when the sampled
// disjointness check fails.
Cone3D cone_3d(const CompositeShape& a, const Body& b, const Vec3& vel_a,
               const Vec3& vel_b, int n, const ConeOptions& opts = {});

// Single-plane pipeline, exposed for guidance and tests.
PlanarCone plane_cone(const CompositeShape& a, const Body& b, const PlaneFrame& f);

// Area of the cone's cut at distance d along the closing direction, with the
// boundary angle interpolated linearly in azimuth between planes.
double cross_section_area(const Cone3D& c, double probe_distance);

}  // namespace collcone
