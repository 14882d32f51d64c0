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

#include "collcone/plane_sections.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "collcone/error.hpp"

namespace collcone {

PlaneMatrix PlaneFrame::matrix() const {
  PlaneMatrix p = PlaneMatrix::Zero();
  p.block<3, 1>(0, 0) = r_x;
  p.block<3, 1>(0, 1) = r_y;
  p.block<3, 1>(0, 2) = origin;
  p(3, 2) = 1.0;
  return p;
}

std::vector<PlaneFrame> build_plane_frames(const Vec3& center_a,
                                           const Vec3& center_b, int n,
                                           const Vec3& seed_axis) {
  const Vec3 r = center_b - center_a;
  if (!(r.norm() > 1e-9)) {
    throw Error(ErrorCode::kCoincidentCenters, "body centers coincide");
  }
  if (n < 1) throw Error(ErrorCode::kConfigInvalid, "plane count must be >= 1");
  const Vec3 r_y = r.normalized();
  Vec3 r_x0 = seed_axis - seed_axis.dot(r_y) * r_y;
  if (!(r_x0.norm() > 1e-12)) {
    throw Error(ErrorCode::kConfigInvalid, "seed axis parallel to line of centers");
  }
  r_x0.normalize();
  const Vec3 r_x0_perp = r_y.cross(r_x0);

  std::vector<PlaneFrame> frames;
  frames.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double angle = j * std::numbers::pi / n;
    PlaneFrame f;
    f.r_y = r_y;
    f.r_x = (std::cos(angle) * r_x0 + std::sin(angle) * r_x0_perp).normalized();
    f.origin = center_a;
    f.index = j;
    frames.push_back(f);
  }
  return frames;
}

std::vector<PlaneFrame> build_plane_frames(const Vec3& center_a,
                                           const Vec3& center_b, int n) {
  const Vec3 r = center_b - center_a;
  if (!(r.norm() > 1e-9)) {
    throw Error(ErrorCode::kCoincidentCenters, "body centers coincide");
  }
  Eigen::Index axis = 0;
  r.cwiseAbs().minCoeff(&axis);
  return build_plane_frames(center_a, center_b, n, Vec3::Unit(axis));
}

ConicMatrix::ConicMatrix(const Mat3& entries, int frame)
    : m(0.5 * (entries + entries.transpose())), frame_index(frame) {}

const char* conic_class_name(ConicClass c) {
  switch (c) {
    case ConicClass::kEllipse: return "ellipse";
    case ConicClass::kHyperbola: return "hyperbola";
    case ConicClass::kDegenerate: return "degenerate";
  }
  return "degenerate";
}

ConicMatrix section_conic(const QuadricMatrix& q, const PlaneFrame& f) {
  const PlaneMatrix p = f.matrix();
  return ConicMatrix(p.transpose() * q.matrix() * p, f.index);
}

ConicMatrix dual_conic(const ConicMatrix& m) {
  const double det = m.m.determinant();
  // For a central conic, measure against the form translated to its center.
  const Mat2 a = m.m.topLeftCorner<2, 2>();
  const double det_a = a.determinant();
  double norm = m.m.norm();
  if (std::abs(det_a) > 1e-12 * a.squaredNorm()) norm = std::hypot(a.norm(), det / det_a);
  if (!(std::abs(det) >= 1e-12 * norm * norm * norm)) {
    throw Error(ErrorCode::kDegenerateConic, "conic is singular");
  }
  return ConicMatrix(m.m.inverse(), m.frame_index);
}

ConicClass classify_conic(const ConicMatrix& m) {
  const Mat2 a = m.m.topLeftCorner<2, 2>();
  const double det = a.determinant();
  const double scale = a.squaredNorm();
  if (!(std::abs(det) >= 1e-12 * scale)) return ConicClass::kDegenerate;
  return det > 0.0 ? ConicClass::kEllipse : ConicClass::kHyperbola;
}

ConicMatrix interior_negative(const ConicMatrix& m) {
  if (m.m.topLeftCorner<2, 2>().trace() < 0.0) {
    return ConicMatrix(-m.m, m.frame_index);
  }
  return m;
}

double conic_value(const ConicMatrix& m, const Vec2& p) {
  const Vec3 h(p.x(), p.y(), 1.0);
  return h.dot(m.m * h);
}

Vec2 conic_center(const ConicMatrix& m) {
  const Mat2 a = m.m.topLeftCorner<2, 2>();
  const Vec2 b = m.m.block<2, 1>(0, 2);
  return -a.inverse() * b;
}

bool ellipse_is_real(const ConicMatrix& m) {
  if (classify_conic(m) != ConicClass::kEllipse) return false;
  const ConicMatrix n = interior_negative(m);
  return conic_value(n, conic_center(n)) < 0.0;
}

std::vector<Vec2> sample_ellipse(const ConicMatrix& m, int count) {
  const ConicMatrix n = interior_negative(m);
  const Vec2 c = conic_center(n);
  const double k = -conic_value(n, c);
  Eigen::SelfAdjointEigenSolver<Mat2> es(n.m.topLeftCorner<2, 2>());
  const Vec2 semi(std::sqrt(k / es.eigenvalues()[0]),
                  std::sqrt(k / es.eigenvalues()[1]));
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = 2.0 * std::numbers::pi * i / count;
    out.push_back(c + es.eigenvectors().col(0) * semi[0] * std::cos(t) +
                  es.eigenvectors().col(1) * semi[1] * std::sin(t));
  }
  return out;
}

ConicMatrix ellipse_conic(const Vec2& center, double semi_a, double semi_b,
                          double angle) {
  const Mat3 canonical =
      Vec3(1.0 / (semi_a * semi_a), 1.0 / (semi_b * semi_b), -1.0).asDiagonal();
  Mat3 to_body = Mat3::Identity();
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 rt;
  rt << c, s, -s, c;
  to_body.topLeftCorner<2, 2>() = rt;
  to_body.block<2, 1>(0, 2) = -rt * center;
  return ConicMatrix(to_body.transpose() * canonical * to_body);
}

}  // namespace collcone
