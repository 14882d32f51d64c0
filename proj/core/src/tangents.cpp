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

#include "collcone/tangents.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "collcone/error.hpp"

namespace collcone {

const char* provenance_name(TangentProvenance p) {
  switch (p) {
    case TangentProvenance::kEigenSolve: return "eigen_solve";
    case TangentProvenance::kCornerPoint: return "corner_point";
    case TangentProvenance::kPointCloudSupport: return "point_cloud_support";
  }
  return "eigen_solve";
}

TangentLine TangentLine::from_coeffs(const Vec3& l, TangentProvenance p) {
  const double ab = std::hypot(l.x(), l.y());
  if (!(ab > 1e-14 * l.norm())) {
    throw Error(ErrorCode::kDegenerateConic, "tangent line at infinity");
  }
  return TangentLine{l / ab, p};
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 dehomogenize(const Vec3& p) { return p.head<2>() / p.z(); }

Vec3 homogeneous(const Vec2& p) { return Vec3(p.x(), p.y(), 1.0); }

// Orthonormal basis of the plane orthogonal to v in R^3.
std::pair<Vec3, Vec3> orthogonal_basis(const Vec3& v) {
  const Vec3 n = v.normalized();
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  const Vec3 u = (Vec3::Unit(axis) - n[axis] * n).normalized();
  return {u, n.cross(u)};
}

// Real null directions (c, s) of the binary form g11 c^2 + 2 g12 c s + g22 s^2.
std::optional<std::array<Vec2, 2>> binary_form_roots(const Mat2& g) {
  const double g11 = g(0, 0);
  const double g12 = 0.5 * (g(0, 1) + g(1, 0));
  const double g22 = g(1, 1);
  const double scale = std::max({std::abs(g11), std::abs(g12), std::abs(g22)});
  double disc = g12 * g12 - g11 * g22;
  if (disc < -1e-14 * scale * scale) return std::nullopt;
  disc = std::sqrt(std::max(disc, 0.0));
  if (std::abs(g11) >= std::abs(g22)) {
    return std::array<Vec2, 2>{Vec2(-g12 + disc, g11), Vec2(-g12 - disc, g11)};
  }
  return std::array<Vec2, 2>{Vec2(g22, -g12 + disc), Vec2(g22, -g12 - disc)};
}

// x' = (x - center) / scale, as a homogeneous point transform.
Mat3 normalizing_transform(const Vec2& center, double scale) {
  Mat3 h = Mat3::Identity();
  h(0, 0) = h(1, 1) = 1.0 / scale;
  h(0, 2) = -center.x() / scale;
  h(1, 2) = -center.y() / scale;
  return h;
}

Vec2 dual_center(const ConicMatrix& c) { return dehomogenize(c.m.col(2)); }

// +1 when the A touch point sits left of the A->B center line.
int side_of(const Vec2& d1, const Vec2& d2, const Vec3& touch_a) {
  return cross2(d2 - d1, dehomogenize(touch_a) - d1) >= 0.0 ? 1 : -1;
}

// Orient so d1 is on the negative side; sort lines left then right.
void canonicalize(TangentSolution& sol, const Vec2& d1, const Vec2& d2) {
  for (std::size_t i = 0; i < sol.lines.size(); ++i) {
    if (sol.lines[i].signed_distance(d1) > 0.0) sol.lines[i].coeffs *= -1.0;
  }
  if (sol.lines.size() == 2 && side_of(d1, d2, sol.touch_a[0]) < 0) {
    std::swap(sol.lines[0], sol.lines[1]);
    std::swap(sol.touch_a[0], sol.touch_a[1]);
    std::swap(sol.touch_b[0], sol.touch_b[1]);
  }
}

Vec3 touch_point(const Mat3& dual, const TangentLine& l) {
  const Vec3 t = dual * l.coeffs;
  return t / t.z();
}

}  // namespace

namespace detail {

std::optional<std::array<Vec3, 4>> pencil_common_solutions(const Mat3& c1,
                                                           const Mat3& c2) {
  // Step 1: eigen-decomposition of c2^-1 c1.
  Eigen::EigenSolver<Mat3> es(c2.inverse() * c1);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalBreakdown, "eigen-solve did not converge");
  }
  const Eigen::Vector3cd t_c = es.eigenvalues();
  const double t_scale = t_c.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(t_c[i].imag()) > 1e-9 * t_scale) return std::nullopt;
  }
  const Vec3 t = t_c.real();
  Mat3 u = es.eigenvectors().real();
  for (int i = 0; i < 3; ++i) u.col(i).normalize();

  // Step 2: projected degenerate conics L_i = U^T (c1 - t_i c2) U.
  std::array<Mat3, 3> l;
  for (int i = 0; i < 3; ++i) l[i] = u.transpose() * (c1 - t[i] * c2) * u;

  const Mat3 g1 = u.transpose() * c1 * u;
  const Mat3 g2 = u.transpose() * c2 * u;
  const double diag_scale =
      std::max(g1.diagonal().cwiseAbs().maxCoeff(), g2.diagonal().cwiseAbs().maxCoeff());
  const double off1 = (g1 - Mat3(g1.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  const double off2 = (g2 - Mat3(g2.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (!(std::max(off1, off2) <= 1e-6 * diag_scale)) {
    throw Error(ErrorCode::kNumericalBreakdown,
                "eigenvectors do not diagonalize the pencil");
  }

  // Step 3: the coordinate fixed to 1 is k; the other two come from the
  // degenerate members whose zero sits at the opposite index. Eigen-solver
  // ordering is not canonical, so every choice of k is tried.
  constexpr std::array<std::array<int, 3>, 3> kOrders = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  for (const auto& order : kOrders) {
    const int i = order[0];
    const int j = order[1];
    const int k = order[2];
    const double den_i = l[j](i, i);
    const double den_j = l[i](j, j);
    if (den_i == 0.0 || den_j == 0.0) continue;
    const double ri = -l[j](k, k) / den_i;
    const double rj = -l[i](k, k) / den_j;
    if (!std::isfinite(ri) || !std::isfinite(rj)) continue;
    constexpr double kSlack = -1e-12;
    if (ri < kSlack || rj < kSlack) continue;
    const double x = std::sqrt(std::max(ri, 0.0));
    const double y = std::sqrt(std::max(rj, 0.0));

    // Step 4: the four sign combinations, then step 5: deproject by U.
    const std::array<Vec2, 4> signs = {
        {Vec2(x, y), Vec2(-x, -y), Vec2(-x, y), Vec2(x, -y)}};
    std::array<Vec3, 4> out;
    for (int r = 0; r < 4; ++r) {
      Vec3 m;
      m[i] = signs[r].x();
      m[j] = signs[r].y();
      m[k] = 1.0;
      out[r] = u * m;
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

TangentSolution inner_common_tangents(const ConicMatrix& c1,
                                      const ConicMatrix& c2) {
  TangentSolution sol;

  // Steps 6-7: centers are the poles of the line at infinity.
  const Vec2 d1 = dual_center(c1);
  const Vec2 d2 = dual_center(c2);
  const double sep = (d2 - d1).norm();
  if (!(sep > 0.0) || !std::isfinite(sep)) {
    sol.intersecting_sections = true;
    return sol;
  }

  // Condition the pencil: move the midpoint to the origin and scale the
  // half-separation to one. Duals transform as H C H^T, lines as H^-T.
  const Mat3 h = normalizing_transform(0.5 * (d1 + d2), 0.5 * sep);
  Mat3 c1n = h * c1.m * h.transpose();
  Mat3 c2n = h * c2.m * h.transpose();
  c1n /= c1n.norm();
  c2n /= c2n.norm();

  const auto rows = detail::pencil_common_solutions(c1n, c2n);
  if (!rows) {
    sol.intersecting_sections = true;
    return sol;
  }

  // Step 8: inner tangents separate the two centers.
  const Vec3 d1h = homogeneous(d1);
  const Vec3 d2h = homogeneous(d2);
  for (const Vec3& row : *rows) {
    const Vec3 line = h.transpose() * row;
    if (std::hypot(line.x(), line.y()) <= 1e-14 * line.norm()) continue;
    const TangentLine tl = TangentLine::from_coeffs(line, TangentProvenance::kEigenSolve);
    if (tl.coeffs.dot(d1h) * tl.coeffs.dot(d2h) < 0.0) {
      sol.lines.push_back(tl);
    }
  }
  if (sol.lines.size() != 2) {
    sol.lines.clear();
    sol.intersecting_sections = true;
    return sol;
  }

  // Step 10: tangency points from the dual action on each line.
  for (const TangentLine& l : sol.lines) {
    sol.touch_a.push_back(touch_point(c1.m, l));
    sol.touch_b.push_back(touch_point(c2.m, l));
  }
  canonicalize(sol, d1, d2);
  return sol;
}

namespace {

// Intersections of a real line with a point conic, w = 1.
std::vector<Vec3> line_conic_points(const Vec3& line, const Mat3& conic) {
  std::vector<Vec3> out;
  const auto [u, v] = orthogonal_basis(line);
  Mat2 g;
  g << u.dot(conic * u), u.dot(conic * v), v.dot(conic * u), v.dot(conic * v);
  const auto roots = binary_form_roots(g);
  if (!roots) return out;
  for (const Vec2& cs : *roots) {
    const Vec3 x = cs.x() * u + cs.y() * v;
    if (std::abs(x.z()) <= 1e-12 * x.norm()) continue;
    out.push_back(x / x.z());
  }
  return out;
}

Mat3 cross_matrix(const Vec3& p) {
  Mat3 m;
  m << 0.0, -p.z(), p.y(), p.z(), 0.0, -p.x(), -p.y(), p.x(), 0.0;
  return m;
}

// Splits a rank-2 symmetric conic into its two lines; nullopt when the lines
// are complex conjugates.
std::optional<std::array<Vec3, 2>> split_line_pair(const Mat3& d) {
  Mat3 b;  // adjugate
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
      const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
      b(c, r) = d(r1, c1) * d(r2, c2) - d(r1, c2) * d(r2, c1);
    }
  }
  Eigen::Index i = 0;
  b.diagonal().cwiseAbs().maxCoeff(&i);
  const double scale = d.squaredNorm();
  if (b(i, i) > 1e-12 * scale) return std::nullopt;
  if (std::abs(b(i, i)) <= 1e-300) return std::nullopt;
  const Vec3 p = b.col(i) / std::sqrt(-b(i, i));
  const Mat3 c = d + cross_matrix(p);
  Eigen::Index r = 0, col = 0;
  c.cwiseAbs().maxCoeff(&r, &col);
  return std::array<Vec3, 2>{Vec3(c.row(r).transpose()), Vec3(c.col(col))};
}

}  // namespace

std::vector<Vec3> corner_points(const ConicMatrix& m_ellipse,
                                const ConicMatrix& m_delimiter) {
  const ConicMatrix e = interior_negative(m_ellipse);
  const Vec2 center = conic_center(e);
  const double k = std::abs(conic_value(e, center));
  const Mat2 a = e.m.topLeftCorner<2, 2>();
  const double radius = std::sqrt(k / a.eigenvalues().real().minCoeff());

  // Points transform x' = H x, point conics as H^-T M H^-1.
  const Mat3 h = normalizing_transform(center, radius);
  const Mat3 h_inv = h.inverse();
  Mat3 me = h_inv.transpose() * e.m * h_inv;
  Mat3 mh = h_inv.transpose() * m_delimiter.m * h_inv;
  me /= me.norm();
  mh /= mh.norm();

  const auto on_both = [&](const Vec3& x) {
    const double xn = x.squaredNorm();
    return std::abs(x.dot(me * x)) <= 1e-7 * xn &&
           std::abs(x.dot(mh * x)) <= 1e-7 * xn;
  };

  std::vector<Vec3> pts;
  std::optional<std::array<Vec3, 4>> rows;
  try {
    rows = detail::pencil_common_solutions(me, mh);
  } catch (const Error&) {
    rows.reset();
  }
  if (rows) {
    bool all_real = true;
    for (const Vec3& x : *rows) {
      if (std::abs(x.z()) <= 1e-12 * x.norm() || !on_both(x / x.z())) {
        all_real = false;
        break;
      }
    }
    if (all_real) {
      for (const Vec3& x : *rows) pts.push_back(x / x.z());
    }
  }

  if (pts.empty()) {
    // Fewer than four real intersections: split each real degenerate member
    // of the pencil into lines and intersect those with the ellipse.
    Eigen::EigenSolver<Mat3> es(mh.inverse() * me, false);
    for (int i = 0; i < 3; ++i) {
      const std::complex<double> ti = es.eigenvalues()[i];
      if (std::abs(ti.imag()) > 1e-9 * std::abs(ti)) continue;
      const auto lines = split_line_pair(me - ti.real() * mh);
      if (!lines) continue;
      for (const Vec3& line : *lines) {
        for (const Vec3& x : line_conic_points(line, me)) {
          if (!on_both(x)) continue;
          const bool dup = std::any_of(pts.begin(), pts.end(), [&](const Vec3& q) {
            return (q - x).norm() < 1e-8;
          });
          if (!dup) pts.push_back(x);
        }
      }
    }
  }

  if (pts.empty()) {
    throw Error(ErrorCode::kNoRealIntersection,
                "delimiter section does not cut the ellipse section");
  }
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3& x : pts) {
    const Vec3 w = h_inv * x;
    out.push_back(w / w.z());
  }
  return out;
}

std::array<TangentLine, 2> point_tangents_to_ellipse(const ConicMatrix& m,
                                                     const Vec3& p) {
  const ConicMatrix n = interior_negative(m);
  if (std::abs(p.z()) > 1e-12 * p.norm() && p.dot(n.m * p) / (p.z() * p.z()) <= 0.0) {
    throw Error(ErrorCode::kPointInsideEllipse, "point is not outside the ellipse");
  }
  const Mat3 dual = n.m.inverse();
  // Lines through p are exactly the vectors orthogonal to p.
  const auto [u, v] = orthogonal_basis(p);
  Mat2 g;
  g << u.dot(dual * u), u.dot(dual * v), v.dot(dual * u), v.dot(dual * v);
  const auto roots = binary_form_roots(g);
  if (!roots) {
    throw Error(ErrorCode::kPointInsideEllipse, "no real tangents from point");
  }
  return {TangentLine::from_coeffs((*roots)[0].x() * u + (*roots)[0].y() * v,
                                   TangentProvenance::kCornerPoint),
          TangentLine::from_coeffs((*roots)[1].x() * u + (*roots)[1].y() * v,
                                   TangentProvenance::kCornerPoint)};
}

TangentSolution tangents_ellipse_vs_biconcave(
    const ConicMatrix& sec_a, const ConicMatrix& sec_b_ellipse,
    const std::optional<ConicMatrix>& sec_b_delimiter, KeepSide keep) {
  const ConicMatrix a = interior_negative(sec_a);
  const ConicMatrix be = interior_negative(sec_b_ellipse);
  const ConicMatrix dual_a = dual_conic(a);
  TangentSolution sol = inner_common_tangents(dual_a, dual_conic(be));
  if (!sec_b_delimiter || sol.intersecting_sections) return sol;

  std::vector<Vec3> corners;
  try {
    corners = corner_points(be, *sec_b_delimiter);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoRealIntersection) throw;
    return sol;  // plane misses the delimiter: plain ellipse section
  }

  const double keep_sign = keep == KeepSide::kPositive ? 1.0 : -1.0;
  const auto kept = [&](const Vec3& t) {
    return keep_sign * t.dot(sec_b_delimiter->m * t) > 0.0;
  };
  std::array<bool, 2> valid = {kept(sol.touch_b[0]), kept(sol.touch_b[1])};
  if (valid[0] && valid[1]) return sol;

  const Vec2 d1 = conic_center(a);
  const Vec2 d2 = conic_center(be);
  const double tol = 1e-9 * (1.0 + (d2 - d1).norm());

  // Candidates through each corner: centers on opposite sides, every corner
  // on B's side.
  std::array<std::optional<std::pair<TangentLine, Vec3>>, 2> by_side;
  for (const Vec3& corner : corners) {
    if (conic_value(a, dehomogenize(corner)) <= 0.0) continue;
    for (TangentLine line : point_tangents_to_ellipse(a, corner)) {
      if (line.signed_distance(d1) > 0.0) line.coeffs *= -1.0;
      if (!(line.signed_distance(d2) > 0.0)) continue;
      const bool corners_together =
          std::all_of(corners.begin(), corners.end(), [&](const Vec3& c) {
            return line.signed_distance(dehomogenize(c)) >= -tol;
          });
      if (!corners_together) continue;
      const Vec3 ta = touch_point(dual_a.m, line);
      const int slot = side_of(d1, d2, ta) > 0 ? 0 : 1;
      if (!by_side[slot]) by_side[slot] = std::make_pair(line, corner);
    }
  }

  for (int i = 0; i < 2; ++i) {
    if (valid[i]) continue;
    if (!by_side[i]) {
      throw Error(ErrorCode::kCornerFilterEmpty,
                  "no corner tangent passes the inner-tangent filters");
    }
    sol.lines[i] = by_side[i]->first;
    sol.touch_a[i] = touch_point(dual_a.m, sol.lines[i]);
    sol.touch_b[i] = by_side[i]->second;
  }
  return sol;
}

TangentSolution tangents_ellipse_vs_pointcloud(const ConicMatrix& sec_a,
                                               std::span<const Vec2> boundary) {
  if (boundary.size() < 2) {
    throw Error(ErrorCode::kSearchExhausted, "boundary needs at least two points");
  }
  const ConicMatrix a = interior_negative(sec_a);
  for (const Vec2& p : boundary) {
    if (conic_value(a, p) <= 0.0) {
      throw Error(ErrorCode::kCloudIntersectsEllipse,
                  "boundary point inside the ellipse section");
    }
  }

  // Down-sample by uniform stride.
  std::vector<Vec2> pts;
  const std::size_t stride =
      (boundary.size() + kMaxCloudBoundary - 1) / kMaxCloudBoundary;
  for (std::size_t i = 0; i < boundary.size(); i += stride) pts.push_back(boundary[i]);

  const Vec2 d1 = conic_center(a);
  Vec2 d2 = Vec2::Zero();
  for (const Vec2& p : pts) d2 += p;
  d2 /= static_cast<double>(pts.size());
  const Vec2 los = d2 - d1;
  const double tol = 1e-9 * (1.0 + los.norm());
  const Mat3 dual_a = a.m.inverse();

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> angle(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d = pts[i] - d1;
    angle[i] = std::atan2(cross2(los, d), los.dot(d));
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return angle[x] > angle[y]; });

  const auto try_point = [&](const Vec2& p, int want_side) -> std::optional<TangentLine> {
    for (TangentLine line : point_tangents_to_ellipse(a, homogeneous(p))) {
      if (line.signed_distance(d1) > 0.0) line.coeffs *= -1.0;
      if (!(line.signed_distance(d2) > 0.0)) continue;
      if (side_of(d1, d2, touch_point(dual_a, line)) != want_side) continue;
      const bool together = std::all_of(pts.begin(), pts.end(), [&](const Vec2& q) {
        return line.signed_distance(q) >= -tol;
      });
      if (together) {
        line.provenance = TangentProvenance::kPointCloudSupport;
        return line;
      }
    }
    return std::nullopt;
  };

  TangentSolution sol;
  // Left side: start from the largest angle; right side: from the smallest.
  for (int s = 0; s < 2; ++s) {
    const int want = s == 0 ? 1 : -1;
    bool found = false;
    for (std::size_t step = 0; step < order.size() && !found; ++step) {
      const std::size_t idx = s == 0 ? order[step] : order[order.size() - 1 - step];
      if (auto line = try_point(pts[idx], want)) {
        sol.lines.push_back(*line);
        sol.touch_a.push_back(touch_point(dual_a, *line));
        sol.touch_b.push_back(homogeneous(pts[idx]));
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kSearchExhausted, "no valid support line found");
    }
  }
  return sol;
}

}  // namespace collcone
