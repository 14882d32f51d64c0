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


#include <benchmark/benchmark.h>

#include "collcone/cone.hpp"

namespace {

using namespace collcone;

CompositeShape ellipsoid(const Vec3& c, const Vec3& axes, const Mat3& rot) {
  return make_composite(CompositeKind::kPure,
                        build_quadric(c, axes, rot, QuadricClass::kEllipsoid), std::nullopt, c);
}

void BM_Cone3D(benchmark::State& state) {
  const CompositeShape a = ellipsoid(Vec3::Zero(), Vec3(10, 5, 3), Mat3::Identity());
  const Body b = ellipsoid(Vec3(30, 5, 12), Vec3(4, 6, 2), rotation_from_ypr(0.3, -0.2, 0.5));
  ConeOptions opts;
  opts.check_overlap = false;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_3d(a, b, Vec3(8, 0, 0), Vec3(-3, 0, -1), n, opts));
  }
}
BENCHMARK(BM_Cone3D)->Arg(12)->Arg(36)->Arg(90);

void BM_Cone3DWithOverlapCheck(benchmark::State& state) {
  const CompositeShape a = ellipsoid(Vec3::Zero(), Vec3(10, 5, 3), Mat3::Identity());
  const Body b = ellipsoid(Vec3(30, 5, 12), Vec3(4, 6, 2), rotation_from_ypr(0.3, -0.2, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(cone_3d(a, b, Vec3(8, 0, 0), Vec3(-3, 0, -1), 36));
}
BENCHMARK(BM_Cone3DWithOverlapCheck);

}  // namespace
