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

#include "collcone/plane_sections.hpp"
#include "collcone/tangents.hpp"

namespace {

using namespace collcone;

void BM_InnerTangents(benchmark::State& state) {
  const ConicMatrix a = dual_conic(ellipse_conic(Vec2(0, 0), 2.0, 1.0, 0.3));
  const ConicMatrix b = dual_conic(ellipse_conic(Vec2(1, 9), 3.0, 1.5, -0.7));
  for (auto _ : state) benchmark::DoNotOptimize(inner_common_tangents(a, b));
}
BENCHMARK(BM_InnerTangents);

void BM_BiconcaveTangents(benchmark::State& state) {
  const ConicMatrix a = ellipse_conic(Vec2(0, 0), 1.0, 1.0, 0.0);
  const ConicMatrix b = ellipse_conic(Vec2(0, 6), 3.0, 1.5, 0.0);
  Mat3 h = Mat3::Zero();
  h(0, 0) = 1.0 / 6.25;
  h(1, 1) = -1.0 / 0.09;
  h(1, 2) = h(2, 1) = 6.0 / 0.09;
  h(2, 2) = 1.0 - 36.0 / 0.09;
  const ConicMatrix delim(h);
  for (auto _ : state) benchmark::DoNotOptimize(tangents_ellipse_vs_biconcave(a, b, delim));
}
BENCHMARK(BM_BiconcaveTangents);

void BM_CloudTangents(benchmark::State& state) {
  const ConicMatrix a = ellipse_conic(Vec2(0, 0), 1.0, 1.0, 0.0);
  const std::vector<Vec2> pts = sample_ellipse(ellipse_conic(Vec2(1, 9), 2.5, 1.1, -0.3),
                                               static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tangents_ellipse_vs_pointcloud(a, pts));
}
BENCHMARK(BM_CloudTangents)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
