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

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace collcone {

struct MonteCarloConfig {
  int trials = 200;
  std::vector<int> n_values{6, 12, 36, 90};
  std::uint64_t seed = 7;
  int reference_n = 360;
  int threads = 0;  // 0 = hardware concurrency
  double probe_distance = 1.0;
};

struct MonteCarloRow {
  int n = 0;
  double mean_err = 0.0;
  double max_err = 0.0;
  double bound = 0.0;  // 2 / n
  int trials = 0;
};

struct MonteCarloResult {
  std::vector<MonteCarloRow> rows;
  // errors[trial][k] for n_values[k]
  std::vector<std::vector<double>> errors;
  int resampled = 0;
};

// Random ellipsoid pairs: axes U[1, 10] m, separation U[1.2, 5] times the sum
// of the largest semi-axes, uniform random orientations and direction.
// Overlapping draws are redrawn. Deterministic for a given seed, whatever the
// thread count. Throws kConfigInvalid for trials < 1 or n outside [1, ref).
MonteCarloResult monte_carlo_accuracy(const MonteCarloConfig& cfg);

void write_montecarlo_csv(const MonteCarloResult& r, std::ostream& out);

}  // namespace collcone
