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

#include "collcone/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "collcone/cone.hpp"
#include "collcone/error.hpp"

namespace collcone {

namespace {

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  return q.normalized().toRotationMatrix();
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-9);
  return v.normalized();
}

struct Trial {
  std::vector<double> errors;
  int resampled = 0;
};

Trial run_trial(const MonteCarloConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> axis(1.0, 10.0);
  std::uniform_real_distribution<double> spread(1.2, 5.0);
  ConeOptions no_check;
  no_check.check_overlap = false;
  Trial out;
  for (;;) {
    const Vec3 ax_a(axis(rng), axis(rng), axis(rng));
    const Vec3 ax_b(axis(rng), axis(rng), axis(rng));
    const double sep = spread(rng) * (ax_a.maxCoeff() + ax_b.maxCoeff());
    const Vec3 dir = random_direction(rng);
    const Vec3 cb = sep * dir;
    const CompositeShape a = make_composite(
        CompositeKind::kPure,
        build_quadric(Vec3::Zero(), ax_a, random_rotation(rng), QuadricClass::kEllipsoid),
        std::nullopt, Vec3::Zero());
    const Body b = make_composite(
        CompositeKind::kPure, build_quadric(cb, ax_b, random_rotation(rng), QuadricClass::kEllipsoid),
        std::nullopt, cb);
    const Body body_a = a;
    if (bodies_overlap(body_a, surface_samples(body_a, 500), b, surface_samples(b, 500))) {
      ++out.resampled;
      continue;
    }
    // The aperture does not depend on the velocity; any closing one will do.
    const Vec3 v = -dir;
    const double ref = cross_section_area(
        cone_3d(a, b, Vec3::Zero(), v, cfg.reference_n, no_check), cfg.probe_distance);
    for (int n : cfg.n_values) {
      const double area =
          cross_section_area(cone_3d(a, b, Vec3::Zero(), v, n, no_check), cfg.probe_distance);
      out.errors.push_back(std::abs(area - ref) / ref);
    }
    return out;
  }
}

}  // namespace

MonteCarloResult monte_carlo_accuracy(const MonteCarloConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::kConfigInvalid, "trials must be >= 1");
  if (cfg.n_values.empty()) throw Error(ErrorCode::kConfigInvalid, "no plane counts given");
  for (int n : cfg.n_values) {
    if (n < 1 || n >= cfg.reference_n) {
      throw Error(ErrorCode::kConfigInvalid,
                  "plane counts must lie in [1, " + std::to_string(cfg.reference_n) + ")");
    }
  }
  std::vector<Trial> trials(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  const auto worker = [&] {
    try {
      for (int i = next++; i < cfg.trials; i = next++) trials[i] = run_trial(cfg, i);
    } catch (...) {
      next = cfg.trials;
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, cfg.trials);
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  MonteCarloResult r;
  for (std::size_t k = 0; k < cfg.n_values.size(); ++k) {
    MonteCarloRow row;
    row.n = cfg.n_values[k];
    row.bound = 2.0 / row.n;
    row.trials = cfg.trials;
    r.rows.push_back(row);
  }
  for (const Trial& t : trials) {
    r.resampled += t.resampled;
    for (std::size_t k = 0; k < t.errors.size(); ++k) {
      r.rows[k].mean_err += t.errors[k] / cfg.trials;
      r.rows[k].max_err = std::max(r.rows[k].max_err, t.errors[k]);
    }
    r.errors.push_back(t.errors);
  }
  return r;
}

void write_montecarlo_csv(const MonteCarloResult& r, std::ostream& out) {
  out << "# collcone-montecarlo v1\n";
  out << "# resampled=" << r.resampled << '\n';
  out << "n,trials,mean_err,max_err,bound\n";
  out.precision(10);
  for (const MonteCarloRow& row : r.rows) {
    out << row.n << ',' << row.trials << ',' << row.mean_err << ',' << row.max_err << ','
        << row.bound << '\n';
  }
}

}  // namespace collcone
