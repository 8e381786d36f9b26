/*
 * Copyright (c) 2026, The readmap Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "readmap/embed.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace readmap {

namespace {

constexpr double kSeparation = 1e-9;

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_target(const DistanceMatrix& target) {
  for (double d : target.values()) {
    if (!std::isfinite(d)) throw Error(ErrorCode::invalid_argument, "non-finite target distance");
    if (d < 0.0) throw Error(ErrorCode::invalid_argument, "negative target distance");
  }
}

// Coincident points with a positive target distance have no direction for the
// Guttman update; nudge the later one along +x.
void separate_coincident(std::vector<Point2>& x, const DistanceMatrix& target) {
  const std::size_t n = x.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (target(i, j) > 0.0 && x[i] == x[j]) x[j].x += kSeparation * static_cast<double>(j);
    }
  }
}

void guttman_transform(const std::vector<Point2>& x, const DistanceMatrix& target,
                       std::vector<Point2>& out) {
  const std::size_t n = x.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = x[i].x - x[j].x;
      const double dy = x[i].y - x[j].y;
      const double current = std::sqrt(dx * dx + dy * dy);
      if (current <= 0.0) continue;
      const double ratio = target(i, j) / current;
      sx += ratio * dx;
      sy += ratio * dy;
    }
    out[i] = {sx * inv_n, sy * inv_n};
  }
}

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double stress_of(const std::vector<Point2>& x, const DistanceMatrix& target);

std::vector<Point2> smacof_run(const DistanceMatrix& target, const EmbeddingConfig& config,
                               std::uint64_t seed, StressTrace& trace) {
  const std::size_t n = target.size();
  std::mt19937_64 rng(seed);
  std::vector<Point2> x(n);
  for (auto& q : x) {
    q.x = uniform_unit(rng) - 0.5;
    q.y = uniform_unit(rng) - 0.5;
  }

  std::vector<Point2> next(n);
  double current = stress_of(x, target);
  trace.push_back(current);
  for (int iteration = 0; iteration < config.max_iterations && current > 0.0; ++iteration) {
    separate_coincident(x, target);
    guttman_transform(x, target, next);
    x.swap(next);
    const double updated = stress_of(x, target);
    trace.push_back(updated);
    const bool converged = current - updated < config.rel_tol * current;
    current = updated;
    if (converged) break;
  }
  return x;
}

double stress_of(const std::vector<Point2>& x, const DistanceMatrix& target) {
  return stress(std::span<const Point2>(x), target);
}

}  // namespace

double distance(const Point2& a, const Point2& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void EmbeddingConfig::validate() const {
  if (max_iterations <= 0) throw Error(ErrorCode::invalid_argument, "max_iterations must be positive");
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "rel_tol must be positive");
  if (restarts <= 0) throw Error(ErrorCode::invalid_argument, "restarts must be positive");
}

double stress(std::span<const Point2> positions, const DistanceMatrix& target) {
  if (positions.size() != target.size()) {
    throw Error(ErrorCode::invalid_argument, "embedding and distance matrix sizes differ");
  }
  double residual = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = target(i, j);
      const double r = distance(positions[i], positions[j]) - d;
      residual += r * r;
      scale += d * d;
    }
  }
  return scale > 0.0 ? residual / scale : 0.0;
}

double stress(const Embedding& embedding, const DistanceMatrix& target) {
  if (embedding.labels != target.labels()) {
    throw Error(ErrorCode::invalid_argument, "embedding labels do not match the distance matrix");
  }
  return stress(embedding.positions, target);
}

void canonicalize(Embedding& embedding) {
  auto& p = embedding.positions;
  const std::size_t n = p.size();
  if (n == 0) return;

  double mx = 0.0;
  double my = 0.0;
  for (const auto& q : p) {
    mx += q.x;
    my += q.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (auto& q : p) {
    q.x -= mx;
    q.y -= my;
    sxx += q.x * q.x;
    syy += q.y * q.y;
    sxy += q.x * q.y;
  }

  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (auto& q : p) q = {c * q.x + s * q.y, -s * q.x + c * q.y};

  // Rotation moved the mean by rounding only; recentre exactly.
  mx = 0.0;
  my = 0.0;
  for (const auto& q : p) {
    mx += q.x;
    my += q.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  for (auto& q : p) {
    q.x -= mx;
    q.y -= my;
  }

  std::size_t anchor = 0;
  if (embedding.labels.size() == n) {
    anchor = static_cast<std::size_t>(
        std::min_element(embedding.labels.begin(), embedding.labels.end()) -
        embedding.labels.begin());
  }
  if (p[anchor].x < 0.0) {
    for (auto& q : p) q.x = -q.x;
  }
  if (p[anchor].y < 0.0) {
    for (auto& q : p) q.y = -q.y;
  }
}

EmbeddingResult mds_embed(const DistanceMatrix& target, const EmbeddingConfig& config) {
  config.validate();
  check_target(target);
  const std::size_t n = target.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot embed an empty distance matrix");

  EmbeddingResult result;
  result.embedding.labels = target.labels();
  if (n == 1) {
    result.embedding.positions = {Point2{}};
    result.trace = {0.0};
    return result;
  }

  std::vector<Point2> best;
  for (int start = 0; start < config.restarts; ++start) {
    std::uint64_t seed = config.seed;
    for (int k = 0; k < start; ++k) seed = splitmix64(seed);
    StressTrace trace;
    auto x = smacof_run(target, config, seed, trace);
    if (best.empty() || trace.back() < result.trace.back()) {
      best = std::move(x);
      result.trace = std::move(trace);
    }
  }

  result.embedding.positions = std::move(best);
  canonicalize(result.embedding);
  return result;
}

}  // namespace readmap
