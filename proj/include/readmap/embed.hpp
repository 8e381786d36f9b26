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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "readmap/cooccur.hpp"

namespace readmap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(const Point2& a, const Point2& b) noexcept;

struct EmbeddingConfig {
  static constexpr int dims = 2;
  int max_iterations = 300;
  double rel_tol = 1e-6;
  std::uint64_t seed = 42;
  /// Independent seeded starts; the lowest final stress wins.
  int restarts = 4;

  void validate() const;
};

struct Embedding {
  std::vector<std::string> labels;
  std::vector<Point2> positions;

  std::size_t size() const noexcept { return positions.size(); }
};

/// Normalized stress of every iterate, starting with the initial layout.
using StressTrace = std::vector<double>;

struct EmbeddingResult {
  Embedding embedding;
  StressTrace trace;
};

/// sum_{i<j} (|x_i - x_j| - d_ij)^2 / sum_{i<j} d_ij^2, or 0 when every
/// target distance is 0. Throws Error(invalid_argument) on a label mismatch.
double stress(const Embedding& embedding, const DistanceMatrix& target);
double stress(std::span<const Point2> positions, const DistanceMatrix& target);

/// Metric SMACOF with unit weights from seeded uniform starts in
/// [-0.5, 0.5]^2. Start 0 uses the configured seed; each further start
/// derives its own seed from it. The run with the lowest final stress is kept
/// (earliest on ties) and its trace is returned. The result is centred, rotated so its first principal axis
/// is horizontal, and reflected so the smallest label has x >= 0 and y >= 0.
EmbeddingResult mds_embed(const DistanceMatrix& target, const EmbeddingConfig& config = {});

/// Applies the centring, principal-axis rotation and reflection rules in place.
void canonicalize(Embedding& embedding);

}  // namespace readmap
