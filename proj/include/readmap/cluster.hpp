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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "readmap/embed.hpp"

namespace readmap {

enum class Linkage { ward };

/// One agglomeration step. Leaves are nodes 0..n-1 in embedding order; merge t
/// creates node n + t. `left` is the side holding the smaller leaf label.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double cost = 0.0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<Merge> merges;

  std::size_t leaf_count() const noexcept { return labels.size(); }
};

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<std::string> labels;
  /// Area index per leaf, in label order.
  std::vector<std::size_t> area_of;

  std::vector<std::size_t> members(std::size_t area) const;
};

/// Ward minimum-variance agglomeration on 2D points. A merge's cost is the
/// increase in within-cluster sum of squares, n_a n_b / (n_a + n_b) |c_a - c_b|^2.
/// Exact cost ties go to the smallest (left label, right label) pair, where a
/// cluster's label is its smallest leaf label.
Dendrogram ward_cluster(const Embedding& embedding, Linkage linkage = Linkage::ward);

/// Undoes the k-1 last (most expensive) merges. Areas are numbered by
/// descending combined readership, then ascending smallest label; `readers`
/// may be empty, in which case only the label rule applies.
ClusterAssignment cut(const Dendrogram& dendrogram, std::size_t k,
                      std::span<const std::size_t> readers = {});

/// Mean silhouette over Euclidean distances; points in singleton areas score 0.
double mean_silhouette(std::span<const Point2> points, std::span<const std::size_t> area_of,
                       std::size_t k);

/// k in [k_min, k_max] with the highest mean silhouette; ties go to smaller k.
/// Throws Error(domain) when fewer than three points exist.
std::size_t select_k(const Dendrogram& dendrogram, const Embedding& embedding,
                     std::size_t k_min, std::size_t k_max);

/// [2, min(25, n - 1)].
std::pair<std::size_t, std::size_t> default_k_range(std::size_t n);

}  // namespace readmap
