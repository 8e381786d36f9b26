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

#include "readmap/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace readmap {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<std::size_t> ClusterAssignment::members(std::size_t area) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < area_of.size(); ++i) {
    if (area_of[i] == area) out.push_back(i);
  }
  return out;
}

Dendrogram ward_cluster(const Embedding& embedding, Linkage linkage) {
  if (linkage != Linkage::ward) throw Error(ErrorCode::invalid_argument, "unsupported linkage");
  const std::size_t n = embedding.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot cluster an empty embedding");

  Dendrogram dendrogram;
  dendrogram.labels = embedding.labels;
  if (dendrogram.labels.size() != n) {
    dendrogram.labels.clear();
    for (std::size_t i = 0; i < n; ++i) dendrogram.labels.push_back(std::to_string(i));
  }

  // Rank of each leaf label; a cluster is keyed by the smallest rank it holds.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dendrogram.labels[a] < dendrogram.labels[b];
  });
  std::vector<std::size_t> key(n);
  for (std::size_t r = 0; r < n; ++r) key[order[r]] = r;

  // Ward costs between active clusters, updated with Lance-Williams.
  std::vector<double> cost(n * n, 0.0);
  const auto& p = embedding.positions;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = p[i].x - p[j].x;
      const double dy = p[i].y - p[j].y;
      cost[i * n + j] = cost[j * n + i] = 0.5 * (dx * dx + dy * dy);
    }
  }
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), 0);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{n, n};
    for (std::size_t ia = 0; ia < active.size(); ++ia) {
      for (std::size_t ib = ia + 1; ib < active.size(); ++ib) {
        const std::size_t a = active[ia];
        const std::size_t b = active[ib];
        const double c = cost[a * n + b];
        const std::pair<std::size_t, std::size_t> pair_key = std::minmax(key[a], key[b]);
        if (c < best || (c == best && pair_key < best_key)) {
          best = c;
          best_key = pair_key;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (key[best_b] < key[best_a]) std::swap(best_a, best_b);

    dendrogram.merges.push_back({node[best_a], node[best_b], best});

    // Slot best_a becomes the merged cluster; best_b is retired.
    const double na = static_cast<double>(size[best_a]);
    const double nb = static_cast<double>(size[best_b]);
    for (std::size_t c : active) {
      if (c == best_a || c == best_b) continue;
      const double nc = static_cast<double>(size[c]);
      const double updated = ((na + nc) * cost[best_a * n + c] + (nb + nc) * cost[best_b * n + c] -
                              nc * best) /
                             (na + nb + nc);
      cost[best_a * n + c] = cost[c * n + best_a] = updated;
    }
    size[best_a] += size[best_b];
    key[best_a] = std::min(key[best_a], key[best_b]);
    node[best_a] = n + step;
    active.erase(std::find(active.begin(), active.end(), best_b));
  }
  return dendrogram;
}

ClusterAssignment cut(const Dendrogram& dendrogram, std::size_t k,
                      std::span<const std::size_t> readers) {
  const std::size_t n = dendrogram.leaf_count();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::invalid_argument,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (!readers.empty() && readers.size() != n) {
    throw Error(ErrorCode::invalid_argument, "reader counts do not match the dendrogram");
  }
  if (dendrogram.merges.size() + 1 != n) {
    throw Error(ErrorCode::invalid_argument, "dendrogram is incomplete");
  }

  // Node id -> representative leaf.
  std::vector<std::size_t> representative(2 * n - 1);
  std::iota(representative.begin(), representative.begin() + n, 0);
  UnionFind sets(n);
  for (std::size_t t = 0; t < n - k; ++t) {
    const auto& merge = dendrogram.merges[t];
    const std::size_t a = sets.find(representative[merge.left]);
    const std::size_t b = sets.find(representative[merge.right]);
    sets.parent[b] = a;
    representative[n + t] = a;
  }

  struct Group {
    std::size_t root;
    std::size_t readers = 0;
    const std::string* smallest = nullptr;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> group_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (group_of_root[root] == n) {
      group_of_root[root] = groups.size();
      groups.push_back({root});
    }
    auto& group = groups[group_of_root[root]];
    group.readers += readers.empty() ? 0 : readers[i];
    if (group.smallest == nullptr || dendrogram.labels[i] < *group.smallest) {
      group.smallest = &dendrogram.labels[i];
    }
  }
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].readers != groups[b].readers) return groups[a].readers > groups[b].readers;
    return *groups[a].smallest < *groups[b].smallest;
  });
  std::vector<std::size_t> area_of_group(groups.size());
  for (std::size_t area = 0; area < order.size(); ++area) area_of_group[order[area]] = area;

  ClusterAssignment assignment;
  assignment.k = k;
  assignment.labels = dendrogram.labels;
  assignment.area_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    assignment.area_of[i] = area_of_group[group_of_root[sets.find(i)]];
  }
  return assignment;
}

double mean_silhouette(std::span<const Point2> points, std::span<const std::size_t> area_of,
                       std::size_t k) {
  const std::size_t n = points.size();
  if (area_of.size() != n) throw Error(ErrorCode::invalid_argument, "assignment size mismatch");
  if (n == 0) return 0.0;

  std::vector<std::size_t> area_size(k, 0);
  for (std::size_t a : area_of) ++area_size.at(a);

  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = area_of[i];
    if (area_size[own] <= 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sums[area_of[j]] += distance(points[i], points[j]);
    }
    const double a = sums[own] / static_cast<double>(area_size[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != own && area_size[c] > 0) b = std::min(b, sums[c] / static_cast<double>(area_size[c]));
    }
    if (!std::isfinite(b)) continue;
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::size_t select_k(const Dendrogram& dendrogram, const Embedding& embedding,
                     std::size_t k_min, std::size_t k_max) {
  const std::size_t n = embedding.size();
  if (n < 3) throw Error(ErrorCode::domain, "silhouette undefined for fewer than 3 points");
  if (k_min < 2 || k_min > k_max || k_max > n - 1) {
    throw Error(ErrorCode::invalid_argument,
                "k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                    "] invalid for " + std::to_string(n) + " points");
  }
  std::size_t best_k = k_min;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const auto assignment = cut(dendrogram, k);
    const double score = mean_silhouette(embedding.positions, assignment.area_of, k);
    if (score > best) {
      best = score;
      best_k = k;
    }
  }
  return best_k;
}

std::pair<std::size_t, std::size_t> default_k_range(std::size_t n) {
  return {2, std::min<std::size_t>(25, n == 0 ? 0 : n - 1)};
}

}  // namespace readmap
