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

#include "readmap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace readmap {

namespace {

constexpr int kMaxShrinkAttempts = 60;
constexpr int kRelaxationPasses = 2000;
constexpr double kShrinkFactor = 0.9;
constexpr double kAttraction = 0.1;

double max_overlap(std::span<const Point2> centers, std::span<const double> radii) {
  double worst = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      worst = std::max(worst, radii[i] + radii[j] - distance(centers[i], centers[j]));
    }
  }
  return worst;
}

// Pushes every overlapping pair apart by half the overlap (plus `margin`)
// each, along the centre line. Coincident pairs use `tie_axis(i, j)`.
template <typename TieAxis>
void separate_pairs(std::vector<Point2>& centers, std::span<const double> radii, double margin,
                    TieAxis tie_axis) {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double dx = centers[j].x - centers[i].x;
      const double dy = centers[j].y - centers[i].y;
      const double d = std::sqrt(dx * dx + dy * dy);
      const double overlap = radii[i] + radii[j] - d;
      if (overlap <= 0.0) continue;
      Point2 u = d > 0.0 ? Point2{dx / d, dy / d} : tie_axis(i, j);
      const double half = 0.5 * (overlap + margin);
      centers[i].x -= u.x * half;
      centers[i].y -= u.y * half;
      centers[j].x += u.x * half;
      centers[j].y += u.y * half;
    }
  }
}

void clamp_to_canvas(std::vector<Point2>& centers, std::span<const double> radii,
                     const Canvas& canvas) {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    centers[i].x = std::clamp(centers[i].x, radii[i], canvas.width - radii[i]);
    centers[i].y = std::clamp(centers[i].y, radii[i], canvas.height - radii[i]);
  }
}

void clamp_to_disc(std::vector<Point2>& offsets, std::span<const double> radii, double bound) {
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const double limit = std::max(0.0, bound - radii[i]);
    const double norm = std::hypot(offsets[i].x, offsets[i].y);
    if (norm > limit) {
      const double scale = limit / norm;
      offsets[i].x *= scale;
      offsets[i].y *= scale;
    }
  }
}

std::vector<double> area_radii(std::span<const std::size_t> readers, std::size_t total,
                               double r_max, double r_min) {
  std::vector<double> radii;
  radii.reserve(readers.size());
  for (std::size_t r : readers) {
    radii.push_back(total == 0 ? r_min : area_radius(r, total, r_max, r_min));
  }
  return radii;
}

bool fits_trivially(std::span<const double> radii, const Canvas& canvas) {
  double covered = 0.0;
  for (double r : radii) {
    if (2.0 * r > canvas.min_dimension()) return false;
    covered += std::numbers::pi * r * r;
  }
  return covered <= 0.85 * canvas.width * canvas.height;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double LayoutConfig::area_r_max_value() const {
  if (area_r_max > 0.0) return area_r_max;
  return std::sqrt(0.3 * canvas.width * canvas.height / std::numbers::pi);
}

double area_radius(std::size_t combined_readers, std::size_t total_readers, double r_max,
                   double r_min) {
  if (total_readers == 0) throw Error(ErrorCode::domain, "total readership is zero");
  if (combined_readers > total_readers) {
    throw Error(ErrorCode::invalid_argument, "area readership exceeds the total");
  }
  const double share = static_cast<double>(combined_readers) / static_cast<double>(total_readers);
  return std::max(r_min, r_max * std::sqrt(share));
}

std::vector<AreaLayout> place_areas(const Embedding& embedding,
                                    const ClusterAssignment& assignment,
                                    std::span<const std::size_t> readers_per_area,
                                    const LayoutConfig& config, Warnings* warnings) {
  const std::size_t k = assignment.k;
  if (assignment.area_of.size() != embedding.size()) {
    throw Error(ErrorCode::invalid_argument, "assignment does not match the embedding");
  }
  if (readers_per_area.size() != k) {
    throw Error(ErrorCode::invalid_argument, "one reader total per area is required");
  }
  const Canvas& canvas = config.canvas;
  if (!(canvas.width > 0.0) || !(canvas.height > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "canvas dimensions must be positive");
  }

  // Centroids relative to the embedding mean, so a lone area lands mid-canvas.
  Point2 mean;
  for (const auto& p : embedding.positions) {
    mean.x += p.x;
    mean.y += p.y;
  }
  if (embedding.size() > 0) {
    mean.x /= static_cast<double>(embedding.size());
    mean.y /= static_cast<double>(embedding.size());
  }
  std::vector<Point2> centroid(k);
  std::vector<std::size_t> count(k, 0);
  double extent = 0.0;
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    const Point2 p{embedding.positions[i].x - mean.x, embedding.positions[i].y - mean.y};
    centroid[assignment.area_of[i]].x += p.x;
    centroid[assignment.area_of[i]].y += p.y;
    ++count[assignment.area_of[i]];
    extent = std::max(extent, std::hypot(p.x, p.y));
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (count[a] == 0) throw Error(ErrorCode::invalid_argument, "empty area in assignment");
    centroid[a].x /= static_cast<double>(count[a]);
    centroid[a].y /= static_cast<double>(count[a]);
  }

  std::size_t total = 0;
  for (std::size_t r : readers_per_area) total += r;

  const double r_min = config.area_r_min();
  if (2.0 * r_min > canvas.min_dimension() ||
      static_cast<double>(k) * 4.0 * r_min * r_min > canvas.width * canvas.height) {
    throw Error(ErrorCode::domain, "canvas too small");
  }

  const double margin = config.geometry_margin();
  const Point2 middle{0.5 * canvas.width, 0.5 * canvas.height};
  double r_max = config.area_r_max_value();
  for (int attempt = 0; attempt < kMaxShrinkAttempts; ++attempt) {
    const auto radii = area_radii(readers_per_area, total, r_max, r_min);
    std::vector<double> padded(radii);
    for (double& r : padded) r += margin;
    const bool all_at_floor =
        std::all_of(radii.begin(), radii.end(), [&](double r) { return r <= r_min; });
    if (fits_trivially(padded, canvas)) {
      const double largest = *std::max_element(padded.begin(), padded.end());
      const double room = 0.5 * canvas.min_dimension() - largest;
      const double scale = extent > 0.0 && room > 0.0 ? room / extent : 0.0;
      std::vector<Point2> centers(k);
      for (std::size_t a = 0; a < k; ++a) {
        centers[a] = {middle.x + scale * centroid[a].x, middle.y + scale * centroid[a].y};
      }
      clamp_to_canvas(centers, padded, canvas);

      bool separated = max_overlap(centers, padded) <= 0.0;
      for (int sweep = 0; sweep < config.separation_sweeps && !separated; ++sweep) {
        separate_pairs(centers, padded, 1e-3 * margin,
                       [](std::size_t, std::size_t) { return Point2{1.0, 0.0}; });
        clamp_to_canvas(centers, padded, canvas);
        separated = max_overlap(centers, padded) <= 0.0;
      }
      if (separated) {
        std::vector<AreaLayout> out(k);
        for (std::size_t a = 0; a < k; ++a) out[a] = {a, centers[a], radii[a], readers_per_area[a]};
        return out;
      }
    }
    if (all_at_floor) break;
    r_max *= kShrinkFactor;
    if (warnings) {
      warnings->push_back("area bubbles did not fit; shrinking r_max to " + std::to_string(r_max));
    }
  }
  throw Error(ErrorCode::domain, "canvas too small");
}

std::vector<DocumentLayout> pack_documents(const AreaLayout& area, std::span<const PackItem> members,
                                           const PackingParams& params, Warnings* warnings) {
  const std::size_t m = members.size();
  if (m == 0) throw Error(ErrorCode::invalid_argument, "cannot pack an empty area");
  if (!(area.radius > 0.0)) throw Error(ErrorCode::invalid_argument, "area radius must be positive");
  if (params.iterations < 0) throw Error(ErrorCode::invalid_argument, "negative iteration count");

  std::size_t max_readers = 0;
  for (const auto& item : members) max_readers = std::max(max_readers, item.readers);
  std::vector<double> radii(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double ratio = max_readers == 0 ? 1.0
                                          : static_cast<double>(members[i].readers) /
                                                static_cast<double>(max_readers);
    radii[i] = std::min(area.radius, std::max(params.doc_r_min, params.doc_r_max * std::sqrt(ratio)));
  }

  const double bound = area.radius;
  double filled = 0.0;
  for (double r : radii) filled += r * r;
  const double allowed = params.density * bound * bound;
  if (filled > allowed) {
    const double scale = std::sqrt(allowed / filled);
    for (double& r : radii) r *= scale;
    if (warnings) {
      warnings->push_back("area " + std::to_string(area.area_id) +
                          ": document circles exceed the packing density; radii scaled by " +
                          std::to_string(scale));
    }
  }

  auto finish = [&](const std::vector<Point2>& offsets) {
    std::vector<DocumentLayout> out(m);
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = {members[i].doc_id, area.area_id,
                {area.center.x + offsets[i].x, area.center.y + offsets[i].y}, radii[i]};
    }
    return out;
  };

  if (m == 1) return finish({Point2{}});

  const double margin = params.margin;
  auto tie_axis = [](std::size_t i, std::size_t j) {
    const double angle = std::numbers::pi * (0.618033988749895 * static_cast<double>(i + 3 * j));
    return Point2{std::cos(angle), std::sin(angle)};
  };

  for (int attempt = 0; attempt < kMaxShrinkAttempts; ++attempt) {
    std::vector<double> padded(radii);
    for (double& r : padded) r += margin;
    std::mt19937_64 rng(params.seed);
    std::vector<Point2> offsets(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double reach = 0.5 * std::max(0.0, bound - padded[i]);
      offsets[i] = {reach * std::cos(angle), reach * std::sin(angle)};
    }

    for (int iteration = 0; iteration < params.iterations; ++iteration) {
      for (auto& p : offsets) {
        p.x *= 1.0 - kAttraction;
        p.y *= 1.0 - kAttraction;
      }
      separate_pairs(offsets, padded, 0.0, tie_axis);
      clamp_to_disc(offsets, padded, bound);
    }

    bool separated = max_overlap(offsets, padded) <= 0.0;
    for (int pass = 0; pass < kRelaxationPasses && !separated; ++pass) {
      separate_pairs(offsets, padded, 1e-3 * margin + 1e-12 * bound, tie_axis);
      clamp_to_disc(offsets, padded, bound);
      separated = max_overlap(offsets, padded) <= 0.0;
    }
    if (separated) return finish(offsets);

    for (double& r : radii) r *= kShrinkFactor;
    if (warnings) {
      warnings->push_back("area " + std::to_string(area.area_id) +
                          ": documents did not separate; radii shrunk by 10%");
    }
  }
  throw Error(ErrorCode::domain, "could not pack documents of area " + std::to_string(area.area_id));
}

MapLayout compute_layout(const Embedding& embedding, const ClusterAssignment& assignment,
                         std::span<const std::size_t> doc_readers, const LayoutConfig& config,
                         Warnings* warnings) {
  if (doc_readers.size() != embedding.size()) {
    throw Error(ErrorCode::invalid_argument, "reader counts do not match the embedding");
  }
  std::vector<std::size_t> per_area(assignment.k, 0);
  for (std::size_t i = 0; i < embedding.size(); ++i) per_area[assignment.area_of[i]] += doc_readers[i];

  MapLayout layout;
  layout.canvas = config.canvas;
  layout.areas = place_areas(embedding, assignment, per_area, config, warnings);
  layout.documents.resize(embedding.size());

  PackingParams params;
  params.doc_r_max = config.doc_r_max();
  params.doc_r_min = config.doc_r_min();
  params.iterations = config.packing_iterations;
  params.density = config.packing_density;
  params.margin = config.geometry_margin();
  for (const auto& area : layout.areas) {
    const auto members = assignment.members(area.area_id);
    std::vector<PackItem> items;
    items.reserve(members.size());
    for (std::size_t i : members) items.push_back({embedding.labels[i], doc_readers[i]});
    params.seed = mix_seed(config.seed, area.area_id);
    auto packed = pack_documents(area, items, params, warnings);
    for (std::size_t t = 0; t < members.size(); ++t) layout.documents[members[t]] = std::move(packed[t]);
  }
  return layout;
}

}  // namespace readmap
