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

#include "readmap/cluster.hpp"
#include "readmap/embed.hpp"

namespace readmap {

/// Abstract canvas units; the viewer scales them to pixels.
struct Canvas {
  double width = 1000.0;
  double height = 1000.0;

  double min_dimension() const noexcept { return width < height ? width : height; }

  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct LayoutConfig {
  Canvas canvas;
  /// Radius of a bubble holding all readers. 0 selects sqrt(0.3 W H / pi),
  /// i.e. bubbles cover about 30% of the canvas.
  double area_r_max = 0.0;
  double area_r_min_fraction = 0.02;
  double doc_r_max_fraction = 0.04;
  double doc_r_min_fraction = 0.008;
  int separation_sweeps = 500;
  int packing_iterations = 200;
  double packing_density = 0.7;
  std::uint64_t seed = 42;

  double area_r_max_value() const;
  double area_r_min() const { return area_r_min_fraction * canvas.min_dimension(); }
  double doc_r_max() const { return doc_r_max_fraction * canvas.min_dimension(); }
  double doc_r_min() const { return doc_r_min_fraction * canvas.min_dimension(); }
  /// Clearance kept between circles and around containers, large enough to
  /// survive rounding to six significant digits on export.
  double geometry_margin() const { return 5e-5 * canvas.min_dimension(); }
};

struct AreaLayout {
  std::size_t area_id = 0;
  Point2 center;
  double radius = 0.0;
  std::size_t combined_readers = 0;
};

struct DocumentLayout {
  std::string doc_id;
  std::size_t area_id = 0;
  Point2 position;
  double radius = 0.0;
};

struct MapLayout {
  Canvas canvas;
  std::vector<AreaLayout> areas;
  std::vector<DocumentLayout> documents;
};

/// max(r_min, r_max * sqrt(combined / total)): bubble area is proportional to
/// readership share.
double area_radius(std::size_t combined_readers, std::size_t total_readers, double r_max,
                   double r_min = 0.0);

/// Bubbles start at their members' MDS centroid scaled onto the canvas, then
/// overlapping pairs are pushed apart along their centre line (half the
/// overlap each, +x for coincident centres) in area_id order and clamped into
/// the canvas. If the sweeps cannot separate them, r_max shrinks by 10% and
/// the placement restarts; Error(domain, "canvas too small") once every
/// bubble is at r_min and still does not fit.
std::vector<AreaLayout> place_areas(const Embedding& embedding,
                                    const ClusterAssignment& assignment,
                                    std::span<const std::size_t> readers_per_area,
                                    const LayoutConfig& config, Warnings* warnings = nullptr);

struct PackItem {
  std::string doc_id;
  std::size_t readers = 0;
};

struct PackingParams {
  double doc_r_max = 40.0;
  double doc_r_min = 8.0;
  int iterations = 200;
  double density = 0.7;
  std::uint64_t seed = 42;
  /// Clearance between circles and from the bubble edge.
  double margin = 0.0;
};

/// Force-directed placement of document circles inside one bubble. Output
/// follows the input order.
std::vector<DocumentLayout> pack_documents(const AreaLayout& area, std::span<const PackItem> members,
                                           const PackingParams& params,
                                           Warnings* warnings = nullptr);

/// Full layout: combined readership per area, bubble placement, and packing of
/// every bubble. Documents are listed in embedding order.
MapLayout compute_layout(const Embedding& embedding, const ClusterAssignment& assignment,
                         std::span<const std::size_t> doc_readers, const LayoutConfig& config,
                         Warnings* warnings = nullptr);

}  // namespace readmap
