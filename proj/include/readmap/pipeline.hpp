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
#include <filesystem>
#include <optional>
#include <string>

#include "readmap/cluster.hpp"
#include "readmap/cooccur.hpp"
#include "readmap/corpus.hpp"
#include "readmap/embed.hpp"
#include "readmap/labeler.hpp"
#include "readmap/layout.hpp"
#include "readmap/mapio.hpp"

namespace readmap {

const char* tool_version() noexcept;

struct BuildOptions {
  std::size_t threshold = 16;
  SimilarityScheme similarity = SimilarityScheme::cosine;
  /// Fixed area count; unset selects k by silhouette.
  std::optional<std::size_t> k;
  std::uint64_t seed = 42;
  int max_iterations = 300;
  double rel_tol = 1e-6;
  int restarts = 4;
  LayoutConfig layout;
  LabelOptions labels;
  std::optional<std::string> source;
  std::optional<CalendarDate> snapshot_date;
  /// Writes the co-readership counts as CSV when set.
  std::optional<std::filesystem::path> matrix_dump;
};

/// Every intermediate product, for inspection and testing.
struct BuildResult {
  Corpus corpus;
  CooccurrenceMatrix cooccurrence;
  DistanceMatrix distances;
  EmbeddingResult embedding;
  Dendrogram dendrogram;
  ClusterAssignment assignment;
  std::vector<AreaName> names;
  MapLayout layout;
  KnowledgeMap map;
  Warnings warnings;
};

/// threshold -> co-readership -> similarity -> distance -> MDS -> Ward ->
/// k -> layout -> labels -> map. With automatic k, fewer than three
/// documents form a single area.
BuildResult build_map(const Corpus& corpus, const BuildOptions& options);

}  // namespace readmap
