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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readmap/cluster.hpp"
#include "readmap/corpus.hpp"
#include "readmap/labeler.hpp"
#include "readmap/layout.hpp"

namespace readmap {

inline constexpr int kSchemaVersion = 1;

struct MapProvenance {
  std::string source;
  std::optional<std::string> snapshot_date;
  std::size_t threshold = 0;
  std::string similarity = "cosine";
  std::string distance = "1-s";
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::string k_selection = "auto";
  std::string tool_version;
  std::string stopwords;
  double area_r_min = 0.0;
  double doc_r_min = 0.0;
  std::size_t mds_iterations = 0;
  double final_stress = 0.0;
  std::vector<double> stress_trace;

  friend bool operator==(const MapProvenance&, const MapProvenance&) = default;
};

struct MapArea {
  std::size_t area_id = 0;
  std::string label;
  std::string label_source = "tfidf";
  Point2 center;
  double radius = 0.0;
  std::size_t combined_readers = 0;
  double readership_share_percent = 0.0;
  std::size_t document_count = 0;

  friend bool operator==(const MapArea&, const MapArea&) = default;
};

struct MapDocument {
  std::string doc_id;
  std::size_t area_id = 0;
  Point2 position;
  double radius = 0.0;
  std::string title;
  std::vector<std::string> authors;
  int year = 0;
  std::string venue;
  std::string pub_type;
  std::size_t readers = 0;
  std::optional<std::string> abstract;
  std::optional<std::string> preview_ref;

  friend bool operator==(const MapDocument&, const MapDocument&) = default;
};

/// Self-contained map: areas ordered by area_id, documents by doc_id.
struct KnowledgeMap {
  int schema_version = kSchemaVersion;
  MapProvenance provenance;
  Canvas canvas;
  std::vector<MapArea> areas;
  std::vector<MapDocument> documents;

  const MapDocument* find_document(std::string_view doc_id) const;

  friend bool operator==(const KnowledgeMap&, const KnowledgeMap&) = default;
};

/// 100 * area / total rounded half-up to one decimal, computed exactly.
double readership_share(std::size_t area_readers, std::size_t total_readers);

/// Shares for a whole partition. Uses readership_share per part; if the
/// rounded parts miss 100.0 by more than 0.2, falls back to largest-remainder
/// apportionment of 1000 tenths so the sum is exactly 100.0.
std::vector<double> readership_shares(std::span<const std::size_t> area_readers);

/// Rounds to six significant digits (the precision of the map file).
double round_significant(double value);

/// Assembles the map from pipeline outputs over one doc_id set. Throws
/// Error(invalid_argument) on inconsistent inputs and Error(domain) for an
/// empty corpus.
KnowledgeMap export_map(const Corpus& corpus, const ClusterAssignment& assignment,
                        std::span<const AreaName> names, const MapLayout& layout,
                        MapProvenance provenance);

/// Canonical JSON: fixed key order, six significant digits, two-space indent,
/// trailing newline. Identical maps give identical bytes.
std::string serialize_map(const KnowledgeMap& map);
KnowledgeMap parse_map(std::string_view text);
KnowledgeMap load_map_file(const std::filesystem::path& path);
void save_map_file(const KnowledgeMap& map, const std::filesystem::path& path);

std::string document_to_json(const MapDocument& doc);

struct SearchQuery {
  std::string raw;
  std::vector<std::string> terms;

  /// Whitespace-separated terms, ASCII-lowercased. Empty text has no terms.
  static SearchQuery parse(std::string_view text);
};

struct SearchFields {
  bool title = true;
  bool authors = true;
  bool venue = true;
  bool year = true;
  bool abstract = true;
};

/// Documents whose searchable text contains every term (case-insensitive
/// substring), by descending readers then ascending doc_id.
std::vector<std::string> search(const KnowledgeMap& map, const SearchQuery& query,
                                const SearchFields& fields = {});

enum class SortKey { title, area, readers };
SortKey parse_sort_key(std::string_view text);

std::vector<std::string> sort_documents(const KnowledgeMap& map, SortKey key);

}  // namespace readmap
