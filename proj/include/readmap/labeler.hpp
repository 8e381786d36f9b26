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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readmap/cluster.hpp"
#include "readmap/corpus.hpp"

namespace readmap {

/// Version tag of the shipped English stopword list.
extern const std::string_view kStopwordListVersion;

bool is_stopword(std::string_view lowercase_token);
std::span<const std::string_view> stopword_list();

/// Lowercased word runs separated by phrase breaks (sentence punctuation and
/// brackets). Stopwords, single characters and digit-only tokens are removed
/// and also break the phrase, so bigrams never span them.
std::vector<std::vector<std::string>> tokenize_phrases(std::string_view text);

/// Every unigram and in-phrase bigram of `text`, with repetition.
std::vector<std::string> extract_terms(std::string_view text);

struct TermScore {
  std::string term;
  double score = 0.0;

  friend bool operator==(const TermScore&, const TermScore&) = default;
};

enum class LabelSource { tfidf, enrichment, manual_override };
std::string_view to_string(LabelSource source) noexcept;
LabelSource parse_label_source(std::string_view text);

struct AreaName {
  std::size_t area_id = 0;
  std::string label;
  LabelSource source = LabelSource::tfidf;
};

struct LabelSuggestion {
  std::string label;
  double confidence = 0.0;
};

/// External text-mining service returning candidate topic labels for a set of
/// document texts. Implementations throw Error (timeout or io) on failure and
/// must not block longer than their configured timeout.
class EnrichmentClient {
 public:
  virtual ~EnrichmentClient() = default;
  virtual std::vector<LabelSuggestion> suggest(const std::vector<std::string>& texts) = 0;
};

/// Reference adapter: POST {"texts": [...]} to `url`, expecting
/// {"labels": [{"label": "...", "confidence": 0.9}, ...]}.
class HttpEnrichmentClient final : public EnrichmentClient {
 public:
  HttpEnrichmentClient(std::string url, std::chrono::milliseconds timeout);
  std::vector<LabelSuggestion> suggest(const std::vector<std::string>& texts) override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

/// Per-area TF-IDF over unigrams and bigrams. Each area's concatenated titles
/// and abstracts form one pseudo-document; idf(t) = ln(1 + K / df(t)).
class AreaTermModel {
 public:
  AreaTermModel(const Corpus& corpus, const ClusterAssignment& assignment);

  std::size_t area_count() const noexcept { return area_terms_.size(); }
  /// Titles and abstracts of the area's documents.
  const std::vector<std::string>& area_texts(std::size_t area) const { return area_texts_.at(area); }
  /// Sorted by descending score, ties by ascending term.
  std::vector<TermScore> candidates(std::size_t area) const;

 private:
  std::vector<std::map<std::string, std::size_t>> area_terms_;
  std::vector<std::size_t> area_term_totals_;
  std::map<std::string, std::size_t> document_frequency_;
  std::vector<std::vector<std::string>> area_texts_;
};

/// TF-IDF scores are rescaled so the best is kTfidfCeiling; client labels
/// score their confidence clamped to [0, 1]; duplicates keep the higher
/// score. On client failure the TF-IDF list is returned unchanged and
/// `degraded` is set.
struct EnrichmentResult {
  std::vector<TermScore> terms;
  std::vector<std::string> client_terms;
  bool degraded = false;
};

inline constexpr double kTfidfCeiling = 0.5;

EnrichmentResult enrich_labels(const std::vector<std::string>& area_texts,
                               std::span<const TermScore> tfidf_candidates,
                               EnrichmentClient& client, Warnings* warnings = nullptr);

struct LabelOptions {
  std::size_t terms_per_label = 3;
  EnrichmentClient* client = nullptr;
  std::map<std::size_t, std::string> overrides;
};

/// Builds a label from ranked candidates, skipping any term that shares a
/// word with one already chosen. A label that collides with `taken` grows by
/// the next eligible term, up to five terms. Returns an empty string when no
/// candidate is usable.
std::string compose_label(std::span<const TermScore> ranked, std::size_t terms_per_label,
                          const std::vector<std::string>& taken);

/// Names every area: overrides first, then generated labels in area order.
/// Labels are unique; an area without usable tokens becomes "Area <id>".
std::vector<AreaName> label_areas(const Corpus& corpus, const ClusterAssignment& assignment,
                                  const LabelOptions& options = {}, Warnings* warnings = nullptr);

/// Reads {"<area_id>": "<label>", ...}.
std::map<std::size_t, std::string> load_label_overrides(const std::filesystem::path& path);

std::string title_case(std::string_view term);

}  // namespace readmap
