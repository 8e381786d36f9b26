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

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "readmap/error.hpp"

namespace readmap {

enum class PubType {
  journal_article,
  report,
  book,
  book_chapter,
  conference_paper,
};

inline constexpr std::array<PubType, 5> kAllPubTypes = {
    PubType::journal_article, PubType::report, PubType::book,
    PubType::book_chapter, PubType::conference_paper};

std::string_view to_string(PubType type) noexcept;
std::optional<PubType> parse_pub_type(std::string_view text) noexcept;

struct CalendarDate {
  int year = 1970;
  int month = 1;
  int day = 1;

  /// Parses YYYY-MM-DD; throws Error(parse) on anything else.
  static CalendarDate parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

int current_year();

struct DocumentRecord {
  std::string doc_id;
  std::string title;
  std::vector<std::string> authors;
  int year = 0;
  std::string venue;
  PubType pub_type = PubType::journal_article;
  std::optional<std::string> abstract;
  std::optional<std::string> preview_ref;

  friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

struct ReadershipEvent {
  std::string user_id;
  std::string doc_id;

  friend bool operator==(const ReadershipEvent&, const ReadershipEvent&) = default;
  friend auto operator<=>(const ReadershipEvent&, const ReadershipEvent&) = default;
};

struct CorpusProvenance {
  std::string source;
  std::optional<CalendarDate> snapshot_date;

  friend bool operator==(const CorpusProvenance&, const CorpusProvenance&) = default;
};

/// Immutable set of documents and deduplicated readership. Documents are kept
/// in ascending doc_id order; that order defines the document index used by
/// every downstream matrix.
class Corpus {
 public:
  Corpus() = default;

  /// Validates and indexes the records. Duplicate (user, doc) events collapse;
  /// duplicate doc_ids and events naming unknown documents are rejected.
  static Corpus from_records(std::vector<DocumentRecord> documents,
                             const std::vector<ReadershipEvent>& events,
                             CorpusProvenance provenance = {});

  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  const std::vector<DocumentRecord>& documents() const noexcept { return documents_; }
  const DocumentRecord& document(std::size_t index) const { return documents_.at(index); }

  std::optional<std::size_t> index_of(std::string_view doc_id) const;

  /// Distinct readers of a document, sorted ascending.
  const std::vector<std::string>& readers(std::size_t index) const { return readers_.at(index); }
  std::size_t reader_count(std::size_t index) const { return readers_.at(index).size(); }
  /// Throws Error(not_found) for an unknown doc_id.
  std::size_t reader_count(std::string_view doc_id) const;

  std::size_t total_readers() const noexcept;
  std::size_t event_count() const noexcept;
  /// Deduplicated events ordered by (user_id, doc_id).
  std::vector<ReadershipEvent> events() const;

  const CorpusProvenance& provenance() const noexcept { return provenance_; }
  void set_provenance(CorpusProvenance provenance) { provenance_ = std::move(provenance); }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<DocumentRecord> documents_;
  std::vector<std::vector<std::string>> readers_;
  CorpusProvenance provenance_;
};

/// Reads newline-delimited JSON records. Blank lines are skipped. Malformed
/// records raise Error(parse) naming the stream and line number.
Corpus load_corpus(std::istream& metadata, std::istream& events,
                   Warnings* warnings = nullptr);
Corpus load_corpus_files(const std::filesystem::path& metadata_path,
                         const std::filesystem::path& events_path,
                         Warnings* warnings = nullptr);

/// Keeps documents with at least min_readers distinct readers, and their
/// events. The input is left untouched.
Corpus filter_by_threshold(const Corpus& corpus, std::size_t min_readers);

struct StatsSummary {
  std::size_t document_count = 0;
  std::map<PubType, std::size_t> type_histogram;
  std::map<PubType, int> type_share_percent;
  std::map<std::string, std::size_t> venue_histogram;
  std::map<int, std::size_t> year_histogram;
  double median_age_years = 0.0;
  double mean_age_years = 0.0;
  int share_from_year = 0;
  int share_from_year_percent = 0;
  CalendarDate reference_date;
};

/// Integer percentage of count/total, rounded half-up, computed exactly.
int percent_half_up(std::size_t count, std::size_t total);

/// Ages are whole years (reference year minus publication year). The share
/// cut-off defaults to documents younger than ten years at the reference date.
StatsSummary publication_stats(const Corpus& corpus, const CalendarDate& reference,
                               std::optional<int> share_from_year = std::nullopt);

std::string stats_to_json(const StatsSummary& stats);

}  // namespace readmap
