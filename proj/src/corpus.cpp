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

#include "readmap/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>

#include "json.hpp"

namespace readmap {

namespace {

using nlohmann::json;

constexpr int kMinYear = 1800;

[[noreturn]] void fail_at(std::string_view stream, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse,
              std::string(stream) + " line " + std::to_string(line) + ": " + what);
}

std::string require_string(const json& record, const char* key, std::string_view stream,
                           std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) fail_at(stream, line, std::string("missing field '") + key + "'");
  if (!it->is_string()) fail_at(stream, line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& record, const char* key,
                                           std::string_view stream, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail_at(stream, line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

json parse_line(const std::string& text, std::string_view stream, std::size_t line) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(stream, line, std::string("malformed record: ") + e.what());
  }
  if (!record.is_object()) fail_at(stream, line, "record must be an object");
  return record;
}

void warn_unknown_fields(const json& record, std::initializer_list<std::string_view> known,
                         std::string_view stream, std::size_t line, Warnings* warnings) {
  if (warnings == nullptr) return;
  for (const auto& [key, value] : record.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      warnings->push_back(std::string(stream) + " line " + std::to_string(line) +
                          ": unknown field '" + key + "' ignored");
    }
  }
}

DocumentRecord parse_document(const json& record, std::size_t line, Warnings* warnings) {
  constexpr std::string_view stream = "metadata";
  warn_unknown_fields(record,
                      {"doc_id", "title", "authors", "year", "venue", "pub_type", "abstract",
                       "preview_ref"},
                      stream, line, warnings);
  DocumentRecord doc;
  doc.doc_id = require_string(record, "doc_id", stream, line);
  doc.title = require_string(record, "title", stream, line);

  auto authors = record.find("authors");
  if (authors == record.end()) fail_at(stream, line, "missing field 'authors'");
  if (!authors->is_array()) fail_at(stream, line, "field 'authors' must be an array");
  for (const auto& author : *authors) {
    if (!author.is_string()) fail_at(stream, line, "authors must be strings");
    doc.authors.push_back(author.get<std::string>());
  }

  auto year = record.find("year");
  if (year == record.end()) fail_at(stream, line, "missing field 'year'");
  if (!year->is_number_integer()) fail_at(stream, line, "field 'year' must be an integer");
  doc.year = year->get<int>();

  doc.venue = require_string(record, "venue", stream, line);
  auto type_text = require_string(record, "pub_type", stream, line);
  auto type = parse_pub_type(type_text);
  if (!type) fail_at(stream, line, "unknown pub_type '" + type_text + "'");
  doc.pub_type = *type;

  doc.abstract = optional_string(record, "abstract", stream, line);
  doc.preview_ref = optional_string(record, "preview_ref", stream, line);
  return doc;
}

void validate_document(const DocumentRecord& doc, int max_year) {
  if (doc.doc_id.empty()) throw Error(ErrorCode::invalid_argument, "empty doc_id");
  if (doc.title.empty()) {
    throw Error(ErrorCode::invalid_argument, "document '" + doc.doc_id + "' has an empty title");
  }
  if (doc.year < kMinYear || doc.year > max_year) {
    throw Error(ErrorCode::invalid_argument,
                "document '" + doc.doc_id + "' has year " + std::to_string(doc.year) +
                    " outside [" + std::to_string(kMinYear) + ", " + std::to_string(max_year) +
                    "]");
  }
}

}  // namespace

std::string_view to_string(PubType type) noexcept {
  switch (type) {
    case PubType::journal_article: return "journal_article";
    case PubType::report: return "report";
    case PubType::book: return "book";
    case PubType::book_chapter: return "book_chapter";
    case PubType::conference_paper: return "conference_paper";
  }
  return "journal_article";
}

std::optional<PubType> parse_pub_type(std::string_view text) noexcept {
  for (PubType type : kAllPubTypes) {
    if (to_string(type) == text) return type;
  }
  return std::nullopt;
}

CalendarDate CalendarDate::parse(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::parse, "invalid date '" + std::string(text) + "', expected YYYY-MM-DD"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9') throw bad();
  }
  auto number = [&](std::size_t pos, std::size_t len) {
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) value = value * 10 + (text[i] - '0');
    return value;
  };
  CalendarDate date{number(0, 4), number(5, 2), number(8, 2)};
  if (date.month < 1 || date.month > 12) throw bad();
  const std::chrono::year_month_day ymd{std::chrono::year{date.year},
                                        std::chrono::month{static_cast<unsigned>(date.month)},
                                        std::chrono::day{static_cast<unsigned>(date.day)}};
  if (!ymd.ok()) throw bad();
  return date;
}

std::string CalendarDate::to_string() const {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02d", year, month, day);
  return buffer;
}

int current_year() {
  const auto today = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  return static_cast<int>(std::chrono::year_month_day{today}.year());
}

Corpus Corpus::from_records(std::vector<DocumentRecord> documents,
                            const std::vector<ReadershipEvent>& events,
                            CorpusProvenance provenance) {
  const int max_year = current_year();
  for (const auto& doc : documents) validate_document(doc, max_year);

  std::sort(documents.begin(), documents.end(),
            [](const DocumentRecord& a, const DocumentRecord& b) { return a.doc_id < b.doc_id; });
  auto dup = std::adjacent_find(
      documents.begin(), documents.end(),
      [](const DocumentRecord& a, const DocumentRecord& b) { return a.doc_id == b.doc_id; });
  if (dup != documents.end()) {
    throw Error(ErrorCode::invalid_argument, "duplicate doc_id '" + dup->doc_id + "'");
  }

  Corpus corpus;
  corpus.documents_ = std::move(documents);
  corpus.readers_.resize(corpus.documents_.size());
  corpus.provenance_ = std::move(provenance);

  for (const auto& event : events) {
    if (event.user_id.empty()) {
      throw Error(ErrorCode::invalid_argument, "event for '" + event.doc_id + "' has empty user_id");
    }
    auto index = corpus.index_of(event.doc_id);
    if (!index) {
      throw Error(ErrorCode::invalid_argument,
                  "event references unknown doc_id '" + event.doc_id + "'");
    }
    corpus.readers_[*index].push_back(event.user_id);
  }
  for (auto& readers : corpus.readers_) {
    std::sort(readers.begin(), readers.end());
    readers.erase(std::unique(readers.begin(), readers.end()), readers.end());
  }
  return corpus;
}

std::optional<std::size_t> Corpus::index_of(std::string_view doc_id) const {
  auto it = std::lower_bound(
      documents_.begin(), documents_.end(), doc_id,
      [](const DocumentRecord& doc, std::string_view id) { return doc.doc_id < id; });
  if (it == documents_.end() || it->doc_id != doc_id) return std::nullopt;
  return static_cast<std::size_t>(it - documents_.begin());
}

std::size_t Corpus::reader_count(std::string_view doc_id) const {
  auto index = index_of(doc_id);
  if (!index) throw Error(ErrorCode::not_found, "unknown doc_id '" + std::string(doc_id) + "'");
  return readers_[*index].size();
}

std::size_t Corpus::total_readers() const noexcept {
  std::size_t total = 0;
  for (const auto& readers : readers_) total += readers.size();
  return total;
}

std::size_t Corpus::event_count() const noexcept { return total_readers(); }

std::vector<ReadershipEvent> Corpus::events() const {
  std::vector<ReadershipEvent> out;
  out.reserve(total_readers());
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    for (const auto& user : readers_[i]) out.push_back({user, documents_[i].doc_id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Corpus load_corpus(std::istream& metadata, std::istream& events, Warnings* warnings) {
  std::vector<DocumentRecord> documents;
  std::set<std::string> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(metadata, text)) {
    ++line;
    if (is_blank(text)) continue;
    auto doc = parse_document(parse_line(text, "metadata", line), line, warnings);
    if (!seen.insert(doc.doc_id).second) fail_at("metadata", line, "duplicate doc_id '" + doc.doc_id + "'");
    try {
      validate_document(doc, current_year());
    } catch (const Error& e) {
      fail_at("metadata", line, e.what());
    }
    documents.push_back(std::move(doc));
  }

  std::vector<ReadershipEvent> parsed_events;
  line = 0;
  while (std::getline(events, text)) {
    ++line;
    if (is_blank(text)) continue;
    auto record = parse_line(text, "events", line);
    warn_unknown_fields(record, {"user_id", "doc_id"}, "events", line, warnings);
    ReadershipEvent event{require_string(record, "user_id", "events", line),
                          require_string(record, "doc_id", "events", line)};
    if (event.user_id.empty()) fail_at("events", line, "empty user_id");
    if (!seen.contains(event.doc_id)) {
      fail_at("events", line, "dangling doc_id '" + event.doc_id + "'");
    }
    parsed_events.push_back(std::move(event));
  }
  return Corpus::from_records(std::move(documents), parsed_events);
}

Corpus load_corpus_files(const std::filesystem::path& metadata_path,
                         const std::filesystem::path& events_path, Warnings* warnings) {
  std::ifstream metadata(metadata_path);
  if (!metadata) throw Error(ErrorCode::io, "cannot open " + metadata_path.string());
  std::ifstream events(events_path);
  if (!events) throw Error(ErrorCode::io, "cannot open " + events_path.string());
  return load_corpus(metadata, events, warnings);
}

Corpus filter_by_threshold(const Corpus& corpus, std::size_t min_readers) {
  std::vector<DocumentRecord> kept;
  std::vector<ReadershipEvent> events;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus.reader_count(i) < min_readers) continue;
    kept.push_back(corpus.document(i));
    for (const auto& user : corpus.readers(i)) events.push_back({user, corpus.document(i).doc_id});
  }
  return Corpus::from_records(std::move(kept), events, corpus.provenance());
}

int percent_half_up(std::size_t count, std::size_t total) {
  if (total == 0) throw Error(ErrorCode::domain, "percentage of an empty total");
  // floor(100 * count / total + 1/2) without floating point.
  return static_cast<int>((200 * count + total) / (2 * total));
}

StatsSummary publication_stats(const Corpus& corpus, const CalendarDate& reference,
                               std::optional<int> share_from_year) {
  if (corpus.empty()) throw Error(ErrorCode::domain, "no statistics for an empty corpus");

  StatsSummary stats;
  stats.document_count = corpus.size();
  stats.reference_date = reference;
  std::vector<int> ages;
  ages.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    if (doc.year > reference.year) {
      throw Error(ErrorCode::invalid_argument,
                  "document '" + doc.doc_id + "' is newer than the reference date");
    }
    ++stats.type_histogram[doc.pub_type];
    ++stats.venue_histogram[doc.venue];
    ++stats.year_histogram[doc.year];
    ages.push_back(reference.year - doc.year);
  }
  for (const auto& [type, count] : stats.type_histogram) {
    stats.type_share_percent[type] = percent_half_up(count, corpus.size());
  }

  std::sort(ages.begin(), ages.end());
  const std::size_t n = ages.size();
  stats.median_age_years = n % 2 == 1 ? ages[n / 2] : (ages[n / 2 - 1] + ages[n / 2]) / 2.0;
  stats.mean_age_years =
      static_cast<double>(std::accumulate(ages.begin(), ages.end(), 0LL)) / static_cast<double>(n);

  stats.share_from_year = share_from_year.value_or(reference.year - 9);
  std::size_t recent = 0;
  for (const auto& doc : corpus.documents()) recent += doc.year >= stats.share_from_year ? 1 : 0;
  stats.share_from_year_percent = percent_half_up(recent, n);
  return stats;
}

std::string stats_to_json(const StatsSummary& stats) {
  nlohmann::ordered_json out;
  out["reference_date"] = stats.reference_date.to_string();
  out["document_count"] = stats.document_count;
  auto& types = out["types"] = nlohmann::ordered_json::array();
  for (const auto& [type, count] : stats.type_histogram) {
    types.push_back({{"pub_type", to_string(type)},
                     {"count", count},
                     {"percent", stats.type_share_percent.at(type)}});
  }
  auto& venues = out["venues"] = nlohmann::ordered_json::array();
  std::vector<std::pair<std::string, std::size_t>> by_count(stats.venue_histogram.begin(),
                                                            stats.venue_histogram.end());
  std::stable_sort(by_count.begin(), by_count.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [venue, count] : by_count) venues.push_back({{"venue", venue}, {"count", count}});
  auto& years = out["years"] = nlohmann::ordered_json::array();
  for (const auto& [year, count] : stats.year_histogram) years.push_back({{"year", year}, {"count", count}});
  out["median_age_years"] = stats.median_age_years;
  out["mean_age_years"] = stats.mean_age_years;
  out["share_from_year"] = {{"year", stats.share_from_year},
                            {"percent", stats.share_from_year_percent}};
  return out.dump(2) + "\n";
}

}  // namespace readmap
