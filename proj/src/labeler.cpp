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

#include "readmap/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"

namespace readmap {

namespace {

constexpr std::size_t kMaxLabelTerms = 5;

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_phrase_break(unsigned char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '/': case '|': case '\n':
      return true;
    default:
      return false;
  }
}

bool usable(const std::string& token) {
  if (token.size() < 2 || is_stopword(token)) return false;
  return std::any_of(token.begin(), token.end(),
                     [](unsigned char c) { return !(c >= '0' && c <= '9'); });
}

std::vector<std::string> words_of(std::string_view term) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= term.size()) {
    const std::size_t end = std::min(term.find(' ', start), term.size());
    if (end > start) words.emplace_back(term.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool same_label(std::string_view a, std::string_view b) { return lower(a) == lower(b); }

bool label_taken(const std::string& label, const std::vector<std::string>& taken) {
  return std::any_of(taken.begin(), taken.end(),
                     [&](const std::string& t) { return same_label(t, label); });
}

void sort_ranked(std::vector<TermScore>& terms) {
  std::sort(terms.begin(), terms.end(), [](const TermScore& a, const TermScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
}

std::string document_text(const DocumentRecord& doc) {
  std::string text = doc.title;
  if (doc.abstract) {
    text += '\n';
    text += *doc.abstract;
  }
  return text;
}

}  // namespace

std::vector<std::vector<std::string>> tokenize_phrases(std::string_view text) {
  std::vector<std::vector<std::string>> phrases(1);
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (usable(token)) {
      phrases.back().push_back(std::move(token));
    } else if (!phrases.back().empty()) {
      phrases.emplace_back();
    }
    token.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
      continue;
    }
    flush();
    if (is_phrase_break(c) && !phrases.back().empty()) phrases.emplace_back();
  }
  flush();
  std::erase_if(phrases, [](const auto& p) { return p.empty(); });
  return phrases;
}

std::vector<std::string> extract_terms(std::string_view text) {
  std::vector<std::string> terms;
  for (const auto& phrase : tokenize_phrases(text)) {
    for (std::size_t i = 0; i < phrase.size(); ++i) {
      terms.push_back(phrase[i]);
      if (i + 1 < phrase.size()) terms.push_back(phrase[i] + ' ' + phrase[i + 1]);
    }
  }
  return terms;
}

std::string_view to_string(LabelSource source) noexcept {
  switch (source) {
    case LabelSource::tfidf: return "tfidf";
    case LabelSource::enrichment: return "enrichment";
    case LabelSource::manual_override: return "manual_override";
  }
  return "tfidf";
}

LabelSource parse_label_source(std::string_view text) {
  if (text == "tfidf") return LabelSource::tfidf;
  if (text == "enrichment") return LabelSource::enrichment;
  if (text == "manual_override") return LabelSource::manual_override;
  throw Error(ErrorCode::parse, "unknown label source '" + std::string(text) + "'");
}

AreaTermModel::AreaTermModel(const Corpus& corpus, const ClusterAssignment& assignment) {
  if (assignment.area_of.size() != corpus.size()) {
    throw Error(ErrorCode::invalid_argument, "assignment does not cover the corpus");
  }
  area_terms_.resize(assignment.k);
  area_term_totals_.assign(assignment.k, 0);
  area_texts_.resize(assignment.k);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::size_t area = assignment.area_of[i];
    const auto text = document_text(corpus.document(i));
    area_texts_[area].push_back(text);
    for (auto& term : extract_terms(text)) {
      ++area_terms_[area][term];
      ++area_term_totals_[area];
    }
  }
  for (const auto& terms : area_terms_) {
    for (const auto& [term, count] : terms) ++document_frequency_[term];
  }
}

std::vector<TermScore> AreaTermModel::candidates(std::size_t area) const {
  const auto& terms = area_terms_.at(area);
  const double areas = static_cast<double>(area_terms_.size());
  const double total = static_cast<double>(area_term_totals_[area]);
  std::vector<TermScore> out;
  out.reserve(terms.size());
  for (const auto& [term, count] : terms) {
    const double tf = static_cast<double>(count) / total;
    const double idf = std::log(1.0 + areas / static_cast<double>(document_frequency_.at(term)));
    out.push_back({term, tf * idf});
  }
  sort_ranked(out);
  return out;
}

EnrichmentResult enrich_labels(const std::vector<std::string>& area_texts,
                               std::span<const TermScore> tfidf_candidates,
                               EnrichmentClient& client, Warnings* warnings) {
  EnrichmentResult result;
  double top = 0.0;
  for (const auto& c : tfidf_candidates) top = std::max(top, c.score);
  std::map<std::string, double> merged;
  for (const auto& c : tfidf_candidates) {
    merged[c.term] = top > 0.0 ? kTfidfCeiling * c.score / top : 0.0;
  }

  std::vector<LabelSuggestion> suggestions;
  try {
    suggestions = client.suggest(area_texts);
  } catch (const std::exception& e) {
    result.degraded = true;
    if (warnings) warnings->push_back(std::string("enrichment failed, using tf-idf labels: ") + e.what());
    result.terms.assign(tfidf_candidates.begin(), tfidf_candidates.end());
    return result;
  }

  std::set<std::string> from_client;
  for (const auto& suggestion : suggestions) {
    std::string term;
    for (const auto& phrase : tokenize_phrases(suggestion.label)) {
      for (const auto& word : phrase) {
        if (!term.empty()) term += ' ';
        term += word;
      }
    }
    if (term.empty()) continue;
    const double confidence =
        std::isfinite(suggestion.confidence) ? std::clamp(suggestion.confidence, 0.0, 1.0) : 0.0;
    auto [it, inserted] = merged.try_emplace(term, confidence);
    if (inserted || confidence > it->second) {
      it->second = confidence;
      from_client.insert(term);
    }
  }
  for (const auto& [term, score] : merged) result.terms.push_back({term, score});
  sort_ranked(result.terms);
  result.client_terms.assign(from_client.begin(), from_client.end());
  return result;
}

std::string title_case(std::string_view term) {
  std::string out(term);
  bool start = true;
  for (char& c : out) {
    if (start && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    start = c == ' ';
  }
  return out;
}

namespace {

struct Composition {
  std::string label;
  std::vector<std::string> terms;
};

Composition compose(std::span<const TermScore> ranked, std::size_t terms_per_label,
                    const std::vector<std::string>& taken) {
  Composition out;
  std::set<std::string> used_words;
  auto render = [&] {
    std::string label;
    for (const auto& term : out.terms) {
      if (!label.empty()) label += ", ";
      label += title_case(term);
    }
    return label;
  };
  const std::size_t wanted = std::clamp<std::size_t>(terms_per_label, 1, kMaxLabelTerms);
  for (const auto& candidate : ranked) {
    const auto words = words_of(candidate.term);
    if (words.empty()) continue;
    if (std::any_of(words.begin(), words.end(),
                    [&](const std::string& w) { return used_words.contains(w) || is_stopword(w); })) {
      continue;
    }
    out.terms.push_back(candidate.term);
    used_words.insert(words.begin(), words.end());
    if (out.terms.size() < wanted) continue;
    out.label = render();
    if (!label_taken(out.label, taken) || out.terms.size() >= kMaxLabelTerms) break;
  }
  out.label = render();
  return out;
}

}  // namespace

std::string compose_label(std::span<const TermScore> ranked, std::size_t terms_per_label,
                          const std::vector<std::string>& taken) {
  return compose(ranked, terms_per_label, taken).label;
}

std::vector<AreaName> label_areas(const Corpus& corpus, const ClusterAssignment& assignment,
                                  const LabelOptions& options, Warnings* warnings) {
  const AreaTermModel model(corpus, assignment);
  std::vector<AreaName> names(assignment.k);
  std::vector<std::string> taken;
  std::vector<bool> done(assignment.k, false);

  for (const auto& [area, label] : options.overrides) {
    if (area >= assignment.k) {
      if (warnings) warnings->push_back("label override for unknown area " + std::to_string(area) + " ignored");
      continue;
    }
    if (label.empty()) throw Error(ErrorCode::invalid_argument, "empty label override");
    if (label_taken(label, taken)) {
      throw Error(ErrorCode::invalid_argument, "duplicate label override '" + label + "'");
    }
    names[area] = {area, label, LabelSource::manual_override};
    taken.push_back(label);
    done[area] = true;
  }

  for (std::size_t area = 0; area < assignment.k; ++area) {
    if (done[area]) continue;
    auto ranked = model.candidates(area);
    std::vector<std::string> client_terms;
    if (options.client != nullptr) {
      auto enriched = enrich_labels(model.area_texts(area), ranked, *options.client, warnings);
      ranked = std::move(enriched.terms);
      client_terms = std::move(enriched.client_terms);
    }
    auto composed = compose(ranked, options.terms_per_label, taken);

    AreaName name{area, composed.label, LabelSource::tfidf};
    if (std::any_of(composed.terms.begin(), composed.terms.end(), [&](const std::string& t) {
          return std::find(client_terms.begin(), client_terms.end(), t) != client_terms.end();
        })) {
      name.source = LabelSource::enrichment;
    }
    if (name.label.empty()) {
      name.label = "Area " + std::to_string(area);
      name.source = LabelSource::manual_override;
    }
    for (int suffix = 2; label_taken(name.label, taken); ++suffix) {
      name.label = composed.label.empty() ? "Area " + std::to_string(area) : composed.label;
      name.label += " (" + std::to_string(suffix) + ")";
    }
    taken.push_back(name.label);
    names[area] = std::move(name);
  }
  return names;
}

std::map<std::size_t, std::string> load_label_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::parse, path.string() + ": expected an object");
  std::map<std::size_t, std::string> out;
  for (const auto& [key, value] : doc.items()) {
    std::size_t area = 0;
    std::size_t consumed = 0;
    try {
      area = std::stoul(key, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed == 0 || consumed != key.size()) {
      throw Error(ErrorCode::parse, path.string() + ": area id '" + key + "' is not an integer");
    }
    if (!value.is_string()) throw Error(ErrorCode::parse, path.string() + ": labels must be strings");
    out[area] = value.get<std::string>();
  }
  return out;
}

}  // namespace readmap
