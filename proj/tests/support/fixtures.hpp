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

// Fixture generators and brute-force oracles shared by the unit and
// acceptance tests. Nothing here calls into the code under test beyond
// constructing inputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "readmap/corpus.hpp"
#include "readmap/embed.hpp"

namespace readmap::testing {

inline std::string doc_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "d%03zu", i);
  return buf;
}

inline std::string user_name(std::size_t i) { return "u" + std::to_string(i); }

inline DocumentRecord make_doc(const std::string& id, const std::string& title = "",
                               int year = 2010, PubType type = PubType::journal_article) {
  DocumentRecord doc;
  doc.doc_id = id;
  doc.title = title.empty() ? "Title of " + id : title;
  doc.authors = {"Author " + id};
  doc.year = year;
  doc.venue = "Venue";
  doc.pub_type = type;
  return doc;
}

struct RawCorpus {
  std::vector<DocumentRecord> docs;
  std::vector<ReadershipEvent> events;
};

// Uniformly random events, duplicates included on purpose.
inline RawCorpus random_corpus(std::size_t n_docs, std::size_t n_users, std::size_t n_events,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RawCorpus raw;
  for (std::size_t i = 0; i < n_docs; ++i) raw.docs.push_back(make_doc(doc_name(i)));
  std::uniform_int_distribution<std::size_t> pick_doc(0, n_docs - 1);
  std::uniform_int_distribution<std::size_t> pick_user(0, n_users - 1);
  for (std::size_t e = 0; e < n_events; ++e) {
    raw.events.push_back({user_name(pick_user(rng)), doc_name(pick_doc(rng))});
  }
  return raw;
}

inline const std::vector<std::vector<std::string>>& topic_words() {
  static const std::vector<std::vector<std::string>> words{
      {"game", "play", "virtual", "worlds", "motivation", "simulation"},
      {"mobile", "devices", "phones", "fieldwork", "ubiquitous", "context"},
      {"teacher", "pedagogical", "content", "knowledge", "framework", "preservice"},
      {"cognitive", "load", "memory", "instruction", "worked", "examples"},
      {"online", "courses", "adoption", "distance", "students", "acceptance"},
      {"collaborative", "discourse", "groups", "argumentation", "scripts", "community"},
  };
  return words;
}

// Title, authors, venue and abstract drawn from a topic vocabulary.
inline DocumentRecord topical_doc(const std::string& id, std::size_t topic, std::mt19937_64& rng) {
  const auto& words = topic_words()[topic % topic_words().size()];
  auto pick = [&] { return words[rng() % words.size()]; };
  static const std::vector<std::string> shared{"learning", "study", "review", "design", "education"};
  DocumentRecord doc = make_doc(id, pick() + " " + pick() + " and " + shared[rng() % shared.size()],
                                1995 + static_cast<int>(rng() % 18),
                                rng() % 4 == 0 ? PubType::book : PubType::journal_article);
  doc.authors = {"Author" + std::to_string(rng() % 30), "Author" + std::to_string(rng() % 30)};
  doc.venue = "Journal " + std::to_string(rng() % 7);
  doc.abstract = "We discuss " + pick() + " " + pick() + " in " + shared[rng() % shared.size()] + ".";
  return doc;
}

// Reader communities: community c reads its own documents with probability
// `p_in`; background users read anything with probability `p_out`.
struct PlantedCorpus {
  RawCorpus raw;
  std::map<std::string, int> community;  // doc_id -> planted label
};

inline PlantedCorpus planted_corpus(std::size_t communities, std::size_t docs_per, std::uint64_t seed,
                                    std::size_t users_per = 40, double p_in = 0.5,
                                    std::size_t background_users = 40, double p_out = 0.03) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution in(p_in);
  std::bernoulli_distribution out(p_out);
  PlantedCorpus planted;
  for (std::size_t c = 0; c < communities; ++c) {
    for (std::size_t j = 0; j < docs_per; ++j) {
      const auto id = doc_name(c * docs_per + j);
      planted.raw.docs.push_back(topical_doc(id, c, rng));
      planted.community[id] = static_cast<int>(c);
      for (std::size_t u = 0; u < users_per; ++u) {
        if (in(rng)) planted.raw.events.push_back({"c" + std::to_string(c) + "_" + std::to_string(u), id});
      }
      for (std::size_t u = 0; u < background_users; ++u) {
        if (out(rng)) planted.raw.events.push_back({"bg" + std::to_string(u), id});
      }
    }
  }
  return planted;
}

// Distinct readers per document, straight from the event list.
inline std::map<std::string, std::set<std::string>> reader_sets(const RawCorpus& raw) {
  std::map<std::string, std::set<std::string>> sets;
  for (const auto& doc : raw.docs) sets[doc.doc_id];
  for (const auto& e : raw.events) sets[e.doc_id].insert(e.user_id);
  return sets;
}

inline std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += b.count(x);
  return n;
}

inline std::vector<Point2> random_points(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Adjusted Rand index between two labelings of the same items.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ra;
  std::map<int, double> rb;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{a[i], b[i]}] += 1;
    ra[a[i]] += 1;
    rb[b[i]] += 1;
  }
  auto c2 = [](double x) { return x * (x - 1) / 2; };
  double index = 0;
  for (const auto& [key, v] : joint) index += c2(v);
  double sa = 0;
  double sb = 0;
  for (const auto& [key, v] : ra) sa += c2(v);
  for (const auto& [key, v] : rb) sb += c2(v);
  const double expected = sa * sb / c2(static_cast<double>(n));
  const double maximum = (sa + sb) / 2;
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

// Case-insensitive AND over substrings of the concatenated fields.
inline bool oracle_matches(const std::string& haystack, const std::vector<std::string>& terms) {
  std::string lower = haystack;
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (auto term : terms) {
    for (auto& ch : term) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower.find(term) == std::string::npos) return false;
  }
  return true;
}

}  // namespace readmap::testing
