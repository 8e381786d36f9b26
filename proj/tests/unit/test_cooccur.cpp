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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "readmap/cooccur.hpp"
#include "support/fixtures.hpp"

using namespace readmap;
using readmap::testing::make_doc;

namespace {

Corpus two_docs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<ReadershipEvent> events;
  for (const auto& u : a) events.push_back({u, "A"});
  for (const auto& u : b) events.push_back({u, "B"});
  return Corpus::from_records({make_doc("A"), make_doc("B")}, events);
}

}  // namespace

TEST_SUITE("cooccur") {
  TEST_CASE("single shared reader") {
    const auto m = build_cooccurrence(two_docs({"u1", "u2"}, {"u2", "u3"}));
    CHECK(m(0, 1) == 1);
    CHECK(m(1, 0) == 1);
    CHECK(m(0, 0) == 2);
  }

  TEST_CASE("disjoint readers") {
    const auto corpus = two_docs({"u1"}, {"u2"});
    const auto m = build_cooccurrence(corpus);
    CHECK(m(0, 1) == 0);
    for (auto scheme : {SimilarityScheme::cosine, SimilarityScheme::jaccard}) {
      CHECK(normalize(m, scheme)(0, 1) == 0.0);
    }
  }

  TEST_CASE("matrix equals pairwise intersections") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto raw = readmap::testing::random_corpus(50, 200, 1500, seed);
      const auto corpus = Corpus::from_records(raw.docs, raw.events);
      const auto m = build_cooccurrence(corpus);
      const auto sets = readmap::testing::reader_sets(raw);
      REQUIRE(m.size() == 50);
      for (std::size_t i = 0; i < 50; ++i) {
        REQUIRE(m.labels()[i] == corpus.document(i).doc_id);
        for (std::size_t j = 0; j < 50; ++j) {
          const auto expected = readmap::testing::intersection_size(sets.at(m.labels()[i]), sets.at(m.labels()[j]));
          CHECK(m(i, j) == expected);
          CHECK(m(i, j) == m(j, i));
          CHECK(m(i, j) <= std::min(m(i, i), m(j, j)));
        }
        CHECK(m(i, i) == corpus.reader_count(i));
      }
    }
  }

  TEST_CASE("cosine") {
    const auto m = build_cooccurrence(two_docs({"u1", "u2", "u3", "u4"}, {"u1", "u2"}));
    const auto s = normalize(m, SimilarityScheme::cosine);
    CHECK(s(0, 1) == doctest::Approx(2.0 / std::sqrt(8.0)).epsilon(1e-12));
    CHECK(s(0, 0) == 1.0);
    const auto d = to_distance(s);
    CHECK(d(0, 1) == doctest::Approx(1.0 - 2.0 / std::sqrt(8.0)).epsilon(1e-12));
    CHECK(d(0, 0) == 0.0);
  }

  TEST_CASE("identical reader sets are fully similar") {
    const auto m = build_cooccurrence(two_docs({"u1", "u2", "u3"}, {"u1", "u2", "u3"}));
    for (auto scheme : {SimilarityScheme::cosine, SimilarityScheme::jaccard, SimilarityScheme::raw_scaled}) {
      CHECK(normalize(m, scheme)(0, 1) == doctest::Approx(1.0));
      CHECK(to_distance(normalize(m, scheme))(0, 1) == doctest::Approx(0.0));
    }
  }

  TEST_CASE("jaccard and raw") {
    const auto corpus = Corpus::from_records(
        {make_doc("A"), make_doc("B"), make_doc("C")},
        {{"u1", "A"}, {"u2", "A"}, {"u3", "A"}, {"u1", "B"}, {"u2", "B"}, {"u1", "C"}});
    const auto m = build_cooccurrence(corpus);
    const auto j = normalize(m, SimilarityScheme::jaccard);
    CHECK(j(0, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(j(0, 2) == doctest::Approx(1.0 / 3.0));
    const auto r = normalize(m, SimilarityScheme::raw_scaled);
    CHECK(r(0, 1) == 1.0);
    CHECK(r(0, 2) == 0.5);
    CHECK(r(1, 2) == 0.5);
    CHECK(r(0, 0) == 1.0);
  }

  TEST_CASE("raw scaling needs some co-readership") {
    const auto m = build_cooccurrence(two_docs({"u1"}, {"u2"}));
    CHECK_THROWS_AS(normalize(m, SimilarityScheme::raw_scaled), Error);
  }

  TEST_CASE("similarity and distance invariants on random data") {
    const auto raw = readmap::testing::random_corpus(30, 25, 200, 5);
    const auto m = build_cooccurrence(Corpus::from_records(raw.docs, raw.events));
    for (auto scheme : {SimilarityScheme::cosine, SimilarityScheme::jaccard, SimilarityScheme::raw_scaled}) {
      const auto s = normalize(m, scheme);
      const auto d = to_distance(s);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m(i, i) > 0) CHECK(s(i, i) == 1.0);
        CHECK(d(i, i) == 0.0);
        for (std::size_t k = 0; k < m.size(); ++k) {
          CHECK(s(i, k) == s(k, i));
          CHECK(d(i, k) == d(k, i));
          CHECK(s(i, k) >= 0.0);
          CHECK(s(i, k) <= 1.0);
          if (i != k) CHECK(d(i, k) == doctest::Approx(1.0 - s(i, k)));
        }
      }
    }
  }

  TEST_CASE("scheme names") {
    CHECK(parse_similarity_scheme("cosine") == SimilarityScheme::cosine);
    CHECK(parse_similarity_scheme("jaccard") == SimilarityScheme::jaccard);
    CHECK(parse_similarity_scheme("raw") == SimilarityScheme::raw_scaled);
    CHECK_THROWS_AS(parse_similarity_scheme("pearson"), Error);
  }

  TEST_CASE("csv dump") {
    std::ostringstream out;
    write_matrix_csv(out, build_cooccurrence(two_docs({"u1", "u2"}, {"u2"})));
    CHECK(out.str() == "doc_id,A,B\nA,2,1\nB,1,1\n");
  }
}
