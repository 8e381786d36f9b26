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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "readmap/pipeline.hpp"
#include "support/maps.hpp"

using namespace readmap;

TEST_SUITE("pipeline") {
  TEST_CASE("planted communities come back as areas") {
    const auto planted = readmap::testing::planted_corpus(4, 20, 2);
    BuildOptions options;
    options.threshold = 0;
    const auto result = build_map(readmap::testing::planted_as_corpus(planted), options);
    CHECK(result.assignment.k == 4);
    std::vector<int> truth;
    std::vector<int> found;
    for (std::size_t i = 0; i < result.corpus.size(); ++i) {
      truth.push_back(planted.community.at(result.corpus.document(i).doc_id));
      found.push_back(static_cast<int>(result.assignment.area_of[i]));
    }
    CHECK(readmap::testing::adjusted_rand_index(truth, found) >= 0.9);
    CHECK(result.map.provenance.k_selection == "auto");
  }

  TEST_CASE("stages agree on documents") {
    const auto result = readmap::testing::fixture_build(3, 12, 5);
    const auto n = result.corpus.size();
    CHECK(result.cooccurrence.size() == n);
    CHECK(result.distances.size() == n);
    CHECK(result.embedding.embedding.size() == n);
    CHECK(result.layout.documents.size() == n);
    CHECK(result.map.documents.size() == n);
    CHECK(result.names.size() == result.assignment.k);
  }

  TEST_CASE("same input, same bytes") {
    const auto a = serialize_map(readmap::testing::fixture_build(4, 10, 9).map);
    const auto b = serialize_map(readmap::testing::fixture_build(4, 10, 9).map);
    CHECK(a == b);
  }

  TEST_CASE("threshold and k options") {
    const auto planted = readmap::testing::planted_corpus(3, 8, 3);
    const auto corpus = readmap::testing::planted_as_corpus(planted);
    BuildOptions options;
    options.threshold = 1000;
    CHECK_THROWS_AS(build_map(corpus, options), Error);

    options.threshold = 0;
    options.k = 5;
    const auto fixed = build_map(corpus, options);
    CHECK(fixed.assignment.k == 5);
    CHECK(fixed.map.provenance.k_selection == "fixed");
    options.k = 0;
    CHECK_THROWS_AS(build_map(corpus, options), Error);
    options.k = 10000;
    CHECK_THROWS_AS(build_map(corpus, options), Error);
  }

  TEST_CASE("tiny corpora form one area") {
    std::vector<DocumentRecord> docs{readmap::testing::make_doc("a"), readmap::testing::make_doc("b")};
    const auto corpus = Corpus::from_records(docs, {{"u1", "a"}, {"u1", "b"}, {"u2", "a"}});
    BuildOptions options;
    options.threshold = 0;
    const auto result = build_map(corpus, options);
    CHECK(result.assignment.k == 1);
    CHECK(result.map.areas.size() == 1);
    CHECK(result.map.areas[0].readership_share_percent == 100.0);
  }

  TEST_CASE("matrix dump and provenance") {
    const auto path = std::filesystem::temp_directory_path() / "readmap_matrix.csv";
    const auto planted = readmap::testing::planted_corpus(2, 5, 1);
    BuildOptions options;
    options.threshold = 0;
    options.matrix_dump = path;
    options.source = "unit test";
    options.similarity = SimilarityScheme::jaccard;
    const auto result = build_map(readmap::testing::planted_as_corpus(planted), options);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("doc_id,", 0) == 0);
    std::filesystem::remove(path);
    CHECK(result.map.provenance.source == "unit test");
    CHECK(result.map.provenance.similarity == "jaccard");
    CHECK(result.map.provenance.threshold == 0);
    CHECK(result.map.provenance.tool_version == std::string(tool_version()));
  }
}
