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

// Small end-to-end maps for tests that need a realistic KnowledgeMap.

#pragma once

#include "readmap/pipeline.hpp"
#include "support/fixtures.hpp"

namespace readmap::testing {

inline Corpus planted_as_corpus(const PlantedCorpus& planted) {
  return Corpus::from_records(planted.raw.docs, planted.raw.events, {"fixture", CalendarDate{2012, 8, 10}});
}

inline BuildResult fixture_build(std::size_t communities = 4, std::size_t docs_per = 20,
                                 std::uint64_t seed = 1) {
  const auto planted = planted_corpus(communities, docs_per, seed);
  BuildOptions options;
  options.threshold = 0;
  options.seed = seed;
  return build_map(planted_as_corpus(planted), options);
}

}  // namespace readmap::testing
