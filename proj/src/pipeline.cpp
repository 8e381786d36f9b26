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

#include "readmap/pipeline.hpp"

#include <fstream>

namespace readmap {

const char* tool_version() noexcept { return READMAP_VERSION; }

BuildResult build_map(const Corpus& corpus, const BuildOptions& options) {
  BuildResult result;
  result.corpus = filter_by_threshold(corpus, options.threshold);
  const Corpus& docs = result.corpus;
  if (docs.empty()) {
    throw Error(ErrorCode::domain, "no documents have at least " + std::to_string(options.threshold) + " readers");
  }

  result.cooccurrence = build_cooccurrence(docs);
  if (options.matrix_dump) {
    std::ofstream out(*options.matrix_dump);
    if (!out) throw Error(ErrorCode::io, "cannot write " + options.matrix_dump->string());
    write_matrix_csv(out, result.cooccurrence);
  }
  result.distances = to_distance(normalize(result.cooccurrence, options.similarity));

  EmbeddingConfig embedding_config;
  embedding_config.seed = options.seed;
  embedding_config.max_iterations = options.max_iterations;
  embedding_config.rel_tol = options.rel_tol;
  embedding_config.restarts = options.restarts;
  result.embedding = mds_embed(result.distances, embedding_config);
  const auto& embedding = result.embedding.embedding;

  result.dendrogram = ward_cluster(embedding);
  const std::size_t n = docs.size();
  std::size_t k = 1;
  if (options.k) {
    k = *options.k;
    if (k < 1 || k > n) {
      throw Error(ErrorCode::invalid_argument,
                  "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
  } else if (n >= 3) {
    const auto [k_min, k_max] = default_k_range(n);
    k = select_k(result.dendrogram, embedding, k_min, k_max);
  }

  std::vector<std::size_t> readers(n);
  for (std::size_t i = 0; i < n; ++i) readers[i] = docs.reader_count(i);
  result.assignment = cut(result.dendrogram, k, readers);

  LayoutConfig layout_config = options.layout;
  layout_config.seed = options.seed;
  result.layout = compute_layout(embedding, result.assignment, readers, layout_config, &result.warnings);
  result.names = label_areas(docs, result.assignment, options.labels, &result.warnings);

  MapProvenance provenance;
  provenance.source = options.source.value_or(docs.provenance().source);
  if (options.snapshot_date) {
    provenance.snapshot_date = options.snapshot_date->to_string();
  } else if (docs.provenance().snapshot_date) {
    provenance.snapshot_date = docs.provenance().snapshot_date->to_string();
  }
  provenance.threshold = options.threshold;
  provenance.similarity = std::string(to_string(options.similarity));
  provenance.distance = "1-s";
  provenance.seed = options.seed;
  provenance.k_selection = options.k ? "fixed" : "auto";
  provenance.tool_version = tool_version();
  provenance.stopwords = std::string(kStopwordListVersion);
  provenance.area_r_min = layout_config.area_r_min();
  provenance.doc_r_min = layout_config.doc_r_min();
  provenance.mds_iterations = result.embedding.trace.size() - 1;
  provenance.final_stress = result.embedding.trace.back();
  provenance.stress_trace = result.embedding.trace;

  result.map = export_map(docs, result.assignment, result.names, result.layout, std::move(provenance));
  return result;
}

}  // namespace readmap
