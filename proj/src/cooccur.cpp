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

#include "readmap/cooccur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace readmap {

std::string_view to_string(SimilarityScheme scheme) noexcept {
  switch (scheme) {
    case SimilarityScheme::cosine: return "cosine";
    case SimilarityScheme::jaccard: return "jaccard";
    case SimilarityScheme::raw_scaled: return "raw_scaled";
  }
  return "cosine";
}

SimilarityScheme parse_similarity_scheme(std::string_view text) {
  if (text == "cosine") return SimilarityScheme::cosine;
  if (text == "jaccard") return SimilarityScheme::jaccard;
  if (text == "raw" || text == "raw_scaled") return SimilarityScheme::raw_scaled;
  throw Error(ErrorCode::invalid_argument, "unknown similarity scheme '" + std::string(text) + "'");
}

CooccurrenceMatrix build_cooccurrence(const Corpus& corpus) {
  std::vector<std::string> labels;
  labels.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) labels.push_back(doc.doc_id);
  CooccurrenceMatrix counts(std::move(labels), 0);

  // Invert to user -> documents, then count every pair inside each library.
  std::map<std::string_view, std::vector<std::size_t>> libraries;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& user : corpus.readers(i)) libraries[user].push_back(i);
  }
  for (const auto& [user, docs] : libraries) {
    for (std::size_t a = 0; a < docs.size(); ++a) {
      ++counts(docs[a], docs[a]);
      for (std::size_t b = a + 1; b < docs.size(); ++b) {
        ++counts(docs[a], docs[b]);
        ++counts(docs[b], docs[a]);
      }
    }
  }
  return counts;
}

SimilarityMatrix normalize(const CooccurrenceMatrix& counts, SimilarityScheme scheme) {
  const std::size_t n = counts.size();
  SimilarityMatrix out{LabeledMatrix<double>(counts.labels(), 0.0), scheme};

  double max_off_diagonal = 0.0;
  if (scheme == SimilarityScheme::raw_scaled) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) max_off_diagonal = std::max(max_off_diagonal, double(counts(i, j)));
      }
    }
    if (n > 1 && max_off_diagonal == 0.0) {
      throw Error(ErrorCode::domain, "no co-readership signal");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.values(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double cij = counts(i, j);
      const double cii = counts(i, i);
      const double cjj = counts(j, j);
      double s = 0.0;
      if (cii > 0 && cjj > 0 && cij > 0) {
        switch (scheme) {
          case SimilarityScheme::cosine: s = cij / std::sqrt(cii * cjj); break;
          case SimilarityScheme::jaccard: s = cij / (cii + cjj - cij); break;
          case SimilarityScheme::raw_scaled: s = cij / max_off_diagonal; break;
        }
        s = std::clamp(s, 0.0, 1.0);
      }
      out.values(i, j) = s;
      out.values(j, i) = s;
    }
  }
  return out;
}

DistanceMatrix to_distance(const SimilarityMatrix& similarity) {
  const std::size_t n = similarity.size();
  DistanceMatrix out(similarity.values.labels(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = i == j ? 0.0 : 1.0 - similarity(i, j);
    }
  }
  return out;
}

namespace {

void write_csv_field(std::ostream& out, const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    out << text;
    return;
  }
  out << '"';
  for (char c : text) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_value(std::ostream& out, std::uint32_t value) { out << value; }

void write_value(std::ostream& out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  out << buffer;
}

}  // namespace

template <typename T>
void write_matrix_csv(std::ostream& out, const LabeledMatrix<T>& matrix) {
  out << "doc_id";
  for (const auto& label : matrix.labels()) {
    out << ',';
    write_csv_field(out, label);
  }
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    write_csv_field(out, matrix.labels()[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << ',';
      write_value(out, matrix(i, j));
    }
    out << '\n';
  }
}

template void write_matrix_csv(std::ostream&, const LabeledMatrix<std::uint32_t>&);
template void write_matrix_csv(std::ostream&, const LabeledMatrix<double>&);

}  // namespace readmap
