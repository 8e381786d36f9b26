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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readmap/corpus.hpp"

namespace readmap {

/// Dense row-major square matrix labelled by doc_id.
template <typename T>
class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  explicit LabeledMatrix(std::vector<std::string> labels, T fill = T{})
      : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), fill) {}

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  T& operator()(std::size_t i, std::size_t j) { return values_[i * size() + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

  std::span<const T> row(std::size_t i) const { return {values_.data() + i * size(), size()}; }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const LabeledMatrix&, const LabeledMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<T> values_;
};

using CooccurrenceMatrix = LabeledMatrix<std::uint32_t>;
using DistanceMatrix = LabeledMatrix<double>;

enum class SimilarityScheme { cosine, jaccard, raw_scaled };

std::string_view to_string(SimilarityScheme scheme) noexcept;
/// Accepts "cosine", "jaccard", "raw" and "raw_scaled".
SimilarityScheme parse_similarity_scheme(std::string_view text);

struct SimilarityMatrix {
  LabeledMatrix<double> values;
  SimilarityScheme scheme = SimilarityScheme::cosine;

  std::size_t size() const noexcept { return values.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
};

/// counts(i, j) = number of users holding both documents; the diagonal holds
/// each document's reader count. Labels follow corpus order (ascending doc_id).
CooccurrenceMatrix build_cooccurrence(const Corpus& corpus);

/// Zero-reader documents get similarity 0 to every other document and 1 to
/// themselves. raw_scaled throws Error(domain) when n > 1 and no pair shares a
/// reader.
SimilarityMatrix normalize(const CooccurrenceMatrix& counts, SimilarityScheme scheme);

/// d = 1 - s with an exact zero diagonal.
DistanceMatrix to_distance(const SimilarityMatrix& similarity);

/// Comma-separated dump with a header row of labels, for debugging.
template <typename T>
void write_matrix_csv(std::ostream& out, const LabeledMatrix<T>& matrix);

}  // namespace readmap
