// Copyright 2026 The TeluRef Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELUREF_EMBEDDINGS_H_
#define TELUREF_EMBEDDINGS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace teluref {

enum class OovPolicy { kZeros, kHashedDeterministic };

std::optional<OovPolicy> ParseOovPolicy(std::string_view name);

// Pretrained word vectors. Immutable after construction; lookups are total.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dim, OovPolicy policy);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  OovPolicy oov_policy() const { return policy_; }
  bool contains(std::string_view word) const;

  // Replaces any existing vector for word. Throws DimMismatch on bad length.
  void Add(std::string word, std::span<const double> vec);

  std::vector<double> Lookup(std::string_view word) const;

  // Word2vec text format, words in insertion order.
  std::string ToText() const;

 private:
  std::size_t dim_;
  OovPolicy policy_;
  std::vector<std::string> words_;
  std::vector<double> data_;  // row-major, one row per word
  std::unordered_map<std::string, std::size_t> index_;
};

// Parses word2vec text format: "<count> <dim>" then "word v1 ... vdim".
EmbeddingTable LoadEmbeddings(std::string_view bytes, std::size_t expected_dim,
                              OovPolicy policy = OovPolicy::kHashedDeterministic);

// Unit-norm vector derived from a 64-bit hash of word.
std::vector<double> HashedVector(std::string_view word, std::size_t dim);

// Elementwise mean of the word vectors. Throws EmptySpan for no words.
std::vector<double> ComposeSpan(const EmbeddingTable &table,
                                const std::vector<std::string> &words);

}  // namespace teluref

#endif  // TELUREF_EMBEDDINGS_H_
