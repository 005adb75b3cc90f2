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

#ifndef TELUREF_FEATURIZER_H_
#define TELUREF_FEATURIZER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teluref/corpus.h"
#include "teluref/dataset.h"
#include "teluref/embeddings.h"
#include "teluref/ssf.h"

namespace teluref {

// Mention vector layout, in order:
//   embedding (table dim, 100 in production)
//   gender one-hot [any, male, female]
//   number one-hot [zero, singular, plural]
//   person one-hot [none, first, second, third]
//   part-of-plural flag
//   actor indicator [speaker, hearer]
enum class FeatureBlock { kEmbedding, kGender, kNumber, kPerson, kPop, kActor };

inline constexpr std::size_t kEmbeddingDim = 100;
inline constexpr std::size_t kGnpDim = 10;
inline constexpr std::size_t kMentionDim = kEmbeddingDim + kGnpDim + 1 + 2;
inline constexpr std::size_t kPairDim = 2 * kMentionDim;

std::string_view FeatureBlockName(FeatureBlock b);
std::optional<FeatureBlock> ParseFeatureBlock(std::string_view name);
const std::array<FeatureBlock, 6> &AllFeatureBlocks();

// [offset, offset + width) of a block within a mention vector.
struct BlockRange {
  std::size_t offset;
  std::size_t width;
};

BlockRange BlockLayout(FeatureBlock b, std::size_t embedding_dim = kEmbeddingDim);
std::size_t MentionDim(std::size_t embedding_dim = kEmbeddingDim);

// Set of enabled blocks. Disabled blocks are zeroed, never removed, so the
// vector width does not depend on the mask.
class FeatureMask {
 public:
  static FeatureMask All();
  static FeatureMask None();
  // Embedding block only.
  static FeatureMask Baseline();

  FeatureMask &Enable(FeatureBlock b);
  FeatureMask &Disable(FeatureBlock b);
  bool enabled(FeatureBlock b) const;
  bool operator==(const FeatureMask &) const = default;

 private:
  unsigned bits_ = 0;
};

std::array<double, kGnpDim> EncodeGnp(const MorphFeatures &m);
std::array<double, 2> EncodeActor(Actor a);

class MentionVector {
 public:
  MentionVector() = default;
  explicit MentionVector(std::vector<double> values) : values_(std::move(values)) {}
  const std::vector<double> &values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool operator==(const MentionVector &) const = default;

 private:
  std::vector<double> values_;
};

class PairVector {
 public:
  PairVector() = default;
  explicit PairVector(std::vector<double> values) : values_(std::move(values)) {}
  const std::vector<double> &values() const { return values_; }
  std::vector<double> &&release() && { return std::move(values_); }
  std::size_t size() const { return values_.size(); }
  bool operator==(const PairVector &) const = default;

 private:
  std::vector<double> values_;
};

// Throws EmptySpan (propagated) and DimensionError for spans outside u.
MentionVector BuildMentionVector(const Mention &m, const Utterance &u,
                                 const EmbeddingTable &table,
                                 const FeatureMask &mask = FeatureMask::All());

// Antecedent first. Throws DimensionError unless both have equal length.
PairVector BuildPairVector(const MentionVector &antecedent,
                           const MentionVector &anaphor);

// Zeroes the disabled blocks of an already built mention vector.
void ApplyMask(std::vector<double> &mention, const FeatureMask &mask,
               std::size_t embedding_dim = kEmbeddingDim);

// Mention vectors for every mention of c, keyed by position in c.mentions.
std::vector<MentionVector> BuildMentionVectors(const Conversation &c,
                                               const EmbeddingTable &table,
                                               const FeatureMask &mask);

// All gold pairs of all conversations, featurized.
PairDataset BuildPairDataset(const std::vector<Conversation> &corpus,
                             const EmbeddingTable &table,
                             const FeatureMask &mask = FeatureMask::All());

}  // namespace teluref

#endif  // TELUREF_FEATURIZER_H_
