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

#include "teluref/featurizer.h"

#include <algorithm>

#include "teluref/error.h"

namespace teluref {

std::size_t PairDataset::CountLabel(bool label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void PairDataset::Add(std::vector<double> vec, bool label, Provenance prov,
                      PairSource source) {
  vectors.push_back(std::move(vec));
  labels.push_back(label);
  provenance.push_back(prov);
  sources.push_back(std::move(source));
}

std::string_view FeatureBlockName(FeatureBlock b) {
  switch (b) {
    case FeatureBlock::kEmbedding: return "embedding";
    case FeatureBlock::kGender: return "gender";
    case FeatureBlock::kNumber: return "number";
    case FeatureBlock::kPerson: return "person";
    case FeatureBlock::kPop: return "pop";
    case FeatureBlock::kActor: return "actor";
  }
  return "?";
}

std::optional<FeatureBlock> ParseFeatureBlock(std::string_view name) {
  for (FeatureBlock b : AllFeatureBlocks())
    if (FeatureBlockName(b) == name) return b;
  return std::nullopt;
}

const std::array<FeatureBlock, 6> &AllFeatureBlocks() {
  static constexpr std::array<FeatureBlock, 6> kBlocks = {
      FeatureBlock::kEmbedding, FeatureBlock::kGender, FeatureBlock::kNumber,
      FeatureBlock::kPerson,    FeatureBlock::kPop,    FeatureBlock::kActor};
  return kBlocks;
}

BlockRange BlockLayout(FeatureBlock b, std::size_t embedding_dim) {
  const std::size_t e = embedding_dim;
  switch (b) {
    case FeatureBlock::kEmbedding: return {0, e};
    case FeatureBlock::kGender: return {e, 3};
    case FeatureBlock::kNumber: return {e + 3, 3};
    case FeatureBlock::kPerson: return {e + 6, 4};
    case FeatureBlock::kPop: return {e + 10, 1};
    case FeatureBlock::kActor: return {e + 11, 2};
  }
  return {0, 0};
}

std::size_t MentionDim(std::size_t embedding_dim) {
  return embedding_dim + kGnpDim + 1 + 2;
}

FeatureMask FeatureMask::All() {
  FeatureMask m;
  for (FeatureBlock b : AllFeatureBlocks()) m.Enable(b);
  return m;
}

FeatureMask FeatureMask::None() { return FeatureMask{}; }

FeatureMask FeatureMask::Baseline() {
  return FeatureMask{}.Enable(FeatureBlock::kEmbedding);
}

FeatureMask &FeatureMask::Enable(FeatureBlock b) {
  bits_ |= 1u << static_cast<unsigned>(b);
  return *this;
}

FeatureMask &FeatureMask::Disable(FeatureBlock b) {
  bits_ &= ~(1u << static_cast<unsigned>(b));
  return *this;
}

bool FeatureMask::enabled(FeatureBlock b) const {
  return (bits_ >> static_cast<unsigned>(b)) & 1u;
}

std::array<double, kGnpDim> EncodeGnp(const MorphFeatures &m) {
  std::array<double, kGnpDim> v{};
  v[static_cast<std::size_t>(m.gender)] = 1.0;
  v[3 + static_cast<std::size_t>(m.number)] = 1.0;
  v[6 + static_cast<std::size_t>(m.person)] = 1.0;
  return v;
}

std::array<double, 2> EncodeActor(Actor a) {
  switch (a) {
    case Actor::kSpeaker: return {1.0, 0.0};
    case Actor::kHearer: return {0.0, 1.0};
    case Actor::kNeither: break;
  }
  return {0.0, 0.0};
}

void ApplyMask(std::vector<double> &mention, const FeatureMask &mask,
               std::size_t embedding_dim) {
  if (mention.size() != MentionDim(embedding_dim))
    throw DimensionError("mention vector has " + std::to_string(mention.size()) +
                         " dims, expected " +
                         std::to_string(MentionDim(embedding_dim)));
  for (FeatureBlock b : AllFeatureBlocks()) {
    if (mask.enabled(b)) continue;
    BlockRange r = BlockLayout(b, embedding_dim);
    std::fill_n(mention.begin() + static_cast<std::ptrdiff_t>(r.offset), r.width, 0.0);
  }
}

MentionVector BuildMentionVector(const Mention &m, const Utterance &u,
                                 const EmbeddingTable &table,
                                 const FeatureMask &mask) {
  if (m.begin >= m.end || m.end > u.tokens.size())
    throw DimensionError("mention '" + m.id + "' span outside its utterance");
  std::vector<std::string> words;
  for (std::size_t i = m.begin; i < m.end; ++i) words.push_back(u.tokens[i].form);

  std::vector<double> v = ComposeSpan(table, words);
  auto gnp = EncodeGnp(m.morph);
  v.insert(v.end(), gnp.begin(), gnp.end());
  v.push_back(m.part_of_plural ? 1.0 : 0.0);
  auto actor = EncodeActor(m.actor);
  v.insert(v.end(), actor.begin(), actor.end());
  ApplyMask(v, mask, table.dim());
  return MentionVector(std::move(v));
}

PairVector BuildPairVector(const MentionVector &antecedent,
                           const MentionVector &anaphor) {
  if (antecedent.size() != anaphor.size() || antecedent.size() == 0)
    throw DimensionError("pair halves differ: " + std::to_string(antecedent.size()) +
                         " vs " + std::to_string(anaphor.size()));
  std::vector<double> v;
  v.reserve(2 * antecedent.size());
  v.insert(v.end(), antecedent.values().begin(), antecedent.values().end());
  v.insert(v.end(), anaphor.values().begin(), anaphor.values().end());
  return PairVector(std::move(v));
}

std::vector<MentionVector> BuildMentionVectors(const Conversation &c,
                                               const EmbeddingTable &table,
                                               const FeatureMask &mask) {
  std::vector<MentionVector> out;
  out.reserve(c.mentions.size());
  for (const Mention &m : c.mentions)
    out.push_back(BuildMentionVector(m, c.utterances.at(m.utterance), table, mask));
  return out;
}

PairDataset BuildPairDataset(const std::vector<Conversation> &corpus,
                             const EmbeddingTable &table,
                             const FeatureMask &mask) {
  PairDataset ds;
  for (const Conversation &c : corpus) {
    std::vector<MentionVector> vecs = BuildMentionVectors(c, table, mask);
    auto vector_of = [&](const std::string &id) -> const MentionVector & {
      for (std::size_t i = 0; i < c.mentions.size(); ++i)
        if (c.mentions[i].id == id) return vecs[i];
      throw DimensionError("unknown mention " + id);
    };
    for (const LabeledPair &p : GeneratePairs(c)) {
      PairVector pv = BuildPairVector(vector_of(p.antecedent), vector_of(p.anaphor));
      ds.Add(std::move(pv).release(), p.label, Provenance::kGold,
             {c.id, p.antecedent, p.anaphor});
    }
  }
  return ds;
}

}  // namespace teluref
