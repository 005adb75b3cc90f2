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

#ifndef TELUREF_SYNTHETIC_H_
#define TELUREF_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "teluref/corpus.h"
#include "teluref/embeddings.h"

namespace teluref {

// Generator for two-party dialogues with gold chains, used for end-to-end
// tests and demos when no annotated corpus is at hand.
//
// Each conversation has a protagonist (the first speaker, referred to in
// first person by itself and in second person by the other party) and a number of
// third-person entities, spread over four gender/number classes. Entities are
// introduced by a name and later picked up by a pronoun, an agreeing verb
// or an inflected form of the name. Which entity the next mention refers to
// favours recently mentioned ones. Inflected names get embeddings close to
// the base name; names carry no gender signal in their embeddings.
struct SyntheticCorpusConfig {
  std::size_t conversations = 48;
  std::size_t min_mentions = 7;
  std::size_t max_mentions = 10;
  std::size_t embedding_dim = 100;
  std::size_t names_per_class = 150;
  // Third-person entities per conversation. Past four, agreement classes
  // repeat and agreement alone no longer identifies the referent.
  std::size_t third_person_entities = 4;
  // Chance that a mention introduces a not-yet-mentioned entity.
  double new_entity_probability = 0.6;
  uint64_t seed = 1;
};

struct SyntheticCorpus {
  std::vector<Conversation> conversations;
  EmbeddingTable embeddings;
};

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusConfig &cfg);

}  // namespace teluref

#endif  // TELUREF_SYNTHETIC_H_
