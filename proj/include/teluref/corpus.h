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

#ifndef TELUREF_CORPUS_H_
#define TELUREF_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teluref/ssf.h"

namespace teluref {

// Whom a mention designates among the dialogue participants.
enum class Actor { kNeither, kSpeaker, kHearer };

std::string ActorCode(Actor a);
std::optional<Actor> ParseActor(std::string_view code);

struct Utterance {
  std::string speaker;
  std::string text;
  std::vector<SsfToken> tokens;
};

struct Mention {
  std::string id;
  std::size_t utterance = 0;
  std::size_t begin = 0;  // token offsets within the utterance, end exclusive
  std::size_t end = 0;
  std::string head;
  MorphFeatures morph;
  bool part_of_plural = false;
  Actor actor = Actor::kNeither;
};

struct Conversation {
  std::string id;
  std::vector<std::string> speakers;
  std::vector<Utterance> utterances;
  std::vector<Mention> mentions;
  std::vector<std::vector<std::string>> chains;

  const Mention *FindMention(std::string_view mention_id) const;
};

// Strict document order: earlier utterance, then earlier span start.
bool Precedes(const Mention &a, const Mention &b);

// Throws SchemaError naming the JSON pointer of the first violation.
Conversation LoadConversation(std::string_view bytes);
// Canonical form: sorted keys, two-space indent, trailing newline.
std::string SaveConversation(const Conversation &c);

// Loads every *.json (one conversation) and *.jsonl (one per line) file in
// dir, in file-name order. Throws IoError for unreadable paths.
std::vector<Conversation> LoadCorpusDir(const std::filesystem::path &dir);
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view bytes);

enum class Provenance { kGold, kSynthetic };

struct LabeledPair {
  std::string antecedent;
  std::string anaphor;
  bool label = false;
  Provenance provenance = Provenance::kGold;
};

// Every unordered mention pair, as (earlier, later) in document order.
// Pairs come out grouped by anaphor, antecedents in document order.
std::vector<LabeledPair> GeneratePairs(const Conversation &c);

struct CorpusStats {
  std::size_t conversations = 0;
  std::size_t mentions = 0;
  std::size_t true_pairs = 0;
  std::size_t false_pairs = 0;
};

CorpusStats ComputeCorpusStats(const std::vector<Conversation> &corpus);

struct CorpusSplit {
  std::vector<Conversation> train;
  std::vector<Conversation> test;
};

// Splits whole conversations; throws EmptySplit if either side is empty.
CorpusSplit SplitCorpus(const std::vector<Conversation> &corpus,
                        double test_fraction, uint64_t seed);

// Annotation workflow.

struct AnnotationRecord {
  std::string conversation;
  std::string antecedent;
  std::string anaphor;
  bool label = false;
  std::string annotator;
};

std::string AnnotationToJson(const AnnotationRecord &r);
AnnotationRecord AnnotationFromJson(std::string_view line);
// JSON-lines; blank lines skipped. Errors name the 1-based line.
std::vector<AnnotationRecord> LoadAnnotations(std::string_view bytes);

// Rejects records whose mentions are unknown or out of document order.
void ValidateAnnotation(const Conversation &c, const AnnotationRecord &r);

using PairKey = std::pair<std::string, std::string>;  // (antecedent, anaphor)

struct Conflict {
  PairKey pair;
  bool first_label = false;
  bool second_label = false;
};

struct Adjudication {
  std::map<PairKey, bool> gold;       // agreed or majority-resolved labels
  std::vector<Conflict> conflicts;    // 1-1 disagreements without a tiebreak
  std::vector<Conflict> resolved;     // disagreements settled by the third set

  // Throws MissingThirdReview while conflicts remain.
  const std::map<PairKey, bool> &FinalLabels() const;
};

// Pairs labeled by only one of the two annotators count as an implicit
// false from the other. Multiple records for one pair: the last one wins.
// The third set only breaks ties for pairs it labeled explicitly.
Adjudication Adjudicate(const std::vector<AnnotationRecord> &first,
                        const std::vector<AnnotationRecord> &second,
                        const std::vector<AnnotationRecord> *third = nullptr);

// Rebuilds chains as connected components of the true pairs.
Conversation ApplyGoldLabels(const Conversation &c,
                             const std::map<PairKey, bool> &gold);

}  // namespace teluref

#endif  // TELUREF_CORPUS_H_
