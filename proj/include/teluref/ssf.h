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

#ifndef TELUREF_SSF_H_
#define TELUREF_SSF_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teluref {

enum class Gender { kAny, kMale, kFemale };
enum class Number { kZero, kSingular, kPlural };
enum class Person { kNone, kFirst, kSecond, kThird };

// Gender/number/person decoded from the af attribute.
struct MorphFeatures {
  Gender gender = Gender::kAny;
  Number number = Number::kZero;
  Person person = Person::kNone;

  bool operator==(const MorphFeatures &) const = default;
};

// Code tables for the af fields. Unknown codes map to the neutral category.
Gender DecodeGender(std::string_view code);
Number DecodeNumber(std::string_view code);
Person DecodePerson(std::string_view code);

// Canonical codes, as written into corpus files ("m", "sg", "3", ...).
std::string GenderCode(Gender g);
std::string NumberCode(Number n);
std::string PersonCode(Person p);

struct FeatureStructure {
  std::string root;
  std::string category;
  MorphFeatures morph;
  std::optional<std::string> name;
  std::string raw_af;  // verbatim, re-serialized unchanged
};

struct SsfToken {
  std::size_t index = 0;  // 1-based position within the sentence
  std::string form;
  std::string pos;
  FeatureStructure fs;
};

// A "((" ... "))" group. Token offsets are 0-based, end exclusive.
struct SsfChunk {
  std::string tag;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct SsfSentence {
  std::vector<SsfToken> tokens;
  std::vector<SsfChunk> chunks;
};

struct SsfDiagnostic {
  std::size_t line_no;
  std::string message;
};

struct SsfParseOptions {
  // In strict mode the first problem throws; otherwise the line is reported
  // in diagnostics and skipped.
  bool strict = false;
};

struct SsfDocument {
  std::vector<SsfSentence> sentences;
  std::vector<SsfDiagnostic> diagnostics;
};

// Decodes "root,category,gender,number,person[,case,TAM,...]".
// Throws TooFewFields when fewer than five fields are present.
FeatureStructure ParseFsAttribute(std::string_view af);

// Parses SSF text. Sentences are delimited by <Sentence> tags or blank lines.
// Lines may carry a leading address column ("1", "2.1") or start directly
// with the word form.
SsfDocument ParseSsfDocument(std::string_view text,
                             const SsfParseOptions &options = {});

// Writes sentences back out in <Sentence>-delimited form.
std::string SerializeSsf(const std::vector<SsfSentence> &sentences);

// True for POS tags that can head a mention: nouns, pronouns and main verbs.
// Verbs count because subjects are routinely dropped and the finite verb
// carries their agreement.
bool IsMentionPos(std::string_view pos);

struct MentionCandidate {
  std::size_t begin = 0;  // token offsets, end exclusive
  std::size_t end = 0;
  std::size_t head = 0;
  std::string head_form;
  std::string pos;
  MorphFeatures morph;
};

std::vector<MentionCandidate> ExtractMentionCandidates(
    const std::vector<SsfToken> &sentence);

}  // namespace teluref

#endif  // TELUREF_SSF_H_
