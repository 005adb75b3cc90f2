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

#include <string>

#include "doctest.h"
#include "teluref/error.h"
#include "teluref/random.h"
#include "teluref/ssf.h"

using namespace teluref;

namespace {

const char *kExampleLine = "unnADu\tVM\t<fs af='unDu,v,m,sg,3,,A,A' name=\"unnaaDu\">";

}  // namespace

TEST_CASE("af attribute decodes gender, number and person") {
  FeatureStructure fs = ParseFsAttribute("unDu,v,m,sg,3,,A,A");
  CHECK(fs.root == "unDu");
  CHECK(fs.category == "v");
  CHECK(fs.morph == MorphFeatures{Gender::kMale, Number::kSingular, Person::kThird});
  CHECK(fs.raw_af == "unDu,v,m,sg,3,,A,A");

  fs = ParseFsAttribute("pustakam,n,,sg,,");
  CHECK(fs.root == "pustakam");
  CHECK(fs.morph == MorphFeatures{Gender::kAny, Number::kSingular, Person::kNone});

  fs = ParseFsAttribute("vALLu,pn,any,pl,3,,");
  CHECK(fs.morph == MorphFeatures{Gender::kAny, Number::kPlural, Person::kThird});
}

TEST_CASE("af with fewer than five fields is rejected") {
  CHECK_THROWS_AS(ParseFsAttribute("unDu,v,m,sg"), TooFewFields);
  CHECK_THROWS_AS(ParseFsAttribute(""), TooFewFields);
  CHECK_NOTHROW(ParseFsAttribute(",,,,"));
}

TEST_CASE("unknown codes decode to the neutral category") {
  CHECK(DecodeGender("n") == Gender::kAny);
  CHECK(DecodeGender("") == Gender::kAny);
  CHECK(DecodeGender("f") == Gender::kFemale);
  CHECK(DecodeNumber("du") == Number::kZero);
  CHECK(DecodeNumber("pl") == Number::kPlural);
  CHECK(DecodePerson("3h") == Person::kNone);
  CHECK(DecodePerson("2") == Person::kSecond);
}

TEST_CASE("decoding is total over random five-field attributes") {
  const char *codes[] = {"", "m", "f", "any", "sg", "pl", "1", "2", "3", "x", "0"};
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string af = "r,c";
    for (int f = 0; f < 3; ++f) af += std::string(",") + codes[rng.below(11)];
    FeatureStructure fs;
    REQUIRE_NOTHROW(fs = ParseFsAttribute(af));
    CHECK(static_cast<int>(fs.morph.gender) <= 2);
    CHECK(static_cast<int>(fs.morph.number) <= 2);
    CHECK(static_cast<int>(fs.morph.person) <= 3);
  }
}

TEST_CASE("example token line parses into one token") {
  SsfDocument doc = ParseSsfDocument(kExampleLine);
  REQUIRE(doc.sentences.size() == 1);
  REQUIRE(doc.sentences[0].tokens.size() == 1);
  const SsfToken &t = doc.sentences[0].tokens[0];
  CHECK(t.index == 1);
  CHECK(t.form == "unnADu");
  CHECK(t.pos == "VM");
  CHECK(t.fs.root == "unDu");
  CHECK(t.fs.morph == MorphFeatures{Gender::kMale, Number::kSingular, Person::kThird});
  REQUIRE(t.fs.name.has_value());
  CHECK(*t.fs.name == "unnaaDu");
}

TEST_CASE("double-quoted and bare af values are accepted") {
  SsfDocument doc = ParseSsfDocument("atanu\tPRP\t<fs af=\"atanu,pn,m,sg,3,,,\">\n"
                                     "rAmu\tNNP\t<fs af=rAmu,n,m,sg,3,d,0,0>\n");
  REQUIRE(doc.sentences.size() == 1);
  REQUIRE(doc.sentences[0].tokens.size() == 2);
  CHECK(doc.sentences[0].tokens[0].fs.root == "atanu");
  CHECK(doc.sentences[0].tokens[1].fs.raw_af == "rAmu,n,m,sg,3,d,0,0");
}

TEST_CASE("empty input yields no sentences") {
  CHECK(ParseSsfDocument("").sentences.empty());
  CHECK(ParseSsfDocument("\n\n  \n").sentences.empty());
}

TEST_CASE("blank lines and sentence tags both delimit sentences") {
  const char *blank_delimited =
      "rAmu\tNNP\t<fs af='rAmu,n,m,sg,3,d,0,0'>\n"
      "intiki\tNN\t<fs af='illu,n,n,sg,3,ki,0,0'>\n"
      "veVlYlAdu\tVM\t<fs af='veVlYlu,v,m,sg,3,,A,A'>\n"
      "\n"
      "atanu\tPRP\t<fs af='atanu,pn,m,sg,3,,,'>\n"
      "navvADu\tVM\t<fs af='navvu,v,m,sg,3,,A,A'>\n";
  SsfDocument a = ParseSsfDocument(blank_delimited);
  REQUIRE(a.sentences.size() == 2);
  CHECK(a.sentences[0].tokens.size() == 3);
  CHECK(a.sentences[1].tokens.size() == 2);

  const char *tagged =
      "<Sentence id=\"1\">\n"
      "1\t((\tNP\n"
      "1.1\trAmu\tNNP\t<fs af='rAmu,n,m,sg,3,d,0,0'>\n"
      "1.2\tintiki\tNN\t<fs af='illu,n,n,sg,3,ki,0,0'>\n"
      "\t))\n"
      "2\tveVlYlAdu\tVM\t<fs af='veVlYlu,v,m,sg,3,,A,A'>\n"
      "</Sentence>\n"
      "<Sentence id=\"2\">\n"
      "1\tatanu\tPRP\t<fs af='atanu,pn,m,sg,3,,,'>\n"
      "2\tnavvADu\tVM\t<fs af='navvu,v,m,sg,3,,A,A'>\n"
      "</Sentence>\n";
  SsfDocument b = ParseSsfDocument(tagged);
  REQUIRE(b.sentences.size() == 2);
  CHECK(b.sentences[0].tokens.size() == 3);
  CHECK(b.sentences[1].tokens.size() == 2);
  REQUIRE(b.sentences[0].chunks.size() == 1);
  CHECK(b.sentences[0].chunks[0].tag == "NP");
  CHECK(b.sentences[0].chunks[0].begin == 0);
  CHECK(b.sentences[0].chunks[0].end == 2);
  for (const SsfSentence &s : b.sentences)
    for (std::size_t i = 0; i < s.tokens.size(); ++i) CHECK(s.tokens[i].index == i + 1);
}

TEST_CASE("malformed lines: lenient skips, strict throws with line number") {
  const char *text =
      "rAmu\tNNP\t<fs af='rAmu,n,m,sg,3,d,0,0'>\n"
      "lonely\n"
      "navvADu\tVM\t<fs af='navvu,v,m,sg,3,,A,A'>\n";
  SsfDocument lenient = ParseSsfDocument(text);
  REQUIRE(lenient.sentences.size() == 1);
  CHECK(lenient.sentences[0].tokens.size() == 2);
  CHECK(lenient.sentences[0].tokens[1].index == 2);
  REQUIRE(lenient.diagnostics.size() == 1);
  CHECK(lenient.diagnostics[0].line_no == 2);

  try {
    ParseSsfDocument(text, SsfParseOptions{true});
    FAIL("strict mode accepted a malformed line");
  } catch (const MalformedLine &e) {
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("serialization round-trips forms, tags and raw af") {
  const char *text =
      "rAmu\tNNP\t<fs af='rAmu,n,m,sg,3,d,0,0'>\n"
      "pustakam\tNN\t<fs af='pustakam,n,,sg,,'>\n"
      "icchADu\tVM\t<fs af='iccu,v,m,sg,3,,A,A'>\n"
      "\n"
      "vALLu\tPRP\t<fs af='vALLu,pn,any,pl,3,,'>\n"
      ".\tSYM\n";
  SsfDocument first = ParseSsfDocument(text);
  SsfDocument second = ParseSsfDocument(SerializeSsf(first.sentences));
  REQUIRE(first.sentences.size() == second.sentences.size());
  for (std::size_t s = 0; s < first.sentences.size(); ++s) {
    const auto &a = first.sentences[s].tokens;
    const auto &b = second.sentences[s].tokens;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].form == b[i].form);
      CHECK(a[i].pos == b[i].pos);
      CHECK(a[i].fs.raw_af == b[i].fs.raw_af);
    }
  }
  CHECK(SerializeSsf(second.sentences) == SerializeSsf(first.sentences));
}

TEST_CASE("mention candidates are nouns, pronouns and main verbs") {
  auto tokens = [](const char *text) { return ParseSsfDocument(text).sentences.at(0).tokens; };

  auto two = ExtractMentionCandidates(tokens("rAmu\tNN\t<fs af='rAmu,n,m,sg,3,,,'>\n"
                                             "unnADu\tVM\t<fs af='unDu,v,m,sg,3,,A,A'>\n"));
  CHECK(two.size() == 2);

  auto three = ExtractMentionCandidates(tokens("atanu\tPRP\t<fs af='atanu,pn,m,sg,3,,,'>\n"
                                               "pustakam\tNN\t<fs af='pustakam,n,,sg,,'>\n"
                                               "icchADu\tVM\t<fs af='iccu,v,m,sg,3,,A,A'>\n"));
  REQUIRE(three.size() == 3);
  CHECK(three[0].morph.person == Person::kThird);
  CHECK(three[0].head_form == "atanu");

  CHECK(ExtractMentionCandidates(tokens(".\tSYM\n,\tSYM\n")).empty());
  CHECK(ExtractMentionCandidates({}).empty());
}

TEST_CASE("every candidate lies inside its sentence with a mention POS head") {
  const char *tags[] = {"NN", "NNP", "PRP", "VM", "JJ", "RB", "SYM", "CC", "PSP", "NNC"};
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i)
      text += "w" + std::to_string(i) + "\t" + tags[rng.below(10)] + "\t<fs af='w,n,m,sg,3'>\n";
    auto tokens = ParseSsfDocument(text).sentences.at(0).tokens;
    for (const MentionCandidate &c : ExtractMentionCandidates(tokens)) {
      CHECK(c.begin < c.end);
      CHECK(c.end <= tokens.size());
      CHECK(c.head >= c.begin);
      CHECK(c.head < c.end);
      CHECK(IsMentionPos(tokens[c.head].pos));
    }
  }
}
