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

#ifndef TELUREF_TESTS_FIXTURES_H_
#define TELUREF_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "teluref/corpus.h"
#include "teluref/ssf.h"

namespace teluref::fixture {

// A conversation with one utterance per mention; mention i is token 0 of
// utterance i, spelled "w<i>". The first `chain` mentions form one chain.
inline Conversation Linear(const std::string &id, std::size_t n, std::size_t chain = 0) {
  Conversation c;
  c.id = id;
  c.speakers = {"A", "B"};
  std::vector<std::string> members;
  for (std::size_t i = 0; i < n; ++i) {
    Utterance u;
    u.speaker = i % 2 ? "B" : "A";
    SsfToken t;
    t.index = 1;
    t.form = "w" + std::to_string(i + 1);
    t.pos = "NN";
    t.fs = ParseFsAttribute(t.form + ",n,m,sg,3,,,");
    u.text = t.form;
    u.tokens = {t};
    c.utterances.push_back(u);
    Mention m;
    m.id = "m" + std::to_string(i + 1);
    m.utterance = i;
    m.begin = 0;
    m.end = 1;
    m.head = t.form;
    m.morph = t.fs.morph;
    c.mentions.push_back(m);
    if (i < chain) members.push_back(m.id);
  }
  if (chain >= 2) c.chains.push_back(members);
  return c;
}

inline AnnotationRecord Record(const std::string &conv, const std::string &ante,
                               const std::string &ana, bool label, const std::string &who) {
  return {conv, ante, ana, label, who};
}

}  // namespace teluref::fixture

#endif  // TELUREF_TESTS_FIXTURES_H_
