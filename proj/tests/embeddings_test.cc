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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "teluref/embeddings.h"
#include "teluref/error.h"
#include "teluref/random.h"

using namespace teluref;

namespace {

const char *kFixture = "2 3\na 1 0 0\nb 0 1 0\n";

double Norm(const std::vector<double> &v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("word2vec text loads and looks up") {
  EmbeddingTable t = LoadEmbeddings(kFixture, 3);
  CHECK(t.size() == 2);
  CHECK(t.dim() == 3);
  CHECK(t.Lookup("a") == std::vector<double>{1, 0, 0});
  CHECK(t.Lookup("b") == std::vector<double>{0, 1, 0});
  CHECK(t.contains("a"));
  CHECK_FALSE(t.contains("c"));
}

TEST_CASE("loader rejects malformed files") {
  CHECK_THROWS_AS(LoadEmbeddings("", 3), BadHeader);
  CHECK_THROWS_AS(LoadEmbeddings("two 3\na 1 0 0\n", 3), BadHeader);
  CHECK_THROWS_AS(LoadEmbeddings("1\na 1 0 0\n", 3), BadHeader);

  try {
    LoadEmbeddings(kFixture, 100);
    FAIL("dimension mismatch accepted");
  } catch (const DimMismatch &e) {
    CHECK(e.expected() == 100);
    CHECK(e.found() == 3);
  }

  auto line_of = [](const std::string &text) -> std::size_t {
    try {
      LoadEmbeddings(text, 3);
    } catch (const BadVectorLine &e) {
      return e.line_no();
    }
    return 0;
  };
  CHECK(line_of("2 3\na 1 0 0\nb 0 1\n") == 3);
  CHECK(line_of("2 3\na 1 0 0\nb 0 x 0\n") == 3);
  CHECK(line_of("2 3\na 1 0 0\na 0 1 0\n") == 3);
  CHECK(line_of("1 3\na 1 0 0\nb 0 1 0\n") == 3);
  CHECK(line_of("3 3\na 1 0 0\nb 0 1 0\n") != 0);
}

TEST_CASE("one line of 99 floats in a 100-dim file is rejected") {
  std::ostringstream out;
  out << "2 100\nfirst";
  for (int i = 0; i < 100; ++i) out << " 0.5";
  out << "\nsecond";
  for (int i = 0; i < 99; ++i) out << " 0.5";
  out << "\n";
  CHECK_THROWS_AS(LoadEmbeddings(out.str(), 100), BadVectorLine);
}

TEST_CASE("a 23000-word 100-dim file loads") {
  Rng rng(1);
  std::string text = "23000 100\n";
  text.reserve(23000 * 700);
  char buf[32];
  for (int w = 0; w < 23000; ++w) {
    text += "w" + std::to_string(w);
    for (int d = 0; d < 100; ++d) {
      std::snprintf(buf, sizeof buf, " %.5f", rng.uniform(-1, 1));
      text += buf;
    }
    text += '\n';
  }
  EmbeddingTable t = LoadEmbeddings(text, 100);
  CHECK(t.size() == 23000);
  CHECK(t.Lookup("w22999").size() == 100);
}

TEST_CASE("text export reloads to the same table") {
  EmbeddingTable t = LoadEmbeddings("3 2\nx 0.125 -3.5\ny 1e-3 7\nz 0.1 0.2\n", 2);
  EmbeddingTable back = LoadEmbeddings(t.ToText(), 2);
  for (const char *w : {"x", "y", "z"}) CHECK(back.Lookup(w) == t.Lookup(w));
}

TEST_CASE("out-of-vocabulary policies") {
  EmbeddingTable zeros = LoadEmbeddings(kFixture, 3, OovPolicy::kZeros);
  CHECK(zeros.Lookup("unseen") == std::vector<double>{0, 0, 0});

  EmbeddingTable hashed = LoadEmbeddings(kFixture, 3, OovPolicy::kHashedDeterministic);
  std::vector<double> v = hashed.Lookup("unseen");
  CHECK(v == hashed.Lookup("unseen"));
  CHECK(v == HashedVector("unseen", 3));
  CHECK(std::abs(Norm(v) - 1.0) < 1e-9);
  CHECK(v != hashed.Lookup("other"));

  for (int i = 0; i < 500; ++i) {
    std::vector<double> h = HashedVector("tok" + std::to_string(i), 100);
    CHECK(std::abs(Norm(h) - 1.0) < 1e-9);
  }
  CHECK(ParseOovPolicy("zeros") == OovPolicy::kZeros);
  CHECK(ParseOovPolicy("hashed") == OovPolicy::kHashedDeterministic);
  CHECK_FALSE(ParseOovPolicy("random").has_value());
}

TEST_CASE("span composition is the elementwise mean") {
  EmbeddingTable t = LoadEmbeddings(kFixture, 3);
  CHECK(ComposeSpan(t, {"a"}) == t.Lookup("a"));
  CHECK(ComposeSpan(t, {"a", "b"}) == std::vector<double>{0.5, 0.5, 0});
  CHECK_THROWS_AS(ComposeSpan(t, {}), EmptySpan);
}

TEST_CASE("span composition ignores word order") {
  Rng rng(9);
  EmbeddingTable t(8, OovPolicy::kHashedDeterministic);
  std::vector<std::string> words;
  for (int i = 0; i < 6; ++i) {
    std::vector<double> v(8);
    for (double &x : v) x = rng.uniform(-10, 10);
    words.push_back("v" + std::to_string(i));
    t.Add(words.back(), v);
  }
  words.push_back("oov-word");
  std::vector<double> base = ComposeSpan(t, words);
  for (int trial = 0; trial < 50; ++trial) {
    rng.shuffle(words);
    CHECK(ComposeSpan(t, words) == base);
  }
  for (const std::string &w : words) CHECK(ComposeSpan(t, {w}) == t.Lookup(w));
}

TEST_CASE("adding a vector of the wrong width fails") {
  EmbeddingTable t(3, OovPolicy::kZeros);
  std::vector<double> two = {1, 2};
  CHECK_THROWS_AS(t.Add("w", two), DimMismatch);
}
