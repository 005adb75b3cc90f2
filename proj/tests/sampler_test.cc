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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "teluref/dataset.h"
#include "teluref/error.h"
#include "teluref/random.h"
#include "teluref/sampler.h"

using namespace teluref;

namespace {

PairDataset Random(std::size_t n_true, std::size_t n_false, std::size_t dim, uint64_t seed) {
  Rng rng(seed);
  PairDataset d;
  std::vector<bool> labels(n_true, true);
  labels.resize(n_true + n_false, false);
  rng.shuffle(labels);
  for (bool label : labels) {
    std::vector<double> v(dim);
    for (double &x : v) x = rng.uniform(-1, 1) + (label ? 0.5 : 0.0);
    d.Add(std::move(v), label, Provenance::kGold, {"c", "a", "b"});
  }
  return d;
}

double SquaredDistance(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

TEST_CASE("pair counts from the formulas") {
  CHECK(TruePairCount(5, 0) == 0);
  CHECK(FalsePairCount(5, 0) == 10);
  CHECK(TruePairCount(5, 5) == 10);
  CHECK(FalsePairCount(5, 5) == 0);
  CHECK(TruePairCount(5, 3) == 3);
  CHECK(FalsePairCount(5, 3) == 7);
  CHECK_THROWS_AS(TruePairCount(1, 0), DomainError);
  CHECK_THROWS_AS(FalsePairCount(4, 5), DomainError);
}

TEST_CASE("pair counts match brute-force enumeration") {
  for (uint64_t n = 2; n <= 12; ++n)
    for (uint64_t k = 0; k <= n; ++k) {
      auto [t, f] = oracle::EnumeratePairs(n, k);
      CHECK(TruePairCount(n, k) == t);
      CHECK(FalsePairCount(n, k) == f);
      CHECK(t + f == n * (n - 1) / 2);
    }
}

TEST_CASE("imbalance curve") {
  auto rows = ImbalanceCurve(5);
  REQUIRE(rows.size() == 6);
  CHECK(rows[3].k == 3);
  CHECK(rows[3].true_pairs == 3);
  CHECK(rows[3].false_pairs == 7);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].true_pairs + rows[i].false_pairs == 10);
    if (i > 0) {
      CHECK(rows[i].false_pairs <= rows[i - 1].false_pairs);
      CHECK(rows[i].true_pairs >= rows[i - 1].true_pairs);
    }
  }
  std::string csv = ImbalanceCurveCsv(rows);
  CHECK(csv.rfind("k,true_pairs,false_pairs\n", 0) == 0);
  CHECK(csv.find("\n3,3,7\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("sampling names") {
  CHECK(ParseSampling("over") == Sampling::kOver);
  CHECK(ParseSampling("under") == Sampling::kUnder);
  CHECK(ParseSampling("none") == Sampling::kNone);
  CHECK_FALSE(ParseSampling("smote-nc").has_value());
  CHECK(SamplingName(Sampling::kOver) == "over");
}

TEST_CASE("undersampling balances to the minority size") {
  PairDataset d = Random(642, 1818, 4, 1);
  PairDataset u = Undersample(d, 3);
  CHECK(u.CountLabel(true) == 642);
  CHECK(u.CountLabel(false) == 642);
  CHECK(u.size() == 1284);
  CHECK(u.vectors == Undersample(d, 3).vectors);
  CHECK(u.vectors != Undersample(d, 4).vectors);

  // Survivors are original rows in original order, and every minority row stays.
  std::size_t j = 0;
  for (std::size_t i = 0; i < d.size() && j < u.size(); ++i)
    if (d.vectors[i] == u.vectors[j]) ++j;
  CHECK(j == u.size());
  std::size_t kept_true = 0;
  for (std::size_t i = 0; i < u.size(); ++i) kept_true += u.labels[i];
  CHECK(kept_true == 642);

  PairDataset balanced = Random(10, 10, 3, 2);
  CHECK(Undersample(balanced, 1).vectors == balanced.vectors);
  CHECK_THROWS_AS(Undersample(Random(0, 5, 3, 1), 1), SingleClass);
}

TEST_CASE("SMOTE reaches 1818/1818 from 642/1818") {
  PairDataset d = Random(642, 1818, 226, 5);
  SmoteResult r = SmoteOversampleTraced(d, {5, 11});
  CHECK(r.data.CountLabel(true) == 1818);
  CHECK(r.data.CountLabel(false) == 1818);
  CHECK(r.data.size() == 3636);
  CHECK(r.draws.size() == 1818 - 642);
}

TEST_CASE("SMOTE rows are convex combinations of gold minority neighbours") {
  PairDataset d = Random(60, 200, 12, 6);
  const std::size_t k = 5;
  SmoteResult r = SmoteOversampleTraced(d, {k, 2});
  REQUIRE(r.data.size() == 400);

  // Gold rows are untouched and in place.
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(r.data.vectors[i] == d.vectors[i]);
    CHECK(r.data.labels[i] == d.labels[i]);
    CHECK(r.data.provenance[i] == Provenance::kGold);
  }

  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.labels[i]) minority.push_back(i);

  for (std::size_t s = 0; s < r.draws.size(); ++s) {
    const SmoteDraw &draw = r.draws[s];
    const std::vector<double> &row = r.data.vectors[d.size() + s];
    CHECK(r.data.labels[d.size() + s]);
    CHECK(r.data.provenance[d.size() + s] == Provenance::kSynthetic);
    REQUIRE(d.labels[draw.base]);
    REQUIRE(d.labels[draw.neighbor]);
    CHECK(draw.base != draw.neighbor);
    CHECK(draw.lambda >= 0.0);
    CHECK(draw.lambda <= 1.0);
    const auto &x = d.vectors[draw.base];
    const auto &y = d.vectors[draw.neighbor];
    for (std::size_t c = 0; c < row.size(); ++c) {
      CHECK(std::abs(row[c] - (x[c] + draw.lambda * (y[c] - x[c]))) <= 1e-9);
      CHECK(row[c] >= std::min(x[c], y[c]) - 1e-12);
      CHECK(row[c] <= std::max(x[c], y[c]) + 1e-12);
    }
    // The neighbour is within the k nearest minority rows of the base.
    double dn = SquaredDistance(x, y);
    std::size_t closer = 0;
    for (std::size_t m : minority)
      if (m != draw.base && SquaredDistance(x, d.vectors[m]) < dn) ++closer;
    CHECK(closer < k);
  }
}

TEST_CASE("SMOTE edge cases") {
  PairDataset balanced = Random(10, 10, 3, 2);
  CHECK(SmoteOversample(balanced, {5, 1}).vectors == balanced.vectors);
  CHECK_THROWS_AS(SmoteOversample(Random(1, 5, 3, 1), {5, 1}), TooFewMinority);
  CHECK_THROWS_AS(SmoteOversample(Random(0, 5, 3, 1), {5, 1}), SingleClass);

  // Three minority rows: k is clamped to 2 and still balances.
  PairDataset few = Random(3, 20, 3, 3);
  SmoteResult r = SmoteOversampleTraced(few, {5, 1});
  CHECK(r.data.CountLabel(true) == 20);

  PairDataset a = SmoteOversample(Random(30, 90, 5, 4), {5, 9});
  PairDataset b = SmoteOversample(Random(30, 90, 5, 4), {5, 9});
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("rebalance dispatch") {
  PairDataset d = Random(20, 50, 4, 7);
  CHECK(Rebalance(d, Sampling::kNone, 1).vectors == d.vectors);
  CHECK(Rebalance(d, Sampling::kUnder, 1).size() == 40);
  CHECK(Rebalance(d, Sampling::kOver, 1).size() == 100);
}
