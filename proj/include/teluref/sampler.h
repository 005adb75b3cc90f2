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

#ifndef TELUREF_SAMPLER_H_
#define TELUREF_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teluref/dataset.h"

namespace teluref {

// Pair counts for n mentions of which k form one chain.
// Throw DomainError unless n >= 2 and k <= n.
uint64_t TruePairCount(uint64_t n, uint64_t k);
uint64_t FalsePairCount(uint64_t n, uint64_t k);

struct ImbalanceRow {
  uint64_t k;
  uint64_t true_pairs;
  uint64_t false_pairs;
};

// One row per chain size 0..n.
std::vector<ImbalanceRow> ImbalanceCurve(uint64_t n);
// Header "k,true_pairs,false_pairs".
std::string ImbalanceCurveCsv(const std::vector<ImbalanceRow> &rows);

enum class Sampling { kNone, kUnder, kOver };
std::optional<Sampling> ParseSampling(std::string_view name);
std::string_view SamplingName(Sampling s);

// Drops majority-class rows uniformly at random until the classes match.
// Surviving rows keep their relative order. Throws SingleClass.
PairDataset Undersample(const PairDataset &d, uint64_t seed);

struct SmoteConfig {
  std::size_t k_neighbors = 5;
  uint64_t seed = 0;
};

// How one synthetic row was made: base + lambda * (neighbor - base), with
// base and neighbor indexing gold rows of the input.
struct SmoteDraw {
  std::size_t base;
  std::size_t neighbor;
  double lambda;
};

struct SmoteResult {
  PairDataset data;
  std::vector<SmoteDraw> draws;  // one per appended synthetic row, in order
};

// Appends synthetic minority rows until the classes match. Neighbours are
// found by Euclidean distance over the full vector. Gold rows are kept
// unchanged and in place. Throws TooFewMinority, SingleClass.
SmoteResult SmoteOversampleTraced(const PairDataset &d, const SmoteConfig &cfg);
PairDataset SmoteOversample(const PairDataset &d, const SmoteConfig &cfg);

// Dispatches on strategy; kNone returns d unchanged.
PairDataset Rebalance(const PairDataset &d, Sampling strategy, uint64_t seed,
                      std::size_t k_neighbors = 5);

}  // namespace teluref

#endif  // TELUREF_SAMPLER_H_
