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

#include "teluref/sampler.h"

#include <algorithm>
#include <numeric>

#include "teluref/error.h"
#include "teluref/random.h"

namespace teluref {
namespace {

void CheckDomain(uint64_t n, uint64_t k) {
  if (n < 2) throw DomainError("need at least 2 mentions, got n=" + std::to_string(n));
  if (k > n)
    throw DomainError("chain size k=" + std::to_string(k) + " exceeds n=" +
                      std::to_string(n));
}

double SquaredDistance(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

uint64_t TruePairCount(uint64_t n, uint64_t k) {
  CheckDomain(n, k);
  return k * (k == 0 ? 0 : k - 1) / 2;
}

uint64_t FalsePairCount(uint64_t n, uint64_t k) {
  CheckDomain(n, k);
  return (n - k) * (n + k - 1) / 2;
}

std::vector<ImbalanceRow> ImbalanceCurve(uint64_t n) {
  CheckDomain(n, 0);
  std::vector<ImbalanceRow> rows;
  for (uint64_t k = 0; k <= n; ++k)
    rows.push_back({k, TruePairCount(n, k), FalsePairCount(n, k)});
  return rows;
}

std::string ImbalanceCurveCsv(const std::vector<ImbalanceRow> &rows) {
  std::string out = "k,true_pairs,false_pairs\n";
  for (const ImbalanceRow &r : rows)
    out += std::to_string(r.k) + "," + std::to_string(r.true_pairs) + "," +
           std::to_string(r.false_pairs) + "\n";
  return out;
}

std::optional<Sampling> ParseSampling(std::string_view name) {
  if (name == "none") return Sampling::kNone;
  if (name == "under") return Sampling::kUnder;
  if (name == "over") return Sampling::kOver;
  return std::nullopt;
}

std::string_view SamplingName(Sampling s) {
  switch (s) {
    case Sampling::kNone: return "none";
    case Sampling::kUnder: return "under";
    case Sampling::kOver: return "over";
  }
  return "?";
}

PairDataset Undersample(const PairDataset &d, uint64_t seed) {
  std::size_t n_true = d.CountLabel(true);
  std::size_t n_false = d.size() - n_true;
  if (n_true == 0 || n_false == 0) throw SingleClass();
  if (n_true == n_false) return d;
  bool majority = n_true > n_false;  // label of the larger class
  std::size_t keep = std::min(n_true, n_false);

  std::vector<std::size_t> majority_rows;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.labels[i] == majority) majority_rows.push_back(i);
  Rng rng(seed);
  rng.shuffle(majority_rows);
  std::vector<bool> survive(d.size(), true);
  for (std::size_t i = keep; i < majority_rows.size(); ++i)
    survive[majority_rows[i]] = false;

  PairDataset out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (survive[i]) out.Add(d.vectors[i], d.labels[i], d.provenance[i], d.sources[i]);
  return out;
}

SmoteResult SmoteOversampleTraced(const PairDataset &d, const SmoteConfig &cfg) {
  if (cfg.k_neighbors < 1) throw DomainError("k_neighbors must be >= 1");
  std::size_t n_true = d.CountLabel(true);
  std::size_t n_false = d.size() - n_true;
  if (n_true == 0 || n_false == 0) throw SingleClass();
  SmoteResult result{d, {}};
  if (n_true == n_false) return result;

  bool minority_label = n_true < n_false;
  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.labels[i] == minority_label) minority.push_back(i);
  if (minority.size() < 2) throw TooFewMinority(minority.size());
  std::size_t k = std::min(cfg.k_neighbors, minority.size() - 1);

  // k nearest minority neighbours of each minority row; ties go to the
  // lower row index.
  std::vector<std::vector<std::size_t>> neighbors(minority.size());
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t a = 0; a < minority.size(); ++a) {
    dist.clear();
    for (std::size_t b = 0; b < minority.size(); ++b) {
      if (a == b) continue;
      dist.emplace_back(SquaredDistance(d.vectors[minority[a]], d.vectors[minority[b]]),
                        minority[b]);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                      dist.end());
    for (std::size_t i = 0; i < k; ++i) neighbors[a].push_back(dist[i].second);
  }

  Rng rng(cfg.seed);
  std::size_t needed = std::max(n_true, n_false) - minority.size();
  std::size_t dim = d.dim();
  for (std::size_t s = 0; s < needed; ++s) {
    std::size_t a = rng.below(minority.size());
    std::size_t base = minority[a];
    std::size_t neighbor = neighbors[a][rng.below(k)];
    double lambda = rng.uniform();
    const std::vector<double> &x = d.vectors[base];
    const std::vector<double> &y = d.vectors[neighbor];
    std::vector<double> synth(dim);
    for (std::size_t i = 0; i < dim; ++i) synth[i] = x[i] + lambda * (y[i] - x[i]);
    result.data.Add(std::move(synth), minority_label, Provenance::kSynthetic);
    result.draws.push_back({base, neighbor, lambda});
  }
  return result;
}

PairDataset SmoteOversample(const PairDataset &d, const SmoteConfig &cfg) {
  return SmoteOversampleTraced(d, cfg).data;
}

PairDataset Rebalance(const PairDataset &d, Sampling strategy, uint64_t seed,
                      std::size_t k_neighbors) {
  switch (strategy) {
    case Sampling::kUnder: return Undersample(d, seed);
    case Sampling::kOver: return SmoteOversample(d, {k_neighbors, seed});
    case Sampling::kNone: break;
  }
  return d;
}

}  // namespace teluref
