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

#ifndef TELUREF_DATASET_H_
#define TELUREF_DATASET_H_

#include <cstddef>
#include <string>
#include <vector>

#include "teluref/corpus.h"

namespace teluref {

// Where a gold row came from. Synthetic rows have no source pair.
struct PairSource {
  std::string conversation;
  std::string antecedent;
  std::string anaphor;
};

// Featurized pairs. All per-row lists have equal length.
struct PairDataset {
  std::vector<std::vector<double>> vectors;
  std::vector<bool> labels;
  std::vector<Provenance> provenance;
  std::vector<PairSource> sources;

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  std::size_t CountLabel(bool label) const;

  void Add(std::vector<double> vec, bool label, Provenance prov,
           PairSource source = {});
};

}  // namespace teluref

#endif  // TELUREF_DATASET_H_
