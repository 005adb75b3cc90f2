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

#ifndef TELUREF_EVALUATOR_H_
#define TELUREF_EVALUATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teluref/corpus.h"
#include "teluref/embeddings.h"
#include "teluref/featurizer.h"
#include "teluref/mlp.h"
#include "teluref/sampler.h"

namespace teluref {

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double mean_loss = 0.0;
  double threshold = 0.5;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  // False when the ratio had a zero denominator and was reported as 0.
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;

  std::size_t total() const { return tp + fp + tn + fn; }
};

// A row is predicted positive when its probability is strictly above the
// threshold. Throws LengthMismatch.
EvalReport PrecisionRecallF1(std::span<const double> probabilities,
                             const std::vector<bool> &labels, double threshold = 0.5);

EvalReport Evaluate(const MlpModel &model, const PairDataset &data,
                    double threshold = 0.5);

std::string EvalReportJson(const EvalReport &r, const std::string &label = "");

struct ReportRow {
  std::string name;
  EvalReport report;
};

// Aligned text table with columns name, Loss, Precision, Recall, F1.
// Loss is printed as a percentage of mean BCE, the rest on a 0-100 scale.
std::string FormatReportTable(const std::string &first_column,
                              const std::vector<ReportRow> &rows);

struct ExperimentConfig {
  MlpConfig mlp;
  Sampling sampling = Sampling::kOver;
  std::size_t smote_k = 5;
  uint64_t sampling_seed = 0;
  double threshold = 0.5;
};

// Featurize train/test with mask, rebalance train, train a fresh model and
// evaluate on test.
struct ExperimentResult {
  EvalReport report;
  TrainReport train_report;
  std::size_t train_pairs = 0;
};

ExperimentResult RunExperiment(const std::vector<Conversation> &train,
                               const std::vector<Conversation> &test,
                               const EmbeddingTable &table, const FeatureMask &mask,
                               const ExperimentConfig &cfg);

// Baseline row ("none": embeddings only) followed by one row per block with
// that block enabled on top of the embeddings. Every row shares split and
// seeds.
std::vector<ReportRow> RunAblation(const std::vector<Conversation> &train,
                                   const std::vector<Conversation> &test,
                                   const EmbeddingTable &table,
                                   const std::vector<FeatureBlock> &blocks,
                                   const ExperimentConfig &cfg);

// Scores an (antecedent, anaphor) pair.
using PairScorer = std::function<double(const Mention &antecedent, const Mention &anaphor)>;

// anaphor id -> antecedent id; nullopt means unresolved. Mentions with no
// earlier mention get no entry.
using ResolutionResult = std::map<std::string, std::optional<std::string>>;

// For each mention, picks the highest-scoring earlier mention if its score
// exceeds threshold. Ties go to the most recent candidate.
ResolutionResult ResolveAntecedents(const Conversation &c, const PairScorer &score,
                                    double threshold = 0.5);
ResolutionResult ResolveAntecedents(const Conversation &c, const MlpModel &model,
                                    const EmbeddingTable &table, double threshold = 0.5,
                                    const FeatureMask &mask = FeatureMask::All());

}  // namespace teluref

#endif  // TELUREF_EVALUATOR_H_
