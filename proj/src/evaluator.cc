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

#include "teluref/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "json.hpp"
#include "teluref/error.h"

namespace teluref {

EvalReport PrecisionRecallF1(std::span<const double> probabilities,
                             const std::vector<bool> &labels, double threshold) {
  if (probabilities.size() != labels.size())
    throw LengthMismatch(probabilities.size(), labels.size());
  if (!(threshold > 0.0 && threshold < 1.0))
    throw DomainError("threshold must lie in (0, 1)");
  EvalReport r;
  r.threshold = threshold;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    bool predicted = probabilities[i] > threshold;
    if (predicted && labels[i]) ++r.tp;
    else if (predicted) ++r.fp;
    else if (labels[i]) ++r.fn;
    else ++r.tn;
  }
  if (r.tp + r.fp > 0) {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  } else {
    r.precision_defined = false;
  }
  if (r.tp + r.fn > 0) {
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  } else {
    r.recall_defined = false;
  }
  if (r.tp > 0) {
    // Harmonic mean of precision and recall, in a form with a single rounding.
    r.f1 = static_cast<double>(2 * r.tp) / static_cast<double>(2 * r.tp + r.fp + r.fn);
  } else {
    r.f1_defined = false;
  }
  r.mean_loss = BceLoss(probabilities, labels);
  return r;
}

EvalReport Evaluate(const MlpModel &model, const PairDataset &data, double threshold) {
  std::vector<double> probs = PredictBatch(model, data.vectors);
  return PrecisionRecallF1(probs, data.labels, threshold);
}

std::string EvalReportJson(const EvalReport &r, const std::string &label) {
  nlohmann::json j = {{"precision", r.precision},
                      {"recall", r.recall},
                      {"f1", r.f1},
                      {"loss", r.mean_loss},
                      {"threshold", r.threshold},
                      {"tp", r.tp},
                      {"fp", r.fp},
                      {"tn", r.tn},
                      {"fn", r.fn},
                      {"precision_defined", r.precision_defined},
                      {"recall_defined", r.recall_defined},
                      {"f1_defined", r.f1_defined}};
  if (!label.empty()) j["name"] = label;
  return j.dump(2) + "\n";
}

std::string FormatReportTable(const std::string &first_column,
                              const std::vector<ReportRow> &rows) {
  std::size_t width = first_column.size();
  for (const ReportRow &row : rows) width = std::max(width, row.name.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %8s  %9s  %8s  %8s\n", static_cast<int>(width),
                first_column.c_str(), "Loss", "Precision", "Recall", "F1");
  out += buf;
  for (const ReportRow &row : rows) {
    const EvalReport &r = row.report;
    std::snprintf(buf, sizeof(buf), "%-*s  %7.2f%%  %9.1f  %8.1f  %8.1f\n",
                  static_cast<int>(width), row.name.c_str(), 100.0 * r.mean_loss,
                  100.0 * r.precision, 100.0 * r.recall, 100.0 * r.f1);
    out += buf;
  }
  return out;
}

ExperimentResult RunExperiment(const std::vector<Conversation> &train,
                               const std::vector<Conversation> &test,
                               const EmbeddingTable &table, const FeatureMask &mask,
                               const ExperimentConfig &cfg) {
  PairDataset train_set = BuildPairDataset(train, table, mask);
  PairDataset test_set = BuildPairDataset(test, table, mask);
  train_set = Rebalance(train_set, cfg.sampling, cfg.sampling_seed, cfg.smote_k);
  MlpConfig mlp = cfg.mlp;
  mlp.input_dim = 2 * MentionDim(table.dim());
  MlpModel model = InitModel(mlp);
  ExperimentResult result;
  result.train_pairs = train_set.size();
  result.train_report = Train(model, train_set);
  result.report = Evaluate(model, test_set, cfg.threshold);
  return result;
}

std::vector<ReportRow> RunAblation(const std::vector<Conversation> &train,
                                   const std::vector<Conversation> &test,
                                   const EmbeddingTable &table,
                                   const std::vector<FeatureBlock> &blocks,
                                   const ExperimentConfig &cfg) {
  std::vector<ReportRow> rows;
  rows.push_back({"none",
                  RunExperiment(train, test, table, FeatureMask::Baseline(), cfg).report});
  for (FeatureBlock b : blocks) {
    FeatureMask mask = FeatureMask::Baseline().Enable(b);
    rows.push_back({std::string(FeatureBlockName(b)),
                    RunExperiment(train, test, table, mask, cfg).report});
  }
  return rows;
}

ResolutionResult ResolveAntecedents(const Conversation &c, const PairScorer &score,
                                    double threshold) {
  std::vector<std::size_t> order(c.mentions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&c](std::size_t a, std::size_t b) {
    return Precedes(c.mentions[a], c.mentions[b]);
  });

  ResolutionResult result;
  for (std::size_t j = 1; j < order.size(); ++j) {
    const Mention &anaphor = c.mentions[order[j]];
    std::optional<std::string> best;
    double best_score = threshold;
    // Walk backwards so that, on equal scores, the most recent one stays.
    for (std::size_t i = j; i-- > 0;) {
      const Mention &candidate = c.mentions[order[i]];
      if (!Precedes(candidate, anaphor)) continue;
      double s = score(candidate, anaphor);
      if (s > best_score) {
        best_score = s;
        best = candidate.id;
      }
    }
    result[anaphor.id] = best;
  }
  return result;
}

ResolutionResult ResolveAntecedents(const Conversation &c, const MlpModel &model,
                                    const EmbeddingTable &table, double threshold,
                                    const FeatureMask &mask) {
  std::vector<MentionVector> vecs = BuildMentionVectors(c, table, mask);
  auto index_of = [&c](const Mention &m) {
    return static_cast<std::size_t>(&m - c.mentions.data());
  };
  return ResolveAntecedents(
      c,
      [&](const Mention &a, const Mention &b) {
        PairVector p = BuildPairVector(vecs[index_of(a)], vecs[index_of(b)]);
        return PredictPair(model, p.values());
      },
      threshold);
}

}  // namespace teluref
