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

#ifndef TELUREF_MLP_H_
#define TELUREF_MLP_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "teluref/dataset.h"

namespace teluref {

enum class InitScheme { kHeUniform, kXavierUniform };

std::optional<InitScheme> ParseInitScheme(std::string_view name);
std::string_view InitSchemeName(InitScheme s);

struct MlpConfig {
  std::size_t input_dim = 226;
  std::size_t hidden1 = 512;
  std::size_t hidden2 = 128;
  double dropout_prob = 0.5;
  std::size_t batch_size = 128;
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t epochs = 100;
  uint64_t seed = 0;
  InitScheme init = InitScheme::kHeUniform;
  // The reference architecture has no output bias; this adds one.
  bool output_bias = false;
  // Training stops once an epoch's mean loss falls below this.
  double early_stop_loss = 1e-4;

  // Throws DomainError for non-positive dims or dropout outside [0, 1).
  void Validate() const;
};

// One set of tensors with the network's parameter shapes. Used for the
// weights themselves, their gradients and both Adam moments.
struct MlpTensors {
  Eigen::MatrixXd w1;     // hidden1 x input_dim
  Eigen::VectorXd b1;     // hidden1
  Eigen::MatrixXd w2;     // hidden2 x hidden1
  Eigen::VectorXd b2;     // hidden2
  Eigen::VectorXd w_out;  // hidden2
  double b_out = 0.0;     // stays 0 unless config.output_bias

  static MlpTensors Zeros(const MlpConfig &cfg);
  bool AllFinite() const;
  // Visits every scalar with a stable ordering: w1, b1, w2, b2, w_out, b_out.
  void ForEach(const std::function<void(double &)> &fn);
  std::size_t ParameterCount() const;
};

struct AdamState {
  MlpTensors m;
  MlpTensors v;
  uint64_t step = 0;
};

class MlpModel {
 public:
  MlpConfig config;
  MlpTensors params;
  AdamState adam;

  // Changes whenever parameters change; lets backward detect stale caches.
  uint64_t stamp() const { return stamp_; }
  void Touch();

 private:
  uint64_t stamp_ = 0;
};

// Weights drawn from cfg.init with cfg.seed; biases and moments zero.
MlpModel InitModel(const MlpConfig &cfg);

// Dropout masks for Train mode come from a generator seeded with seed.
struct ForwardMode {
  bool train = false;
  uint64_t seed = 0;
  static ForwardMode Eval() { return {false, 0}; }
  static ForwardMode Train(uint64_t seed) { return {true, seed}; }
};

// Activations kept for backward. Masks hold 0 or 1/keep (all ones in Eval).
struct ForwardCache {
  Eigen::VectorXd x;
  Eigen::VectorXd z1, mask1, h1;
  Eigen::VectorXd z2, mask2, h2;
  double logit = 0.0;
  double probability = 0.5;
  uint64_t model_stamp = 0;
};

struct ForwardResult {
  double probability;
  ForwardCache cache;
};

// Throws NonFiniteInput, DimensionError.
ForwardResult Forward(const MlpModel &model, std::span<const double> x,
                      ForwardMode mode);

// Logistic function kept strictly inside (0, 1).
double Sigmoid(double z);

// Mean binary cross-entropy; log arguments are clamped at 1e-12.
double BceLoss(std::span<const double> predictions, const std::vector<bool> &labels);

// Gradient of the single-sample loss. Throws StaleCache if model changed
// since the forward pass.
MlpTensors Backward(const MlpModel &model, const ForwardCache &cache, bool label);

// Bias-corrected Adam update using model.config hyperparameters.
// Throws NonFiniteGradient before touching any state.
void AdamStep(MlpModel &model, const MlpTensors &grads);

struct EpochStats {
  std::size_t epoch;
  double mean_loss;
  double train_accuracy;
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  std::size_t optimizer_steps = 0;
  double wall_seconds = 0.0;
  bool early_stopped = false;

  std::string ToJson() const;
};

using EpochCallback = std::function<void(const EpochStats &)>;

// Mini-batch training with a seeded per-epoch shuffle. Train accuracy is
// measured on the Train-mode outputs of the epoch. Throws EmptyDataset.
TrainReport Train(MlpModel &model, const PairDataset &data,
                  const EpochCallback &on_epoch = {});

// Gradient of the mean loss over the columns of xs (one sample each), with
// dropout off. Mirrors the training kernel.
MlpTensors BatchGradient(const MlpModel &model, const Eigen::MatrixXd &xs,
                         const std::vector<bool> &labels);

double PredictPair(const MlpModel &model, std::span<const double> x);
std::vector<double> PredictBatch(const MlpModel &model,
                                 const std::vector<std::vector<double>> &rows);

// Versioned JSON. The checkpoint variant includes Adam state.
std::string SaveModel(const MlpModel &model);
std::string SaveCheckpoint(const MlpModel &model);
// Throws ModelFormatError on version or shape mismatch.
MlpModel LoadModel(std::string_view bytes);

}  // namespace teluref

#endif  // TELUREF_MLP_H_
