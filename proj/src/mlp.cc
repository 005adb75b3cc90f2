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

#include "teluref/mlp.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "teluref/error.h"
#include "teluref/random.h"

namespace teluref {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
// Smallest distance kept between a probability and 0 or 1.
constexpr double kProbFloor = 1e-15;

std::atomic<uint64_t> g_next_stamp{1};

void FillUniform(MatrixXd &m, double limit, Rng &rng) {
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-limit, limit);
}

double InitLimit(InitScheme scheme, std::size_t fan_in, std::size_t fan_out) {
  if (scheme == InitScheme::kHeUniform)
    return std::sqrt(6.0 / static_cast<double>(fan_in));
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

void FillMask(MatrixXd &mask, double keep, Rng &rng) {
  double scale = 1.0 / keep;
  for (Eigen::Index j = 0; j < mask.cols(); ++j)
    for (Eigen::Index i = 0; i < mask.rows(); ++i)
      mask(i, j) = rng.uniform() < keep ? scale : 0.0;
}

// Activations of one mini-batch; one column per sample.
struct BatchPass {
  MatrixXd z1, mask1, h1;
  MatrixXd z2, mask2, h2;
  VectorXd probability;
};

// rng == nullptr means Eval mode.
BatchPass ForwardBatch(const MlpModel &model, const MatrixXd &xs, Rng *rng) {
  const MlpTensors &p = model.params;
  const double keep = 1.0 - model.config.dropout_prob;
  BatchPass pass;
  pass.z1 = (p.w1 * xs).colwise() + p.b1;
  pass.mask1 = MatrixXd::Ones(pass.z1.rows(), pass.z1.cols());
  if (rng && keep < 1.0) FillMask(pass.mask1, keep, *rng);
  pass.h1 = pass.z1.cwiseMax(0.0).cwiseProduct(pass.mask1);

  pass.z2 = (p.w2 * pass.h1).colwise() + p.b2;
  pass.mask2 = MatrixXd::Ones(pass.z2.rows(), pass.z2.cols());
  if (rng && keep < 1.0) FillMask(pass.mask2, keep, *rng);
  pass.h2 = pass.z2.cwiseMax(0.0).cwiseProduct(pass.mask2);

  VectorXd logit = pass.h2.transpose() * p.w_out;
  pass.probability.resize(logit.size());
  for (Eigen::Index i = 0; i < logit.size(); ++i)
    pass.probability(i) = Sigmoid(logit(i) + p.b_out);
  return pass;
}

MlpTensors GradientBatch(const MlpModel &model, const MatrixXd &xs,
                         const BatchPass &pass, const std::vector<bool> &labels) {
  const MlpTensors &p = model.params;
  const auto n = static_cast<double>(xs.cols());
  VectorXd dlogit(xs.cols());
  for (Eigen::Index i = 0; i < xs.cols(); ++i)
    dlogit(i) = (pass.probability(i) - (labels[static_cast<std::size_t>(i)] ? 1.0 : 0.0)) / n;

  MlpTensors g;
  g.w_out = pass.h2 * dlogit;
  g.b_out = model.config.output_bias ? dlogit.sum() : 0.0;
  MatrixXd dz2 = (p.w_out * dlogit.transpose()).cwiseProduct(pass.mask2);
  dz2 = (pass.z2.array() > 0.0).select(dz2, 0.0);
  g.w2 = dz2 * pass.h1.transpose();
  g.b2 = dz2.rowwise().sum();
  MatrixXd dz1 = (p.w2.transpose() * dz2).cwiseProduct(pass.mask1);
  dz1 = (pass.z1.array() > 0.0).select(dz1, 0.0);
  g.w1 = dz1 * xs.transpose();
  g.b1 = dz1.rowwise().sum();
  return g;
}

template <typename Tensor>
void AdamUpdate(Tensor &theta, Tensor &m, Tensor &v, const Tensor &g,
                const MlpConfig &cfg, double c1, double c2) {
  m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
  v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g.cwiseProduct(g);
  theta.array() -= cfg.learning_rate * (m.array() / c1) /
                   ((v.array() / c2).sqrt() + cfg.adam_epsilon);
}

json MatrixToJson(const MatrixXd &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorToJson(const VectorXd &v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatrixXd MatrixFromJson(const json &j, std::size_t rows, std::size_t cols,
                        const std::string &name) {
  if (!j.is_array() || j.size() != rows)
    throw ModelFormatError(name + ": expected " + std::to_string(rows) + " rows");
  MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ModelFormatError(name + ": row " + std::to_string(i) + " needs " +
                             std::to_string(cols) + " values");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw ModelFormatError(name + ": non-numeric value");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

VectorXd VectorFromJson(const json &j, std::size_t size, const std::string &name) {
  if (!j.is_array() || j.size() != size)
    throw ModelFormatError(name + ": expected " + std::to_string(size) + " values");
  VectorXd v(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (!j[i].is_number()) throw ModelFormatError(name + ": non-numeric value");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json TensorsToJson(const MlpTensors &t, bool with_bias) {
  json j = {{"w1", MatrixToJson(t.w1)},       {"b1", VectorToJson(t.b1)},
            {"w2", MatrixToJson(t.w2)},       {"b2", VectorToJson(t.b2)},
            {"w_out", VectorToJson(t.w_out)}};
  if (with_bias) j["b_out"] = t.b_out;
  return j;
}

MlpTensors TensorsFromJson(const json &j, const MlpConfig &cfg, const std::string &prefix) {
  auto field = [&](const char *key) -> const json & {
    auto it = j.find(key);
    if (it == j.end()) throw ModelFormatError("missing field " + prefix + key);
    return *it;
  };
  MlpTensors t;
  t.w1 = MatrixFromJson(field("w1"), cfg.hidden1, cfg.input_dim, prefix + "w1");
  t.b1 = VectorFromJson(field("b1"), cfg.hidden1, prefix + "b1");
  t.w2 = MatrixFromJson(field("w2"), cfg.hidden2, cfg.hidden1, prefix + "w2");
  t.b2 = VectorFromJson(field("b2"), cfg.hidden2, prefix + "b2");
  t.w_out = VectorFromJson(field("w_out"), cfg.hidden2, prefix + "w_out");
  if (cfg.output_bias) {
    const json &b = field("b_out");
    if (!b.is_number()) throw ModelFormatError(prefix + "b_out: non-numeric value");
    t.b_out = b.get<double>();
  }
  return t;
}

json ConfigToJson(const MlpConfig &c) {
  return {{"input_dim", c.input_dim},
          {"hidden1", c.hidden1},
          {"hidden2", c.hidden2},
          {"dropout_prob", c.dropout_prob},
          {"batch_size", c.batch_size},
          {"learning_rate", c.learning_rate},
          {"adam_beta1", c.adam_beta1},
          {"adam_beta2", c.adam_beta2},
          {"adam_epsilon", c.adam_epsilon},
          {"epochs", c.epochs},
          {"seed", c.seed},
          {"init", std::string(InitSchemeName(c.init))},
          {"output_bias", c.output_bias},
          {"early_stop_loss", c.early_stop_loss}};
}

MlpConfig ConfigFromJson(const json &j) {
  if (!j.is_object()) throw ModelFormatError("config must be an object");
  MlpConfig c;
  try {
    c.input_dim = j.at("input_dim").get<std::size_t>();
    c.hidden1 = j.at("hidden1").get<std::size_t>();
    c.hidden2 = j.at("hidden2").get<std::size_t>();
    c.dropout_prob = j.at("dropout_prob").get<double>();
    c.batch_size = j.at("batch_size").get<std::size_t>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.adam_beta1 = j.at("adam_beta1").get<double>();
    c.adam_beta2 = j.at("adam_beta2").get<double>();
    c.adam_epsilon = j.at("adam_epsilon").get<double>();
    c.epochs = j.at("epochs").get<std::size_t>();
    c.seed = j.at("seed").get<uint64_t>();
    auto init = ParseInitScheme(j.at("init").get<std::string>());
    if (!init) throw ModelFormatError("unknown init scheme");
    c.init = *init;
    c.output_bias = j.at("output_bias").get<bool>();
    c.early_stop_loss = j.at("early_stop_loss").get<double>();
  } catch (const json::exception &e) {
    throw ModelFormatError(std::string("bad config: ") + e.what());
  }
  try {
    c.Validate();
  } catch (const DomainError &e) {
    throw ModelFormatError(e.what());
  }
  return c;
}

std::string SaveImpl(const MlpModel &model, bool with_adam) {
  const MlpConfig &c = model.config;
  json root = TensorsToJson(model.params, c.output_bias);
  root["version"] = kFormatVersion;
  root["config"] = ConfigToJson(c);
  root["dims"] = {c.input_dim, c.hidden1, c.hidden2, 1};
  if (with_adam) {
    root["adam"] = {{"step", model.adam.step},
                    {"m", TensorsToJson(model.adam.m, c.output_bias)},
                    {"v", TensorsToJson(model.adam.v, c.output_bias)}};
  }
  return root.dump() + "\n";
}

}  // namespace

std::optional<InitScheme> ParseInitScheme(std::string_view name) {
  if (name == "he_uniform") return InitScheme::kHeUniform;
  if (name == "xavier_uniform") return InitScheme::kXavierUniform;
  return std::nullopt;
}

std::string_view InitSchemeName(InitScheme s) {
  return s == InitScheme::kHeUniform ? "he_uniform" : "xavier_uniform";
}

void MlpConfig::Validate() const {
  if (input_dim == 0 || hidden1 == 0 || hidden2 == 0)
    throw DomainError("layer sizes must be positive");
  if (batch_size == 0) throw DomainError("batch size must be positive");
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0))
    throw DomainError("dropout probability must lie in [0, 1)");
  if (!(learning_rate > 0.0)) throw DomainError("learning rate must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw DomainError("Adam betas must lie in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw DomainError("Adam epsilon must be positive");
}

MlpTensors MlpTensors::Zeros(const MlpConfig &cfg) {
  MlpTensors t;
  t.w1 = MatrixXd::Zero(cfg.hidden1, cfg.input_dim);
  t.b1 = VectorXd::Zero(cfg.hidden1);
  t.w2 = MatrixXd::Zero(cfg.hidden2, cfg.hidden1);
  t.b2 = VectorXd::Zero(cfg.hidden2);
  t.w_out = VectorXd::Zero(cfg.hidden2);
  t.b_out = 0.0;
  return t;
}

bool MlpTensors::AllFinite() const {
  return w1.allFinite() && b1.allFinite() && w2.allFinite() && b2.allFinite() &&
         w_out.allFinite() && std::isfinite(b_out);
}

void MlpTensors::ForEach(const std::function<void(double &)> &fn) {
  for (Eigen::Index i = 0; i < w1.size(); ++i) fn(w1.data()[i]);
  for (Eigen::Index i = 0; i < b1.size(); ++i) fn(b1.data()[i]);
  for (Eigen::Index i = 0; i < w2.size(); ++i) fn(w2.data()[i]);
  for (Eigen::Index i = 0; i < b2.size(); ++i) fn(b2.data()[i]);
  for (Eigen::Index i = 0; i < w_out.size(); ++i) fn(w_out.data()[i]);
  fn(b_out);
}

std::size_t MlpTensors::ParameterCount() const {
  return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size() +
                                  w_out.size()) + 1;
}

void MlpModel::Touch() { stamp_ = g_next_stamp.fetch_add(1); }

MlpModel InitModel(const MlpConfig &cfg) {
  cfg.Validate();
  MlpModel model;
  model.config = cfg;
  model.params = MlpTensors::Zeros(cfg);
  Rng rng(cfg.seed);
  FillUniform(model.params.w1, InitLimit(cfg.init, cfg.input_dim, cfg.hidden1), rng);
  FillUniform(model.params.w2, InitLimit(cfg.init, cfg.hidden1, cfg.hidden2), rng);
  MatrixXd w_out(cfg.hidden2, 1);
  FillUniform(w_out, InitLimit(cfg.init, cfg.hidden2, 1), rng);
  model.params.w_out = w_out.col(0);
  model.adam = {MlpTensors::Zeros(cfg), MlpTensors::Zeros(cfg), 0};
  model.Touch();
  return model;
}

double Sigmoid(double z) {
  double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  return std::clamp(p, kProbFloor, 1.0 - kProbFloor);
}

ForwardResult Forward(const MlpModel &model, std::span<const double> x, ForwardMode mode) {
  if (x.size() != model.config.input_dim)
    throw DimensionError("input has " + std::to_string(x.size()) + " dims, model expects " +
                         std::to_string(model.config.input_dim));
  if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
    throw NonFiniteInput();

  MatrixXd xs = Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  Rng rng(mode.seed);
  BatchPass pass = ForwardBatch(model, xs, mode.train ? &rng : nullptr);

  ForwardCache cache;
  cache.x = xs.col(0);
  cache.z1 = pass.z1.col(0);
  cache.mask1 = pass.mask1.col(0);
  cache.h1 = pass.h1.col(0);
  cache.z2 = pass.z2.col(0);
  cache.mask2 = pass.mask2.col(0);
  cache.h2 = pass.h2.col(0);
  cache.logit = cache.h2.dot(model.params.w_out) + model.params.b_out;
  cache.probability = pass.probability(0);
  cache.model_stamp = model.stamp();
  return {cache.probability, std::move(cache)};
}

double BceLoss(std::span<const double> predictions, const std::vector<bool> &labels) {
  if (predictions.size() != labels.size())
    throw LengthMismatch(predictions.size(), labels.size());
  if (predictions.empty()) return 0.0;
  constexpr double kFloor = 1e-12;
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    double p = predictions[i];
    total -= labels[i] ? std::log(std::max(p, kFloor))
                       : std::log(std::max(1.0 - p, kFloor));
  }
  return total / static_cast<double>(predictions.size());
}

MlpTensors Backward(const MlpModel &model, const ForwardCache &cache, bool label) {
  if (cache.model_stamp != model.stamp()) throw StaleCache();
  BatchPass pass;
  pass.z1 = cache.z1;
  pass.mask1 = cache.mask1;
  pass.h1 = cache.h1;
  pass.z2 = cache.z2;
  pass.mask2 = cache.mask2;
  pass.h2 = cache.h2;
  pass.probability = VectorXd::Constant(1, cache.probability);
  MatrixXd xs = cache.x;
  return GradientBatch(model, xs, pass, {label});
}

MlpTensors BatchGradient(const MlpModel &model, const MatrixXd &xs,
                         const std::vector<bool> &labels) {
  if (static_cast<std::size_t>(xs.cols()) != labels.size())
    throw LengthMismatch(static_cast<std::size_t>(xs.cols()), labels.size());
  BatchPass pass = ForwardBatch(model, xs, nullptr);
  return GradientBatch(model, xs, pass, labels);
}

void AdamStep(MlpModel &model, const MlpTensors &g) {
  if (!g.AllFinite()) throw NonFiniteGradient();
  const MlpConfig &cfg = model.config;
  AdamState &s = model.adam;
  ++s.step;
  const double t = static_cast<double>(s.step);
  const double c1 = 1.0 - std::pow(cfg.adam_beta1, t);
  const double c2 = 1.0 - std::pow(cfg.adam_beta2, t);
  MlpTensors &p = model.params;
  AdamUpdate(p.w1, s.m.w1, s.v.w1, g.w1, cfg, c1, c2);
  AdamUpdate(p.b1, s.m.b1, s.v.b1, g.b1, cfg, c1, c2);
  AdamUpdate(p.w2, s.m.w2, s.v.w2, g.w2, cfg, c1, c2);
  AdamUpdate(p.b2, s.m.b2, s.v.b2, g.b2, cfg, c1, c2);
  AdamUpdate(p.w_out, s.m.w_out, s.v.w_out, g.w_out, cfg, c1, c2);
  if (cfg.output_bias) {
    s.m.b_out = cfg.adam_beta1 * s.m.b_out + (1.0 - cfg.adam_beta1) * g.b_out;
    s.v.b_out = cfg.adam_beta2 * s.v.b_out + (1.0 - cfg.adam_beta2) * g.b_out * g.b_out;
    p.b_out -= cfg.learning_rate * (s.m.b_out / c1) / (std::sqrt(s.v.b_out / c2) + cfg.adam_epsilon);
  }
  model.Touch();
}

std::string TrainReport::ToJson() const {
  json epochs_json = json::array();
  for (const EpochStats &e : epochs)
    epochs_json.push_back({{"epoch", e.epoch},
                           {"mean_loss", e.mean_loss},
                           {"train_accuracy", e.train_accuracy}});
  json j = {{"epochs", epochs_json},
            {"epochs_run", epochs.size()},
            {"optimizer_steps", optimizer_steps},
            {"early_stopped", early_stopped},
            {"wall_seconds", wall_seconds}};
  return j.dump(2) + "\n";
}

TrainReport Train(MlpModel &model, const PairDataset &data, const EpochCallback &on_epoch) {
  if (data.empty()) throw EmptyDataset();
  const MlpConfig &cfg = model.config;
  cfg.Validate();
  if (data.dim() != cfg.input_dim)
    throw DimensionError("dataset has " + std::to_string(data.dim()) +
                         " dims, model expects " + std::to_string(cfg.input_dim));
  auto start = std::chrono::steady_clock::now();

  const std::size_t n = data.size();
  MatrixXd all(cfg.input_dim, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> &row = data.vectors[i];
    if (row.size() != cfg.input_dim) throw DimensionError("ragged dataset row");
    all.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const VectorXd>(row.data(), static_cast<Eigen::Index>(row.size()));
  }
  if (!all.allFinite()) throw NonFiniteInput();

  // Shuffles and dropout masks share one stream, separate from init.
  Rng rng(MixSeed(cfg.seed));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainReport report;
  MatrixXd batch;
  std::vector<bool> labels;
  std::vector<double> probs;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start_row = 0; start_row < n; start_row += cfg.batch_size) {
      std::size_t end_row = std::min(n, start_row + cfg.batch_size);
      auto b = static_cast<Eigen::Index>(end_row - start_row);
      batch.resize(static_cast<Eigen::Index>(cfg.input_dim), b);
      labels.assign(static_cast<std::size_t>(b), false);
      for (Eigen::Index k = 0; k < b; ++k) {
        std::size_t row = order[start_row + static_cast<std::size_t>(k)];
        batch.col(k) = all.col(static_cast<Eigen::Index>(row));
        labels[static_cast<std::size_t>(k)] = data.labels[row];
      }
      BatchPass pass = ForwardBatch(model, batch, &rng);
      probs.assign(pass.probability.data(), pass.probability.data() + b);
      loss_sum += BceLoss(probs, labels) * static_cast<double>(b);
      for (Eigen::Index k = 0; k < b; ++k)
        if ((probs[static_cast<std::size_t>(k)] > 0.5) == labels[static_cast<std::size_t>(k)])
          ++correct;
      AdamStep(model, GradientBatch(model, batch, pass, labels));
      ++report.optimizer_steps;
    }
    EpochStats stats{epoch, loss_sum / static_cast<double>(n),
                     static_cast<double>(correct) / static_cast<double>(n)};
    report.epochs.push_back(stats);
    if (on_epoch) on_epoch(stats);
    if (stats.mean_loss < cfg.early_stop_loss) {
      report.early_stopped = true;
      break;
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double PredictPair(const MlpModel &model, std::span<const double> x) {
  return Forward(model, x, ForwardMode::Eval()).probability;
}

std::vector<double> PredictBatch(const MlpModel &model,
                                 const std::vector<std::vector<double>> &rows) {
  if (rows.empty()) return {};
  const std::size_t dim = model.config.input_dim;
  MatrixXd xs(dim, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim)
      throw DimensionError("row has " + std::to_string(rows[i].size()) +
                           " dims, model expects " + std::to_string(dim));
    xs.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const VectorXd>(rows[i].data(), static_cast<Eigen::Index>(dim));
  }
  if (!xs.allFinite()) throw NonFiniteInput();
  BatchPass pass = ForwardBatch(model, xs, nullptr);
  return {pass.probability.data(), pass.probability.data() + pass.probability.size()};
}

std::string SaveModel(const MlpModel &model) { return SaveImpl(model, false); }

std::string SaveCheckpoint(const MlpModel &model) { return SaveImpl(model, true); }

MlpModel LoadModel(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error &e) {
    throw ModelFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ModelFormatError("model must be a JSON object");
  if (!root.contains("version") || root["version"] != kFormatVersion)
    throw ModelFormatError("unsupported model version");
  if (!root.contains("config")) throw ModelFormatError("missing config");
  MlpModel model;
  model.config = ConfigFromJson(root["config"]);
  const MlpConfig &c = model.config;
  json expected_dims = {c.input_dim, c.hidden1, c.hidden2, 1};
  if (!root.contains("dims") || root["dims"] != expected_dims)
    throw ModelFormatError("dims do not match config");
  model.params = TensorsFromJson(root, c, "");
  model.adam = {MlpTensors::Zeros(c), MlpTensors::Zeros(c), 0};
  if (root.contains("adam")) {
    const json &adam = root["adam"];
    if (!adam.is_object() || !adam.contains("step") || !adam.contains("m") ||
        !adam.contains("v") || !adam["step"].is_number_unsigned())
      throw ModelFormatError("malformed adam state");
    model.adam.step = adam["step"].get<uint64_t>();
    model.adam.m = TensorsFromJson(adam["m"], c, "adam.m.");
    model.adam.v = TensorsFromJson(adam["v"], c, "adam.v.");
  }
  if (!model.params.AllFinite()) throw ModelFormatError("non-finite parameter");
  model.Touch();
  return model;
}

}  // namespace teluref
