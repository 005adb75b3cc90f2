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

// Independent reference computations used by the unit and acceptance tests.
// Nothing in here calls the library code it is used to check.

#ifndef TELUREF_TESTS_ORACLES_H_
#define TELUREF_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "teluref/mlp.h"

namespace teluref::oracle {

// Counts (true, false) pairs for n mentions whose first k form one chain by
// looking at every pair.
inline std::pair<uint64_t, uint64_t> EnumeratePairs(uint64_t n, uint64_t k) {
  uint64_t t = 0, f = 0;
  for (uint64_t i = 0; i < n; ++i)
    for (uint64_t j = i + 1; j < n; ++j) (i < k && j < k ? t : f) += 1;
  return {t, f};
}

// Plain loops over std::vector: the network's loss at x for label y, with
// dropout off. Written without Eigen so it shares no code with the model.
inline double ReferenceLoss(const MlpTensors &p, const std::vector<double> &x, bool y) {
  const std::size_t h1n = static_cast<std::size_t>(p.b1.size());
  const std::size_t h2n = static_cast<std::size_t>(p.b2.size());
  std::vector<double> h1(h1n), h2(h2n);
  for (std::size_t i = 0; i < h1n; ++i) {
    double s = p.b1(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < x.size(); ++j)
      s += p.w1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
    h1[i] = s > 0 ? s : 0;
  }
  for (std::size_t i = 0; i < h2n; ++i) {
    double s = p.b2(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < h1n; ++j)
      s += p.w2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * h1[j];
    h2[i] = s > 0 ? s : 0;
  }
  double z = p.b_out;
  for (std::size_t i = 0; i < h2n; ++i) z += p.w_out(static_cast<Eigen::Index>(i)) * h2[i];
  // log(sigmoid(z)) and log(1 - sigmoid(z)) in overflow-free form.
  double log_o = -std::log1p(std::exp(-std::abs(z))) + std::min(z, 0.0);
  double log_1mo = log_o - z;
  return y ? -log_o : -log_1mo;
}

// Scalar number `flat` in the order w1, b1, w2, b2, w_out, b_out, each
// tensor in storage order.
inline double &ParamAt(MlpTensors &p, std::size_t flat) {
  const std::pair<double *, Eigen::Index> tensors[] = {
      {p.w1.data(), p.w1.size()}, {p.b1.data(), p.b1.size()}, {p.w2.data(), p.w2.size()},
      {p.b2.data(), p.b2.size()}, {p.w_out.data(), p.w_out.size()}};
  for (const auto &[data, size] : tensors) {
    if (flat < static_cast<std::size_t>(size)) return data[flat];
    flat -= static_cast<std::size_t>(size);
  }
  return p.b_out;
}

// Central difference of ReferenceLoss with respect to scalar `flat`.
inline double CentralDifference(MlpTensors p, std::size_t flat, const std::vector<double> &x,
                                bool y, double h = 1e-5) {
  double &theta = ParamAt(p, flat);
  const double saved = theta;
  theta = saved + h;
  const double up = ReferenceLoss(p, x, y);
  theta = saved - h;
  const double down = ReferenceLoss(p, x, y);
  return (up - down) / (2 * h);
}

// Relative error with a floor on the denominator so that two gradients that
// are both essentially zero count as agreeing.
inline double RelativeError(double analytic, double numeric, double floor = 1e-7) {
  double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

// Harmonic mean written out by hand.
inline double HarmonicMean(double p, double r) { return p + r == 0 ? 0 : 2 * p * r / (p + r); }

// A confusion table with its metrics worked out by hand as fractions.
// A "false" defined flag means the ratio has a zero denominator.
struct ConfusionCase {
  std::size_t tp, fp, tn, fn;
  double precision, recall, f1;
  bool precision_defined, recall_defined, f1_defined;
};

inline const std::vector<ConfusionCase> &ConfusionCases() {
  static const std::vector<ConfusionCase> cases = {
      {3, 1, 4, 2, 3.0 / 4, 3.0 / 5, 2.0 / 3, true, true, true},
      {5, 0, 5, 0, 1.0, 1.0, 1.0, true, true, true},
      {0, 0, 3, 4, 0.0, 0.0, 0.0, false, true, false},
      {0, 0, 6, 0, 0.0, 0.0, 0.0, false, false, false},
      {0, 5, 0, 0, 0.0, 0.0, 0.0, true, false, false},
      {0, 2, 2, 2, 0.0, 0.0, 0.0, true, true, false},
      {1, 0, 0, 9, 1.0, 1.0 / 10, 2.0 / 11, true, true, true},
      {9, 1, 0, 0, 9.0 / 10, 1.0, 18.0 / 19, true, true, true},
      {50, 50, 100, 0, 1.0 / 2, 1.0, 2.0 / 3, true, true, true},
      {7, 3, 11, 7, 7.0 / 10, 1.0 / 2, 7.0 / 12, true, true, true},
  };
  return cases;
}

// Probabilities and labels realizing a confusion table at threshold 0.5.
inline void ExpandConfusion(const ConfusionCase &c, std::vector<double> &probabilities,
                            std::vector<bool> &labels) {
  probabilities.clear();
  labels.clear();
  auto add = [&](std::size_t n, double p, bool y) {
    for (std::size_t i = 0; i < n; ++i) {
      probabilities.push_back(p);
      labels.push_back(y);
    }
  };
  add(c.tp, 0.9, true);
  add(c.fp, 0.8, false);
  add(c.tn, 0.2, false);
  add(c.fn, 0.5, true);  // exactly at the threshold counts as negative
}

}  // namespace teluref::oracle

#endif  // TELUREF_TESTS_ORACLES_H_
