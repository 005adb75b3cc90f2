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

#include "teluref/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "teluref/error.h"
#include "teluref/random.h"

namespace teluref {
namespace {

std::vector<std::string_view> Fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool ParseNumber(std::string_view s, T &out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<OovPolicy> ParseOovPolicy(std::string_view name) {
  if (name == "zeros") return OovPolicy::kZeros;
  if (name == "hashed") return OovPolicy::kHashedDeterministic;
  return std::nullopt;
}

EmbeddingTable::EmbeddingTable(std::size_t dim, OovPolicy policy)
    : dim_(dim), policy_(policy) {}

bool EmbeddingTable::contains(std::string_view word) const {
  return index_.count(std::string(word)) > 0;
}

void EmbeddingTable::Add(std::string word, std::span<const double> vec) {
  if (vec.size() != dim_) throw DimMismatch(dim_, vec.size());
  auto it = index_.find(word);
  if (it != index_.end()) {
    std::copy(vec.begin(), vec.end(), data_.begin() + it->second * dim_);
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vec.begin(), vec.end());
}

std::vector<double> EmbeddingTable::Lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it != index_.end()) {
    auto row = data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_);
    return std::vector<double>(row, row + static_cast<std::ptrdiff_t>(dim_));
  }
  if (policy_ == OovPolicy::kZeros) return std::vector<double>(dim_, 0.0);
  return HashedVector(word, dim_);
}

std::string EmbeddingTable::ToText() const {
  std::string out = std::to_string(words_.size()) + " " + std::to_string(dim_) + "\n";
  char buf[32];
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out += words_[w];
    for (std::size_t d = 0; d < dim_; ++d) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data_[w * dim_ + d]);
      out += ' ';
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

EmbeddingTable LoadEmbeddings(std::string_view bytes, std::size_t expected_dim,
                              OovPolicy policy) {
  std::size_t nl = bytes.find('\n');
  std::string_view header = bytes.substr(0, nl);
  std::vector<std::string_view> head = Fields(header);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (head.size() != 2 || !ParseNumber(head[0], count) ||
      !ParseNumber(head[1], dim) || dim == 0)
    throw BadHeader("expected '<vocab_count> <dim>' header");
  if (dim != expected_dim) throw DimMismatch(expected_dim, dim);

  EmbeddingTable table(dim, policy);
  std::vector<double> vec(dim);
  std::size_t line_no = 1;
  std::size_t start = nl == std::string_view::npos ? bytes.size() : nl + 1;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::vector<std::string_view> f = Fields(line);
    if (f.empty()) continue;
    if (table.size() == count) throw BadVectorLine(line_no, "more words than header count");
    if (f.size() != dim + 1)
      throw BadVectorLine(line_no, "expected " + std::to_string(dim) +
                                       " values, found " + std::to_string(f.size() - 1));
    for (std::size_t d = 0; d < dim; ++d) {
      if (!ParseNumber(f[d + 1], vec[d]) || !std::isfinite(vec[d]))
        throw BadVectorLine(line_no, "bad number '" + std::string(f[d + 1]) + "'");
    }
    std::string word(f[0]);
    if (table.contains(word)) throw BadVectorLine(line_no, "duplicate word '" + word + "'");
    table.Add(std::move(word), vec);
  }
  if (table.size() != count)
    throw BadVectorLine(line_no + 1, "header promises " + std::to_string(count) +
                                         " words, found " + std::to_string(table.size()));
  return table;
}

std::vector<double> HashedVector(std::string_view word, std::size_t dim) {
  Rng rng(MixSeed(StableHash(word)));
  std::vector<double> v(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double &x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (double &x : v) x *= inv;
  return v;
}

std::vector<double> ComposeSpan(const EmbeddingTable &table,
                                const std::vector<std::string> &words) {
  if (words.empty()) throw EmptySpan();
  // Summing in sorted order makes the mean exactly order-independent.
  std::vector<std::string> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> sum(table.dim(), 0.0);
  for (const std::string &w : sorted) {
    std::vector<double> v = table.Lookup(w);
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += v[d];
  }
  double n = static_cast<double>(words.size());
  for (double &x : sum) x /= n;
  return sum;
}

}  // namespace teluref
