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

#ifndef TELUREF_SERVICE_H_
#define TELUREF_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "teluref/corpus.h"
#include "teluref/embeddings.h"
#include "teluref/mlp.h"

namespace teluref {

// Append-only JSON-lines log of annotation records. Each append is flushed
// before it returns; concurrent appends are serialized.
class AnnotationLog {
 public:
  // Replays an existing file; a missing file starts an empty log.
  explicit AnnotationLog(std::filesystem::path path);

  void Append(const AnnotationRecord &record);
  std::vector<AnnotationRecord> Records(const std::string &conversation) const;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::vector<AnnotationRecord> records_;
};

struct ServiceState {
  std::map<std::string, Conversation> conversations;
  std::unique_ptr<AnnotationLog> log;
  std::optional<MlpModel> model;
  std::optional<EmbeddingTable> embeddings;
  std::optional<std::filesystem::path> static_dir;
};

// Splits a conversation's records into the first two annotators (in log
// order) and everyone else, then adjudicates. Returns the JSON body of the
// adjudication endpoint.
std::string AdjudicationJson(const Conversation &c,
                             const std::vector<AnnotationRecord> &records);

// HTTP front end. Routes:
//   GET  /api/conversations
//   GET  /api/conversations/{id}
//   GET  /api/conversations/{id}/pairs[?annotator=]
//   POST /api/conversations/{id}/pairs
//   GET  /api/conversations/{id}/adjudication
//   GET  /api/conversations/{id}/gold
//   GET  /api/conversations/{id}/suggestions
// plus static files from state.static_dir under "/".
class Service {
 public:
  explicit Service(ServiceState &state);
  ~Service();
  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Binds host:port (port 0 picks a free one). Returns the bound port or -1.
  int Bind(const std::string &host, int port);
  // Blocks until Stop().
  void Serve();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace teluref

#endif  // TELUREF_SERVICE_H_
