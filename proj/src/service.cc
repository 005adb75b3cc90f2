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

#include "teluref/service.h"

#include <fstream>

#include "httplib.h"
#include "json.hpp"
#include "teluref/error.h"
#include "teluref/featurizer.h"

namespace teluref {

using nlohmann::json;

AnnotationLog::AnnotationLog(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (std::filesystem::exists(path_, ec)) records_ = LoadAnnotations(ReadFile(path_));
}

void AnnotationLog::Append(const AnnotationRecord &record) {
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot open annotation log " + path_.string());
  out << AnnotationToJson(record) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for annotation log " + path_.string());
  records_.push_back(record);
}

std::vector<AnnotationRecord> AnnotationLog::Records(const std::string &conversation) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<AnnotationRecord> out;
  for (const AnnotationRecord &r : records_)
    if (r.conversation == conversation) out.push_back(r);
  return out;
}

namespace {

json PairJson(const PairKey &key) {
  return {{"antecedent", key.first}, {"anaphor", key.second}};
}

json RecordJson(const AnnotationRecord &r) { return json::parse(AnnotationToJson(r)); }

}  // namespace

std::string AdjudicationJson(const Conversation &c,
                             const std::vector<AnnotationRecord> &records) {
  std::vector<std::string> annotators;
  for (const AnnotationRecord &r : records)
    if (std::find(annotators.begin(), annotators.end(), r.annotator) == annotators.end())
      annotators.push_back(r.annotator);

  json body;
  body["conversation"] = c.id;
  body["annotators"] = annotators;
  body["conflicts"] = json::array();
  body["resolved"] = json::array();
  body["gold"] = json::array();
  if (annotators.size() < 2) {
    body["needs_third_review"] = false;
    body["complete"] = false;
    return body.dump(2);
  }

  std::vector<AnnotationRecord> first, second, third;
  for (const AnnotationRecord &r : records) {
    if (r.annotator == annotators[0]) first.push_back(r);
    else if (r.annotator == annotators[1]) second.push_back(r);
    else third.push_back(r);
  }
  Adjudication adj = Adjudicate(first, second, &third);
  auto conflict_json = [&](const Conflict &k) {
    json j = PairJson(k.pair);
    j["labels"] = {{annotators[0], k.first_label}, {annotators[1], k.second_label}};
    return j;
  };
  for (const Conflict &k : adj.conflicts) body["conflicts"].push_back(conflict_json(k));
  for (const Conflict &k : adj.resolved) body["resolved"].push_back(conflict_json(k));
  for (const auto &[key, label] : adj.gold) {
    json j = PairJson(key);
    j["label"] = label;
    body["gold"].push_back(j);
  }
  body["needs_third_review"] = !adj.conflicts.empty();
  body["complete"] = adj.conflicts.empty();
  return body.dump(2);
}

struct Service::Impl {
  explicit Impl(ServiceState &s) : state(s) {}

  ServiceState &state;
  httplib::Server server;

  static void Reply(httplib::Response &res, int status, const json &body) {
    res.status = status;
    res.set_content(body.dump(2), "application/json");
  }

  static void Fail(httplib::Response &res, int status, const std::string &message) {
    Reply(res, status, json{{"error", message}});
  }

  const Conversation *Find(const httplib::Request &req, httplib::Response &res) {
    auto it = state.conversations.find(req.matches[1].str());
    if (it == state.conversations.end()) {
      Fail(res, 404, "unknown conversation '" + req.matches[1].str() + "'");
      return nullptr;
    }
    return &it->second;
  }

  void Routes() {
    server.Get("/api/conversations", [this](const httplib::Request &, httplib::Response &res) {
      json list = json::array();
      for (const auto &[id, c] : state.conversations)
        list.push_back({{"id", id}, {"mention_count", c.mentions.size()}});
      Reply(res, 200, list);
    });

    server.Get(R"(/api/conversations/([^/]+))",
               [this](const httplib::Request &req, httplib::Response &res) {
                 const Conversation *c = Find(req, res);
                 if (!c) return;
                 res.status = 200;
                 res.set_content(SaveConversation(*c), "application/json");
               });

    server.Get(R"(/api/conversations/([^/]+)/pairs)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 const Conversation *c = Find(req, res);
                 if (!c) return;
                 std::string annotator = req.get_param_value("annotator");
                 json list = json::array();
                 for (const AnnotationRecord &r : state.log->Records(c->id))
                   if (annotator.empty() || r.annotator == annotator)
                     list.push_back(RecordJson(r));
                 Reply(res, 200, list);
               });

    server.Post(R"(/api/conversations/([^/]+)/pairs)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  const Conversation *c = Find(req, res);
                  if (!c) return;
                  AnnotationRecord record;
                  try {
                    json body = json::parse(req.body);
                    if (!body.is_object()) throw SchemaError("/", "expected an object");
                    body["conversation"] = c->id;
                    record = AnnotationFromJson(body.dump());
                    ValidateAnnotation(*c, record);
                  } catch (const json::exception &e) {
                    Fail(res, 400, std::string("malformed body: ") + e.what());
                    return;
                  } catch (const ValidationError &e) {
                    Fail(res, 400, e.what());
                    return;
                  }
                  try {
                    state.log->Append(record);
                  } catch (const IoError &e) {
                    Fail(res, 500, e.what());
                    return;
                  }
                  Reply(res, 201, RecordJson(record));
                });

    server.Get(R"(/api/conversations/([^/]+)/adjudication)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 const Conversation *c = Find(req, res);
                 if (!c) return;
                 res.status = 200;
                 res.set_content(AdjudicationJson(*c, state.log->Records(c->id)),
                                 "application/json");
               });

    server.Get(R"(/api/conversations/([^/]+)/gold)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 const Conversation *c = Find(req, res);
                 if (!c) return;
                 json adj = json::parse(AdjudicationJson(*c, state.log->Records(c->id)));
                 if (!adj["complete"].get<bool>()) {
                   Fail(res, 409, "adjudication incomplete");
                   return;
                 }
                 std::map<PairKey, bool> gold;
                 for (const json &g : adj["gold"])
                   gold[{g["antecedent"].get<std::string>(), g["anaphor"].get<std::string>()}] =
                       g["label"].get<bool>();
                 res.status = 200;
                 res.set_content(SaveConversation(ApplyGoldLabels(*c, gold)), "application/json");
               });

    server.Get(R"(/api/conversations/([^/]+)/suggestions)",
               [this](const httplib::Request &req, httplib::Response &res) {
                 const Conversation *c = Find(req, res);
                 if (!c) return;
                 if (!state.model || !state.embeddings) {
                   Fail(res, 503, "no model loaded");
                   return;
                 }
                 std::vector<MentionVector> vecs =
                     BuildMentionVectors(*c, *state.embeddings, FeatureMask::All());
                 auto index_of = [c](const std::string &id) {
                   return static_cast<std::size_t>(c->FindMention(id) - c->mentions.data());
                 };
                 json list = json::array();
                 for (const LabeledPair &p : GeneratePairs(*c)) {
                   PairVector pv = BuildPairVector(vecs[index_of(p.antecedent)],
                                                   vecs[index_of(p.anaphor)]);
                   list.push_back({{"antecedent", p.antecedent},
                                   {"anaphor", p.anaphor},
                                   {"probability", PredictPair(*state.model, pv.values())}});
                 }
                 Reply(res, 200, list);
               });

    server.set_exception_handler(
        [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception &e) {
            Fail(res, 500, e.what());
          } catch (...) {
            Fail(res, 500, "internal error");
          }
        });

    if (state.static_dir) server.set_mount_point("/", state.static_dir->string());
  }
};

Service::Service(ServiceState &state) : impl_(std::make_unique<Impl>(state)) {
  impl_->Routes();
}

Service::~Service() { Stop(); }

int Service::Bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void Service::Serve() { impl_->server.listen_after_bind(); }

void Service::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace teluref
