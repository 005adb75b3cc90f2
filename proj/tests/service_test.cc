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

#include <filesystem>
#include <string>
#include <thread>

// Eigen must be seen before httplib, whose resolver headers define _res.
#include "teluref/service.h"

#include "doctest.h"
#include "fixtures.h"
#include "httplib.h"
#include "json.hpp"

using namespace teluref;
using nlohmann::json;

namespace {

// Owns a running service on an ephemeral port for the life of a test.
class Running {
 public:
  explicit Running(ServiceState &state) : service_(state) {
    port_ = service_.Bind("127.0.0.1", 0);
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { service_.Serve(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 200 && !client_->Get("/api/conversations"); ++i)
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ~Running() {
    service_.Stop();
    thread_.join();
  }
  httplib::Client &client() { return *client_; }

 private:
  Service service_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

std::filesystem::path FreshLog(const std::string &name) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(path);
  return path;
}

ServiceState MakeState(const std::filesystem::path &log) {
  ServiceState state;
  state.conversations.emplace("c1", fixture::Linear("c1", 4, 2));
  state.conversations.emplace("c2", fixture::Linear("c2", 2));
  state.log = std::make_unique<AnnotationLog>(log);
  return state;
}

json Pair(const std::string &ante, const std::string &ana, bool label, const std::string &who) {
  return {{"antecedent", ante}, {"anaphor", ana}, {"label", label}, {"annotator", who}};
}

int Post(httplib::Client &client, const std::string &conv, const json &body) {
  auto res = client.Post("/api/conversations/" + conv + "/pairs", body.dump(), "application/json");
  return res ? res->status : -1;
}

}  // namespace

TEST_CASE("listing and fetching conversations") {
  auto log = FreshLog("teluref_service_list.jsonl");
  ServiceState state = MakeState(log);
  Running server(state);
  auto res = server.client().Get("/api/conversations");
  REQUIRE(res);
  CHECK(res->status == 200);
  json list = json::parse(res->body);
  REQUIRE(list.size() == 2);
  CHECK(list[0]["id"] == "c1");
  CHECK(list[0]["mention_count"] == 4);

  res = server.client().Get("/api/conversations/c1");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(LoadConversation(res->body).mentions.size() == 4);

  res = server.client().Get("/api/conversations/nope");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body).contains("error"));
}

TEST_CASE("posting pairs appends to the log") {
  auto log = FreshLog("teluref_service_post.jsonl");
  ServiceState state = MakeState(log);
  Running server(state);
  auto &client = server.client();

  CHECK(Post(client, "c1", Pair("m1", "m3", true, "r1")) == 201);
  auto records = LoadAnnotations(ReadFile(log));
  REQUIRE(records.size() == 1);
  CHECK(records[0].conversation == "c1");
  CHECK(records[0].anaphor == "m3");
  CHECK(records[0].label);
  CHECK(records[0].annotator == "r1");

  CHECK(Post(client, "c1", Pair("m3", "m1", true, "r1")) == 400);  // inverted order
  CHECK(Post(client, "c1", Pair("m1", "m9", true, "r1")) == 400);  // unknown mention
  CHECK(Post(client, "c1", json{{"antecedent", "m1"}}) == 400);
  CHECK(Post(client, "zz", Pair("m1", "m2", true, "r1")) == 404);
  auto res = client.Post("/api/conversations/c1/pairs", "{oops", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(LoadAnnotations(ReadFile(log)).size() == 1);

  CHECK(Post(client, "c1", Pair("m2", "m4", false, "r2")) == 201);
  res = client.Get("/api/conversations/c1/pairs?annotator=r2");
  REQUIRE(res);
  json mine = json::parse(res->body);
  REQUIRE(mine.size() == 1);
  CHECK(mine[0]["annotator"] == "r2");
  res = client.Get("/api/conversations/c1/pairs");
  CHECK(json::parse(res->body).size() == 2);
}

TEST_CASE("adjudication flags conflicts until a third reviewer settles them") {
  auto log = FreshLog("teluref_service_adjudicate.jsonl");
  ServiceState state = MakeState(log);
  Running server(state);
  auto &client = server.client();

  auto adjudication = [&client] {
    auto res = client.Get("/api/conversations/c1/adjudication");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    return json::parse(res->body);
  };

  json empty = adjudication();
  CHECK(empty["complete"] == false);
  CHECK(empty["needs_third_review"] == false);

  REQUIRE(Post(client, "c1", Pair("m1", "m3", true, "r1")) == 201);
  REQUIRE(Post(client, "c1", Pair("m1", "m2", true, "r1")) == 201);
  REQUIRE(Post(client, "c1", Pair("m1", "m3", false, "r2")) == 201);
  REQUIRE(Post(client, "c1", Pair("m1", "m2", true, "r2")) == 201);

  json open = adjudication();
  CHECK(open["needs_third_review"] == true);
  CHECK(open["complete"] == false);
  REQUIRE(open["conflicts"].size() == 1);
  CHECK(open["conflicts"][0]["antecedent"] == "m1");
  CHECK(open["conflicts"][0]["anaphor"] == "m3");
  CHECK(open["conflicts"][0]["labels"]["r1"] == true);
  CHECK(open["conflicts"][0]["labels"]["r2"] == false);
  auto gold = client.Get("/api/conversations/c1/gold");
  REQUIRE(gold);
  CHECK(gold->status == 409);

  REQUIRE(Post(client, "c1", Pair("m1", "m3", true, "r3")) == 201);
  json closed = adjudication();
  CHECK(closed["needs_third_review"] == false);
  CHECK(closed["complete"] == true);
  CHECK(closed["conflicts"].empty());
  CHECK(closed["resolved"].size() == 1);

  gold = client.Get("/api/conversations/c1/gold");
  REQUIRE(gold);
  CHECK(gold->status == 200);
  Conversation g = LoadConversation(gold->body);
  REQUIRE(g.chains.size() == 1);
  CHECK(g.chains[0].size() == 3);
}

TEST_CASE("restarting replays the log to the same adjudication") {
  auto log = FreshLog("teluref_service_replay.jsonl");
  std::string before;
  {
    ServiceState state = MakeState(log);
    Running server(state);
    REQUIRE(Post(server.client(), "c1", Pair("m1", "m2", true, "a")) == 201);
    REQUIRE(Post(server.client(), "c1", Pair("m2", "m4", true, "b")) == 201);
    before = server.client().Get("/api/conversations/c1/adjudication")->body;
  }
  ServiceState state = MakeState(log);
  Running server(state);
  CHECK(server.client().Get("/api/conversations/c1/adjudication")->body == before);
  CHECK(json::parse(before)["conflicts"].size() == 2);
}

TEST_CASE("suggestions need a model") {
  auto log = FreshLog("teluref_service_suggest.jsonl");
  ServiceState state = MakeState(log);
  {
    Running server(state);
    auto res = server.client().Get("/api/conversations/c1/suggestions");
    REQUIRE(res);
    CHECK(res->status == 503);
  }
  state.model = InitModel(MlpConfig{});
  state.embeddings = EmbeddingTable(100, OovPolicy::kHashedDeterministic);
  Running server(state);
  auto res = server.client().Get("/api/conversations/c1/suggestions");
  REQUIRE(res);
  REQUIRE(res->status == 200);
  json list = json::parse(res->body);
  CHECK(list.size() == 6);
  for (const json &s : list) {
    CHECK(s["probability"].get<double>() > 0.0);
    CHECK(s["probability"].get<double>() < 1.0);
  }
}

TEST_CASE("static files are served from the mount point") {
  auto dir = std::filesystem::temp_directory_path() / "teluref_static_test";
  std::filesystem::create_directories(dir);
  WriteFile(dir / "index.html", "<html>annotator</html>");
  auto log = FreshLog("teluref_service_static.jsonl");
  ServiceState state = MakeState(log);
  state.static_dir = dir;
  Running server(state);
  auto res = server.client().Get("/index.html");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == "<html>annotator</html>");
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent posts all land in the log") {
  auto log = FreshLog("teluref_service_concurrent.jsonl");
  ServiceState state = MakeState(log);
  Running server(state);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&server, w] {
      httplib::Client client("127.0.0.1", server.client().port());
      for (int i = 0; i < 10; ++i)
        Post(client, "c1", Pair("m1", "m2", i % 2 == 0, "w" + std::to_string(w)));
    });
  for (auto &t : workers) t.join();
  CHECK(LoadAnnotations(ReadFile(log)).size() == 40);
}
