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

#include "teluref/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "teluref/error.h"
#include "teluref/random.h"

namespace teluref {

using nlohmann::json;

namespace {

std::string Pointer(const std::string &base, std::string_view key) {
  return base + "/" + std::string(key);
}

std::string Pointer(const std::string &base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

const json &Require(const json &obj, const std::string &base,
                    std::string_view key) {
  if (!obj.is_object()) throw SchemaError(base.empty() ? "/" : base,
                                          "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) throw SchemaError(Pointer(base, key), "missing");
  return *it;
}

std::string RequireString(const json &obj, const std::string &base,
                          std::string_view key) {
  const json &v = Require(obj, base, key);
  if (!v.is_string()) throw SchemaError(Pointer(base, key), "expected string");
  return v.get<std::string>();
}

std::string OptionalString(const json &obj, const std::string &base,
                           std::string_view key) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) return "";
  if (!it->is_string())
    throw SchemaError(Pointer(base, key), "expected string");
  return it->get<std::string>();
}

const json &RequireArray(const json &obj, const std::string &base,
                         std::string_view key) {
  const json &v = Require(obj, base, key);
  if (!v.is_array()) throw SchemaError(Pointer(base, key), "expected array");
  return v;
}

std::size_t RequireIndex(const json &v, const std::string &path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
    throw SchemaError(path, "expected non-negative integer");
  return v.get<std::size_t>();
}

template <typename T, typename Decode>
T DecodeCode(const json &obj, const std::string &base, std::string_view key,
             std::initializer_list<std::string_view> allowed, Decode decode) {
  std::string code = OptionalString(obj, base, key);
  if (!code.empty() &&
      std::find(allowed.begin(), allowed.end(), code) == allowed.end())
    throw SchemaError(Pointer(base, key), "unknown code '" + code + "'");
  return decode(code);
}

SsfToken TokenFromJson(const json &j, const std::string &base,
                       std::size_t index) {
  SsfToken t;
  t.index = index + 1;
  t.form = RequireString(j, base, "form");
  if (t.form.empty()) throw SchemaError(Pointer(base, "form"), "empty form");
  t.pos = RequireString(j, base, "pos");
  std::string af = OptionalString(j, base, "af");
  if (!af.empty()) {
    try {
      t.fs = ParseFsAttribute(af);
    } catch (const TooFewFields &) {
      t.fs.raw_af = af;
    }
  }
  return t;
}

std::vector<std::size_t> DocumentOrder(const Conversation &c) {
  std::vector<std::size_t> order(c.mentions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&c](std::size_t a, std::size_t b) {
    const Mention &ma = c.mentions[a];
    const Mention &mb = c.mentions[b];
    return std::tie(ma.utterance, ma.begin, ma.end) <
           std::tie(mb.utterance, mb.begin, mb.end);
  });
  return order;
}

}  // namespace

std::string ActorCode(Actor a) {
  switch (a) {
    case Actor::kSpeaker: return "speaker";
    case Actor::kHearer: return "hearer";
    case Actor::kNeither: break;
  }
  return "neither";
}

std::optional<Actor> ParseActor(std::string_view code) {
  if (code == "speaker") return Actor::kSpeaker;
  if (code == "hearer") return Actor::kHearer;
  if (code == "neither" || code.empty()) return Actor::kNeither;
  return std::nullopt;
}

const Mention *Conversation::FindMention(std::string_view mention_id) const {
  for (const Mention &m : mentions)
    if (m.id == mention_id) return &m;
  return nullptr;
}

bool Precedes(const Mention &a, const Mention &b) {
  if (a.utterance != b.utterance) return a.utterance < b.utterance;
  return a.begin < b.begin;
}

Conversation LoadConversation(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error &e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("/", "expected an object");

  Conversation c;
  c.id = RequireString(root, "", "id");

  const json &speakers = RequireArray(root, "", "speakers");
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    if (!speakers[i].is_string())
      throw SchemaError(Pointer("/speakers", i), "expected string");
    c.speakers.push_back(speakers[i].get<std::string>());
  }

  const json &utterances = RequireArray(root, "", "utterances");
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    std::string base = Pointer("/utterances", i);
    const json &uj = utterances[i];
    Utterance u;
    u.speaker = RequireString(uj, base, "speaker");
    if (std::find(c.speakers.begin(), c.speakers.end(), u.speaker) ==
        c.speakers.end())
      throw SchemaError(Pointer(base, "speaker"),
                        "speaker '" + u.speaker + "' not declared");
    u.text = OptionalString(uj, base, "text");
    if (uj.contains("tokens")) {
      const json &tokens = RequireArray(uj, base, "tokens");
      for (std::size_t t = 0; t < tokens.size(); ++t)
        u.tokens.push_back(
            TokenFromJson(tokens[t], Pointer(Pointer(base, "tokens"), t), t));
    }
    c.utterances.push_back(std::move(u));
  }

  const json &mentions = RequireArray(root, "", "mentions");
  std::set<std::string> ids;
  std::set<std::pair<std::size_t, std::size_t>> starts;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    std::string base = Pointer("/mentions", i);
    const json &mj = mentions[i];
    Mention m;
    m.id = RequireString(mj, base, "id");
    if (m.id.empty()) throw SchemaError(Pointer(base, "id"), "empty id");
    if (!ids.insert(m.id).second)
      throw SchemaError(Pointer(base, "id"), "duplicate id '" + m.id + "'");
    m.utterance = RequireIndex(Require(mj, base, "utterance"),
                               Pointer(base, "utterance"));
    if (m.utterance >= c.utterances.size())
      throw SchemaError(Pointer(base, "utterance"), "no such utterance");
    const json &span = RequireArray(mj, base, "span");
    std::string span_path = Pointer(base, "span");
    if (span.size() != 2) throw SchemaError(span_path, "expected [start, end]");
    m.begin = RequireIndex(span[0], Pointer(span_path, 0));
    m.end = RequireIndex(span[1], Pointer(span_path, 1));
    const Utterance &u = c.utterances[m.utterance];
    if (m.begin >= m.end || m.end > u.tokens.size())
      throw SchemaError(span_path, "span outside utterance tokens");
    if (!starts.insert({m.utterance, m.begin}).second)
      throw SchemaError(span_path, "two mentions start at the same token");
    m.head = OptionalString(mj, base, "head");
    if (m.head.empty()) m.head = u.tokens[m.end - 1].form;
    m.morph.gender = DecodeCode<Gender>(mj, base, "gender", {"any", "m", "f"},
                                        DecodeGender);
    m.morph.number = DecodeCode<Number>(mj, base, "number",
                                        {"zero", "sg", "pl"}, DecodeNumber);
    m.morph.person = DecodeCode<Person>(mj, base, "person",
                                        {"none", "1", "2", "3"}, DecodePerson);
    if (mj.contains("pop")) {
      if (!mj["pop"].is_boolean())
        throw SchemaError(Pointer(base, "pop"), "expected boolean");
      m.part_of_plural = mj["pop"].get<bool>();
    }
    std::string actor = OptionalString(mj, base, "actor");
    std::optional<Actor> a = ParseActor(actor);
    if (!a) throw SchemaError(Pointer(base, "actor"), "unknown actor");
    m.actor = *a;
    c.mentions.push_back(std::move(m));
  }

  const json &chains = RequireArray(root, "", "chains");
  std::set<std::string> chained;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    std::string base = Pointer("/chains", i);
    if (!chains[i].is_array()) throw SchemaError(base, "expected array");
    std::vector<std::string> chain;
    for (std::size_t j = 0; j < chains[i].size(); ++j) {
      std::string path = Pointer(base, j);
      if (!chains[i][j].is_string()) throw SchemaError(path, "expected string");
      std::string id = chains[i][j].get<std::string>();
      if (!ids.count(id)) throw SchemaError(path, "unknown mention '" + id + "'");
      if (!chained.insert(id).second)
        throw SchemaError(path, "mention '" + id + "' in more than one chain");
      chain.push_back(std::move(id));
    }
    if (chain.size() < 2) throw SchemaError(base, "chain needs 2+ members");
    c.chains.push_back(std::move(chain));
  }
  return c;
}

std::string SaveConversation(const Conversation &c) {
  json root;
  root["id"] = c.id;
  root["speakers"] = c.speakers;
  json utterances = json::array();
  for (const Utterance &u : c.utterances) {
    json tokens = json::array();
    for (const SsfToken &t : u.tokens)
      tokens.push_back({{"form", t.form}, {"pos", t.pos}, {"af", t.fs.raw_af}});
    utterances.push_back(
        {{"speaker", u.speaker}, {"text", u.text}, {"tokens", tokens}});
  }
  root["utterances"] = utterances;
  json mentions = json::array();
  for (const Mention &m : c.mentions) {
    mentions.push_back({{"id", m.id},
                        {"utterance", m.utterance},
                        {"span", {m.begin, m.end}},
                        {"head", m.head},
                        {"gender", GenderCode(m.morph.gender)},
                        {"number", NumberCode(m.morph.number)},
                        {"person", PersonCode(m.morph.person)},
                        {"pop", m.part_of_plural},
                        {"actor", ActorCode(m.actor)}});
  }
  root["mentions"] = mentions;
  root["chains"] = c.chains;
  return root.dump(2) + "\n";
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path &path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Conversation> LoadCorpusDir(const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw IoError("not a corpus directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".json" || ext == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Conversation> out;
  for (const fs::path &file : files) {
    std::string bytes = ReadFile(file);
    try {
      if (file.extension() == ".json") {
        out.push_back(LoadConversation(bytes));
        continue;
      }
      std::istringstream lines(bytes);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(LoadConversation(line));
      }
    } catch (const SchemaError &e) {
      throw SchemaError(file.filename().string() + ":" + e.path(), e.what());
    }
  }
  return out;
}

std::vector<LabeledPair> GeneratePairs(const Conversation &c) {
  std::unordered_map<std::string, std::size_t> chain_of;
  for (std::size_t i = 0; i < c.chains.size(); ++i)
    for (const std::string &id : c.chains[i]) chain_of[id] = i;

  std::vector<std::size_t> order = DocumentOrder(c);
  std::vector<LabeledPair> pairs;
  pairs.reserve(order.size() * (order.size() - (order.empty() ? 0 : 1)) / 2);
  for (std::size_t j = 1; j < order.size(); ++j) {
    const Mention &anaphor = c.mentions[order[j]];
    auto aj = chain_of.find(anaphor.id);
    for (std::size_t i = 0; i < j; ++i) {
      const Mention &antecedent = c.mentions[order[i]];
      auto ai = chain_of.find(antecedent.id);
      bool same = aj != chain_of.end() && ai != chain_of.end() &&
                  ai->second == aj->second;
      pairs.push_back({antecedent.id, anaphor.id, same, Provenance::kGold});
    }
  }
  return pairs;
}

CorpusStats ComputeCorpusStats(const std::vector<Conversation> &corpus) {
  CorpusStats stats;
  stats.conversations = corpus.size();
  for (const Conversation &c : corpus) {
    stats.mentions += c.mentions.size();
    for (const LabeledPair &p : GeneratePairs(c))
      (p.label ? stats.true_pairs : stats.false_pairs)++;
  }
  return stats;
}

CorpusSplit SplitCorpus(const std::vector<Conversation> &corpus,
                        double test_fraction, uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw DomainError("test fraction must lie in (0, 1)");
  std::size_t n = corpus.size();
  auto n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test >= n)
    throw EmptySplit("split of " + std::to_string(n) +
                     " conversation(s) leaves one side empty");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  std::vector<bool> is_test(n, false);
  for (std::size_t i = 0; i < n_test; ++i) is_test[idx[i]] = true;
  CorpusSplit split;
  for (std::size_t i = 0; i < n; ++i)
    (is_test[i] ? split.test : split.train).push_back(corpus[i]);
  return split;
}

std::string AnnotationToJson(const AnnotationRecord &r) {
  json j = {{"conversation", r.conversation},
            {"antecedent", r.antecedent},
            {"anaphor", r.anaphor},
            {"label", r.label},
            {"annotator", r.annotator}};
  return j.dump();
}

AnnotationRecord AnnotationFromJson(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error &e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  AnnotationRecord r;
  r.conversation = RequireString(j, "", "conversation");
  r.antecedent = RequireString(j, "", "antecedent");
  r.anaphor = RequireString(j, "", "anaphor");
  const json &label = Require(j, "", "label");
  if (!label.is_boolean()) throw SchemaError("/label", "expected boolean");
  r.label = label.get<bool>();
  r.annotator = RequireString(j, "", "annotator");
  if (r.annotator.empty()) throw SchemaError("/annotator", "empty annotator");
  return r;
}

std::vector<AnnotationRecord> LoadAnnotations(std::string_view bytes) {
  std::vector<AnnotationRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < bytes.size()) {
    std::size_t nl = bytes.find('\n', start);
    if (nl == std::string_view::npos) nl = bytes.size();
    std::string_view line = bytes.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(AnnotationFromJson(line));
    } catch (const SchemaError &e) {
      throw SchemaError("line " + std::to_string(line_no) + ":" + e.path(),
                        e.what());
    }
  }
  return out;
}

void ValidateAnnotation(const Conversation &c, const AnnotationRecord &r) {
  if (r.conversation != c.id)
    throw SchemaError("/conversation", "record is for '" + r.conversation + "'");
  const Mention *a = c.FindMention(r.antecedent);
  if (!a) throw SchemaError("/antecedent", "unknown mention '" + r.antecedent + "'");
  const Mention *b = c.FindMention(r.anaphor);
  if (!b) throw SchemaError("/anaphor", "unknown mention '" + r.anaphor + "'");
  if (!Precedes(*a, *b))
    throw SchemaError("/anaphor", "antecedent must precede anaphor");
}

const std::map<PairKey, bool> &Adjudication::FinalLabels() const {
  if (!conflicts.empty()) throw MissingThirdReview(conflicts.size());
  return gold;
}

Adjudication Adjudicate(const std::vector<AnnotationRecord> &first,
                        const std::vector<AnnotationRecord> &second,
                        const std::vector<AnnotationRecord> *third) {
  auto latest = [](const std::vector<AnnotationRecord> &records) {
    std::map<PairKey, bool> labels;
    for (const AnnotationRecord &r : records)
      labels[{r.antecedent, r.anaphor}] = r.label;
    return labels;
  };
  std::map<PairKey, bool> a = latest(first);
  std::map<PairKey, bool> b = latest(second);
  std::map<PairKey, bool> tiebreak;
  if (third) tiebreak = latest(*third);

  std::set<PairKey> keys;
  for (const auto &[k, v] : a) keys.insert(k);
  for (const auto &[k, v] : b) keys.insert(k);

  Adjudication result;
  for (const PairKey &key : keys) {
    auto ia = a.find(key);
    auto ib = b.find(key);
    bool la = ia != a.end() && ia->second;
    bool lb = ib != b.end() && ib->second;
    if (la == lb) {
      result.gold[key] = la;
      continue;
    }
    Conflict conflict{key, la, lb};
    auto it = tiebreak.find(key);
    if (it != tiebreak.end()) {
      result.gold[key] = it->second;
      result.resolved.push_back(conflict);
    } else {
      result.conflicts.push_back(conflict);
    }
  }
  return result;
}

Conversation ApplyGoldLabels(const Conversation &c,
                             const std::map<PairKey, bool> &gold) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < c.mentions.size(); ++i)
    index[c.mentions[i].id] = i;
  std::vector<std::size_t> parent(c.mentions.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &[key, label] : gold) {
    auto a = index.find(key.first);
    auto b = index.find(key.second);
    if (a == index.end() || b == index.end())
      throw SchemaError("/gold", "unknown mention in pair (" + key.first +
                                     ", " + key.second + ")");
    if (label) parent[find(a->second)] = find(b->second);
  }

  std::map<std::size_t, std::vector<std::string>> groups;
  std::vector<std::size_t> first_seen;
  for (std::size_t i : DocumentOrder(c)) {
    std::size_t root = find(i);
    if (!groups.count(root)) first_seen.push_back(root);
    groups[root].push_back(c.mentions[i].id);
  }
  Conversation out = c;
  out.chains.clear();
  for (std::size_t root : first_seen)
    if (groups[root].size() >= 2) out.chains.push_back(groups[root]);
  return out;
}

}  // namespace teluref
