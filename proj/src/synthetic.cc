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

#include "teluref/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include "teluref/random.h"

namespace teluref {
namespace {

struct EntityClass {
  const char *label;
  Gender gender;
  Number number;
  std::array<const char *, 2> pronouns;
  const char *verb_suffix;
  const char *noun_suffix;  // appended to generated names of this class
};

// Third-person classes with pairwise distinct gender/number.
constexpr std::array<EntityClass, 4> kClasses = {{
    {"m", Gender::kMale, Number::kSingular, {"atanu", "vADu"}, "ADu", ""},
    {"f", Gender::kFemale, Number::kSingular, {"Ame", "AviDa"}, "iMxi", ""},
    {"any", Gender::kAny, Number::kSingular, {"adi", "xAni"}, "xi", "M"},
    {"pl", Gender::kAny, Number::kPlural, {"vALLu", "vAru"}, "Aru", "lu"},
}};

constexpr std::array<const char *, 6> kVerbRoots = {"vacc", "cepp", "cES",
                                                     "unn",  "icc",  "cUs"};
constexpr std::array<const char *, 3> kCaseSuffixes = {"ki", "ni", "wo"};
constexpr std::array<const char *, 6> kFillers = {"ikkada", "ninna", "cAlA",
                                                  "mariyu", "kUdA", "ippuDu"};
constexpr std::array<const char *, 12> kSyllables = {
    "ra", "ma", "su", "vi", "ka", "la", "pa", "na", "Sa", "ya", "ga", "xe"};

std::vector<double> RandomUnit(std::size_t dim, Rng &rng) {
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (double &x : v) {
    x = rng.normal();
    norm2 += x * x;
  }
  for (double &x : v) x /= std::sqrt(norm2);
  return v;
}

std::vector<double> Blend(const std::vector<double> &a, double wa,
                          const std::vector<double> &b, double wb) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
  return out;
}

std::string MakeAf(const std::string &root, const char *category,
                   const MorphFeatures &m, const char *tail) {
  std::string g = m.gender == Gender::kAny ? "any" : GenderCode(m.gender);
  return root + "," + category + "," + g + "," + NumberCode(m.number) + "," +
         PersonCode(m.person) + "," + tail;
}

class Generator {
 public:
  explicit Generator(const SyntheticCorpusConfig &cfg)
      : cfg_(cfg), rng_(cfg.seed), table_(cfg.embedding_dim, OovPolicy::kHashedDeterministic) {
    BuildLexicon();
  }

  SyntheticCorpus Run() {
    std::vector<Conversation> conversations;
    for (std::size_t i = 0; i < cfg_.conversations; ++i)
      conversations.push_back(MakeConversation(i));
    return {std::move(conversations), table_};
  }

 private:
  struct Entity {
    int cls;  // index into kClasses, or -1 for the protagonist
    std::string name;
    bool introduced = false;
    std::size_t last_seen = 0;
    std::vector<std::string> mention_ids;
  };

  void AddWord(const std::string &w, const std::vector<double> &v) {
    if (!table_.contains(w)) table_.Add(w, v);
  }

  void BuildLexicon() {
    const std::size_t dim = cfg_.embedding_dim;
    for (const char *w : kFillers) AddWord(w, RandomUnit(dim, rng_));
    AddWord(".", RandomUnit(dim, rng_));
    for (const EntityClass &c : kClasses)
      for (const char *p : c.pronouns) AddWord(p, RandomUnit(dim, rng_));
    for (const char *p : {"nEnu", "nA", "nuvvu", "nI"}) AddWord(p, RandomUnit(dim, rng_));

    std::vector<std::vector<double>> suffix_vecs;
    std::vector<std::string> suffixes;
    for (const EntityClass &c : kClasses) suffixes.push_back(c.verb_suffix);
    suffixes.push_back("Anu");
    suffixes.push_back("Avu");
    for (std::size_t s = 0; s < suffixes.size(); ++s) suffix_vecs.push_back(RandomUnit(dim, rng_));
    for (const char *root : kVerbRoots) {
      std::vector<double> root_vec = RandomUnit(dim, rng_);
      for (std::size_t s = 0; s < suffixes.size(); ++s)
        AddWord(std::string(root) + suffixes[s], Blend(root_vec, 0.8, suffix_vecs[s], 0.6));
    }

    std::set<std::string> used;
    for (std::size_t c = 0; c < kClasses.size(); ++c) {
      while (names_[c].size() < cfg_.names_per_class) {
        std::string name;
        std::size_t syllables = 2 + rng_.below(2);
        for (std::size_t s = 0; s < syllables; ++s) name += kSyllables[rng_.below(kSyllables.size())];
        name += kClasses[c].noun_suffix;
        if (!used.insert(name).second) continue;
        names_[c].push_back(name);
        std::vector<double> base = RandomUnit(dim, rng_);
        AddWord(name, base);
        for (const char *suffix : kCaseSuffixes) {
          std::string inflected = name + suffix;
          used.insert(inflected);
          AddWord(inflected, Blend(base, 1.0, RandomUnit(dim, rng_), 0.35));
        }
      }
    }
  }

  MorphFeatures ProtagonistMorph(bool speaking) const {
    return {Gender::kAny, Number::kSingular, speaking ? Person::kFirst : Person::kSecond};
  }

  std::size_t PickEntity(std::vector<Entity> &entities, std::size_t step) {
    std::vector<std::size_t> fresh;
    std::vector<std::size_t> seen;
    for (std::size_t i = 0; i < entities.size(); ++i)
      (entities[i].introduced ? seen : fresh).push_back(i);
    if (seen.empty() || (!fresh.empty() && rng_.bernoulli(cfg_.new_entity_probability)))
      return fresh[rng_.below(fresh.size())];
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t i : seen) {
      double age = static_cast<double>(step - entities[i].last_seen);
      weights.push_back(std::exp(-0.5 * age));
      total += weights.back();
    }
    double r = rng_.uniform() * total;
    for (std::size_t k = 0; k < seen.size(); ++k) {
      r -= weights[k];
      if (r < 0.0) return seen[k];
    }
    return seen.back();
  }

  Conversation MakeConversation(std::size_t index) {
    Conversation c;
    c.id = "syn" + std::to_string(index + 1);
    c.speakers = {"A", "B"};

    std::vector<int> classes = {0, 1, 2, 3};
    rng_.shuffle(classes);
    std::vector<Entity> entities;
    entities.push_back({-1, "", false, 0, {}});
    for (std::size_t k = 0; k < cfg_.third_person_entities; ++k) {
      int cls = classes[k % classes.size()];
      const auto &pool = names_[static_cast<std::size_t>(cls)];
      entities.push_back({cls, pool[rng_.below(pool.size())], false, 0, {}});
    }

    std::size_t total = cfg_.min_mentions +
                        rng_.below(cfg_.max_mentions - cfg_.min_mentions + 1);
    std::size_t made = 0;
    std::size_t turn = 0;
    while (made < total) {
      std::size_t per_utterance = std::min<std::size_t>(1 + rng_.below(3), total - made);
      bool a_speaks = turn % 2 == 0;
      Utterance u;
      u.speaker = a_speaks ? "A" : "B";
      std::vector<SsfToken> tokens;
      auto push = [&tokens](std::string form, std::string pos, std::string af) {
        SsfToken t;
        t.index = tokens.size() + 1;
        t.form = std::move(form);
        t.pos = std::move(pos);
        if (!af.empty()) t.fs = ParseFsAttribute(af);
        tokens.push_back(std::move(t));
      };
      for (std::size_t k = 0; k < per_utterance; ++k) {
        if (rng_.bernoulli(0.5)) {
          const char *f = kFillers[rng_.below(kFillers.size())];
          push(f, "RB", std::string(f) + ",adv,,,,,,");
        }
        std::size_t e = PickEntity(entities, made);
        Entity &entity = entities[e];
        Mention m;
        m.id = "m" + std::to_string(made + 1);
        m.utterance = c.utterances.size();
        m.begin = tokens.size();
        m.end = m.begin + 1;

        if (entity.cls < 0) {
          m.morph = ProtagonistMorph(a_speaks);
          m.actor = a_speaks ? Actor::kSpeaker : Actor::kHearer;
          if (rng_.bernoulli(0.5)) {
            const char *p = a_speaks ? (rng_.bernoulli(0.5) ? "nEnu" : "nA")
                                     : (rng_.bernoulli(0.5) ? "nuvvu" : "nI");
            push(p, "PRP", MakeAf(p, "pn", m.morph, "d,0,0"));
          } else {
            std::string root = kVerbRoots[rng_.below(kVerbRoots.size())];
            push(root + (a_speaks ? "Anu" : "Avu"), "VM", MakeAf(root, "v", m.morph, ",wA,wA"));
          }
        } else {
          const EntityClass &cls = kClasses[static_cast<std::size_t>(entity.cls)];
          m.morph = {cls.gender, cls.number, Person::kThird};
          m.part_of_plural = cls.number == Number::kPlural;
          double r = rng_.uniform();
          if (!entity.introduced || r < 0.25) {
            std::string form = entity.name;
            if (entity.introduced || rng_.bernoulli(0.3))
              form += kCaseSuffixes[rng_.below(kCaseSuffixes.size())];
            push(form, "NN", MakeAf(entity.name, "n", m.morph, "d,0,0"));
          } else if (r < 0.65) {
            const char *p = cls.pronouns[rng_.below(2)];
            push(p, "PRP", MakeAf(p, "pn", m.morph, "d,0,0"));
          } else {
            std::string root = kVerbRoots[rng_.below(kVerbRoots.size())];
            push(root + cls.verb_suffix, "VM", MakeAf(root, "v", m.morph, ",wA,wA"));
          }
        }
        m.head = tokens.back().form;
        entity.introduced = true;
        entity.last_seen = made;
        entity.mention_ids.push_back(m.id);
        c.mentions.push_back(std::move(m));
        ++made;
      }
      push(".", "SYM", "");
      std::string text;
      for (const SsfToken &t : tokens) text += (text.empty() ? "" : " ") + t.form;
      u.text = text;
      u.tokens = std::move(tokens);
      c.utterances.push_back(std::move(u));
      ++turn;
    }
    for (const Entity &e : entities)
      if (e.mention_ids.size() >= 2) c.chains.push_back(e.mention_ids);
    return c;
  }

  SyntheticCorpusConfig cfg_;
  Rng rng_;
  EmbeddingTable table_;
  std::array<std::vector<std::string>, kClasses.size()> names_;
};

}  // namespace

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticCorpusConfig &cfg) {
  return Generator(cfg).Run();
}

}  // namespace teluref
