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

// Command-line front end for the anaphora resolution pipeline.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teluref/corpus.h"
#include "teluref/embeddings.h"
#include "teluref/error.h"
#include "teluref/evaluator.h"
#include "teluref/featurizer.h"
#include "teluref/mlp.h"
#include "teluref/sampler.h"
#include "teluref/service.h"
#include "teluref/ssf.h"
#include "teluref/synthetic.h"

namespace fs = std::filesystem;
using namespace teluref;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

std::string CorpusDir(const std::string &flag) {
  if (const char *env = std::getenv("TELUREF_DATA"); env && *env) return env;
  if (flag.empty()) throw ValidationError("--corpus is required (or set TELUREF_DATA)");
  return flag;
}

FeatureMask MaskWithout(const std::vector<std::string> &ablate) {
  FeatureMask mask = FeatureMask::All();
  for (const std::string &name : ablate) {
    auto block = ParseFeatureBlock(name);
    if (!block) throw ValidationError("unknown feature block '" + name + "'");
    mask.Disable(*block);
  }
  return mask;
}

std::vector<FeatureBlock> ParseBlocks(const std::vector<std::string> &names) {
  std::vector<FeatureBlock> out;
  for (const std::string &name : names) {
    auto block = ParseFeatureBlock(name);
    if (!block) throw ValidationError("unknown feature block '" + name + "'");
    out.push_back(*block);
  }
  return out;
}

Sampling ParseSamplingFlag(const std::string &s) {
  auto v = ParseSampling(s);
  if (!v) throw ValidationError("--sampling must be over, under or none");
  return *v;
}

EmbeddingTable LoadEmbeddingFile(const std::string &path, const std::string &oov,
                                 std::size_t dim) {
  auto policy = ParseOovPolicy(oov);
  if (!policy) throw ValidationError("--oov must be hashed or zeros");
  return LoadEmbeddings(ReadFile(path), dim, *policy);
}

// Conversations to use: all of them, or one side of a seeded split.
struct SplitFlags {
  double test_fraction = 0.0;
  uint64_t split_seed = 0;
};

std::vector<Conversation> SelectSide(std::vector<Conversation> corpus, const SplitFlags &f,
                                     bool want_test) {
  if (f.test_fraction <= 0.0) return corpus;
  CorpusSplit split = SplitCorpus(corpus, f.test_fraction, f.split_seed);
  return want_test ? split.test : split.train;
}

void AddSplitFlags(CLI::App *cmd, SplitFlags &f) {
  cmd->add_option("--test-fraction", f.test_fraction,
                  "Hold out this fraction of conversations (0 = use all)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--split-seed", f.split_seed, "Seed for the conversation split");
}

std::string Basename(const std::string &path) { return fs::path(path).stem().string(); }

volatile std::sig_atomic_t g_stop = 0;
Service *g_service = nullptr;

void OnSignal(int) {
  g_stop = 1;
  if (g_service) g_service->Stop();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Mention-pair anaphora resolution for dialogue"};
  app.require_subcommand(1);

  // parse-ssf
  std::string ssf_in, ssf_out, ssf_id, ssf_speakers = "spk1";
  bool ssf_strict = false;
  auto *parse = app.add_subcommand("parse-ssf", "Convert SSF output to a corpus skeleton");
  parse->add_option("input", ssf_in, "SSF file")->required();
  parse->add_option("-o,--output", ssf_out, "Corpus JSON output (stdout if omitted)");
  parse->add_option("--id", ssf_id, "Conversation id (default: input file stem)");
  parse->add_option("--speakers", ssf_speakers,
                    "Comma-separated speaker labels, assigned to sentences in turn");
  parse->add_flag("--strict", ssf_strict, "Abort on the first malformed line");

  // train
  std::string corpus_flag, emb_path, model_out, report_out, sampling = "over", oov = "hashed";
  std::vector<std::string> ablate;
  MlpConfig mlp;
  std::size_t smote_k = 5;
  bool checkpoint = false;
  SplitFlags train_split;
  auto *train = app.add_subcommand("train", "Featurize, rebalance and train a pair classifier");
  train->add_option("--corpus", corpus_flag, "Corpus directory");
  train->add_option("--embeddings", emb_path, "word2vec text file")->required();
  train->add_option("--sampling", sampling, "over | under | none")->capture_default_str();
  train->add_option("--ablate", ablate, "Feature blocks to zero out")->delimiter(',');
  train->add_option("--seed", mlp.seed, "Random seed")->capture_default_str();
  train->add_option("--epochs", mlp.epochs, "Epoch budget")->capture_default_str();
  train->add_option("--lr", mlp.learning_rate, "Adam learning rate")->capture_default_str();
  train->add_option("--smote-k", smote_k, "SMOTE neighbours")->capture_default_str();
  train->add_option("--oov", oov, "hashed | zeros")->capture_default_str();
  train->add_option("-o,--out", model_out, "Model file")->required();
  train->add_option("--report", report_out, "Train report JSON (default: <out>.report.json)");
  train->add_flag("--checkpoint", checkpoint, "Include Adam state in the model file");
  AddSplitFlags(train, train_split);

  // eval
  std::string model_path, eval_label = "model";
  double threshold = 0.5;
  bool as_json = false;
  SplitFlags eval_split;
  auto *eval = app.add_subcommand("eval", "Pair precision/recall/F1 on a corpus");
  eval->add_option("--model", model_path, "Model file")->required();
  eval->add_option("--corpus", corpus_flag, "Corpus directory");
  eval->add_option("--embeddings", emb_path, "word2vec text file")->required();
  eval->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();
  eval->add_option("--ablate", ablate, "Feature blocks zeroed at training time")->delimiter(',');
  eval->add_option("--oov", oov, "hashed | zeros")->capture_default_str();
  eval->add_option("--label", eval_label, "Row label in the report table");
  eval->add_flag("--json", as_json, "Print JSON instead of a table");
  AddSplitFlags(eval, eval_split);

  // resolve
  std::string conversation_path;
  auto *resolve = app.add_subcommand("resolve", "Pick an antecedent for every mention");
  resolve->add_option("--model", model_path, "Model file")->required();
  resolve->add_option("--conversation", conversation_path, "Conversation JSON")->required();
  resolve->add_option("--embeddings", emb_path, "word2vec text file")->required();
  resolve->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();
  resolve->add_option("--ablate", ablate, "Feature blocks zeroed at training time")
      ->delimiter(',');
  resolve->add_option("--oov", oov, "hashed | zeros")->capture_default_str();

  // curve
  uint64_t curve_n = 5;
  std::string curve_out;
  auto *curve = app.add_subcommand("curve", "True/false pair counts for chain sizes 0..n");
  curve->add_option("n", curve_n, "Number of mentions")->required();
  curve->add_option("-o,--out", curve_out, "CSV output (stdout if omitted)");

  // ablation
  std::vector<std::string> blocks = {"gender", "number", "person", "pop"};
  std::vector<uint64_t> seeds = {0};
  SplitFlags ablation_split{0.2, 0};
  auto *ablation = app.add_subcommand("ablation", "Baseline vs one feature block at a time");
  ablation->add_option("--corpus", corpus_flag, "Corpus directory");
  ablation->add_option("--embeddings", emb_path, "word2vec text file")->required();
  ablation->add_option("--blocks", blocks, "Blocks to add to the baseline")->delimiter(',');
  ablation->add_option("--sampling", sampling, "over | under | none")->capture_default_str();
  ablation->add_option("--seeds", seeds, "Training seeds; rows are averaged")->delimiter(',');
  ablation->add_option("--epochs", mlp.epochs, "Epoch budget")->capture_default_str();
  ablation->add_option("--lr", mlp.learning_rate, "Adam learning rate");
  ablation->add_option("--threshold", threshold, "Decision threshold");
  ablation->add_option("--oov", oov, "hashed | zeros")->capture_default_str();
  ablation->add_flag("--json", as_json, "Print JSON instead of a table");
  AddSplitFlags(ablation, ablation_split);

  // serve
  int port = 8080;
  std::string host = "127.0.0.1", annotations_path = "annotations.jsonl", static_dir;
  auto *serve = app.add_subcommand("serve", "Annotation HTTP service");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--corpus", corpus_flag, "Corpus directory");
  serve->add_option("--annotations", annotations_path, "Annotation log (JSON-lines)")
      ->capture_default_str();
  serve->add_option("--model", model_path, "Model for suggestions");
  serve->add_option("--embeddings", emb_path, "Embeddings for suggestions");
  serve->add_option("--static", static_dir, "Directory of annotator UI assets");
  serve->add_option("--oov", oov, "hashed | zeros")->capture_default_str();

  // synth
  SyntheticCorpusConfig synth_cfg;
  std::string synth_dir, synth_emb;
  auto *synth = app.add_subcommand("synth", "Generate a synthetic annotated corpus");
  synth->add_option("--out-dir", synth_dir, "Corpus directory to create")->required();
  synth->add_option("--embeddings-out", synth_emb, "word2vec text output")->required();
  synth->add_option("--conversations", synth_cfg.conversations, "Conversation count")
      ->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--min-mentions", synth_cfg.min_mentions, "Fewest mentions per conversation")
      ->capture_default_str();
  synth->add_option("--max-mentions", synth_cfg.max_mentions, "Most mentions per conversation")
      ->capture_default_str();
  synth->add_option("--entities", synth_cfg.third_person_entities,
                    "Third-person entities per conversation")
      ->capture_default_str();
  synth->add_option("--new-entity-probability", synth_cfg.new_entity_probability,
                    "Chance a mention introduces a new entity")
      ->capture_default_str();

  // stats
  auto *stats = app.add_subcommand("stats", "Conversation, mention and pair counts");
  stats->add_option("--corpus", corpus_flag, "Corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*parse) {
      SsfDocument doc;
      try {
        doc = ParseSsfDocument(ReadFile(ssf_in), {ssf_strict});
      } catch (const MalformedLine &e) {
        std::cerr << ssf_in << ": " << e.what() << "\n";
        return kExitValidation;
      }
      for (const SsfDiagnostic &d : doc.diagnostics)
        std::cerr << ssf_in << ": line " << d.line_no << ": " << d.message << " (skipped)\n";
      std::vector<std::string> speakers;
      std::stringstream ss(ssf_speakers);
      for (std::string s; std::getline(ss, s, ',');)
        if (!s.empty()) speakers.push_back(s);
      if (speakers.empty()) throw ValidationError("--speakers needs at least one label");

      Conversation c;
      c.id = ssf_id.empty() ? Basename(ssf_in) : ssf_id;
      c.speakers = speakers;
      for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        Utterance u;
        u.speaker = speakers[s % speakers.size()];
        u.tokens = doc.sentences[s].tokens;
        for (const SsfToken &t : u.tokens) u.text += (u.text.empty() ? "" : " ") + t.form;
        for (const MentionCandidate &m : ExtractMentionCandidates(u.tokens)) {
          Mention mention;
          mention.id = "m" + std::to_string(c.mentions.size() + 1);
          mention.utterance = c.utterances.size();
          mention.begin = m.begin;
          mention.end = m.end;
          mention.head = m.head_form;
          mention.morph = m.morph;
          if (m.morph.person == Person::kFirst) mention.actor = Actor::kSpeaker;
          if (m.morph.person == Person::kSecond) mention.actor = Actor::kHearer;
          c.mentions.push_back(std::move(mention));
        }
        c.utterances.push_back(std::move(u));
      }
      std::string bytes = SaveConversation(c);
      if (ssf_out.empty()) std::cout << bytes;
      else WriteFile(ssf_out, bytes);
      return 0;
    }

    if (*train) {
      std::vector<Conversation> corpus =
          SelectSide(LoadCorpusDir(CorpusDir(corpus_flag)), train_split, false);
      EmbeddingTable table = LoadEmbeddingFile(emb_path, oov, kEmbeddingDim);
      FeatureMask mask = MaskWithout(ablate);
      PairDataset data = BuildPairDataset(corpus, table, mask);
      std::cout << "gold pairs: " << data.size() << " (" << data.CountLabel(true)
                << " true, " << data.CountLabel(false) << " false)\n";
      data = Rebalance(data, ParseSamplingFlag(sampling), mlp.seed, smote_k);
      std::cout << "train pairs: " << data.size() << "\n";
      mlp.input_dim = 2 * MentionDim(table.dim());
      MlpModel model = InitModel(mlp);
      TrainReport report = Train(model, data, [](const EpochStats &e) {
        std::printf("epoch %zu loss %.6f acc %.4f\n", e.epoch, e.mean_loss, e.train_accuracy);
        std::fflush(stdout);
      });
      WriteFile(model_out, checkpoint ? SaveCheckpoint(model) : SaveModel(model));
      WriteFile(report_out.empty() ? model_out + ".report.json" : report_out, report.ToJson());
      return 0;
    }

    if (*eval) {
      MlpModel model = LoadModel(ReadFile(model_path));
      std::vector<Conversation> corpus =
          SelectSide(LoadCorpusDir(CorpusDir(corpus_flag)), eval_split, true);
      EmbeddingTable table = LoadEmbeddingFile(emb_path, oov, kEmbeddingDim);
      PairDataset data = BuildPairDataset(corpus, table, MaskWithout(ablate));
      EvalReport report = Evaluate(model, data, threshold);
      if (as_json) std::cout << EvalReportJson(report, eval_label);
      else std::cout << FormatReportTable("Model", {{eval_label, report}});
      return 0;
    }

    if (*resolve) {
      MlpModel model = LoadModel(ReadFile(model_path));
      Conversation c = LoadConversation(ReadFile(conversation_path));
      EmbeddingTable table = LoadEmbeddingFile(emb_path, oov, kEmbeddingDim);
      ResolutionResult result =
          ResolveAntecedents(c, model, table, threshold, MaskWithout(ablate));
      std::cout << "{";
      bool first = true;
      for (const auto &[anaphor, antecedent] : result) {
        std::cout << (first ? "" : ",") << "\n  \"" << anaphor << "\": "
                  << (antecedent ? "\"" + *antecedent + "\"" : std::string("null"));
        first = false;
      }
      std::cout << (result.empty() ? "}\n" : "\n}\n");
      return 0;
    }

    if (*curve) {
      std::string csv = ImbalanceCurveCsv(ImbalanceCurve(curve_n));
      if (curve_out.empty()) std::cout << csv;
      else WriteFile(curve_out, csv);
      return 0;
    }

    if (*ablation) {
      std::vector<Conversation> corpus = LoadCorpusDir(CorpusDir(corpus_flag));
      if (ablation_split.test_fraction <= 0.0)
        throw ValidationError("ablation needs --test-fraction > 0");
      CorpusSplit split =
          SplitCorpus(corpus, ablation_split.test_fraction, ablation_split.split_seed);
      EmbeddingTable table = LoadEmbeddingFile(emb_path, oov, kEmbeddingDim);
      std::vector<FeatureBlock> which = ParseBlocks(blocks);
      if (seeds.empty()) throw ValidationError("--seeds needs at least one value");
      std::vector<ReportRow> mean;
      for (uint64_t seed : seeds) {
        ExperimentConfig cfg;
        cfg.mlp = mlp;
        cfg.mlp.seed = seed;
        cfg.sampling = ParseSamplingFlag(sampling);
        cfg.sampling_seed = seed;
        cfg.threshold = threshold;
        std::vector<ReportRow> rows = RunAblation(split.train, split.test, table, which, cfg);
        if (mean.empty()) {
          mean = rows;
          for (ReportRow &r : mean) r.report = EvalReport{};
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
          EvalReport &m = mean[i].report;
          const EvalReport &r = rows[i].report;
          double w = 1.0 / static_cast<double>(seeds.size());
          m.precision += w * r.precision;
          m.recall += w * r.recall;
          m.f1 += w * r.f1;
          m.mean_loss += w * r.mean_loss;
        }
      }
      if (as_json) {
        std::cout << "[\n";
        for (std::size_t i = 0; i < mean.size(); ++i)
          std::cout << EvalReportJson(mean[i].report, mean[i].name)
                    << (i + 1 < mean.size() ? ",\n" : "");
        std::cout << "]\n";
      } else {
        std::cout << FormatReportTable("Features", mean);
      }
      return 0;
    }

    if (*serve) {
      ServiceState state;
      for (Conversation &c : LoadCorpusDir(CorpusDir(corpus_flag))) {
        std::string id = c.id;
        state.conversations.emplace(id, std::move(c));
      }
      state.log = std::make_unique<AnnotationLog>(annotations_path);
      if (!model_path.empty()) {
        if (emb_path.empty()) throw ValidationError("--model needs --embeddings");
        state.model = LoadModel(ReadFile(model_path));
        state.embeddings = LoadEmbeddingFile(emb_path, oov, kEmbeddingDim);
      }
      if (!static_dir.empty()) state.static_dir = static_dir;
      Service service(state);
      int bound = service.Bind(host, port);
      if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return kExitIo;
      }
      g_service = &service;
      std::signal(SIGINT, OnSignal);
      std::signal(SIGTERM, OnSignal);
      std::cerr << "serving " << state.conversations.size() << " conversation(s) on http://"
                << host << ":" << bound << "\n";
      service.Serve();
      g_service = nullptr;
      return 0;
    }

    if (*synth) {
      SyntheticCorpus corpus = GenerateSyntheticCorpus(synth_cfg);
      fs::create_directories(synth_dir);
      for (const Conversation &c : corpus.conversations)
        WriteFile(fs::path(synth_dir) / (c.id + ".json"), SaveConversation(c));
      WriteFile(synth_emb, corpus.embeddings.ToText());
      CorpusStats s = ComputeCorpusStats(corpus.conversations);
      std::cout << "wrote " << s.conversations << " conversations, " << s.mentions
                << " mentions, " << s.true_pairs << " true / " << s.false_pairs
                << " false pairs\n";
      return 0;
    }

    if (*stats) {
      CorpusStats s = ComputeCorpusStats(LoadCorpusDir(CorpusDir(corpus_flag)));
      std::cout << "conversations: " << s.conversations << "\nmentions: " << s.mentions
                << "\ntrue_pairs: " << s.true_pairs << "\nfalse_pairs: " << s.false_pairs
                << "\n";
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.error_class() == ErrorClass::kIo ? kExitIo : kExitValidation;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
