// Copyright 2026 The ged Authors.
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

// ged: grammatical error detection command-line tool.
//
// Exit status: 0 success, 1 usage error, 2 bad input data or configuration,
// 3 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ged/alignment.hpp"
#include "ged/checkpoint.hpp"
#include "ged/corpus_io.hpp"
#include "ged/embeddings.hpp"
#include "ged/error.hpp"
#include "ged/kernels.hpp"
#include "ged/metrics.hpp"
#include "ged/model.hpp"
#include "ged/scoring.hpp"
#include "ged/service.hpp"
#include "ged/synth.hpp"
#include "ged/train.hpp"

namespace {

using namespace ged;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("write failed for " + path);
}

std::string tsv_text(const Corpus& corpus) {
  std::ostringstream os;
  write_tsv(os, corpus);
  return os.str();
}

Corpus read_corpora(const std::vector<std::string>& paths) {
  Corpus all;
  for (const auto& p : paths) {
    Corpus c = read_tsv(p);
    all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }
  return all;
}

Corpus align_files(const std::string& source_path, const std::string& corrected_path) {
  const auto source = read_sentences(source_path);
  const auto corrected = read_sentences(corrected_path);
  if (source.size() != corrected.size()) {
    throw AlignmentError(std::min(source.size(), corrected.size()),
                         "source has " + std::to_string(source.size()) +
                             " sentences, corrected output has " +
                             std::to_string(corrected.size()));
  }
  Corpus out;
  out.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i].empty()) throw AlignmentError(i, "empty source sentence");
    out.push_back(align_correction(source[i], corrected[i]));
  }
  return out;
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  std::string spans;
  std::string out;
};

void add_convert(CLI::App& app, ConvertArgs& a) {
  auto* c = app.add_subcommand("convert", "Convert span annotations to token-label TSV");
  c->add_option("--spans", a.spans, "Span file: tokens <TAB> start:end,...")->required();
  c->add_option("-o,--out", a.out, "Output TSV (default stdout)");
}

int run_convert(const ConvertArgs& a) {
  Corpus corpus;
  for (const auto& ann : read_spans(a.spans)) corpus.push_back(spans_to_labels(ann));
  write_text(a.out, tsv_text(corpus));
  return 0;
}

// ------------------------------------------------------------------ align

struct AlignArgs {
  std::string source;
  std::string corrected;
  std::string out;
};

void add_align(CLI::App& app, AlignArgs& a) {
  auto* c = app.add_subcommand("align", "Label source tokens from a system's corrected output");
  c->add_option("--source", a.source, "Source sentences, one tokenized sentence per line")->required();
  c->add_option("--corrected", a.corrected, "Corrected sentences, line-aligned with --source")
      ->required();
  c->add_option("-o,--out", a.out, "Output TSV (default stdout)");
}

int run_align(const AlignArgs& a) {
  write_text(a.out, tsv_text(align_files(a.source, a.corrected)));
  return 0;
}

// ------------------------------------------------------------------ vocab

struct VocabArgs {
  std::vector<std::string> train;
  std::size_t min_count = 2;
  std::string out;
};

void add_vocab(CLI::App& app, VocabArgs& a) {
  auto* c = app.add_subcommand("vocab", "Build a vocabulary from training TSV files");
  c->add_option("--train", a.train, "Training TSV (repeatable)")->required();
  c->add_option("--min-count", a.min_count, "Minimum token count to get an own entry")
      ->capture_default_str();
  c->add_option("-o,--out", a.out, "Output vocabulary, one token per line")->required();
}

int run_vocab(const VocabArgs& a) {
  const auto vocab = Vocabulary::build(read_corpora(a.train), a.min_count);
  vocab.save(a.out);
  std::fprintf(stderr, "vocabulary: %zu entries\n", vocab.size());
  return 0;
}

// ------------------------------------------------------------------ train

struct TrainArgs {
  std::vector<std::string> train;
  std::string dev;
  std::string out;
  std::string history;
  std::string config;
  std::string vocab;
  std::string embeddings;
  std::string architecture = "bi-lstm";
  std::size_t min_count = 2;
  std::optional<std::size_t> embedding_dim, conv_window, conv_dim, recurrent_dim, pre_output_dim;
  std::optional<std::size_t> epochs, batch_size, seed, patience;
  std::optional<double> learning_rate;
  bool tanh_elman = false;
  bool full_peepholes = false;
  bool incremental = false;
  bool quiet = false;
};

void add_train(CLI::App& app, TrainArgs& a) {
  auto* c = app.add_subcommand("train", "Train a detection model");
  c->add_option("--train", a.train, "Training TSV (repeatable, used in the order given)")
      ->required();
  c->add_option("--dev", a.dev, "Development TSV for per-epoch model selection")->required();
  c->add_option("-o,--out", a.out, "Checkpoint path")->required();
  c->add_option("--history", a.history, "Per-epoch history CSV");
  c->add_option("--config", a.config, "Training config file (key = value)");
  c->add_option("--vocab", a.vocab, "Vocabulary file (default: built from --train)");
  c->add_option("--embeddings", a.embeddings, "Pretrained word vectors (text format)");
  c->add_option("--arch", a.architecture,
                "cnn | deep-cnn | bi-rnn | deep-bi-rnn | bi-lstm | deep-bi-lstm")
      ->capture_default_str();
  c->add_option("--min-count", a.min_count, "Vocabulary minimum count")->capture_default_str();
  c->add_option("--embedding-dim", a.embedding_dim, "Word embedding size (default 300)");
  c->add_option("--window", a.conv_window, "Convolution tokens on either side (default 3)");
  c->add_option("--conv-dim", a.conv_dim, "Convolution output size (default 300)");
  c->add_option("--hidden-dim", a.recurrent_dim, "Recurrent size per direction (default 200)");
  c->add_option("--pre-output-dim", a.pre_output_dim, "Pre-output layer size (default 50)");
  c->add_option("--epochs", a.epochs, "Maximum epochs (overrides config)");
  c->add_option("--batch-size", a.batch_size, "Sentences per batch (overrides config)");
  c->add_option("--lr", a.learning_rate, "Adam learning rate (overrides config)");
  c->add_option("--seed", a.seed, "Random seed (overrides config)");
  c->add_option("--patience", a.patience, "Early-stopping patience (overrides config)");
  c->add_flag("--tanh-elman", a.tanh_elman, "Use tanh instead of sigmoid in Elman layers");
  c->add_flag("--full-peepholes", a.full_peepholes, "Full peephole matrices in LSTM layers");
  c->add_flag("--incremental", a.incremental,
              "Train once per prefix of the --train list (1, 1+2, ...) and report each");
  c->add_flag("-q,--quiet", a.quiet, "No per-epoch progress on stderr");
}

std::string with_suffix(const std::string& path, std::size_t k) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string tag = ".step" + std::to_string(k);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

int run_train(const TrainArgs& a) {
  TrainConfig cfg = a.config.empty() ? TrainConfig{} : TrainConfig::load(a.config);
  if (a.epochs) cfg.max_epochs = *a.epochs;
  if (a.batch_size) cfg.batch_size = *a.batch_size;
  if (a.learning_rate) cfg.learning_rate = *a.learning_rate;
  if (a.seed) cfg.seed = *a.seed;
  if (a.patience) cfg.patience = *a.patience;
  if (cfg.batch_size == 0) throw ConfigError("batch size must be positive");

  const Corpus dev = read_tsv(a.dev);
  std::vector<Corpus> parts;
  for (const auto& p : a.train) parts.push_back(read_tsv(p));

  const std::size_t first_step = a.incremental ? 1 : parts.size();
  for (std::size_t step = first_step; step <= parts.size(); ++step) {
    Corpus train_corpus;
    for (std::size_t k = 0; k < step; ++k) {
      train_corpus.insert(train_corpus.end(), parts[k].begin(), parts[k].end());
    }
    const Vocabulary vocab =
        a.vocab.empty() ? Vocabulary::build(train_corpus, a.min_count) : Vocabulary::load(a.vocab);

    ModelConfig mc;
    mc.architecture = parse_architecture(a.architecture);
    if (a.embedding_dim) mc.embedding_dim = *a.embedding_dim;
    if (a.conv_window) mc.conv_window = *a.conv_window;
    if (a.conv_dim) mc.conv_output_dim = *a.conv_dim;
    if (a.recurrent_dim) mc.recurrent_dim = *a.recurrent_dim;
    if (a.pre_output_dim) mc.pre_output_dim = *a.pre_output_dim;
    if (a.tanh_elman) mc.elman_activation = Activation::kTanh;
    mc.full_peepholes = a.full_peepholes;
    mc.vocab_size = vocab.size();

    Model model(mc);
    model.initialize(cfg.seed);
    if (!a.embeddings.empty()) {
      Tensor table = model.param("embedding.E");
      const auto report = load_pretrained(a.embeddings, vocab, table);
      for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::fprintf(stderr, "pretrained vectors: %zu rows, coverage %.1f%%\n", report.rows_loaded,
                   100.0 * report.coverage);
    }

    if (a.incremental) {
      std::fprintf(stderr, "step %zu: %zu training sentences (through %s)\n", step,
                   train_corpus.size(), a.train[step - 1].c_str());
    }
    EpochCallback progress;
    if (!a.quiet) {
      progress = [](const EpochRecord& r) {
        std::fprintf(stderr, "epoch %zu  loss %.6f  dev P %s R %s F0.5 %s\n", r.epoch, r.loss,
                     percent(r.dev_precision).c_str(), percent(r.dev_recall).c_str(),
                     percent(r.dev_f05).c_str());
      };
    }
    TrainResult result = train(std::move(model), train_corpus, dev, vocab, cfg, progress);
    for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const bool last = step == parts.size();
    const std::string out = last ? a.out : with_suffix(a.out, step);
    save_checkpoint(out, result.best, vocab);
    if (!a.history.empty()) {
      write_text(last ? a.history : with_suffix(a.history, step), history_csv(result.history));
    }
    if (result.best_epoch > 0) {
      const auto& best = result.history[result.best_epoch - 1];
      std::printf("%s\tbest_epoch=%zu\tP=%s\tR=%s\tF0.5=%s\n", out.c_str(), result.best_epoch,
                  percent(best.dev_precision).c_str(), percent(best.dev_recall).c_str(),
                  percent(best.dev_f05).c_str());
    }
  }
  return 0;
}

// ------------------------------------------------------------------- eval

struct EvalArgs {
  std::vector<std::string> system;
  std::vector<std::string> names;
  std::string source;
  std::vector<std::string> corrected;
  std::string gold;
  std::string format = "table";
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* c = app.add_subcommand("eval", "Token-level precision, recall and F0.5");
  c->add_option("--system", a.system, "System label TSV (repeatable)");
  c->add_option("--source", a.source, "Source sentences for correction output");
  c->add_option("--corrected", a.corrected,
                "System correction output aligned with --source (repeatable)");
  c->add_option("--name", a.names, "Row name per system, in order");
  c->add_option("--gold", a.gold, "Reference label TSV")->required();
  c->add_option("--format", a.format, "table | csv")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
}

int run_eval(const EvalArgs& a) {
  if (a.system.empty() && a.corrected.empty()) {
    throw UsageError("eval needs --system or --source with --corrected");
  }
  if (!a.corrected.empty() && a.source.empty()) throw UsageError("--corrected needs --source");
  const Corpus gold = read_tsv(a.gold);
  std::vector<std::pair<std::string, Corpus>> systems;
  for (const auto& p : a.system) systems.emplace_back(p, read_tsv(p));
  for (const auto& p : a.corrected) systems.emplace_back(p, align_files(a.source, p));
  if (!a.names.empty() && a.names.size() != systems.size()) {
    throw UsageError("--name must be given once per system");
  }
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& name = a.names.empty() ? systems[i].first : a.names[i];
    rows.push_back({name, detection_eval(systems[i].second, gold)});
  }
  std::cout << (a.format == "csv" ? format_csv(rows) : format_table(rows));
  return 0;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string model;
  std::string input;
  std::string text;
  std::string out;
  double threshold = 0.5;
  bool probs = false;
};

void add_predict(CLI::App& app, PredictArgs& a) {
  auto* c = app.add_subcommand("predict", "Label tokens with a trained model");
  c->add_option("-m,--model", a.model, "Checkpoint")->required();
  auto* in = c->add_option("--input", a.input, "Token TSV (labels ignored)");
  auto* txt = c->add_option("--text", a.text, "Tokenized text, one sentence per line");
  in->excludes(txt);
  c->add_option("-o,--out", a.out, "Output TSV (default stdout)");
  c->add_option("--threshold", a.threshold, "Label 1 when P(incorrect) >= threshold")
      ->capture_default_str();
  c->add_flag("--probs", a.probs, "Append P(incorrect) as a third column");
}

int run_predict(const PredictArgs& a) {
  if (a.input.empty() == a.text.empty()) throw UsageError("predict needs exactly one of --input, --text");
  const Checkpoint ckpt = load_checkpoint(a.model);
  std::vector<std::vector<std::string>> sentences;
  if (!a.input.empty()) {
    for (auto& s : read_tsv(a.input)) sentences.push_back(std::move(s.tokens));
  } else {
    for (auto& s : read_sentences(a.text)) {
      if (!s.empty()) sentences.push_back(std::move(s));
    }
  }
  std::string text;
  char buf[64];
  for (const auto& tokens : sentences) {
    const Prediction p = predict(ckpt.model, ckpt.vocab, tokens, a.threshold);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      text += tokens[t];
      text += p.labels[t] == kIncorrect ? "\ti" : "\tc";
      if (a.probs) {
        std::snprintf(buf, sizeof buf, "\t%.17g", p.prob_incorrect[t]);
        text += buf;
      }
      text += '\n';
    }
    text += '\n';
  }
  write_text(a.out, text);
  return 0;
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
  std::string model;
  std::string essays;
  std::string dir;
  std::string out;
};

void add_score(CLI::App& app, ScoreArgs& a) {
  auto* c = app.add_subcommand("score", "Correlate an essay correctness feature with gold scores");
  c->add_option("-m,--model", a.model, "Checkpoint")->required();
  c->add_option("--essays", a.essays, "Essay list: id <TAB> gold [<TAB> train|test]")->required();
  c->add_option("--dir", a.dir, "Directory holding <id>.txt files")->required();
  c->add_option("-o,--out", a.out, "Per-essay scores CSV");
}

int run_score(const ScoreArgs& a) {
  const Checkpoint ckpt = load_checkpoint(a.model);
  auto essays = read_essays(a.essays, a.dir);
  assign_default_split(essays);
  for (auto& e : essays) e.feature = extract_feature(ckpt.model, ckpt.vocab, e);
  const auto result = fit_and_correlate(essays);
  std::printf("essays %zu  held out %zu\n", essays.size(), result.eval_indices.size());
  std::printf("fit    score = %.6f * feature + %.6f\n", result.fit.slope, result.fit.intercept);
  std::printf("pearson  %.3f\nspearman %.3f\n", result.pearson, result.spearman);
  if (!a.out.empty()) write_text(a.out, scores_csv(essays, result.fit));
  return 0;
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  double rate = 0.15;
  std::vector<std::string> rules;
  std::string out;
  std::string clean;
  std::string templates;
  bool long_range = false;
  double mismatch_rate = 0.3;
};

void add_synth(CLI::App& app, SynthArgs& a) {
  auto* c = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  c->add_option("-n,--sentences", a.n, "Number of sentences")->capture_default_str();
  c->add_option("--seed", a.seed, "Random seed")->capture_default_str();
  c->add_option("--rate", a.rate, "Rate for every error type")->capture_default_str();
  c->add_option("--rule", a.rules, "Per-type rate as type=rate (repeatable, overrides --rate)");
  c->add_option("--templates", a.templates, "Template file, one template per line");
  c->add_flag("--long-range", a.long_range, "Generate the long-distance agreement task");
  c->add_option("--mismatch-rate", a.mismatch_rate, "Long-range task disagreement rate")
      ->capture_default_str();
  c->add_option("-o,--out", a.out, "Output TSV (default stdout)");
  c->add_option("--clean", a.clean, "Also write the uncorrupted sentences, one per line");
}

int run_synth(const SynthArgs& a) {
  SynthCorpus corpus;
  if (a.long_range) {
    corpus = long_range_task(a.n, a.seed, a.mismatch_rate);
  } else {
    auto rules = uniform_rules(a.rate);
    if (!a.rules.empty()) {
      for (auto& r : rules) r.rate = 0.0;
      for (const auto& rule : a.rules) {
        const auto eq = rule.find('=');
        if (eq == std::string::npos) throw UsageError("--rule expects type=rate, got '" + rule + "'");
        const ErrorType type = parse_error_type(rule.substr(0, eq));
        double rate = 0.0;
        try {
          rate = std::stod(rule.substr(eq + 1));
        } catch (const std::exception&) {
          throw UsageError("bad rate in --rule '" + rule + "'");
        }
        rules[static_cast<std::size_t>(type)].rate = rate;
      }
    }
    std::vector<std::string> templates = default_templates();
    if (!a.templates.empty()) {
      templates.clear();
      std::ifstream in(a.templates);
      if (!in) throw DataError("cannot open " + a.templates);
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() != '#') templates.push_back(line);
      }
    }
    corpus = generate(templates, rules, a.n, a.seed);
  }
  write_text(a.out, tsv_text(corpus.labeled()));
  if (!a.clean.empty()) {
    std::string text;
    for (const auto& s : corpus.sentences) {
      for (std::size_t i = 0; i < s.clean.size(); ++i) text += (i ? " " : "") + s.clean[i];
      text += '\n';
    }
    write_text(a.clean, text);
  }
  for (std::size_t k = 0; k < kNumErrorTypes; ++k) {
    const auto& st = corpus.stats;
    std::fprintf(stderr, "%-22s applied %zu of %zu eligible\n",
                 std::string(error_type_name(static_cast<ErrorType>(k))).c_str(), st.applied[k],
                 st.eligible[k]);
  }
  return 0;
}

// ------------------------------------------------------------------ serve

struct ServeArgs {
  std::string config;
  std::string checkpoint;
  std::string host;
  std::optional<int> port;
  std::optional<std::size_t> max_length;
};

void add_serve(CLI::App& app, ServeArgs& a) {
  auto* c = app.add_subcommand("serve", "Serve POST /predict over HTTP");
  c->add_option("--config", a.config, "Serve config file: host, port, checkpoint, max_length");
  c->add_option("-m,--model", a.checkpoint, "Checkpoint (overrides config)");
  c->add_option("--host", a.host, "Bind address (overrides config)");
  c->add_option("--port", a.port, "Port (overrides config)");
  c->add_option("--max-length", a.max_length, "Maximum text bytes per request (overrides config)");
}

int run_serve(const ServeArgs& a) {
  ServeConfig cfg = a.config.empty() ? ServeConfig{} : ServeConfig::load(a.config);
  if (!a.checkpoint.empty()) cfg.checkpoint = a.checkpoint;
  if (!a.host.empty()) cfg.host = a.host;
  if (a.port) cfg.port = *a.port;
  if (a.max_length) cfg.max_length = *a.max_length;
  if (cfg.checkpoint.empty()) throw UsageError("serve needs a checkpoint (--model or config)");
  PredictService service(load_snapshot(cfg.checkpoint), cfg.max_length);
  HttpServer server(service, cfg);
  std::fprintf(stderr, "serving %s (model %s) on %s:%d\n", cfg.checkpoint.c_str(),
               service.snapshot()->version.c_str(), cfg.host.c_str(), cfg.port);
  if (!server.listen()) {
    throw DataError("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Token-level grammatical error detection"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "Kernel set: scalar | avx2 (default: best available)")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  ConvertArgs convert;
  AlignArgs align;
  VocabArgs vocab;
  TrainArgs train_args;
  EvalArgs eval;
  PredictArgs predict_args;
  ScoreArgs score;
  SynthArgs synth;
  ServeArgs serve;
  add_convert(app, convert);
  add_align(app, align);
  add_vocab(app, vocab);
  add_train(app, train_args);
  add_eval(app, eval);
  add_predict(app, predict_args);
  add_score(app, score);
  add_synth(app, synth);
  add_serve(app, serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simd == "scalar") kernels::set_isa(kernels::Isa::kScalar);
    if (simd == "avx2") kernels::set_isa(kernels::Isa::kAvx2);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "convert") return run_convert(convert);
    if (cmd == "align") return run_align(align);
    if (cmd == "vocab") return run_vocab(vocab);
    if (cmd == "train") return run_train(train_args);
    if (cmd == "eval") return run_eval(eval);
    if (cmd == "predict") return run_predict(predict_args);
    if (cmd == "score") return run_score(score);
    if (cmd == "synth") return run_synth(synth);
    if (cmd == "serve") return run_serve(serve);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "ged: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "ged: %s\n", e.what());
    return e.kind() == ErrorKind::kData ? kExitData : kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ged: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
