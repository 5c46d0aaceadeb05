// Copyright 2026 The Factsum Authors.
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

#include "factsum/cli.h"

#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "factsum/io.h"
#include "factsum/pipeline.h"
#include "factsum/status.h"
#include "json.hpp"

namespace factsum {
namespace {

using nlohmann::json;

struct Settings {
  uint64_t seed = 1;
  SegmenterConfig segmenter;
  EncoderConfig encoder;
  TrainingConfig training;
  SelectionConfig selection;
  OracleMode oracle_mode = OracleMode::kFact;
};

json SettingsToJson(const Settings& s) {
  return {{"seed", s.seed},
          {"segmenter", SegmenterConfigToJson(s.segmenter)},
          {"encoder", EncoderConfigToJson(s.encoder)},
          {"training", TrainingConfigToJson(s.training)},
          {"selection",
           {{"k", s.selection.k},
            {"trigram_blocking", s.selection.trigram_blocking}}},
          {"oracle", {{"mode", OracleModeName(s.oracle_mode)}}}};
}

void ApplyConfigFile(const std::string& path, Settings* s) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config '" + path + "' is not an object");
  try {
    if (j.contains("seed")) s->seed = j["seed"].get<uint64_t>();
    if (j.contains("segmenter"))
      s->segmenter = SegmenterConfigFromJson(j["segmenter"]);
    if (j.contains("encoder")) s->encoder = EncoderConfigFromJson(j["encoder"]);
    if (j.contains("training"))
      s->training = TrainingConfigFromJson(j["training"]);
    if (j.contains("selection")) {
      const json& sel = j["selection"];
      if (sel.contains("k")) s->selection.k = sel["k"].get<int>();
      if (sel.contains("trigram_blocking"))
        s->selection.trigram_blocking = sel["trigram_blocking"].get<bool>();
    }
    if (j.contains("oracle") && j["oracle"].contains("mode"))
      s->oracle_mode = ParseOracleMode(j["oracle"]["mode"].get<std::string>());
  } catch (const json::exception& e) {
    throw UsageError("bad config '" + path + "': " + e.what());
  }
}

std::set<std::string> SplitLabels(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

// Raw flag values; only flags the user actually gave override the config.
struct Flags {
  std::string input, output = "-", config, manifest;
  uint64_t seed = 1;
  bool warnings_as_errors = false;

  std::string split_labels, merge_labels;
  int conj_distance = 0, min_unit_length = 0, max_clause_length = 0;

  std::string mode, report;

  int d_model = 0, layers = 0, heads = 0, d_ff = 0, max_len = 0;
  bool no_segment = false, no_position = false;
  std::string classifier_mode, word_scope, mask_style;
  int steps = 0, batch_size = 0, warmup = 0, checkpoint_every = 0;
  double lr_coefficient = 0.0;
  std::string loss_curve;

  std::string model;
  int k = 0, lead = 0;
  bool no_trigram_blocking = false, oracle = false;

  std::string reference, label = "system", facts, record;
};

class Run {
 public:
  Run(std::string command, std::ostream& out, std::ostream& err)
      : command_(std::move(command)), out_(out), err_(err) {}

  Settings settings;

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const std::string& command() const { return command_; }

  void Input(const std::string& path) { inputs_.push_back(path); }

  // "-" writes to standard output.
  void Emit(const std::string& path, const std::string& contents) {
    if (path == "-") {
      out_ << contents;
      return;
    }
    WriteFileAtomic(path, contents);
    outputs_.push_back(path);
  }
  void Produced(const std::string& path) { outputs_.push_back(path); }

  void Warn(const std::string& message) {
    err_ << "warning: " << message << '\n';
    ++warnings_;
  }
  void RecordFailed(const RecordError& e) {
    err_ << "error: record";
    if (!e.record_id.empty()) err_ << " '" << e.record_id << "'";
    err_ << " #" << e.ordinal;
    if (e.line > 0) err_ << " (line " << e.line << ")";
    err_ << ": " << e.message << '\n';
    ++record_errors_;
  }
  void RecordFailed(const std::vector<RecordError>& errors) {
    for (const RecordError& e : errors) RecordFailed(e);
  }

  int warnings() const { return warnings_; }
  int record_errors() const { return record_errors_; }

  json Manifest(double seconds, int exit_code) const {
    return {{"command", command_},
            {"config", SettingsToJson(settings)},
            {"inputs", inputs_},
            {"seed", settings.seed},
            {"outputs", outputs_},
            {"wall_clock_seconds", seconds},
            {"exit_code", exit_code}};
  }

 private:
  std::string command_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> inputs_, outputs_;
  int warnings_ = 0;
  int record_errors_ = 0;
};

std::string Lines(const std::vector<json>& objects) {
  std::string text;
  for (const json& j : objects) text += j.dump() + '\n';
  return text;
}

void RequireRecords(bool empty, const std::string& path) {
  if (empty) throw UsageError("'" + path + "' holds no usable records");
}

std::vector<DocumentRecord> LoadDocuments(const Flags& f, Run* run) {
  std::ifstream in = OpenInput(f.input);
  run->Input(f.input);
  std::vector<RecordError> errors;
  std::vector<DocumentRecord> docs = ReadDataset(in, &errors);
  run->RecordFailed(errors);
  RequireRecords(docs.empty(), f.input);
  return docs;
}

std::vector<FactsRecord> LoadFacts(const std::string& path, Run* run) {
  std::ifstream in = OpenInput(path);
  run->Input(path);
  std::vector<RecordError> errors;
  std::vector<FactsRecord> records = ReadFactsFile(in, &errors);
  run->RecordFailed(errors);
  RequireRecords(records.empty(), path);
  return records;
}

std::vector<LabeledRecord> LoadLabels(const std::string& path, Run* run) {
  std::ifstream in = OpenInput(path);
  run->Input(path);
  std::vector<RecordError> errors;
  std::vector<LabeledRecord> records = ReadLabelsFile(in, &errors);
  run->RecordFailed(errors);
  RequireRecords(records.empty(), path);
  return records;
}

std::vector<SummaryRecord> LoadSummaries(const std::string& path, Run* run) {
  std::ifstream in = OpenInput(path);
  run->Input(path);
  return ReadSummaries(in);
}

void CmdSegment(const Flags& f, Run* run) {
  std::vector<json> lines;
  int ordinal = 0;
  for (const DocumentRecord& doc : LoadDocuments(f, run)) {
    ++ordinal;
    try {
      lines.push_back(FactsRecordToJson(SegmentRecord(doc, run->settings.segmenter)));
    } catch (const DataError& e) {
      run->RecordFailed({ordinal, 0, doc.id, e.what()});
    }
  }
  run->Emit(f.output, Lines(lines));
}

constexpr char kRougeHeader[] = "system,rouge_1,rouge_2,rouge_l,documents\n";

void CmdOracle(const Flags& f, Run* run) {
  const OracleMode mode = run->settings.oracle_mode;
  std::vector<json> lines;
  RougeAccumulator rouge;
  for (const FactsRecord& record : LoadFacts(f.input, run)) {
    const Tokens reference = SummaryTokens(record);
    if (reference.empty()) {
      run->Warn("record '" + record.id + "' has no summary; skipped");
      continue;
    }
    LabeledRecord labeled{record, ComputeOracle(record, mode)};
    rouge.Add(SummaryCandidateTokens(OracleSummary(labeled)), reference);
    lines.push_back(LabeledRecordToJson(labeled));
  }
  run->Emit(f.output, Lines(lines));
  std::ostringstream report;
  report << kRougeHeader;
  WriteRougeReport(OracleModeName(mode) + "-oracle", rouge.Report(), report);
  if (!f.report.empty()) {
    run->Emit(f.report, report.str());
  } else if (f.output != "-") {
    run->out() << report.str();
  } else {
    run->err() << report.str();
  }
}

void CmdTrain(const Flags& f, Run* run) {
  if (f.output == "-") throw UsageError("train needs --output for the checkpoint");
  Settings& s = run->settings;
  const std::vector<LabeledRecord> records = LoadLabels(f.input, run);
  const OracleMode mode = records.front().oracle.mode;
  std::vector<const LabeledRecord*> usable;
  std::vector<HierSequence> sequences;
  for (size_t i = 0; i < records.size(); ++i) {
    const LabeledRecord& r = records[i];
    if (r.oracle.mode != mode) {
      throw UsageError("labels mix " + OracleModeName(mode) + " and " +
                       OracleModeName(r.oracle.mode) + " oracles");
    }
    try {
      sequences.push_back(BuildRecordSequence(r.facts, mode, s.encoder.max_len));
      usable.push_back(&r);
    } catch (const DataError& e) {
      run->RecordFailed({static_cast<int>(i) + 1, 0, r.facts.id, e.what()});
    }
  }
  RequireRecords(usable.empty(), f.input);
  const Vocabulary vocab = Vocabulary::Build(sequences);
  s.encoder.vocab_size = vocab.size();
  s.encoder.Validate();
  s.training.Validate();

  std::vector<TrainingExample> examples;
  for (const LabeledRecord* r : usable) {
    examples.push_back(MakeTrainingExample(*r, vocab, s.encoder));
  }
  const EncoderParams init = EncoderParams::Initialize(s.encoder, s.seed);
  const TrainResult result = Train(
      examples, init, s.encoder, s.training,
      [&](long step, const EncoderParams& params) {
        const std::string path = f.output + ".step" + std::to_string(step);
        SaveCheckpoint(path, s.encoder, vocab, params);
        run->Produced(path);
      });
  SaveCheckpoint(f.output, s.encoder, vocab, result.params);
  run->Produced(f.output);
  std::ostringstream curve;
  WriteLossCurve(result.curve, curve);
  run->Emit(f.loss_curve.empty() ? f.output + ".loss.csv" : f.loss_curve,
            curve.str());
  run->out() << "trained " << result.curve.size() << " steps on "
             << examples.size() << " records, training accuracy "
             << FormatDouble(FactAccuracy(examples, result.params, s.encoder))
             << '\n';
}

void CmdSummarize(const Flags& f, Run* run, bool lead_given) {
  std::vector<SummaryRecord> summaries;
  if (f.oracle) {
    for (const LabeledRecord& r : LoadLabels(f.input, run)) {
      summaries.push_back(OracleSummary(r));
    }
  } else if (lead_given) {
    for (const FactsRecord& r : LoadFacts(f.input, run)) {
      summaries.push_back(LeadSummary(r, f.lead));
    }
  } else {
    if (f.model.empty()) {
      throw UsageError("summarize needs --model, --lead or --oracle");
    }
    run->settings.selection.Validate();
    const Checkpoint model = LoadCheckpoint(f.model);
    run->Input(f.model);
    int ordinal = 0;
    for (const FactsRecord& r : LoadFacts(f.input, run)) {
      ++ordinal;
      try {
        summaries.push_back(SummarizeRecord(r, model, run->settings.selection));
      } catch (const DataError& e) {
        run->RecordFailed({ordinal, 0, r.id, e.what()});
      }
    }
  }
  std::ostringstream text;
  WriteSummaries(summaries, text);
  run->Emit(f.output, text.str());
}

std::map<std::string, FactsRecord> IndexFacts(const std::string& path,
                                              Run* run) {
  std::map<std::string, FactsRecord> out;
  for (FactsRecord& r : LoadFacts(path, run)) {
    const std::string id = r.id;
    out.emplace(id, std::move(r));
  }
  return out;
}

void CmdEvaluate(const Flags& f, Run* run) {
  if (f.reference.empty()) throw UsageError("evaluate needs --reference");
  const std::vector<SummaryRecord> summaries = LoadSummaries(f.input, run);
  const auto references = IndexFacts(f.reference, run);
  RougeAccumulator rouge;
  int ordinal = 0;
  for (const SummaryRecord& s : summaries) {
    ++ordinal;
    auto it = references.find(s.id);
    if (it == references.end()) {
      run->RecordFailed({ordinal, 0, s.id, "no reference record"});
      continue;
    }
    const Tokens reference = SummaryTokens(it->second);
    if (reference.empty()) {
      run->Warn("record '" + s.id + "' has no reference summary; skipped");
      continue;
    }
    rouge.Add(SummaryCandidateTokens(s), reference);
  }
  std::ostringstream report;
  report << kRougeHeader;
  WriteRougeReport(f.label, rouge.Report(), report);
  run->Emit(f.output, report.str());
}

void CmdPositions(const Flags& f, Run* run) {
  if (f.facts.empty()) throw UsageError("positions needs --facts");
  const std::vector<SummaryRecord> summaries = LoadSummaries(f.input, run);
  const auto records = IndexFacts(f.facts, run);
  std::vector<std::vector<int>> positions;
  int ordinal = 0;
  for (const SummaryRecord& s : summaries) {
    ++ordinal;
    auto it = records.find(s.id);
    if (it == records.end()) {
      run->RecordFailed({ordinal, 0, s.id, "no facts record"});
      continue;
    }
    try {
      positions.push_back(FactPositions(s, it->second));
    } catch (const DataError& e) {
      run->RecordFailed({ordinal, 0, s.id, e.what()});
    }
  }
  std::ostringstream text;
  WritePositionHistogram(ComputePositionHistogram(positions), text);
  run->Emit(f.output, text.str());
}

void CmdStats(const Flags& f, Run* run) {
  std::ostringstream text;
  WriteCorpusStats(
      ComputeCorpusStats(LoadDocuments(f, run), run->settings.segmenter), text);
  run->Emit(f.output, text.str());
}

void CmdMask(const Flags& f, Run* run) {
  const std::vector<FactsRecord> records = LoadFacts(f.input, run);
  const FactsRecord* record = &records.front();
  if (!f.record.empty()) {
    record = nullptr;
    for (const FactsRecord& r : records) {
      if (r.id == f.record) record = &r;
    }
    if (record == nullptr) throw UsageError("no record '" + f.record + "'");
  }
  const EncoderConfig& e = run->settings.encoder;
  const HierSequence seq =
      BuildRecordSequence(*record, OracleMode::kFact, e.max_len);
  run->Emit(f.output, BuildMask(seq, e.word_scope).Dump());
}

void AddCommon(CLI::App* sub, Flags* f, bool input_required = true) {
  auto* input = sub->add_option("--input,-i", f->input, "Input file");
  if (input_required) input->required();
  sub->add_option("--output,-o", f->output, "Output file ('-' for stdout)");
  sub->add_option("--config", f->config,
                  std::string("JSON config file (default: $") + kConfigEnvVar +
                      ")");
  sub->add_option("--seed", f->seed, "Seed for every random choice");
  sub->add_option("--manifest", f->manifest, "Manifest file to append to");
  sub->add_flag("--warnings-as-errors", f->warnings_as_errors,
                "Exit 2 when any warning was issued");
}

void AddSegmenterFlags(CLI::App* sub, Flags* f) {
  sub->add_option("--split-labels", f->split_labels,
                  "Comma-separated relations that split a sentence");
  sub->add_option("--merge-labels", f->merge_labels,
                  "Comma-separated clause relations merged when short");
  sub->add_option("--conj-distance", f->conj_distance,
                  "Conjunct distance below which conjuncts stay together");
  sub->add_option("--min-unit-length", f->min_unit_length,
                  "Shortest fact in tokens");
  sub->add_option("--max-clause-length", f->max_clause_length,
                  "Longest clause merged back into its head");
}

void AddEncoderFlags(CLI::App* sub, Flags* f) {
  sub->add_option("--d-model", f->d_model);
  sub->add_option("--layers", f->layers);
  sub->add_option("--heads", f->heads);
  sub->add_option("--d-ff", f->d_ff);
  sub->add_option("--max-len", f->max_len, "Sequence length cap");
  sub->add_flag("--no-segment", f->no_segment, "Drop segment embeddings");
  sub->add_flag("--no-position", f->no_position, "Drop position embeddings");
  sub->add_option("--classifier-mode", f->classifier_mode)
      ->check(CLI::IsMember({"f", "d+f", "s+f", "d+s+f"}));
  sub->add_option("--word-scope", f->word_scope)
      ->check(CLI::IsMember({"global", "within_fact"}));
  sub->add_option("--mask-style", f->mask_style)
      ->check(CLI::IsMember({"additive", "multiplicative"}));
}

bool Given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void ApplyFlags(const CLI::App* sub, const Flags& f, Settings* s) {
  if (Given(sub, "--seed")) s->seed = f.seed;
  s->training.seed = s->seed;

  SegmenterConfig& seg = s->segmenter;
  if (Given(sub, "--split-labels")) seg.split_labels = SplitLabels(f.split_labels);
  if (Given(sub, "--merge-labels")) seg.merge_labels = SplitLabels(f.merge_labels);
  if (Given(sub, "--conj-distance")) seg.conj_distance_threshold = f.conj_distance;
  if (Given(sub, "--min-unit-length")) seg.min_unit_length = f.min_unit_length;
  if (Given(sub, "--max-clause-length"))
    seg.max_clause_length = f.max_clause_length;
  seg.Validate();

  if (Given(sub, "--mode")) s->oracle_mode = ParseOracleMode(f.mode);

  EncoderConfig& e = s->encoder;
  if (Given(sub, "--d-model")) e.d_model = f.d_model;
  if (Given(sub, "--layers")) e.n_layers = f.layers;
  if (Given(sub, "--heads")) e.n_heads = f.heads;
  if (Given(sub, "--d-ff")) e.d_ff = f.d_ff;
  if (Given(sub, "--max-len")) e.max_len = f.max_len;
  if (f.no_segment) e.use_segment = false;
  if (f.no_position) e.use_position = false;
  if (Given(sub, "--classifier-mode"))
    e.classifier_mode = ParseClassifierMode(f.classifier_mode);
  if (Given(sub, "--word-scope")) e.word_scope = ParseWordScope(f.word_scope);
  if (Given(sub, "--mask-style")) e.mask_style = ParseMaskStyle(f.mask_style);

  TrainingConfig& t = s->training;
  if (Given(sub, "--steps")) t.max_steps = f.steps;
  if (Given(sub, "--batch-size")) t.batch_size = f.batch_size;
  if (Given(sub, "--warmup")) t.warmup = f.warmup;
  if (Given(sub, "--lr-coefficient")) t.lr_coefficient = f.lr_coefficient;
  if (Given(sub, "--checkpoint-every")) t.checkpoint_every = f.checkpoint_every;

  if (Given(sub, "--k")) s->selection.k = f.k;
  if (f.no_trigram_blocking) s->selection.trigram_blocking = false;
}

std::string ManifestPath(const Flags& f) {
  if (!f.manifest.empty()) return f.manifest;
  if (!f.output.empty() && f.output != "-") return f.output + ".manifest.jsonl";
  return "factsum.manifest.jsonl";
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Fact-level extractive summarization toolkit", "factsum"};
  app.require_subcommand(1);
  Flags f;

  auto* segment = app.add_subcommand("segment", "Split documents into facts");
  AddCommon(segment, &f);
  AddSegmenterFlags(segment, &f);

  auto* oracle = app.add_subcommand("oracle", "Label extraction units");
  AddCommon(oracle, &f);
  oracle->add_option("--mode", f.mode, "Oracle granularity")
      ->check(CLI::IsMember({"fact", "sentence"}));
  oracle->add_option("--report", f.report, "Write the oracle ROUGE here");

  auto* train = app.add_subcommand("train", "Train the fact scorer");
  AddCommon(train, &f);
  AddEncoderFlags(train, &f);
  train->add_option("--steps", f.steps, "Optimizer steps");
  train->add_option("--batch-size", f.batch_size);
  train->add_option("--warmup", f.warmup, "Warmup steps");
  train->add_option("--lr-coefficient", f.lr_coefficient);
  train->add_option("--checkpoint-every", f.checkpoint_every,
                    "Also save <output>.stepN every N steps");
  train->add_option("--loss-curve", f.loss_curve,
                    "Loss curve CSV (default <output>.loss.csv)");

  auto* summarize = app.add_subcommand("summarize", "Select summary facts");
  AddCommon(summarize, &f);
  summarize->add_option("--model", f.model, "Checkpoint file");
  summarize->add_option("--k", f.k, "Facts per summary");
  summarize->add_flag("--no-trigram-blocking", f.no_trigram_blocking);
  auto* lead = summarize->add_option("--lead", f.lead,
                                     "Lead baseline: facts of the first N sentences");
  auto* use_oracle = summarize->add_flag(
      "--oracle", f.oracle, "Input is a labels file; emit its oracle summary");
  lead->excludes(use_oracle);

  auto* evaluate = app.add_subcommand("evaluate", "Score summaries with ROUGE");
  AddCommon(evaluate, &f);
  evaluate->add_option("--reference", f.reference, "Facts file with gold summaries");
  evaluate->add_option("--label", f.label, "System name in the report");

  auto* positions =
      app.add_subcommand("positions", "Histogram of selected fact positions");
  AddCommon(positions, &f);
  positions->add_option("--facts", f.facts, "Facts file the summaries came from");

  auto* stats = app.add_subcommand("stats", "Sentence vs fact statistics");
  AddCommon(stats, &f);
  AddSegmenterFlags(stats, &f);

  auto* mask = app.add_subcommand("mask", "Dump one record's attention mask");
  AddCommon(mask, &f);
  mask->add_option("--record", f.record, "Record id (default: first)");
  mask->add_option("--word-scope", f.word_scope)
      ->check(CLI::IsMember({"global", "within_fact"}));
  mask->add_option("--max-len", f.max_len, "Sequence length cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorClass::kUsage);
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), out, err);
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    std::string config = f.config;
    if (config.empty()) {
      if (const char* env = std::getenv(kConfigEnvVar)) config = env;
    }
    if (!config.empty()) {
      ApplyConfigFile(config, &run.settings);
      run.Input(config);
    }
    ApplyFlags(sub, f, &run.settings);

    if (sub == segment) CmdSegment(f, &run);
    else if (sub == oracle) CmdOracle(f, &run);
    else if (sub == train) CmdTrain(f, &run);
    else if (sub == summarize) CmdSummarize(f, &run, lead->count() > 0);
    else if (sub == evaluate) CmdEvaluate(f, &run);
    else if (sub == positions) CmdPositions(f, &run);
    else if (sub == stats) CmdStats(f, &run);
    else CmdMask(f, &run);

    if (run.record_errors() > 0 ||
        (f.warnings_as_errors && run.warnings() > 0)) {
      code = static_cast<int>(ErrorClass::kData);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    code = e.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    code = static_cast<int>(ErrorClass::kInternal);
  }

  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  try {
    AppendLine(ManifestPath(f), run.Manifest(seconds, code).dump());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (code == 0) code = e.exit_code();
  }
  return code;
}

}  // namespace factsum
