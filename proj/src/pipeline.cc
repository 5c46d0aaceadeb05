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

#include "factsum/pipeline.h"

#include <iomanip>
#include <sstream>

#include "factsum/status.h"

namespace factsum {
namespace {

nlohmann::json SentenceFactsToJson(const std::vector<SentenceFacts>& facts) {
  nlohmann::json out = nlohmann::json::array();
  for (const SentenceFacts& sentence : facts) {
    nlohmann::json row = nlohmann::json::array();
    for (const Fact& f : sentence) {
      row.push_back({{"span", {f.span.begin, f.span.end}},
                     {"tokens", f.tokens}});
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<SentenceFacts> SentenceFactsFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw DataError("fact lists must be arrays");
  std::vector<SentenceFacts> out;
  for (size_t s = 0; s < j.size(); ++s) {
    SentenceFacts sentence;
    int expected_begin = 0;
    for (size_t k = 0; k < j[s].size(); ++k) {
      const nlohmann::json& f = j[s][k];
      Fact fact;
      fact.sentence_index = static_cast<int>(s);
      fact.fact_index = static_cast<int>(k);
      fact.span.begin = f.at("span").at(0).get<int>();
      fact.span.end = f.at("span").at(1).get<int>();
      fact.tokens = f.at("tokens").get<std::vector<std::string>>();
      if (fact.tokens.empty() || fact.span.begin != expected_begin ||
          fact.span.length() != static_cast<int>(fact.tokens.size())) {
        throw DataError("sentence " + std::to_string(s) + " fact " +
                        std::to_string(k) + " has an inconsistent span");
      }
      expected_begin = fact.span.end;
      sentence.push_back(std::move(fact));
    }
    if (sentence.empty()) {
      throw DataError("sentence " + std::to_string(s) + " has no facts");
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

template <typename Record>
std::vector<Record> ReadJsonLines(std::istream& in,
                                  Record (*convert)(const nlohmann::json&),
                                  std::vector<RecordError>* errors) {
  std::vector<Record> out;
  std::string line;
  int line_number = 0, ordinal = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++ordinal;
    std::string id;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      if (j.is_object() && j.contains("id") && j["id"].is_string())
        id = j["id"].get<std::string>();
      out.push_back(convert(j));
    } catch (const nlohmann::json::exception& e) {
      errors->push_back({ordinal, line_number, id, e.what()});
    } catch (const DataError& e) {
      errors->push_back({ordinal, line_number, id, e.what()});
    }
  }
  return out;
}

Tokens Lowered(const std::vector<std::string>& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(Lowercase(t));
  return out;
}

}  // namespace

FactsRecord SegmentRecord(const DocumentRecord& doc,
                          const SegmenterConfig& config) {
  FactsRecord out;
  out.id = doc.id;
  out.body = SegmentSentences(doc.body, config);
  out.summary = SegmentSentences(doc.gold_summary, config);
  return out;
}

nlohmann::json FactsRecordToJson(const FactsRecord& record) {
  return {{"id", record.id},
          {"body", SentenceFactsToJson(record.body)},
          {"summary", SentenceFactsToJson(record.summary)}};
}

FactsRecord FactsRecordFromJson(const nlohmann::json& j) {
  FactsRecord out;
  try {
    out.id = j.at("id").get<std::string>();
    out.body = SentenceFactsFromJson(j.at("body"));
    if (out.body.empty()) throw DataError("empty body");
    if (j.contains("summary")) out.summary = SentenceFactsFromJson(j["summary"]);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("record '" + out.id + "': " + e.what());
  } catch (const DataError& e) {
    throw DataError("record '" + out.id + "': " + e.what());
  }
  return out;
}

nlohmann::json LabeledRecordToJson(const LabeledRecord& record) {
  nlohmann::json j = FactsRecordToJson(record.facts);
  j["oracle"] = OracleLabelsToJson(record.oracle);
  return j;
}

LabeledRecord LabeledRecordFromJson(const nlohmann::json& j) {
  LabeledRecord out;
  out.facts = FactsRecordFromJson(j);
  if (!j.contains("oracle")) {
    throw DataError("record '" + out.facts.id + "' has no oracle labels");
  }
  out.oracle = OracleLabelsFromJson(j["oracle"]);
  const size_t units = SourceUnits(out.facts, out.oracle.mode).size();
  if (out.oracle.labels.size() != units) {
    throw DataError("record '" + out.facts.id + "' has " +
                    std::to_string(out.oracle.labels.size()) +
                    " labels for " + std::to_string(units) + " units");
  }
  return out;
}

std::vector<FactsRecord> ReadFactsFile(std::istream& in,
                                       std::vector<RecordError>* errors) {
  return ReadJsonLines<FactsRecord>(in, &FactsRecordFromJson, errors);
}

std::vector<LabeledRecord> ReadLabelsFile(std::istream& in,
                                          std::vector<RecordError>* errors) {
  return ReadJsonLines<LabeledRecord>(in, &LabeledRecordFromJson, errors);
}

std::vector<Tokens> SourceUnits(const FactsRecord& record, OracleMode mode) {
  std::vector<Tokens> units;
  for (const SentenceFacts& sentence : record.body) {
    if (mode == OracleMode::kFact) {
      for (const Fact& f : sentence) units.push_back(Lowered(f.tokens));
    } else {
      Tokens joined;
      for (const Fact& f : sentence) {
        for (const std::string& t : f.tokens) joined.push_back(Lowercase(t));
      }
      units.push_back(std::move(joined));
    }
  }
  return units;
}

std::vector<Tokens> SummaryFactTokens(const FactsRecord& record) {
  std::vector<Tokens> out;
  for (const SentenceFacts& sentence : record.summary) {
    for (const Fact& f : sentence) out.push_back(Lowered(f.tokens));
  }
  return out;
}

Tokens SummaryTokens(const FactsRecord& record) {
  Tokens out;
  for (const Tokens& f : SummaryFactTokens(record)) {
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

OracleLabels ComputeOracle(const FactsRecord& record, OracleMode mode) {
  const std::vector<Tokens> units = SourceUnits(record, mode);
  if (mode == OracleMode::kFact) {
    return AlignFacts(units, SummaryFactTokens(record));
  }
  OracleLabels out;
  out.mode = OracleMode::kSentence;
  out.labels = GreedySentenceOracle(units, SummaryTokens(record));
  return out;
}

void RougeAccumulator::Add(const Tokens& candidate, const Tokens& reference) {
  const RougeSuite s = ComputeRouge(candidate, reference);
  r1_ += s.r1.f1;
  r2_ += s.r2.f1;
  rl_ += s.rl.f1;
  ++documents_;
}

RougeReport RougeAccumulator::Report() const {
  RougeReport r;
  r.documents = documents_;
  if (documents_ > 0) {
    r.r1 = 100.0 * r1_ / documents_;
    r.r2 = 100.0 * r2_ / documents_;
    r.rl = 100.0 * rl_ / documents_;
  }
  return r;
}

void WriteRougeReport(const std::string& label, const RougeReport& report,
                      std::ostream& out) {
  out << label << ',' << std::fixed << std::setprecision(2) << report.r1
      << ',' << report.r2 << ',' << report.rl << ',' << report.documents
      << '\n';
  out.unsetf(std::ios::floatfield);
}

std::vector<SentenceFacts> ExtractionUnits(const FactsRecord& record,
                                           OracleMode mode) {
  if (mode == OracleMode::kFact) return record.body;
  std::vector<SentenceFacts> out;
  for (const SentenceFacts& sentence : record.body) {
    Fact whole;
    whole.sentence_index = sentence.front().sentence_index;
    whole.fact_index = 0;
    whole.span = {sentence.front().span.begin, sentence.back().span.end};
    for (const Fact& f : sentence) {
      whole.tokens.insert(whole.tokens.end(), f.tokens.begin(), f.tokens.end());
    }
    out.push_back({whole});
  }
  return out;
}

HierSequence BuildRecordSequence(const FactsRecord& record, OracleMode mode,
                                 int max_len) {
  return BuildSequence(ExtractionUnits(record, mode), max_len);
}

TrainingExample MakeTrainingExample(const LabeledRecord& record,
                                    const Vocabulary& vocab,
                                    const EncoderConfig& config) {
  const HierSequence seq =
      BuildRecordSequence(record.facts, record.oracle.mode, config.max_len);
  TrainingExample ex;
  ex.id = record.facts.id;
  ex.input = MakeEncoderInput(seq, vocab, config.word_scope);
  for (const SequenceFact& f : seq.facts) {
    ex.labels.push_back(record.oracle.labels.at(f.ordinal));
  }
  return ex;
}

SummaryRecord SummarizeRecord(const FactsRecord& record,
                              const Checkpoint& model,
                              const SelectionConfig& selection) {
  const HierSequence seq =
      BuildRecordSequence(record, OracleMode::kFact, model.config.max_len);
  const EncoderInput input =
      MakeEncoderInput(seq, model.vocab, model.config.word_scope);
  const std::vector<double> scores =
      ScoreFacts(input, model.params, model.config);
  // Facts cut by truncation are not candidates.
  const std::vector<Fact> all = Flatten(record.body);
  const std::vector<Fact> visible(all.begin(), all.begin() + scores.size());
  SummaryRecord out;
  out.id = record.id;
  for (int index : RankAndSelect(scores, visible, selection)) {
    const Fact& f = visible[index];
    out.facts.push_back({f.sentence_index, f.fact_index, f.tokens});
  }
  return out;
}

SummaryRecord LeadSummary(const FactsRecord& record, int n) {
  if (n < 1) throw UsageError("lead baseline needs n >= 1");
  SummaryRecord out;
  out.id = record.id;
  for (int s = 0; s < n && s < static_cast<int>(record.body.size()); ++s) {
    for (const Fact& f : record.body[s]) {
      out.facts.push_back({f.sentence_index, f.fact_index, f.tokens});
    }
  }
  return out;
}

SummaryRecord OracleSummary(const LabeledRecord& record) {
  SummaryRecord out;
  out.id = record.facts.id;
  size_t unit = 0;
  for (const SentenceFacts& sentence : record.facts.body) {
    if (record.oracle.mode == OracleMode::kSentence) {
      if (record.oracle.labels[unit++]) {
        for (const Fact& f : sentence) {
          out.facts.push_back({f.sentence_index, f.fact_index, f.tokens});
        }
      }
      continue;
    }
    for (const Fact& f : sentence) {
      if (record.oracle.labels[unit++]) {
        out.facts.push_back({f.sentence_index, f.fact_index, f.tokens});
      }
    }
  }
  return out;
}

void WriteSummaries(const std::vector<SummaryRecord>& summaries,
                    std::ostream& out) {
  for (const SummaryRecord& s : summaries) {
    out << "## " << s.id << '\n';
    for (const SelectedFact& f : s.facts) {
      out << '(' << f.sentence_index << ", " << f.fact_index << ")\t";
      for (size_t i = 0; i < f.tokens.size(); ++i) {
        if (i > 0) out << ' ';
        out << f.tokens[i];
      }
      out << '\n';
    }
    out << '\n';
  }
}

std::vector<SummaryRecord> ReadSummaries(std::istream& in) {
  std::vector<SummaryRecord> out;
  std::string line;
  int line_number = 0;
  bool open = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      open = false;
      continue;
    }
    if (line.rfind("## ", 0) == 0) {
      out.push_back({line.substr(3), {}});
      open = true;
      continue;
    }
    const size_t tab = line.find('\t');
    int sentence = 0, fact = 0;
    if (!open || tab == std::string::npos ||
        std::sscanf(line.c_str(), "(%d, %d)", &sentence, &fact) != 2) {
      throw DataError("summaries line " + std::to_string(line_number) +
                      ": expected '(s, f)<TAB>text'");
    }
    SelectedFact selected{sentence, fact, {}};
    std::istringstream words(line.substr(tab + 1));
    std::string w;
    while (words >> w) selected.tokens.push_back(w);
    out.back().facts.push_back(std::move(selected));
  }
  return out;
}

Tokens SummaryCandidateTokens(const SummaryRecord& summary) {
  Tokens out;
  for (const SelectedFact& f : summary.facts) {
    for (const std::string& t : f.tokens) out.push_back(Lowercase(t));
  }
  return out;
}

std::vector<int> FactPositions(const SummaryRecord& summary,
                               const FactsRecord& record) {
  std::vector<int> offsets;
  int running = 0;
  for (const SentenceFacts& sentence : record.body) {
    offsets.push_back(running);
    running += static_cast<int>(sentence.size());
  }
  std::vector<int> out;
  for (const SelectedFact& f : summary.facts) {
    if (f.sentence_index < 0 ||
        f.sentence_index >= static_cast<int>(record.body.size()) ||
        f.fact_index < 0 ||
        f.fact_index >=
            static_cast<int>(record.body[f.sentence_index].size())) {
      throw DataError("record '" + record.id + "' has no fact (" +
                      std::to_string(f.sentence_index) + ", " +
                      std::to_string(f.fact_index) + ")");
    }
    out.push_back(offsets[f.sentence_index] + f.fact_index + 1);
  }
  return out;
}

}  // namespace factsum
