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

// Intermediate artifacts handed between pipeline stages, and the per-record
// operations behind each CLI command.
//
// Facts file (one JSON object per line):
//   {"id": ..., "body": [[fact, ...], ...], "summary": [[fact, ...], ...]}
//   fact = {"span": [begin, end], "tokens": [...]}
// The outer arrays are sentences; sentence and fact indices are implicit.
//
// Labels file: a facts record plus an "oracle" object (see
// OracleLabelsToJson).
//
// Summaries file (text):
//   ## <id>
//   (<sentence_index>, <fact_index>)<TAB><space-joined tokens>
//   ...
//   <blank line>

#ifndef FACTSUM_PIPELINE_H_
#define FACTSUM_PIPELINE_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "factsum/aligner.h"
#include "factsum/corpus.h"
#include "factsum/encoder.h"
#include "factsum/rouge.h"
#include "factsum/segmenter.h"
#include "factsum/select.h"
#include "factsum/train.h"
#include "json.hpp"

namespace factsum {

struct FactsRecord {
  std::string id;
  std::vector<SentenceFacts> body;
  std::vector<SentenceFacts> summary;

  bool operator==(const FactsRecord&) const = default;
};

FactsRecord SegmentRecord(const DocumentRecord& doc,
                          const SegmenterConfig& config);

nlohmann::json FactsRecordToJson(const FactsRecord& record);
FactsRecord FactsRecordFromJson(const nlohmann::json& j);

struct LabeledRecord {
  FactsRecord facts;
  OracleLabels oracle;
};

nlohmann::json LabeledRecordToJson(const LabeledRecord& record);
LabeledRecord LabeledRecordFromJson(const nlohmann::json& j);

// Each reads one JSON object per nonblank line. Lines that fail to parse or
// convert are reported in `errors` and skipped.
std::vector<FactsRecord> ReadFactsFile(std::istream& in,
                                       std::vector<RecordError>* errors);
std::vector<LabeledRecord> ReadLabelsFile(std::istream& in,
                                          std::vector<RecordError>* errors);

// Lowercased token sequences of the extraction units: every fact in
// document order, or every sentence (its facts joined back together).
std::vector<Tokens> SourceUnits(const FactsRecord& record, OracleMode mode);
std::vector<Tokens> SummaryFactTokens(const FactsRecord& record);
Tokens SummaryTokens(const FactsRecord& record);

// Fact-mode alignment or the greedy sentence oracle for one record.
OracleLabels ComputeOracle(const FactsRecord& record, OracleMode mode);

// Mean F1 (in percent) of ROUGE-1/2/L over candidate/reference pairs.
struct RougeReport {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
  int documents = 0;
};

class RougeAccumulator {
 public:
  void Add(const Tokens& candidate, const Tokens& reference);
  RougeReport Report() const;

 private:
  double r1_ = 0.0, r2_ = 0.0, rl_ = 0.0;
  int documents_ = 0;
};

void WriteRougeReport(const std::string& label, const RougeReport& report,
                      std::ostream& out);

// Extraction units as the encoder sees them: the record's facts, or one
// pseudo-fact per sentence for sentence-mode labels.
std::vector<SentenceFacts> ExtractionUnits(const FactsRecord& record,
                                           OracleMode mode);

HierSequence BuildRecordSequence(const FactsRecord& record, OracleMode mode,
                                 int max_len);

// Labels of units that survive truncation.
TrainingExample MakeTrainingExample(const LabeledRecord& record,
                                    const Vocabulary& vocab,
                                    const EncoderConfig& config);

struct SelectedFact {
  int sentence_index = 0;
  int fact_index = 0;
  std::vector<std::string> tokens;

  bool operator==(const SelectedFact&) const = default;
};

struct SummaryRecord {
  std::string id;
  std::vector<SelectedFact> facts;

  bool operator==(const SummaryRecord&) const = default;
};

// Scores the record's facts with the model and keeps the selection.
SummaryRecord SummarizeRecord(const FactsRecord& record,
                              const Checkpoint& model,
                              const SelectionConfig& selection);

// All facts of the first `n` sentences.
SummaryRecord LeadSummary(const FactsRecord& record, int n);

// Oracle-labelled units of a labels record as a summary.
SummaryRecord OracleSummary(const LabeledRecord& record);

void WriteSummaries(const std::vector<SummaryRecord>& summaries,
                    std::ostream& out);
// Throws DataError naming the line on malformed input.
std::vector<SummaryRecord> ReadSummaries(std::istream& in);

Tokens SummaryCandidateTokens(const SummaryRecord& summary);

// 1-based ordinals of the summary's facts among all facts of the document.
// Throws DataError when a fact does not exist in the record.
std::vector<int> FactPositions(const SummaryRecord& summary,
                               const FactsRecord& record);

}  // namespace factsum

#endif  // FACTSUM_PIPELINE_H_
