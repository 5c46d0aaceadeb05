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

// Dependency-parsed corpus types, CoNLL-U ingestion and the newline-delimited
// dataset format.
//
// A dataset file holds one JSON object per line:
//
//   {"id": "doc-1",
//    "body":    [{"tokens": [...], "heads": [...], "deprels": [...]}, ...],
//    "summary": [{"tokens": [...], "heads": [...], "deprels": [...]}, ...]}
//
// `tokens`, `heads` and `deprels` are the FORM, HEAD and DEPREL columns of a
// CoNLL-U block, in token order.

#ifndef FACTSUM_CORPUS_H_
#define FACTSUM_CORPUS_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace factsum {

struct SegmenterConfig;

std::string Lowercase(std::string_view text);

struct Token {
  int index = 0;  // 1-based
  std::string text;
  std::string lower;

  bool operator==(const Token&) const = default;
};

struct DepEdge {
  int head = 0;  // 0 is the artificial root
  int dependent = 0;
  std::string label;

  bool operator==(const DepEdge&) const = default;
};

// Tokens plus a single-headed, single-rooted dependency tree over them.
// Instances are validated on construction and immutable afterwards.
class ParsedSentence {
 public:
  ParsedSentence() = default;

  // Throws DataError when the edges do not form a valid tree shape (every
  // token exactly one head, heads in range, no self loops, exactly one root).
  static ParsedSentence Create(std::vector<std::string> forms,
                               std::vector<int> heads,
                               std::vector<std::string> deprels);

  int size() const { return static_cast<int>(tokens_.size()); }
  bool empty() const { return tokens_.empty(); }

  const std::vector<Token>& tokens() const { return tokens_; }
  // Sorted by dependent; edges()[i - 1] is the incoming edge of token i.
  const std::vector<DepEdge>& edges() const { return edges_; }

  // 1-based accessors.
  const Token& token(int index) const { return tokens_[index - 1]; }
  int head(int index) const { return edges_[index - 1].head; }
  const std::string& deprel(int index) const { return edges_[index - 1].label; }
  int root() const;

  std::vector<std::string> LowerTokens() const;
  std::vector<std::string> Forms() const;

  bool operator==(const ParsedSentence&) const = default;

 private:
  std::vector<Token> tokens_;
  std::vector<DepEdge> edges_;
};

struct DocumentRecord {
  std::string id;
  std::vector<ParsedSentence> body;
  std::vector<ParsedSentence> gold_summary;

  bool operator==(const DocumentRecord&) const = default;
};

// A sentence block or record the lenient readers could not ingest.
struct RecordError {
  int ordinal = 0;  // 1-based block or line ordinal
  int line = 0;     // 1-based file line, 0 when not applicable
  std::string record_id;
  std::string message;
};

// CoNLL-U ingestion. The strict forms throw ParseError (bad line) or
// DataError (bad tree, naming the sentence ordinal) at the first problem. The
// lenient forms keep going and report each failed block in `errors`, so that
// blocks == sentences + errors.
std::vector<ParsedSentence> LoadConllu(const std::string& path);
std::vector<ParsedSentence> ReadConllu(std::istream& in);
std::vector<ParsedSentence> ReadConllu(std::istream& in,
                                       std::vector<RecordError>* errors);
void WriteConllu(const std::vector<ParsedSentence>& sentences,
                 std::ostream& out);

nlohmann::json SentenceToJson(const ParsedSentence& sentence);
ParsedSentence SentenceFromJson(const nlohmann::json& j);
nlohmann::json RecordToJson(const DocumentRecord& record);
DocumentRecord RecordFromJson(const nlohmann::json& j);

// Dataset ingestion. Strict forms throw DataError on the first bad record
// (duplicate id, empty body, malformed sentence). The lenient form skips bad
// records and reports them.
std::vector<DocumentRecord> LoadDataset(const std::string& path);
std::vector<DocumentRecord> ReadDataset(std::istream& in);
std::vector<DocumentRecord> ReadDataset(std::istream& in,
                                        std::vector<RecordError>* errors);
void WriteDataset(const std::vector<DocumentRecord>& records,
                  std::ostream& out);

struct GranularityStats {
  double avg_units_per_doc = 0.0;
  double avg_unit_length_tokens = 0.0;
};

struct CorpusStats {
  GranularityStats sentence;
  GranularityStats fact;
};

// Unit counts are averaged over documents, unit lengths over units. Throws
// UsageError on an empty record list.
CorpusStats ComputeCorpusStats(const std::vector<DocumentRecord>& records,
                               const SegmenterConfig& config);

// Two-row table in the "granularity,num,len" layout.
void WriteCorpusStats(const CorpusStats& stats, std::ostream& out);

}  // namespace factsum

#endif  // FACTSUM_CORPUS_H_
