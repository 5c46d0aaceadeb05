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

#include "factsum/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "factsum/io.h"
#include "factsum/segmenter.h"
#include "factsum/status.h"

namespace factsum {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool ParseInt(const std::string& text, int* value) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, *value);
  return ec == std::errc() && ptr == last;
}

// One blank-line separated block of token lines.
struct ConlluLine {
  int line_number;
  std::vector<std::string> fields;
};

ParsedSentence BuildFromBlock(const std::vector<ConlluLine>& lines,
                              int ordinal) {
  std::vector<std::string> forms;
  std::vector<int> heads;
  std::vector<std::string> deprels;
  for (const ConlluLine& line : lines) {
    int id = 0;
    ParseInt(line.fields[0], &id);
    if (id != static_cast<int>(forms.size()) + 1) {
      throw ParseError("line " + std::to_string(line.line_number) +
                           ": token ID " + line.fields[0] +
                           " out of sequence",
                       line.line_number);
    }
    int head = 0;
    if (!ParseInt(line.fields[6], &head)) {
      throw ParseError("line " + std::to_string(line.line_number) +
                           ": HEAD '" + line.fields[6] +
                           "' is not an integer",
                       line.line_number);
    }
    forms.push_back(line.fields[1]);
    heads.push_back(head);
    deprels.push_back(line.fields[7]);
  }
  try {
    return ParsedSentence::Create(std::move(forms), std::move(heads),
                                  std::move(deprels));
  } catch (const DataError& e) {
    throw DataError("sentence " + std::to_string(ordinal) + ": " + e.what());
  }
}

// Reads every block; `on_error` decides whether a failure is rethrown.
template <typename OnError>
std::vector<ParsedSentence> ReadBlocks(std::istream& in, OnError on_error) {
  std::vector<ParsedSentence> sentences;
  std::vector<ConlluLine> block;
  int ordinal = 0;
  int line_number = 0;
  bool block_open = false;
  int block_first_line = 0;
  // Line-level errors are remembered and reported once the block closes so
  // that one bad block yields exactly one error.
  bool block_failed = false;
  std::string block_error;
  int block_error_line = 0;

  auto close_block = [&]() {
    if (!block_open) return;
    ++ordinal;
    try {
      if (block_failed) {
        throw ParseError(block_error, block_error_line);
      }
      if (block.empty()) {
        throw DataError("sentence " + std::to_string(ordinal) +
                        " (line " + std::to_string(block_first_line) +
                        "): no token lines");
      }
      sentences.push_back(BuildFromBlock(block, ordinal));
    } catch (const DataError& e) {
      on_error(e, ordinal,
               block_failed ? block_error_line : block_first_line);
    }
    block.clear();
    block_open = false;
    block_failed = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      close_block();
      continue;
    }
    if (!block_open) {
      block_open = true;
      block_first_line = line_number;
    }
    if (line[0] == '#') continue;
    if (block_failed) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 10) {
      block_failed = true;
      block_error_line = line_number;
      block_error = "line " + std::to_string(line_number) + ": expected 10 "
                    "tab-separated columns, found " +
                    std::to_string(fields.size());
      continue;
    }
    // Multiword tokens ("2-3") and empty nodes ("5.1") carry no tree edge.
    if (fields[0].find_first_of("-.") != std::string::npos) continue;
    int id = 0;
    if (!ParseInt(fields[0], &id)) {
      block_failed = true;
      block_error_line = line_number;
      block_error = "line " + std::to_string(line_number) + ": ID '" +
                    fields[0] + "' is not an integer";
      continue;
    }
    int head = 0;
    if (!ParseInt(fields[6], &head)) {
      block_failed = true;
      block_error_line = line_number;
      block_error = "line " + std::to_string(line_number) + ": HEAD '" +
                    fields[6] + "' is not an integer";
      continue;
    }
    block.push_back({line_number, std::move(fields)});
  }
  close_block();
  return sentences;
}

ParsedSentence ParseSentenceJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("tokens") || !j.contains("heads") ||
      !j.contains("deprels")) {
    throw DataError("sentence must be an object with tokens, heads, deprels");
  }
  try {
    return ParsedSentence::Create(j.at("tokens").get<std::vector<std::string>>(),
                                  j.at("heads").get<std::vector<int>>(),
                                  j.at("deprels").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed sentence: ") + e.what());
  }
}

std::vector<ParsedSentence> ParseSentenceList(const nlohmann::json& j,
                                              const char* field) {
  std::vector<ParsedSentence> out;
  if (!j.is_array()) {
    throw DataError(std::string("'") + field + "' must be an array");
  }
  for (size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(ParseSentenceJson(j[i]));
    } catch (const DataError& e) {
      throw DataError(std::string(field) + " sentence " +
                      std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

ParsedSentence ParsedSentence::Create(std::vector<std::string> forms,
                                      std::vector<int> heads,
                                      std::vector<std::string> deprels) {
  const int n = static_cast<int>(forms.size());
  if (n == 0) throw DataError("sentence has no tokens");
  if (static_cast<int>(heads.size()) != n ||
      static_cast<int>(deprels.size()) != n) {
    throw DataError("tokens, heads and deprels differ in length");
  }
  ParsedSentence s;
  s.tokens_.reserve(n);
  s.edges_.reserve(n);
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const int index = i + 1;
    if (forms[i].empty()) {
      throw DataError("token " + std::to_string(index) + " has empty text");
    }
    if (heads[i] < 0 || heads[i] > n) {
      throw DataError("token " + std::to_string(index) + " has head " +
                      std::to_string(heads[i]) + " outside 0.." +
                      std::to_string(n));
    }
    if (heads[i] == index) {
      throw DataError("token " + std::to_string(index) + " heads itself");
    }
    if (heads[i] == 0) ++roots;
    s.tokens_.push_back({index, forms[i], Lowercase(forms[i])});
    s.edges_.push_back({heads[i], index, std::move(deprels[i])});
  }
  if (roots != 1) {
    throw DataError("expected exactly one root, found " +
                    std::to_string(roots));
  }
  return s;
}

int ParsedSentence::root() const {
  for (const DepEdge& e : edges_) {
    if (e.head == 0) return e.dependent;
  }
  return 0;
}

std::vector<std::string> ParsedSentence::LowerTokens() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(t.lower);
  return out;
}

std::vector<std::string> ParsedSentence::Forms() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const Token& t : tokens_) out.push_back(t.text);
  return out;
}

std::vector<ParsedSentence> LoadConllu(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadConllu(in);
}

std::vector<ParsedSentence> ReadConllu(std::istream& in) {
  return ReadBlocks(in, [](const DataError& e, int, int) {
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) throw *pe;
    throw e;
  });
}

std::vector<ParsedSentence> ReadConllu(std::istream& in,
                                       std::vector<RecordError>* errors) {
  return ReadBlocks(in, [errors](const DataError& e, int ordinal, int line) {
    errors->push_back({ordinal, line, "", e.what()});
  });
}

void WriteConllu(const std::vector<ParsedSentence>& sentences,
                 std::ostream& out) {
  for (const ParsedSentence& s : sentences) {
    for (int i = 1; i <= s.size(); ++i) {
      out << i << '\t' << s.token(i).text << "\t_\t_\t_\t_\t" << s.head(i)
          << '\t' << s.deprel(i) << "\t_\t_\n";
    }
    out << '\n';
  }
}

nlohmann::json SentenceToJson(const ParsedSentence& sentence) {
  nlohmann::json tokens = nlohmann::json::array();
  nlohmann::json heads = nlohmann::json::array();
  nlohmann::json deprels = nlohmann::json::array();
  for (int i = 1; i <= sentence.size(); ++i) {
    tokens.push_back(sentence.token(i).text);
    heads.push_back(sentence.head(i));
    deprels.push_back(sentence.deprel(i));
  }
  return {{"tokens", tokens}, {"heads", heads}, {"deprels", deprels}};
}

ParsedSentence SentenceFromJson(const nlohmann::json& j) {
  return ParseSentenceJson(j);
}

nlohmann::json RecordToJson(const DocumentRecord& record) {
  nlohmann::json body = nlohmann::json::array();
  for (const ParsedSentence& s : record.body) body.push_back(SentenceToJson(s));
  nlohmann::json summary = nlohmann::json::array();
  for (const ParsedSentence& s : record.gold_summary) {
    summary.push_back(SentenceToJson(s));
  }
  return {{"id", record.id}, {"body", body}, {"summary", summary}};
}

DocumentRecord RecordFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  DocumentRecord record;
  if (!j.contains("id") || !j["id"].is_string()) {
    throw DataError("record has no string 'id'");
  }
  record.id = j["id"].get<std::string>();
  try {
    if (!j.contains("body")) throw DataError("missing body");
    record.body = ParseSentenceList(j["body"], "body");
    if (record.body.empty()) throw DataError("empty body");
    if (j.contains("summary")) {
      record.gold_summary = ParseSentenceList(j["summary"], "summary");
    }
  } catch (const DataError& e) {
    throw DataError("record '" + record.id + "': " + e.what());
  }
  return record;
}

std::vector<DocumentRecord> LoadDataset(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadDataset(in);
}

std::vector<DocumentRecord> ReadDataset(std::istream& in) {
  std::vector<RecordError> errors;
  std::vector<DocumentRecord> records = ReadDataset(in, &errors);
  if (!errors.empty()) {
    throw DataError("dataset line " + std::to_string(errors.front().line) +
                    ": " + errors.front().message);
  }
  return records;
}

std::vector<DocumentRecord> ReadDataset(std::istream& in,
                                        std::vector<RecordError>* errors) {
  std::vector<DocumentRecord> records;
  std::set<std::string> seen;
  std::string line;
  int line_number = 0;
  int ordinal = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++ordinal;
    std::string id;
    try {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
      }
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        id = j["id"].get<std::string>();
      }
      DocumentRecord record = RecordFromJson(j);
      if (!seen.insert(record.id).second) {
        throw DataError("duplicate id '" + record.id + "'");
      }
      records.push_back(std::move(record));
    } catch (const DataError& e) {
      errors->push_back({ordinal, line_number, id, e.what()});
    }
  }
  return records;
}

void WriteDataset(const std::vector<DocumentRecord>& records,
                  std::ostream& out) {
  for (const DocumentRecord& r : records) out << RecordToJson(r).dump() << '\n';
}

CorpusStats ComputeCorpusStats(const std::vector<DocumentRecord>& records,
                               const SegmenterConfig& config) {
  if (records.empty()) throw UsageError("corpus statistics need records");
  double sentences = 0, sentence_tokens = 0;
  double facts = 0, fact_tokens = 0;
  for (const DocumentRecord& doc : records) {
    for (const ParsedSentence& s : doc.body) {
      sentences += 1;
      sentence_tokens += s.size();
    }
    for (const SentenceFacts& sf : SegmentDocument(doc, config)) {
      for (const Fact& f : sf) {
        facts += 1;
        fact_tokens += f.span.length();
      }
    }
  }
  const double docs = static_cast<double>(records.size());
  CorpusStats stats;
  stats.sentence = {sentences / docs, sentence_tokens / sentences};
  stats.fact = {facts / docs, fact_tokens / facts};
  return stats;
}

void WriteCorpusStats(const CorpusStats& stats, std::ostream& out) {
  auto row = [&out](const char* name, const GranularityStats& g) {
    out << name << ',' << std::fixed << std::setprecision(1)
        << g.avg_units_per_doc << ',' << g.avg_unit_length_tokens << '\n';
  };
  out << "granularity,num,len\n";
  row("sentence", stats.sentence);
  row("fact", stats.fact);
  out.unsetf(std::ios::floatfield);
}

}  // namespace factsum
