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

// Writes the synthetic fixture files under tests/data.
//
//   make_fixture_corpus <data_dir>
//
// Reads <data_dir>/iaea_sentence.conllu and writes:
//   fixture_corpus.jsonl      50 documents of coordinated clauses; every gold
//                             summary sentence copies one clause
//   single_fact_corpus.jsonl  10 documents whose sentences are single clauses;
//                             both gold facts are copied from the body
//   three_docs.jsonl          the IAEA sentence, a clause coordination, a flat sentence
//   bad_record.jsonl          three records, the middle one malformed
//   mask15_facts.jsonl        one facts record with fact lengths 2,2 | 2

#include <algorithm>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "factsum/corpus.h"
#include "factsum/io.h"
#include "factsum/pipeline.h"
#include "factsum/status.h"

namespace factsum {
namespace {

const std::vector<std::string> kNames = {
    "Adams",  "Baker",  "Chen",   "Dalton", "Evans",  "Farrow", "Garcia",
    "Hughes", "Ibsen",  "Jensen", "Kaur",   "Lopez",  "Moreau", "Nakata",
    "Okafor", "Petrov", "Quinn",  "Rossi",  "Silva",  "Tanaka", "Ueda",
    "Varga",  "Weber",  "Xu",     "Yilmaz", "Zhou"};
const std::vector<std::string> kVerbs = {
    "bought",   "sold",   "painted",  "repaired", "found",  "lost",
    "shipped",  "stored", "designed", "tested",   "cleaned", "moved",
    "borrowed", "signed", "measured", "packed",   "opened", "returned"};
const std::vector<std::string> kAdjectives = {
    "old",   "new",    "red",   "blue",  "heavy",  "small", "large",
    "quiet", "broken", "shiny", "rusty", "wooden", "green", "cheap"};
const std::vector<std::string> kNouns = {
    "boat",   "piano",  "tractor", "lamp",   "bridge", "engine", "fence",
    "statue", "barrel", "clock",   "ladder", "wagon",  "cabinet", "kettle",
    "drum",   "mirror", "saddle",  "anchor", "violin", "crate"};
const std::vector<std::string> kPlaces = {
    "Lyon",  "Oslo",   "Cairo", "Lima",   "Perth", "Quito", "Dakar",
    "Hanoi", "Bergen", "Turin", "Malmo",  "Tartu", "Porto", "Split"};

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  int Below(int n) { return static_cast<int>(engine_() % n); }
  const std::string& Pick(const std::vector<std::string>& pool) {
    return pool[Below(static_cast<int>(pool.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

// "NAME VERB the ADJ NOUN in PLACE"
std::vector<std::string> RandomClause(Rng* rng) {
  return {rng->Pick(kNames), rng->Pick(kVerbs), "the", rng->Pick(kAdjectives),
          rng->Pick(kNouns), "in", rng->Pick(kPlaces)};
}

// Clauses joined by ", and", with a final period. Each later verb is a
// conjunct of the first; the comma and "and" hang off the later verb.
ParsedSentence Coordination(const std::vector<std::vector<std::string>>& clauses) {
  std::vector<std::string> forms;
  std::vector<int> heads;
  std::vector<std::string> deprels;
  int first_verb = 0;
  for (size_t c = 0; c < clauses.size(); ++c) {
    if (c > 0) {
      const int verb = static_cast<int>(forms.size()) + 2 + 2;
      forms.insert(forms.end(), {",", "and"});
      heads.insert(heads.end(), {verb, verb});
      deprels.insert(deprels.end(), {"punct", "cc"});
    }
    const int base = static_cast<int>(forms.size());
    const int verb = base + 2, noun = base + 5, place = base + 7;
    if (c == 0) first_verb = verb;
    forms.insert(forms.end(), clauses[c].begin(), clauses[c].end());
    heads.insert(heads.end(),
                 {verb, c == 0 ? 0 : first_verb, noun, noun, verb, place, verb});
    deprels.insert(deprels.end(), {"nsubj", c == 0 ? "root" : "conj", "det",
                                   "amod", "obj", "case", "obl"});
  }
  forms.push_back(".");
  heads.push_back(first_verb);
  deprels.push_back("punct");
  return ParsedSentence::Create(forms, heads, deprels);
}

std::string Line(const DocumentRecord& doc) { return RecordToJson(doc).dump() + "\n"; }

std::string FixtureCorpus() {
  Rng rng(20260517);
  std::string text;
  for (int d = 0; d < 50; ++d) {
    DocumentRecord doc;
    doc.id = "fixture-" + std::to_string(d);
    std::vector<std::vector<std::vector<std::string>>> sentences(4 + rng.Below(3));
    for (auto& clauses : sentences) {
      clauses.resize(2 + rng.Below(2));
      for (auto& clause : clauses) clause = RandomClause(&rng);
      doc.body.push_back(Coordination(clauses));
    }
    // Gold facts from distinct sentences, in document order.
    const int n = static_cast<int>(sentences.size());
    const int count = 2 + rng.Below(2);
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      const int s = rng.Below(n);
      bool seen = false;
      for (int c : chosen) seen |= c == s;
      if (!seen) chosen.push_back(s);
    }
    std::sort(chosen.begin(), chosen.end());
    for (int s : chosen) {
      const auto& clauses = sentences[s];
      doc.gold_summary.push_back(
          Coordination({clauses[rng.Below(static_cast<int>(clauses.size()))]}));
    }
    text += Line(doc);
  }
  return text;
}

std::string SingleFactCorpus() {
  Rng rng(77);
  std::string text;
  for (int d = 0; d < 10; ++d) {
    DocumentRecord doc;
    doc.id = "single-" + std::to_string(d);
    std::vector<std::vector<std::string>> clauses(5);
    for (auto& clause : clauses) {
      clause = RandomClause(&rng);
      doc.body.push_back(Coordination({clause}));
    }
    // Two gold facts copied from distinct body sentences.
    const int a = rng.Below(5);
    const int b = (a + 1 + rng.Below(4)) % 5;
    doc.gold_summary.push_back(Coordination({clauses[std::min(a, b)]}));
    doc.gold_summary.push_back(Coordination({clauses[std::max(a, b)]}));
    text += Line(doc);
  }
  return text;
}

ParsedSentence Flat(const std::string& text) {
  std::vector<std::string> forms;
  std::string word;
  for (char c : text + " ") {
    if (c != ' ') {
      word += c;
    } else if (!word.empty()) {
      forms.push_back(word);
      word.clear();
    }
  }
  std::vector<int> heads(forms.size(), 1);
  std::vector<std::string> deprels(forms.size(), "dep");
  heads[0] = 0;
  deprels[0] = "root";
  return ParsedSentence::Create(forms, heads, deprels);
}

std::string ThreeDocs(const std::string& data_dir, DocumentRecord* first) {
  DocumentRecord iaea;
  iaea.id = "iaea";
  iaea.body = LoadConllu(data_dir + "/iaea_sentence.conllu");
  iaea.gold_summary.push_back(Flat("Ahmadinejad called Amano a U.S. puppet"));

  DocumentRecord coordination;
  coordination.id = "coordination";
  coordination.body.push_back(ParsedSentence::Create(
      {"Smith", "did", "all", "the", "hard", "work", ",", "and", "then",
       "Jones", "did", "the", "cleaning", "later", "on"},
      {2, 0, 6, 6, 6, 2, 11, 11, 11, 11, 2, 13, 11, 11, 14},
      {"nsubj", "root", "det", "det", "amod", "obj", "punct", "cc",
       "advmod", "nsubj", "conj", "det", "obj", "advmod", "case"}));
  coordination.gold_summary.push_back(Flat("Jones did the cleaning"));

  DocumentRecord flat;
  flat.id = "flat";
  flat.body.push_back(Flat("the meeting ended early"));
  flat.body.push_back(Flat("everyone went home after the long vote"));
  flat.gold_summary.push_back(Flat("the meeting ended"));

  *first = iaea;
  return Line(iaea) + Line(coordination) + Line(flat);
}

std::string BadRecord(const DocumentRecord& good) {
  DocumentRecord last = good;
  last.id = "after-bad";
  // Two roots in the middle record.
  const std::string bad =
      R"({"id": "two-roots", "body": [{"tokens": ["a", "b"], "heads": [0, 0],)"
      R"( "deprels": ["root", "root"]}], "summary": []})";
  DocumentRecord first = good;
  first.id = "before-bad";
  return Line(first) + bad + "\n" + Line(last);
}

std::string Mask15Facts() {
  FactsRecord record;
  record.id = "mask15";
  const std::vector<std::vector<int>> layout = {{2, 2}, {2}};
  int word = 0;
  for (size_t s = 0; s < layout.size(); ++s) {
    SentenceFacts sentence;
    int offset = 0;
    for (size_t f = 0; f < layout[s].size(); ++f) {
      Fact fact;
      fact.sentence_index = static_cast<int>(s);
      fact.fact_index = static_cast<int>(f);
      fact.span = {offset, offset + layout[s][f]};
      for (int w = 0; w < layout[s][f]; ++w) {
        fact.tokens.push_back("w" + std::to_string(word++));
      }
      offset += layout[s][f];
      sentence.push_back(fact);
    }
    record.body.push_back(sentence);
  }
  return FactsRecordToJson(record).dump() + "\n";
}

int Main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture_corpus <data_dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  WriteFileAtomic(dir + "/fixture_corpus.jsonl", FixtureCorpus());
  WriteFileAtomic(dir + "/single_fact_corpus.jsonl", SingleFactCorpus());
  DocumentRecord iaea;
  WriteFileAtomic(dir + "/three_docs.jsonl", ThreeDocs(dir, &iaea));
  WriteFileAtomic(dir + "/bad_record.jsonl", BadRecord(iaea));
  WriteFileAtomic(dir + "/mask15_facts.jsonl", Mask15Facts());
  return 0;
}

}  // namespace
}  // namespace factsum

int main(int argc, char** argv) {
  try {
    return factsum::Main(argc, argv);
  } catch (const factsum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
}
