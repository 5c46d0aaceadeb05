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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "factsum/segmenter.h"
#include "factsum/status.h"
#include "test_util.h"

namespace factsum {
namespace {

std::string Row(int id, const std::string& form, const std::string& head,
                const std::string& deprel) {
  return std::to_string(id) + "\t" + form + "\t_\t_\t_\t_\t" + head + "\t" +
         deprel + "\t_\t_\n";
}

TEST(ConlluTest, HelloWorld) {
  std::istringstream in(Row(1, "Hello", "2", "discourse") +
                        Row(2, "world", "0", "root"));
  const auto sentences = ReadConllu(in);
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].size(), 2);
  EXPECT_EQ(sentences[0].root(), 2);
  EXPECT_EQ(sentences[0].token(1).text, "Hello");
  EXPECT_EQ(sentences[0].token(1).lower, "hello");
  EXPECT_EQ(sentences[0].deprel(1), "discourse");
}

TEST(ConlluTest, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(ReadConllu(in).empty());
}

TEST(ConlluTest, NonIntegerHeadNamesLine) {
  std::istringstream in("# sent_id = 1\n" + Row(1, "a", "2", "det") +
                        Row(2, "b", "0", "root") + Row(3, "c", "x", "obj"));
  try {
    ReadConllu(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ConlluTest, WrongColumnCountIsParseError) {
  std::istringstream in("1\ta\t_\t_\n");
  EXPECT_THROW(ReadConllu(in), ParseError);
}

TEST(ConlluTest, TwoRootsNameSentenceOrdinal) {
  std::istringstream in(Row(1, "a", "0", "root") + Row(2, "b", "0", "root") +
                        "\n" + Row(1, "c", "0", "root"));
  try {
    ReadConllu(in);
    FAIL() << "expected a data error";
  } catch (const ParseError&) {
    FAIL() << "structure problems are not parse errors";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("sentence 1"), std::string::npos);
  }
}

TEST(ConlluTest, SkipsCommentsMultiwordAndEmptyNodes) {
  std::istringstream in("# text = can't\n" + Row(1, "ca", "0", "root") +
                        "1-2\tcan't\t_\t_\t_\t_\t_\t_\t_\t_\n" +
                        Row(2, "n't", "1", "advmod") +
                        "2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n");
  const auto sentences = ReadConllu(in);
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].Forms(), (std::vector<std::string>{"ca", "n't"}));
}

TEST(ConlluTest, LenientReaderCountsEveryBlock) {
  std::istringstream in(Row(1, "a", "0", "root") + "\n" +
                        Row(1, "b", "x", "root") + "\n" +
                        Row(1, "c", "0", "root") + Row(2, "d", "0", "root") +
                        "\n" + Row(1, "e", "0", "root") + "\n");
  std::vector<RecordError> errors;
  const auto sentences = ReadConllu(in, &errors);
  EXPECT_EQ(sentences.size(), 2u);
  ASSERT_EQ(errors.size(), 2u);
  EXPECT_EQ(errors[0].ordinal, 2);
  EXPECT_EQ(errors[1].ordinal, 3);
}

TEST(ConlluTest, WriteThenReadRoundTrips) {
  const auto original = LoadConllu(testing::DataPath("iaea_sentence.conllu"));
  std::ostringstream out;
  WriteConllu(original, out);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadConllu(in), original);
}

TEST(ConlluTest, MissingFileIsUsageError) {
  EXPECT_THROW(LoadConllu("/nonexistent/file.conllu"), UsageError);
}

TEST(ParsedSentenceTest, RejectsBadTrees) {
  EXPECT_THROW(ParsedSentence::Create({"a", "b"}, {0, 0}, {"root", "root"}),
               DataError);
  EXPECT_THROW(ParsedSentence::Create({"a", "b"}, {2, 1}, {"x", "y"}),
               DataError);
  EXPECT_THROW(ParsedSentence::Create({"a"}, {1}, {"root"}), DataError);
  EXPECT_THROW(ParsedSentence::Create({"a", "b"}, {0, 3}, {"root", "x"}),
               DataError);
  EXPECT_THROW(ParsedSentence::Create({"a", ""}, {0, 1}, {"root", "x"}),
               DataError);
  EXPECT_THROW(ParsedSentence::Create({}, {}, {}), DataError);
}

std::string RecordLine(const std::string& id, bool with_body = true) {
  DocumentRecord r;
  r.id = id;
  if (with_body) r.body = {testing::FlatSentence("a b c")};
  r.gold_summary = {testing::FlatSentence("a b")};
  return RecordToJson(r).dump() + "\n";
}

TEST(DatasetTest, ReadsRecordsInOrder) {
  std::istringstream in(RecordLine("first") + RecordLine("second"));
  const auto records = ReadDataset(in);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].id, "first");
  EXPECT_EQ(records[1].id, "second");
}

TEST(DatasetTest, DuplicateIdRejected) {
  std::istringstream in(RecordLine("a") + RecordLine("a"));
  EXPECT_THROW(ReadDataset(in), DataError);
}

TEST(DatasetTest, EmptyBodyRejected) {
  std::istringstream in(RecordLine("a", false));
  EXPECT_THROW(ReadDataset(in), DataError);
  std::istringstream missing(R"({"id": "m", "summary": []})" "\n");
  EXPECT_THROW(ReadDataset(missing), DataError);
}

TEST(DatasetTest, LenientReaderSkipsBadRecords) {
  std::istringstream in(RecordLine("a") + "{not json\n" + RecordLine("b", false) +
                        RecordLine("c"));
  std::vector<RecordError> errors;
  const auto records = ReadDataset(in, &errors);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1].id, "c");
  ASSERT_EQ(errors.size(), 2u);
  EXPECT_EQ(errors[0].line, 2);
  EXPECT_EQ(errors[1].record_id, "b");
}

TEST(DatasetTest, RoundTripRandomRecords) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DocumentRecord> records;
    const int docs = 1 + static_cast<int>(rng() % 4);
    for (int d = 0; d < docs; ++d) {
      DocumentRecord r;
      r.id = "doc-" + std::to_string(d);
      const int body = 1 + static_cast<int>(rng() % 4);
      for (int s = 0; s < body; ++s) {
        r.body.push_back(testing::RandomTree(rng, 1 + rng() % 12));
      }
      for (int s = 0; s < static_cast<int>(rng() % 3); ++s) {
        r.gold_summary.push_back(testing::RandomTree(rng, 1 + rng() % 8));
      }
      records.push_back(std::move(r));
    }
    std::ostringstream out;
    WriteDataset(records, out);
    std::istringstream in(out.str());
    EXPECT_EQ(ReadDataset(in), records);
  }
}

TEST(DatasetTest, ConlluBlocksNeverVanish) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    const int blocks = 1 + static_cast<int>(rng() % 8);
    for (int b = 0; b < blocks; ++b) {
      const int n = 1 + static_cast<int>(rng() % 5);
      for (int i = 1; i <= n; ++i) {
        std::string head = i == 1 ? "0" : "1";
        if (rng() % 10 == 0) head = "z";                    // parse failure
        if (i == 2 && rng() % 10 == 0) head = "0";           // second root
        text += Row(i, "w", head, i == 1 ? "root" : "dep");
      }
      text += "\n";
    }
    std::istringstream in(text);
    std::vector<RecordError> errors;
    const auto sentences = ReadConllu(in, &errors);
    EXPECT_EQ(static_cast<int>(sentences.size() + errors.size()), blocks);
  }
}

TEST(CorpusStatsTest, IdentitySegmentation) {
  DocumentRecord doc;
  doc.id = "d";
  doc.body = {testing::FlatSentence("a b c d"), testing::FlatSentence("e f g h")};
  const CorpusStats stats = ComputeCorpusStats({doc}, SegmenterConfig{});
  EXPECT_DOUBLE_EQ(stats.sentence.avg_units_per_doc, 2.0);
  EXPECT_DOUBLE_EQ(stats.sentence.avg_unit_length_tokens, 4.0);
  EXPECT_DOUBLE_EQ(stats.fact.avg_units_per_doc, 2.0);
  EXPECT_DOUBLE_EQ(stats.fact.avg_unit_length_tokens, 4.0);
}

TEST(CorpusStatsTest, SixAndEightTokenFacts) {
  // Six tokens, then a comma opening an eight-token second part.
  std::vector<int> heads{2, 0, 2, 2, 2, 2, 9, 9, 2, 9, 9, 9, 9, 9};
  std::vector<std::string> deprels(14, "dep");
  deprels[1] = "root";
  deprels[6] = "punct";
  deprels[8] = "parataxis";
  DocumentRecord doc;
  doc.id = "d";
  doc.body = {ParsedSentence::Create(
      testing::Words("a b c d e f , g h i j k l m"), heads, deprels)};
  const CorpusStats stats = ComputeCorpusStats({doc}, SegmenterConfig{});
  EXPECT_DOUBLE_EQ(stats.fact.avg_units_per_doc, 2.0);
  EXPECT_DOUBLE_EQ(stats.fact.avg_unit_length_tokens, 7.0);
  EXPECT_DOUBLE_EQ(stats.sentence.avg_units_per_doc, 1.0);
  EXPECT_DOUBLE_EQ(stats.sentence.avg_unit_length_tokens, 14.0);
}

TEST(CorpusStatsTest, EmptyCorpusIsUsageError) {
  EXPECT_THROW(ComputeCorpusStats({}, SegmenterConfig{}), UsageError);
}

TEST(CorpusStatsTest, FactsNeverFewerOrLongerThanSentences) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DocumentRecord> records(1 + rng() % 3);
    for (size_t d = 0; d < records.size(); ++d) {
      records[d].id = std::to_string(d);
      for (int s = 0; s < 1 + static_cast<int>(rng() % 4); ++s) {
        records[d].body.push_back(testing::RandomTree(rng, 1 + rng() % 25));
      }
    }
    const CorpusStats stats = ComputeCorpusStats(records, SegmenterConfig{});
    EXPECT_GE(stats.fact.avg_units_per_doc, stats.sentence.avg_units_per_doc);
    EXPECT_LE(stats.fact.avg_unit_length_tokens,
              stats.sentence.avg_unit_length_tokens + 1e-12);
  }
}

TEST(CorpusStatsTest, ReportLayout) {
  CorpusStats stats;
  stats.sentence = {34.3, 24.7};
  stats.fact = {51.5, 14.8};
  std::ostringstream out;
  WriteCorpusStats(stats, out);
  EXPECT_EQ(out.str(),
            "granularity,num,len\nsentence,34.3,24.7\nfact,51.5,14.8\n");
}

}  // namespace
}  // namespace factsum
