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

// Splits dependency-parsed sentences into facts: contiguous token spans that
// carry a single fact description.
//
// The split runs four passes in a fixed order:
//
//   1. Boundaries. A token whose incoming relation is a split label (punct,
//      cc, mark) opens a new segment.
//   2. Clause merge. Left to right, a segment is merged into the one before
//      it when an edge with a merge label (acl:relcl, advcl, appos, ccomp)
//      spans their boundary, unless the right segment is longer than
//      max_clause_length.
//   3. Conjuncts. At a boundary opened by a cc token the conj edge spanning
//      it is looked up; when its endpoints are closer than
//      conj_distance_threshold the coordination is phrasal and the two
//      segments are merged.
//   4. Minimum length. Segments shorter than min_unit_length merge into
//      their predecessor (the first segment into its successor), repeated
//      until no short segment is left.
//
// Boundary tokens stay in the segment they open, so the facts of a sentence
// always partition its tokens.

#ifndef FACTSUM_SEGMENTER_H_
#define FACTSUM_SEGMENTER_H_

#include <set>
#include <string>
#include <vector>

#include "factsum/corpus.h"
#include "json.hpp"

namespace factsum {

struct SegmenterConfig {
  std::set<std::string> split_labels{"punct", "cc", "mark"};
  std::set<std::string> merge_labels{"acl:relcl", "advcl", "appos", "ccomp"};
  int conj_distance_threshold = 7;
  int min_unit_length = 5;
  int max_clause_length = 10;

  // Throws UsageError when a threshold is below 1 or the label sets overlap.
  void Validate() const;
};

nlohmann::json SegmenterConfigToJson(const SegmenterConfig& config);
// Missing keys keep their defaults.
SegmenterConfig SegmenterConfigFromJson(const nlohmann::json& j);

// Half-open span [begin, end) of 0-based token positions.
struct TokenSpan {
  int begin = 0;
  int end = 0;
  int length() const { return end - begin; }
  bool operator==(const TokenSpan&) const = default;
};

struct Fact {
  int sentence_index = 0;
  int fact_index = 0;
  TokenSpan span;
  std::vector<std::string> tokens;  // surface forms

  std::vector<std::string> LowerTokens() const;
  std::string Text() const;
  bool operator==(const Fact&) const = default;
};

// Facts of one sentence, in order.
using SentenceFacts = std::vector<Fact>;

std::vector<Fact> SplitSentence(const ParsedSentence& sentence,
                                const SegmenterConfig& config,
                                int sentence_index = 0);

// Body sentences only; the gold summary is segmented by the caller when it
// is needed.
std::vector<SentenceFacts> SegmentDocument(const DocumentRecord& doc,
                                           const SegmenterConfig& config);
std::vector<SentenceFacts> SegmentSentences(
    const std::vector<ParsedSentence>& sentences,
    const SegmenterConfig& config);

// Sentence-major flattening.
std::vector<Fact> Flatten(const std::vector<SentenceFacts>& facts);

}  // namespace factsum

#endif  // FACTSUM_SEGMENTER_H_
