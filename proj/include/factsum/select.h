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

#ifndef FACTSUM_SELECT_H_
#define FACTSUM_SELECT_H_

#include <array>
#include <ostream>
#include <set>
#include <vector>

#include "factsum/corpus.h"
#include "factsum/rouge.h"
#include "factsum/segmenter.h"

namespace factsum {

struct SelectionConfig {
  int k = 4;
  bool trigram_blocking = true;

  void Validate() const;  // throws UsageError when k < 1
};

std::set<Tokens> WordTrigrams(const Tokens& tokens);

// Indices of the selected facts, in document order. Candidates are visited
// by descending score (ties to the earlier fact); with blocking on, a
// candidate sharing a lowercased word trigram with the selection so far is
// skipped. Throws UsageError when the score and fact counts differ or a score
// is not finite.
std::vector<int> RankAndSelect(const std::vector<double>& scores,
                               const std::vector<Fact>& facts,
                               const SelectionConfig& config);

// First min(n, |body|) sentences.
std::vector<ParsedSentence> LeadBaseline(const DocumentRecord& doc, int n = 3);

inline constexpr int kPositionBuckets = 4;

struct PositionHistogram {
  std::array<double, kPositionBuckets> percent{};  // 1-5, 6-10, 11-15, rest
  long total = 0;
};

// Pools 1-based fact positions over documents. Throws UsageError when no
// position is given or a position is below 1.
PositionHistogram ComputePositionHistogram(
    const std::vector<std::vector<int>>& positions);

// "1-5,6-10,11-15,rest" header plus one data row.
void WritePositionHistogram(const PositionHistogram& histogram,
                            std::ostream& out);

}  // namespace factsum

#endif  // FACTSUM_SELECT_H_
