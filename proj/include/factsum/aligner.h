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

// Oracle extraction labels.
//
// Fact mode matches every gold-summary fact to at most one source fact
// (one-to-one), scoring pairs with ROUGE-1 F1 + ROUGE-2 F1. Sentence mode is
// the conventional greedy oracle that grows a sentence set while the ROUGE of
// the concatenated selection keeps improving.

#ifndef FACTSUM_ALIGNER_H_
#define FACTSUM_ALIGNER_H_

#include <string>
#include <vector>

#include "factsum/rouge.h"
#include "json.hpp"

namespace factsum {

enum class OracleMode { kFact, kSentence };

std::string OracleModeName(OracleMode mode);
// Throws UsageError for anything but "fact" or "sentence".
OracleMode ParseOracleMode(const std::string& name);

struct AlignmentMatch {
  int summary_index = 0;
  int source_index = 0;
  double score = 0.0;
  bool operator==(const AlignmentMatch&) const = default;
};

struct OracleLabels {
  OracleMode mode = OracleMode::kFact;
  std::vector<bool> labels;  // one per source unit
  // Fact mode only, in selection order.
  std::vector<AlignmentMatch> matching;
  // Fact mode only: summary facts no source fact overlaps with.
  std::vector<int> unmatched_summary;
};

nlohmann::json OracleLabelsToJson(const OracleLabels& labels);
OracleLabels OracleLabelsFromJson(const nlohmann::json& j);

// ROUGE-1 F1 + ROUGE-2 F1.
double PairScore(const Tokens& a, const Tokens& b);

// Greedy global one-to-one matching. Repeatedly takes the unmatched pair with
// the highest positive score, ties going to the smaller source index and
// then the smaller summary index. Source may be empty only when the summary
// is empty too; throws UsageError otherwise.
OracleLabels AlignFacts(const std::vector<Tokens>& source_facts,
                        const std::vector<Tokens>& summary_facts);

// Same matching over a precomputed summary x source score matrix.
OracleLabels AlignScores(const std::vector<std::vector<double>>& scores,
                         int num_source);

// Greedy sentence oracle, capped at `max_sentences`. Throws UsageError on an
// empty body.
std::vector<bool> GreedySentenceOracle(const std::vector<Tokens>& body,
                                       const Tokens& summary,
                                       int max_sentences = 6);

// Concatenation of the selected units in document order.
Tokens ConcatSelected(const std::vector<Tokens>& units,
                      const std::vector<bool>& selected);

}  // namespace factsum

#endif  // FACTSUM_ALIGNER_H_
