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

#include "factsum/select.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>

#include "factsum/status.h"

namespace factsum {

void SelectionConfig::Validate() const {
  if (k < 1) throw UsageError("selection k must be >= 1");
}

std::set<Tokens> WordTrigrams(const Tokens& tokens) {
  std::set<Tokens> out;
  for (size_t i = 0; i + 3 <= tokens.size(); ++i) {
    out.insert(Tokens(tokens.begin() + i, tokens.begin() + i + 3));
  }
  return out;
}

std::vector<int> RankAndSelect(const std::vector<double>& scores,
                               const std::vector<Fact>& facts,
                               const SelectionConfig& config) {
  config.Validate();
  if (scores.size() != facts.size()) {
    throw UsageError("got " + std::to_string(scores.size()) +
                     " scores for " + std::to_string(facts.size()) + " facts");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw UsageError("fact score is not finite");
  }
  std::vector<int> order(facts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });

  std::vector<int> selected;
  std::set<Tokens> seen;
  for (int candidate : order) {
    if (static_cast<int>(selected.size()) == config.k) break;
    std::set<Tokens> trigrams;
    if (config.trigram_blocking) {
      trigrams = WordTrigrams(facts[candidate].LowerTokens());
      const bool blocked =
          std::any_of(trigrams.begin(), trigrams.end(),
                      [&seen](const Tokens& t) { return seen.count(t) > 0; });
      if (blocked) continue;
    }
    selected.push_back(candidate);
    seen.insert(trigrams.begin(), trigrams.end());
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

std::vector<ParsedSentence> LeadBaseline(const DocumentRecord& doc, int n) {
  if (n < 1) throw UsageError("lead baseline needs n >= 1");
  const size_t count = std::min<size_t>(n, doc.body.size());
  return {doc.body.begin(), doc.body.begin() + count};
}

PositionHistogram ComputePositionHistogram(
    const std::vector<std::vector<int>>& positions) {
  std::array<long, kPositionBuckets> counts{};
  long total = 0;
  for (const std::vector<int>& doc : positions) {
    for (int p : doc) {
      if (p < 1) throw UsageError("fact positions are 1-based");
      const int bucket = p <= 15 ? (p - 1) / 5 : 3;
      ++counts[bucket];
      ++total;
    }
  }
  if (total == 0) throw UsageError("position histogram needs positions");
  PositionHistogram h;
  h.total = total;
  for (int b = 0; b < kPositionBuckets; ++b) {
    h.percent[b] = 100.0 * static_cast<double>(counts[b]) / total;
  }
  return h;
}

void WritePositionHistogram(const PositionHistogram& histogram,
                            std::ostream& out) {
  out << "1-5,6-10,11-15,rest\n";
  out << std::fixed << std::setprecision(2);
  for (int b = 0; b < kPositionBuckets; ++b) {
    if (b > 0) out << ',';
    out << histogram.percent[b];
  }
  out << '\n';
  out.unsetf(std::ios::floatfield);
}

}  // namespace factsum
