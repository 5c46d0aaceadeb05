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

#include "factsum/rouge.h"

#include <algorithm>

#include "factsum/status.h"

namespace factsum {

RougeScore RougeScore::FromRatios(double precision, double recall) {
  RougeScore s;
  s.precision = precision;
  s.recall = recall;
  if (precision > 0.0 || recall > 0.0) {
    s.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return s;
}

NgramCounts::NgramCounts(const Tokens& tokens, int n) : n_(n) {
  if (n < 1) throw UsageError("n-gram order must be >= 1");
  const int size = static_cast<int>(tokens.size());
  for (int i = 0; i + n <= size; ++i) {
    ++counts_[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
    ++total_;
  }
}

int NgramCounts::Overlap(const NgramCounts& other) const {
  // Merge join over the two ordered maps.
  int overlap = 0;
  auto a = counts_.begin();
  auto b = other.counts_.begin();
  while (a != counts_.end() && b != other.counts_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      overlap += std::min(a->second, b->second);
      ++a;
      ++b;
    }
  }
  return overlap;
}

RougeScore RougeN(const Tokens& candidate, const Tokens& reference, int n) {
  if (n < 1) throw UsageError("ROUGE-N needs n >= 1");
  const NgramCounts cand(candidate, n);
  const NgramCounts ref(reference, n);
  const double overlap = cand.Overlap(ref);
  const double p = cand.total() > 0 ? overlap / cand.total() : 0.0;
  const double r = ref.total() > 0 ? overlap / ref.total() : 0.0;
  return RougeScore::FromRatios(p, r);
}

int LcsLength(const Tokens& a, const Tokens& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(const Tokens& candidate, const Tokens& reference) {
  const double lcs = LcsLength(candidate, reference);
  const double p = candidate.empty() ? 0.0 : lcs / candidate.size();
  const double r = reference.empty() ? 0.0 : lcs / reference.size();
  return RougeScore::FromRatios(p, r);
}

RougeSuite ComputeRouge(const Tokens& candidate, const Tokens& reference) {
  return {RougeN(candidate, reference, 1), RougeN(candidate, reference, 2),
          RougeL(candidate, reference)};
}

}  // namespace factsum
