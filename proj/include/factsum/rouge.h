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

// ROUGE-N and ROUGE-L over already-normalized token sequences. No stemming,
// no stopword removal; LCS is computed over the whole flattened sequences.

#ifndef FACTSUM_ROUGE_H_
#define FACTSUM_ROUGE_H_

#include <map>
#include <string>
#include <vector>

namespace factsum {

using Tokens = std::vector<std::string>;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Fills f1 from precision and recall; zero when both are zero.
  static RougeScore FromRatios(double precision, double recall);
};

struct RougeSuite {
  RougeScore r1;
  RougeScore r2;
  RougeScore rl;
};

// Multiset of n-grams.
class NgramCounts {
 public:
  NgramCounts(const Tokens& tokens, int n);

  int n() const { return n_; }
  int total() const { return total_; }
  // Clipped intersection size.
  int Overlap(const NgramCounts& other) const;
  const std::map<Tokens, int>& counts() const { return counts_; }

 private:
  int n_;
  int total_ = 0;
  std::map<Tokens, int> counts_;
};

// Throws UsageError when n < 1.
RougeScore RougeN(const Tokens& candidate, const Tokens& reference, int n);
RougeScore RougeL(const Tokens& candidate, const Tokens& reference);
RougeSuite ComputeRouge(const Tokens& candidate, const Tokens& reference);

int LcsLength(const Tokens& a, const Tokens& b);

}  // namespace factsum

#endif  // FACTSUM_ROUGE_H_
