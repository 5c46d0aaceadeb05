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

#ifndef FACTSUM_TESTS_TEST_UTIL_H_
#define FACTSUM_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "factsum/corpus.h"
#include "factsum/segmenter.h"

namespace factsum::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(FACTSUM_TEST_DATA_DIR) + "/" + name;
}

inline std::vector<std::string> Words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// A flat parse: every token hangs off token `root` (1-based) with label
// "dep", except the root itself.
inline ParsedSentence FlatSentence(const std::string& text, int root = 1) {
  const std::vector<std::string> forms = Words(text);
  std::vector<int> heads(forms.size(), root);
  std::vector<std::string> deprels(forms.size(), "dep");
  heads[root - 1] = 0;
  deprels[root - 1] = "root";
  return ParsedSentence::Create(forms, heads, deprels);
}

// Facts of `words` tokens each, one inner list per sentence.
inline std::vector<SentenceFacts> FactLayout(
    const std::vector<std::vector<int>>& words_per_fact) {
  std::vector<SentenceFacts> out;
  int word = 0;
  for (size_t s = 0; s < words_per_fact.size(); ++s) {
    SentenceFacts sentence;
    int begin = 0;
    for (size_t f = 0; f < words_per_fact[s].size(); ++f) {
      Fact fact;
      fact.sentence_index = static_cast<int>(s);
      fact.fact_index = static_cast<int>(f);
      fact.span = {begin, begin + words_per_fact[s][f]};
      for (int k = 0; k < words_per_fact[s][f]; ++k) {
        fact.tokens.push_back("w" + std::to_string(word++));
      }
      begin = fact.span.end;
      sentence.push_back(std::move(fact));
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

// A random valid tree over n tokens. Labels are drawn from a pool that mixes
// split, merge, conj and plain relations so every segmenter pass fires.
inline ParsedSentence RandomTree(std::mt19937& rng, int n) {
  static const char* kLabels[] = {"punct", "cc",    "mark",  "acl:relcl",
                                  "advcl", "appos", "ccomp", "conj",
                                  "nsubj", "obj",   "det",   "amod"};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> heads(n, 0);
  std::vector<std::string> deprels(n, "root");
  std::vector<std::string> forms(n);
  for (int i = 0; i < n; ++i) forms[i] = "t" + std::to_string(rng() % 6);
  for (int k = 1; k < n; ++k) {
    const int token = order[k];
    heads[token - 1] = order[rng() % k];
    deprels[token - 1] = kLabels[rng() % 12];
  }
  return ParsedSentence::Create(forms, heads, deprels);
}

}  // namespace factsum::testing

#endif  // FACTSUM_TESTS_TEST_UTIL_H_
