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

// Brute-force reference implementations used only by tests. None of these
// call into the library code they are compared against.

#ifndef FACTSUM_TESTS_ORACLES_H_
#define FACTSUM_TESTS_ORACLES_H_

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace factsum::testing {

using Seq = std::vector<std::string>;

struct PRF {
  double p = 0, r = 0, f = 0;
};

inline PRF MakePRF(double p, double r) {
  PRF out{p, r, 0.0};
  if (p + r > 0) out.f = 2 * p * r / (p + r);
  return out;
}

inline std::vector<Seq> AllNgrams(const Seq& s, int n) {
  std::vector<Seq> out;
  for (int i = 0; i + n <= static_cast<int>(s.size()); ++i) {
    out.emplace_back(s.begin() + i, s.begin() + i + n);
  }
  return out;
}

// Clipped overlap by direct counting: for every distinct candidate n-gram,
// count its occurrences on both sides by linear scans.
inline PRF BruteRougeN(const Seq& cand, const Seq& ref, int n) {
  const std::vector<Seq> c = AllNgrams(cand, n);
  const std::vector<Seq> r = AllNgrams(ref, n);
  std::vector<Seq> distinct;
  for (const Seq& g : c) {
    if (std::find(distinct.begin(), distinct.end(), g) == distinct.end())
      distinct.push_back(g);
  }
  int overlap = 0;
  for (const Seq& g : distinct) {
    const int in_c = static_cast<int>(std::count(c.begin(), c.end(), g));
    const int in_r = static_cast<int>(std::count(r.begin(), r.end(), g));
    overlap += std::min(in_c, in_r);
  }
  const double p = c.empty() ? 0.0 : static_cast<double>(overlap) / c.size();
  const double rr = r.empty() ? 0.0 : static_cast<double>(overlap) / r.size();
  return MakePRF(p, rr);
}

inline bool IsSubsequence(const Seq& needle, const Seq& hay) {
  size_t j = 0;
  for (size_t i = 0; i < hay.size() && j < needle.size(); ++i) {
    if (hay[i] == needle[j]) ++j;
  }
  return j == needle.size();
}

// LCS length by enumerating every subsequence of the shorter side.
inline int BruteLcs(const Seq& a, const Seq& b) {
  const Seq& shorter = a.size() <= b.size() ? a : b;
  const Seq& longer = a.size() <= b.size() ? b : a;
  const int n = static_cast<int>(shorter.size());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits <= best) continue;
    Seq sub;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(shorter[i]);
    }
    if (IsSubsequence(sub, longer)) best = bits;
  }
  return best;
}

inline PRF BruteRougeL(const Seq& cand, const Seq& ref) {
  const double l = BruteLcs(cand, ref);
  return MakePRF(cand.empty() ? 0.0 : l / cand.size(),
                 ref.empty() ? 0.0 : l / ref.size());
}

// Best total score of an injective partial assignment summary -> source.
inline double ExhaustiveAssignment(
    const std::vector<std::vector<double>>& scores, int num_source) {
  const int rows = static_cast<int>(scores.size());
  std::vector<bool> used(num_source, false);
  double best = 0.0;
  std::function<void(int, double)> go = [&](int g, double total) {
    if (g == rows) {
      best = std::max(best, total);
      return;
    }
    go(g + 1, total);  // leave summary fact g unmatched
    for (int f = 0; f < num_source; ++f) {
      if (used[f]) continue;
      used[f] = true;
      go(g + 1, total + scores[g][f]);
      used[f] = false;
    }
  };
  go(0, 0.0);
  return best;
}

inline Seq RandomSeq(std::mt19937& rng, int alphabet, int max_len,
                     int min_len = 0) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  Seq out(len(rng));
  for (std::string& t : out) t = std::string(1, static_cast<char>('a' + sym(rng)));
  return out;
}

}  // namespace factsum::testing

#endif  // FACTSUM_TESTS_ORACLES_H_
