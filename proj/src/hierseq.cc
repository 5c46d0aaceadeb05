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

#include "factsum/hierseq.h"

#include <algorithm>

#include "factsum/status.h"

namespace factsum {

int GranularityLevel(Role role) {
  switch (role) {
    case Role::kDocCls:
      return 1;
    case Role::kSentCls:
      return 2;
    case Role::kFactCls:
      return 3;
    case Role::kWord:
    case Role::kSeq:
      return 4;
  }
  return 4;
}

const char* RoleMarker(Role role) {
  switch (role) {
    case Role::kDocCls:
      return "[cls_d]";
    case Role::kSentCls:
      return "[cls_s]";
    case Role::kFactCls:
      return "[cls_f]";
    case Role::kSeq:
      return "[seq]";
    case Role::kWord:
      return "";
  }
  return "";
}

std::string WordScopeName(WordScope scope) {
  return scope == WordScope::kGlobal ? "global" : "within_fact";
}

WordScope ParseWordScope(const std::string& name) {
  if (name == "global") return WordScope::kGlobal;
  if (name == "within_fact") return WordScope::kWithinFact;
  throw UsageError("unknown word scope '" + name +
                   "' (want global|within_fact)");
}

HierSequence BuildSequence(const std::vector<SentenceFacts>& doc_facts,
                           int max_len) {
  bool any_fact = false;
  for (const SentenceFacts& sf : doc_facts) any_fact |= !sf.empty();
  if (!any_fact) throw UsageError("cannot build a sequence without facts");

  HierSequence seq;
  auto push = [&seq](Role role, std::string text, int sentence, int fact) {
    const int level = GranularityLevel(role);
    seq.tokens.push_back({role, std::move(text), sentence, fact});
    seq.segment_ids.push_back(level % 2 == 1 ? Segment::kA : Segment::kB);
    seq.position_ids.push_back(static_cast<int>(seq.position_ids.size()));
  };

  push(Role::kDocCls, RoleMarker(Role::kDocCls), -1, -1);
  seq.doc_cls = 0;
  int ordinal = 0;
  bool full = false;
  for (const SentenceFacts& sentence_facts : doc_facts) {
    if (full) break;
    bool sentence_open = false;
    for (const Fact& fact : sentence_facts) {
      const int words = static_cast<int>(fact.tokens.size());
      const int cost = words + 2 + (sentence_open ? 0 : 1);
      if (seq.size() + cost > max_len) {
        if (seq.fact_cls.empty()) {
          throw CapacityError("first fact has " + std::to_string(words) +
                              " tokens; it cannot fit in max_len " +
                              std::to_string(max_len));
        }
        full = true;
        break;
      }
      if (!sentence_open) {
        seq.sentence_cls.push_back(seq.size());
        push(Role::kSentCls, RoleMarker(Role::kSentCls),
             static_cast<int>(seq.sentence_cls.size()) - 1, -1);
        sentence_open = true;
      }
      const int sentence = static_cast<int>(seq.sentence_cls.size()) - 1;
      const int fact_id = static_cast<int>(seq.fact_cls.size());
      seq.fact_cls.push_back(seq.size());
      seq.facts.push_back(
          {fact.sentence_index, fact.fact_index, ordinal, sentence});
      push(Role::kFactCls, RoleMarker(Role::kFactCls), sentence, fact_id);
      for (const std::string& word : fact.tokens) {
        push(Role::kWord, Lowercase(word), sentence, fact_id);
      }
      push(Role::kSeq, RoleMarker(Role::kSeq), sentence, fact_id);
      ++ordinal;
    }
  }
  return seq;
}

MaskMatrix MaskMatrix::Ones(int n) {
  MaskMatrix m(n);
  std::fill(m.bits_.begin(), m.bits_.end(), 1);
  return m;
}

std::vector<int> MaskMatrix::Row(int i) const {
  std::vector<int> row(n_);
  for (int j = 0; j < n_; ++j) row[j] = at(i, j);
  return row;
}

std::string MaskMatrix::Dump() const {
  std::string out;
  out.reserve(static_cast<size_t>(n_) * (n_ + 1));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out += at(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

MaskMatrix BuildMask(const HierSequence& seq, WordScope scope) {
  const int n = seq.size();
  MaskMatrix mask(n);
  for (int i = 0; i < n; ++i) {
    const SeqToken& ti = seq.tokens[i];
    const int level_i = GranularityLevel(ti.role);
    for (int j = 0; j < n; ++j) {
      const SeqToken& tj = seq.tokens[j];
      const int level_j = GranularityLevel(tj.role);
      bool edge = false;
      if (i == j) {
        edge = true;
      } else if (level_j == level_i) {
        // Same level. Words may be restricted to their own fact; the single
        // [cls_d] has no peers.
        edge = level_i != 4 || scope == WordScope::kGlobal ||
               ti.fact == tj.fact;
      } else if (level_j == level_i + 1) {
        // Child to parent.
        switch (ti.role) {
          case Role::kDocCls:
            edge = true;
            break;
          case Role::kSentCls:
            edge = tj.sentence == ti.sentence;
            break;
          case Role::kFactCls:
            edge = tj.fact == ti.fact;
            break;
          default:
            break;
        }
      }
      mask.set(i, j, edge);
    }
  }
  return mask;
}

}  // namespace factsum
