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

// Multi-granularity input sequence and the hierarchical graph mask.
//
// A document is flattened as
//
//   [cls_d] ([cls_s] ([cls_f] w ... w [seq])+ )+
//
// Each token belongs to a granularity level: document 1, sentence 2, fact 3,
// word 4 ([seq] counts as a word). Segment ids alternate with level parity.
//
// Mask entry (i, j) is 1 when token i may read from token j:
//   word/[seq]  <- itself and other word-level tokens (document-wide, or only
//                  its own fact under WordScope::kWithinFact)
//   [cls_f]     <- all [cls_f], plus the words of its own fact
//   [cls_s]     <- all [cls_s], plus the [cls_f] of its own sentence
//   [cls_d]     <- itself and all [cls_s]

#ifndef FACTSUM_HIERSEQ_H_
#define FACTSUM_HIERSEQ_H_

#include <cstdint>
#include <string>
#include <vector>

#include "factsum/segmenter.h"

namespace factsum {

enum class Role { kDocCls, kSentCls, kFactCls, kWord, kSeq };

int GranularityLevel(Role role);
const char* RoleMarker(Role role);  // "[cls_d]", ..., "" for words

enum class Segment : uint8_t { kA = 0, kB = 1 };

enum class WordScope { kGlobal, kWithinFact };

std::string WordScopeName(WordScope scope);
WordScope ParseWordScope(const std::string& name);

struct SeqToken {
  Role role = Role::kWord;
  std::string text;   // marker for special tokens, lowercased word otherwise
  int sentence = -1;  // index into HierSequence::sentence_cls, -1 for [cls_d]
  int fact = -1;      // index into HierSequence::fact_cls, -1 above facts
};

struct SequenceFact {
  int sentence_index = 0;  // source sentence
  int fact_index = 0;      // within the source sentence
  int ordinal = 0;         // 0-based position among all facts of the document
  int sentence = 0;        // index into HierSequence::sentence_cls
};

struct HierSequence {
  std::vector<SeqToken> tokens;
  std::vector<Segment> segment_ids;
  std::vector<int> position_ids;
  int doc_cls = 0;
  std::vector<int> sentence_cls;  // position of each [cls_s]
  std::vector<int> fact_cls;      // position of each [cls_f]
  std::vector<SequenceFact> facts;  // parallel to fact_cls

  int size() const { return static_cast<int>(tokens.size()); }
};

inline constexpr int kDefaultMaxLen = 512;

// Throws UsageError when there are no facts and CapacityError when the first
// fact cannot fit (its words plus four framing tokens exceed max_len). Later
// facts that do not fit are dropped whole, together with any sentence left
// without facts.
HierSequence BuildSequence(const std::vector<SentenceFacts>& doc_facts,
                           int max_len = kDefaultMaxLen);

// Dense n x n 0/1 matrix, row-major.
class MaskMatrix {
 public:
  MaskMatrix() = default;
  explicit MaskMatrix(int n) : n_(n), bits_(static_cast<size_t>(n) * n, 0) {}

  static MaskMatrix Ones(int n);

  int size() const { return n_; }
  bool at(int i, int j) const { return bits_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, bool value) {
    bits_[static_cast<size_t>(i) * n_ + j] = value ? 1 : 0;
  }
  std::vector<int> Row(int i) const;

  // One line of '0'/'1' characters per row.
  std::string Dump() const;

  bool operator==(const MaskMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<uint8_t> bits_;
};

MaskMatrix BuildMask(const HierSequence& seq,
                     WordScope scope = WordScope::kGlobal);

}  // namespace factsum

#endif  // FACTSUM_HIERSEQ_H_
