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

#include "factsum/segmenter.h"

#include <algorithm>
#include <cstdlib>

#include "factsum/status.h"

namespace factsum {
namespace {

// True when the edge between positions a and b (1-based) spans the boundary
// in front of token `start`.
bool Spans(int a, int b, int start) {
  return std::min(a, b) < start && start <= std::max(a, b);
}

bool MergeLabelSpans(const ParsedSentence& s, const SegmenterConfig& config,
                     int start) {
  for (const DepEdge& e : s.edges()) {
    if (e.head == 0) continue;
    if (config.merge_labels.count(e.label) && Spans(e.head, e.dependent, start))
      return true;
  }
  return false;
}

// The conj edge spanning the boundary opened by the cc token at `start`.
// Prefers the edge into the cc token's own head (UD attaches cc to the
// second conjunct), otherwise the shortest spanning conj edge. Returns the
// endpoint distance, or -1 when there is none.
int ConjDistance(const ParsedSentence& s, int start) {
  const int cc_head = s.head(start);
  int best = -1;
  for (const DepEdge& e : s.edges()) {
    if (e.head == 0 || e.label != "conj") continue;
    if (!Spans(e.head, e.dependent, start)) continue;
    const int distance = std::abs(e.head - e.dependent);
    if (e.dependent == cc_head) return distance;
    if (best < 0 || distance < best) best = distance;
  }
  return best;
}

}  // namespace

void SegmenterConfig::Validate() const {
  if (conj_distance_threshold < 1 || min_unit_length < 1 ||
      max_clause_length < 1) {
    throw UsageError("segmenter thresholds must be >= 1");
  }
  for (const std::string& label : split_labels) {
    if (merge_labels.count(label)) {
      throw UsageError("label '" + label + "' is both a split and a merge label");
    }
  }
}

nlohmann::json SegmenterConfigToJson(const SegmenterConfig& config) {
  return {{"split_labels", config.split_labels},
          {"merge_labels", config.merge_labels},
          {"conj_distance_threshold", config.conj_distance_threshold},
          {"min_unit_length", config.min_unit_length},
          {"max_clause_length", config.max_clause_length}};
}

SegmenterConfig SegmenterConfigFromJson(const nlohmann::json& j) {
  SegmenterConfig config;
  try {
    if (j.contains("split_labels"))
      config.split_labels = j["split_labels"].get<std::set<std::string>>();
    if (j.contains("merge_labels"))
      config.merge_labels = j["merge_labels"].get<std::set<std::string>>();
    if (j.contains("conj_distance_threshold"))
      config.conj_distance_threshold = j["conj_distance_threshold"].get<int>();
    if (j.contains("min_unit_length"))
      config.min_unit_length = j["min_unit_length"].get<int>();
    if (j.contains("max_clause_length"))
      config.max_clause_length = j["max_clause_length"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad segmenter config: ") + e.what());
  }
  config.Validate();
  return config;
}

std::vector<std::string> Fact::LowerTokens() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(Lowercase(t));
  return out;
}

std::string Fact::Text() const {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<Fact> SplitSentence(const ParsedSentence& sentence,
                                const SegmenterConfig& config,
                                int sentence_index) {
  const int n = sentence.size();
  // Segment start positions, 1-based; starts[0] == 1.
  std::vector<int> starts{1};
  for (int i = 2; i <= n; ++i) {
    if (config.split_labels.count(sentence.deprel(i))) starts.push_back(i);
  }
  auto length_of = [&](const std::vector<int>& st, size_t k) {
    const int end = k + 1 < st.size() ? st[k + 1] : n + 1;
    return end - st[k];
  };

  // Clause merge: drop a boundary when a merge-label edge spans it and the
  // right-hand segment is short enough to be a dependent clause.
  {
    std::vector<int> kept{1};
    for (size_t k = 1; k < starts.size(); ++k) {
      const int right_length = length_of(starts, k);
      if (MergeLabelSpans(sentence, config, starts[k]) &&
          right_length <= config.max_clause_length) {
        continue;
      }
      kept.push_back(starts[k]);
    }
    starts = std::move(kept);
  }

  // Phrasal coordination.
  {
    std::vector<int> kept{1};
    for (size_t k = 1; k < starts.size(); ++k) {
      const int start = starts[k];
      if (sentence.deprel(start) == "cc") {
        const int distance = ConjDistance(sentence, start);
        if (distance >= 0 && distance < config.conj_distance_threshold)
          continue;
      }
      kept.push_back(start);
    }
    starts = std::move(kept);
  }

  // Minimum length, to a fixed point.
  while (starts.size() > 1) {
    size_t short_segment = starts.size();
    for (size_t k = 0; k < starts.size(); ++k) {
      if (length_of(starts, k) < config.min_unit_length) {
        short_segment = k;
        break;
      }
    }
    if (short_segment == starts.size()) break;
    // Removing the start of segment k joins it to k-1; removing the start of
    // segment 1 joins segment 0 to its successor.
    starts.erase(starts.begin() + (short_segment == 0 ? 1 : short_segment));
  }

  std::vector<Fact> facts;
  facts.reserve(starts.size());
  for (size_t k = 0; k < starts.size(); ++k) {
    Fact fact;
    fact.sentence_index = sentence_index;
    fact.fact_index = static_cast<int>(k);
    fact.span.begin = starts[k] - 1;
    fact.span.end = k + 1 < starts.size() ? starts[k + 1] - 1 : n;
    for (int i = fact.span.begin; i < fact.span.end; ++i) {
      fact.tokens.push_back(sentence.tokens()[i].text);
    }
    facts.push_back(std::move(fact));
  }
  return facts;
}

std::vector<SentenceFacts> SegmentSentences(
    const std::vector<ParsedSentence>& sentences,
    const SegmenterConfig& config) {
  std::vector<SentenceFacts> out;
  out.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    out.push_back(SplitSentence(sentences[i], config, static_cast<int>(i)));
  }
  return out;
}

std::vector<SentenceFacts> SegmentDocument(const DocumentRecord& doc,
                                           const SegmenterConfig& config) {
  return SegmentSentences(doc.body, config);
}

std::vector<Fact> Flatten(const std::vector<SentenceFacts>& facts) {
  std::vector<Fact> out;
  for (const SentenceFacts& sf : facts) out.insert(out.end(), sf.begin(), sf.end());
  return out;
}

}  // namespace factsum
