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

#include "factsum/aligner.h"

#include <algorithm>
#include <tuple>

#include "factsum/status.h"

namespace factsum {

std::string OracleModeName(OracleMode mode) {
  return mode == OracleMode::kFact ? "fact" : "sentence";
}

OracleMode ParseOracleMode(const std::string& name) {
  if (name == "fact") return OracleMode::kFact;
  if (name == "sentence") return OracleMode::kSentence;
  throw UsageError("unknown oracle mode '" + name + "' (want fact|sentence)");
}

nlohmann::json OracleLabelsToJson(const OracleLabels& labels) {
  nlohmann::json matching = nlohmann::json::array();
  for (const AlignmentMatch& m : labels.matching) {
    matching.push_back({m.summary_index, m.source_index, m.score});
  }
  return {{"mode", OracleModeName(labels.mode)},
          {"labels", labels.labels},
          {"matching", matching},
          {"unmatched_summary", labels.unmatched_summary}};
}

OracleLabels OracleLabelsFromJson(const nlohmann::json& j) {
  OracleLabels out;
  try {
    out.mode = ParseOracleMode(j.at("mode").get<std::string>());
    out.labels = j.at("labels").get<std::vector<bool>>();
    for (const auto& m : j.at("matching")) {
      out.matching.push_back(
          {m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<double>()});
    }
    if (j.contains("unmatched_summary")) {
      out.unmatched_summary = j["unmatched_summary"].get<std::vector<int>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed oracle labels: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(e.what());
  }
  return out;
}

double PairScore(const Tokens& a, const Tokens& b) {
  return RougeN(a, b, 1).f1 + RougeN(a, b, 2).f1;
}

OracleLabels AlignScores(const std::vector<std::vector<double>>& scores,
                         int num_source) {
  const int num_summary = static_cast<int>(scores.size());
  if (num_source == 0 && num_summary > 0) {
    throw UsageError("fact alignment needs at least one source fact");
  }
  struct Candidate {
    double score;
    int source;
    int summary;
  };
  std::vector<Candidate> candidates;
  for (int g = 0; g < num_summary; ++g) {
    FACTSUM_CHECK(static_cast<int>(scores[g].size()) == num_source,
                  "score matrix row has the wrong width");
    for (int f = 0; f < num_source; ++f) {
      if (scores[g][f] > 0.0) candidates.push_back({scores[g][f], f, g});
    }
  }
  // Taking candidates in this order is the same as repeatedly picking the
  // best remaining pair, since pair scores never change.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return std::tie(a.source, a.summary) <
                     std::tie(b.source, b.summary);
            });

  OracleLabels out;
  out.mode = OracleMode::kFact;
  out.labels.assign(num_source, false);
  std::vector<bool> summary_done(num_summary, false);
  int matched = 0;
  for (const Candidate& c : candidates) {
    if (matched == num_summary) break;
    if (out.labels[c.source] || summary_done[c.summary]) continue;
    out.labels[c.source] = true;
    summary_done[c.summary] = true;
    out.matching.push_back({c.summary, c.source, c.score});
    ++matched;
  }
  for (int g = 0; g < num_summary; ++g) {
    if (!summary_done[g]) out.unmatched_summary.push_back(g);
  }
  return out;
}

OracleLabels AlignFacts(const std::vector<Tokens>& source_facts,
                        const std::vector<Tokens>& summary_facts) {
  std::vector<std::vector<double>> scores(summary_facts.size());
  for (size_t g = 0; g < summary_facts.size(); ++g) {
    scores[g].reserve(source_facts.size());
    for (const Tokens& f : source_facts) {
      scores[g].push_back(PairScore(f, summary_facts[g]));
    }
  }
  return AlignScores(scores, static_cast<int>(source_facts.size()));
}

Tokens ConcatSelected(const std::vector<Tokens>& units,
                      const std::vector<bool>& selected) {
  Tokens out;
  for (size_t i = 0; i < units.size(); ++i) {
    if (selected[i]) out.insert(out.end(), units[i].begin(), units[i].end());
  }
  return out;
}

std::vector<bool> GreedySentenceOracle(const std::vector<Tokens>& body,
                                       const Tokens& summary,
                                       int max_sentences) {
  if (body.empty()) throw UsageError("sentence oracle needs a nonempty body");
  std::vector<bool> selected(body.size(), false);
  double current = 0.0;
  for (int round = 0; round < max_sentences; ++round) {
    int best = -1;
    double best_score = current;
    for (size_t i = 0; i < body.size(); ++i) {
      if (selected[i]) continue;
      selected[i] = true;
      const double score = PairScore(ConcatSelected(body, selected), summary);
      selected[i] = false;
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    selected[best] = true;
    current = best_score;
  }
  return selected;
}

}  // namespace factsum
