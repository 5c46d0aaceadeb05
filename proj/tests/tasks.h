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

// Synthetic training tasks shared by the unit and acceptance suites.

#ifndef FACTSUM_TESTS_TASKS_H_
#define FACTSUM_TESTS_TASKS_H_

#include <random>
#include <string>
#include <vector>

#include "factsum/encoder.h"
#include "factsum/hierseq.h"
#include "factsum/train.h"

namespace factsum::testing {

inline constexpr char kMarker[] = "zork";

struct MarkerTask {
  std::vector<TrainingExample> examples;
  Vocabulary vocab;
  EncoderConfig model;
  TrainingConfig training;
};

// Twenty documents of two or three sentences, each sentence holding one to
// three facts of three to five filler words. A fact is positive exactly when
// it contains the marker word.
inline MarkerTask MakeMarkerTask(uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int n) { return static_cast<int>(rng() % n); };
  std::vector<HierSequence> sequences;
  std::vector<std::vector<bool>> labels;
  for (int doc = 0; doc < 20; ++doc) {
    std::vector<SentenceFacts> facts(2 + pick(2));
    std::vector<bool> doc_labels;
    for (size_t s = 0; s < facts.size(); ++s) {
      const int count = 1 + pick(3);
      for (int f = 0; f < count; ++f) {
        Fact fact;
        fact.sentence_index = static_cast<int>(s);
        fact.fact_index = f;
        const int words = 3 + pick(3);
        for (int w = 0; w < words; ++w) {
          fact.tokens.push_back("filler" + std::to_string(pick(24)));
        }
        const bool positive = pick(3) == 0;
        if (positive) fact.tokens[pick(words)] = kMarker;
        fact.span = {0, words};
        doc_labels.push_back(positive);
        facts[s].push_back(std::move(fact));
      }
    }
    sequences.push_back(BuildSequence(facts));
    labels.push_back(std::move(doc_labels));
  }

  MarkerTask task;
  task.vocab = Vocabulary::Build(sequences);
  task.model.d_model = 16;
  task.model.n_heads = 2;
  task.model.n_layers = 1;
  task.model.d_ff = 32;
  task.model.max_len = 64;
  task.model.vocab_size = task.vocab.size();
  for (size_t i = 0; i < sequences.size(); ++i) {
    task.examples.push_back(
        {"marker-" + std::to_string(i),
         MakeEncoderInput(sequences[i], task.vocab, task.model.word_scope),
         labels[i]});
  }
  // Desk-scale schedule: the same warmup shape with a short ramp.
  task.training.lr_coefficient = 0.05;
  task.training.warmup = 50;
  task.training.batch_size = 8;
  task.training.max_steps = 500;
  task.training.seed = 11;
  return task;
}

}  // namespace factsum::testing

#endif  // FACTSUM_TESTS_TASKS_H_
