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

#ifndef FACTSUM_TRAIN_H_
#define FACTSUM_TRAIN_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "factsum/encoder.h"
#include "json.hpp"

namespace factsum {

struct TrainingConfig {
  // lr(step) = lr_coefficient * min(step^-0.5, step * warmup^-1.5), which
  // peaks at lr_coefficient / sqrt(warmup) when step == warmup.
  double lr_coefficient = 2e-3;
  int warmup = 10000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int batch_size = 32;
  int max_steps = 1000;
  int checkpoint_every = 0;  // 0 disables periodic checkpoints
  uint64_t seed = 1;

  void Validate() const;  // throws UsageError
};

nlohmann::json TrainingConfigToJson(const TrainingConfig& config);
TrainingConfig TrainingConfigFromJson(const nlohmann::json& j);

// Throws UsageError when step < 1.
double LearningRate(long step, const TrainingConfig& config);

class AdamOptimizer {
 public:
  AdamOptimizer(const EncoderConfig& model, const TrainingConfig& config);

  // One bias-corrected Adam update with learning rate `lr`.
  void Step(const EncoderParams& grad, double lr, EncoderParams* params);

 private:
  TrainingConfig config_;
  EncoderParams m_;
  EncoderParams v_;
  long t_ = 0;
};

struct TrainingExample {
  std::string id;
  EncoderInput input;
  std::vector<bool> labels;
};

struct LossPoint {
  long step = 0;
  double lr = 0.0;
  double loss = 0.0;
};

struct TrainResult {
  EncoderParams params;
  std::vector<LossPoint> curve;
};

using CheckpointCallback =
    std::function<void(long step, const EncoderParams& params)>;

// Minibatches are drawn from a seeded reshuffle of the examples, cycling
// through epochs. Loss per step is the mean over all facts in the batch.
// Throws InternalError (naming step and example) on a non-finite loss.
TrainResult Train(const std::vector<TrainingExample>& examples,
                  const EncoderParams& initial, const EncoderConfig& model,
                  const TrainingConfig& config,
                  const CheckpointCallback& on_checkpoint = nullptr);

// Fraction of facts whose score falls on the labelled side of 0.5.
double FactAccuracy(const std::vector<TrainingExample>& examples,
                    const EncoderParams& params, const EncoderConfig& model);

// "step,lr,loss" CSV.
void WriteLossCurve(const std::vector<LossPoint>& curve, std::ostream& out);

// Structured-text checkpoint: magic line, config, vocabulary, then every
// tensor as "tensor <name> <rows> <cols>" followed by its values.
void WriteCheckpoint(const EncoderConfig& model, const Vocabulary& vocab,
                     const EncoderParams& params, std::ostream& out);
void SaveCheckpoint(const std::string& path, const EncoderConfig& model,
                    const Vocabulary& vocab, const EncoderParams& params);

struct Checkpoint {
  EncoderConfig config;
  Vocabulary vocab;
  EncoderParams params;
};

// Throws DataError on a malformed or mismatched file.
Checkpoint ReadCheckpoint(std::istream& in);
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace factsum

#endif  // FACTSUM_TRAIN_H_
