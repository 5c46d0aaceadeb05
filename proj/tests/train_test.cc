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

#include "factsum/train.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "factsum/status.h"
#include "tasks.h"
#include "test_util.h"

namespace factsum {
namespace {

double RelErr(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(LearningRateTest, ReferencePoints) {
  const TrainingConfig config;
  EXPECT_LE(RelErr(LearningRate(10000, config), 2e-5), 1e-12);
  EXPECT_LE(RelErr(LearningRate(2500, config), 5e-6), 1e-12);
  EXPECT_LE(RelErr(LearningRate(40000, config), 1e-5), 1e-12);
  EXPECT_THROW(LearningRate(0, config), UsageError);
}

TEST(LearningRateTest, ShapeAroundWarmup) {
  TrainingConfig config;
  for (int warmup : {1, 7, 100, 10000}) {
    config.warmup = warmup;
    const double peak = LearningRate(warmup, config);
    // Both branches agree at the warmup step.
    const double rising = config.lr_coefficient * warmup * std::pow(warmup, -1.5);
    const double falling = config.lr_coefficient * std::pow(warmup, -0.5);
    EXPECT_LE(std::abs(rising - falling), 1e-9 * peak);
    for (long step = 1; step < 3L * warmup + 5; ++step) {
      EXPECT_LE(LearningRate(step, config), peak * (1 + 1e-15));
    }
    if (warmup > 2) {
      // Linear before the peak.
      const double slope = LearningRate(2, config) - LearningRate(1, config);
      EXPECT_NEAR(LearningRate(warmup - 1, config) -
                      LearningRate(warmup - 2, config),
                  slope, 1e-15);
    }
    // Inverse square root decay after it.
    EXPECT_NEAR(LearningRate(4L * warmup, config), peak / 2, 1e-15);
  }
}

TEST(TrainingConfigTest, ValidateAndJson) {
  TrainingConfig config;
  config.warmup = 0;
  EXPECT_THROW(config.Validate(), UsageError);
  config.warmup = 25;
  config.seed = 1234567890123ULL;
  const TrainingConfig back =
      TrainingConfigFromJson(TrainingConfigToJson(config));
  EXPECT_EQ(back.warmup, 25);
  EXPECT_EQ(back.seed, 1234567890123ULL);
  EXPECT_EQ(back.batch_size, 32);
}

TEST(TrainTest, ZeroStepsKeepsInitialization) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.training.max_steps = 0;
  const EncoderParams init = EncoderParams::Initialize(task.model, 3);
  const TrainResult result = Train(task.examples, init, task.model, task.training);
  EXPECT_TRUE(result.params == init);
  EXPECT_TRUE(result.curve.empty());
}

TEST(TrainTest, OverfitsMarkerTaskDeterministically) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  const EncoderParams init = EncoderParams::Initialize(task.model, 3);
  const TrainResult a = Train(task.examples, init, task.model, task.training);
  const TrainResult b = Train(task.examples, init, task.model, task.training);
  EXPECT_GT(FactAccuracy(task.examples, a.params, task.model), 0.95);
  ASSERT_EQ(a.curve.size(), 500u);
  ASSERT_EQ(a.curve.size(), b.curve.size());
  for (size_t i = 0; i < a.curve.size(); ++i) {
    EXPECT_EQ(a.curve[i].loss, b.curve[i].loss);
    EXPECT_EQ(a.curve[i].lr, b.curve[i].lr);
  }
  EXPECT_TRUE(a.params == b.params);
  EXPECT_LT(a.curve.back().loss, a.curve.front().loss);
}

TEST(TrainTest, SeedChangesTheRun) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.training.max_steps = 5;
  const EncoderParams init = EncoderParams::Initialize(task.model, 3);
  const TrainResult a = Train(task.examples, init, task.model, task.training);
  task.training.seed = 12;
  const TrainResult b = Train(task.examples, init, task.model, task.training);
  EXPECT_FALSE(a.params == b.params);
}

TEST(TrainTest, CheckpointCadence) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.training.max_steps = 10;
  task.training.checkpoint_every = 4;
  std::vector<long> steps;
  Train(task.examples, EncoderParams::Initialize(task.model, 3), task.model,
        task.training,
        [&steps](long step, const EncoderParams&) { steps.push_back(step); });
  EXPECT_EQ(steps, (std::vector<long>{4, 8}));
}

TEST(TrainTest, NonFiniteLossNamesStepAndExample) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.training.max_steps = 3;
  EncoderParams init = EncoderParams::Initialize(task.model, 3);
  init.classifier_bias(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    Train(task.examples, init, task.model, task.training);
    FAIL() << "expected an internal error";
  } catch (const InternalError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("step 1"), std::string::npos) << what;
    EXPECT_NE(what.find("marker-"), std::string::npos) << what;
  }
}

TEST(TrainTest, LabelCountMismatchIsUsageError) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.examples[0].labels.push_back(true);
  EXPECT_THROW(Train(task.examples, EncoderParams::Initialize(task.model, 1),
                     task.model, task.training),
               UsageError);
}

TEST(AdamTest, FirstStepMovesEachEntryByLr) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  EncoderParams params = EncoderParams::Zeros(task.model);
  EncoderParams grad = EncoderParams::Zeros(task.model);
  grad.classifier_bias << 0.3;
  grad.classifier_weight(0, 0) = -2.0;
  AdamOptimizer adam(task.model, task.training);
  adam.Step(grad, 0.01, &params);
  // With bias correction the first update is lr * g / (|g| + eps').
  EXPECT_NEAR(params.classifier_bias(0, 0), -0.01, 1e-9);
  EXPECT_NEAR(params.classifier_weight(0, 0), 0.01, 1e-9);
  EXPECT_EQ(params.classifier_weight(0, 1), 0.0);
}

TEST(LossCurveTest, CsvLayout) {
  std::ostringstream out;
  WriteLossCurve({{1, 0.5, 0.25}, {2, 1e-5, 0.125}}, out);
  EXPECT_EQ(out.str(), "step,lr,loss\n1,0.5,0.25\n2,1e-05,0.125\n");
}

TEST(CheckpointTest, RoundTripIsExact) {
  testing::MarkerTask task = testing::MakeMarkerTask();
  task.model.classifier_mode = ClassifierMode::kDSF;
  task.model.use_position = false;
  const EncoderParams params = EncoderParams::Initialize(task.model, 42);
  std::stringstream buffer;
  WriteCheckpoint(task.model, task.vocab, params, buffer);
  const Checkpoint back = ReadCheckpoint(buffer);
  EXPECT_TRUE(back.params == params);
  EXPECT_EQ(back.vocab.words(), task.vocab.words());
  EXPECT_EQ(back.config.classifier_mode, ClassifierMode::kDSF);
  EXPECT_FALSE(back.config.use_position);
  EXPECT_EQ(back.config.d_model, task.model.d_model);
}

TEST(CheckpointTest, RejectsBadFiles) {
  std::istringstream wrong_magic("not a checkpoint\n");
  EXPECT_THROW(ReadCheckpoint(wrong_magic), DataError);

  testing::MarkerTask task = testing::MakeMarkerTask();
  std::stringstream buffer;
  WriteCheckpoint(task.model, task.vocab,
                  EncoderParams::Initialize(task.model, 1), buffer);
  std::string text = buffer.str();
  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(ReadCheckpoint(truncated), DataError);
  EXPECT_THROW(LoadCheckpoint("/nonexistent/model.ckpt"), UsageError);
}

}  // namespace
}  // namespace factsum
