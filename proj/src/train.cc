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
#include <numeric>
#include <random>
#include <sstream>

#include "factsum/io.h"
#include "factsum/status.h"

namespace factsum {

void TrainingConfig::Validate() const {
  if (warmup < 1) throw UsageError("warmup must be >= 1");
  if (batch_size < 1) throw UsageError("batch_size must be >= 1");
  if (max_steps < 0) throw UsageError("max_steps must be >= 0");
  if (checkpoint_every < 0) throw UsageError("checkpoint_every must be >= 0");
  if (!(lr_coefficient > 0)) throw UsageError("lr_coefficient must be > 0");
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1)
    throw UsageError("Adam betas must lie in [0, 1)");
}

nlohmann::json TrainingConfigToJson(const TrainingConfig& c) {
  return {{"lr_coefficient", c.lr_coefficient},
          {"warmup", c.warmup},
          {"beta1", c.beta1},
          {"beta2", c.beta2},
          {"adam_epsilon", c.adam_epsilon},
          {"batch_size", c.batch_size},
          {"max_steps", c.max_steps},
          {"checkpoint_every", c.checkpoint_every},
          {"seed", c.seed}};
}

TrainingConfig TrainingConfigFromJson(const nlohmann::json& j) {
  TrainingConfig c;
  try {
    if (j.contains("lr_coefficient"))
      c.lr_coefficient = j["lr_coefficient"].get<double>();
    if (j.contains("warmup")) c.warmup = j["warmup"].get<int>();
    if (j.contains("beta1")) c.beta1 = j["beta1"].get<double>();
    if (j.contains("beta2")) c.beta2 = j["beta2"].get<double>();
    if (j.contains("adam_epsilon"))
      c.adam_epsilon = j["adam_epsilon"].get<double>();
    if (j.contains("batch_size")) c.batch_size = j["batch_size"].get<int>();
    if (j.contains("max_steps")) c.max_steps = j["max_steps"].get<int>();
    if (j.contains("checkpoint_every"))
      c.checkpoint_every = j["checkpoint_every"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad training config: ") + e.what());
  }
  return c;
}

double LearningRate(long step, const TrainingConfig& config) {
  if (step < 1) throw UsageError("learning-rate step must be >= 1");
  const double s = static_cast<double>(step);
  const double w = static_cast<double>(config.warmup);
  return config.lr_coefficient * std::min(1.0 / std::sqrt(s),
                                          s / (w * std::sqrt(w)));
}

AdamOptimizer::AdamOptimizer(const EncoderConfig& model,
                             const TrainingConfig& config)
    : config_(config),
      m_(EncoderParams::Zeros(model)),
      v_(EncoderParams::Zeros(model)) {}

void AdamOptimizer::Step(const EncoderParams& grad, double lr,
                         EncoderParams* params) {
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  std::vector<const Matrix*> g;
  grad.ForEach([&g](const std::string&, const Matrix& m) { g.push_back(&m); });
  std::vector<Matrix*> m, v;
  m_.ForEach([&m](const std::string&, Matrix& x) { m.push_back(&x); });
  v_.ForEach([&v](const std::string&, Matrix& x) { v.push_back(&x); });
  size_t k = 0;
  params->ForEach([&](const std::string&, Matrix& p) {
    Matrix& mk = *m[k];
    Matrix& vk = *v[k];
    const Matrix& gk = *g[k];
    mk = b1 * mk + (1.0 - b1) * gk;
    vk = b2 * vk + (1.0 - b2) * gk.cwiseProduct(gk);
    p.array() -= lr * (mk.array() / correction1) /
                 ((vk.array() / correction2).sqrt() + config_.adam_epsilon);
    ++k;
  });
}

TrainResult Train(const std::vector<TrainingExample>& examples,
                  const EncoderParams& initial, const EncoderConfig& model,
                  const TrainingConfig& config,
                  const CheckpointCallback& on_checkpoint) {
  config.Validate();
  model.Validate();
  TrainResult result;
  result.params = initial;
  if (config.max_steps == 0) return result;
  if (examples.empty()) throw UsageError("training needs examples");
  for (const TrainingExample& ex : examples) {
    if (static_cast<int>(ex.labels.size()) != ex.input.num_facts()) {
      throw UsageError("example '" + ex.id + "' has " +
                       std::to_string(ex.labels.size()) + " labels for " +
                       std::to_string(ex.input.num_facts()) + " facts");
    }
  }

  std::mt19937_64 rng(config.seed);
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  size_t cursor = order.size();
  auto next_example = [&]() {
    if (cursor == order.size()) {
      // Fisher-Yates on raw engine output keeps the order identical across
      // standard library implementations.
      for (size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
      }
      cursor = 0;
    }
    return order[cursor++];
  };

  AdamOptimizer adam(model, config);
  for (long step = 1; step <= config.max_steps; ++step) {
    std::vector<size_t> batch;
    long facts = 0;
    for (int b = 0; b < config.batch_size; ++b) {
      batch.push_back(next_example());
      facts += examples[batch.back()].input.num_facts();
    }
    EncoderParams grad = EncoderParams::Zeros(model);
    double loss = 0.0;
    if (facts > 0) {
      const double scale = 1.0 / static_cast<double>(facts);
      for (size_t index : batch) {
        const TrainingExample& ex = examples[index];
        const double example_loss = AccumulateGradient(
            ex.input, ex.labels, result.params, model, scale, &grad);
        if (!std::isfinite(example_loss)) {
          throw InternalError("non-finite loss at step " +
                              std::to_string(step) + " on example '" + ex.id +
                              "'");
        }
        loss += example_loss * scale;
      }
    }
    const double lr = LearningRate(step, config);
    result.curve.push_back({step, lr, loss});
    adam.Step(grad, lr, &result.params);
    if (!result.params.AllFinite()) {
      throw InternalError("parameters became non-finite at step " +
                          std::to_string(step));
    }
    if (on_checkpoint && config.checkpoint_every > 0 &&
        step % config.checkpoint_every == 0) {
      on_checkpoint(step, result.params);
    }
  }
  return result;
}

double FactAccuracy(const std::vector<TrainingExample>& examples,
                    const EncoderParams& params, const EncoderConfig& model) {
  long correct = 0, total = 0;
  for (const TrainingExample& ex : examples) {
    const std::vector<double> scores = ScoreFacts(ex.input, params, model);
    for (size_t i = 0; i < scores.size(); ++i) {
      correct += (scores[i] >= 0.5) == ex.labels[i];
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

void WriteLossCurve(const std::vector<LossPoint>& curve, std::ostream& out) {
  out << "step,lr,loss\n";
  for (const LossPoint& p : curve) {
    out << p.step << ',' << FormatDouble(p.lr) << ',' << FormatDouble(p.loss)
        << '\n';
  }
}

namespace {
constexpr const char* kCheckpointMagic = "factsum-checkpoint 1";
}  // namespace

void WriteCheckpoint(const EncoderConfig& model, const Vocabulary& vocab,
                     const EncoderParams& params, std::ostream& out) {
  out << kCheckpointMagic << '\n';
  out << "config " << EncoderConfigToJson(model).dump() << '\n';
  out << "vocab " << vocab.size() << '\n';
  for (const std::string& w : vocab.words()) out << w << '\n';
  params.ForEach([&out](const std::string& name, const Matrix& m) {
    out << "tensor " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ' ';
        out << FormatDouble(m(r, c));
      }
      out << '\n';
    }
  });
  out << "end\n";
}

void SaveCheckpoint(const std::string& path, const EncoderConfig& model,
                    const Vocabulary& vocab, const EncoderParams& params) {
  std::ostringstream out;
  WriteCheckpoint(model, vocab, params, out);
  WriteFileAtomic(path, out.str());
}

Checkpoint ReadCheckpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointMagic) {
    throw DataError("not a factsum checkpoint");
  }
  Checkpoint ckpt;
  if (!std::getline(in, line) || line.rfind("config ", 0) != 0) {
    throw DataError("checkpoint is missing its config line");
  }
  try {
    ckpt.config = EncoderConfigFromJson(nlohmann::json::parse(line.substr(7)));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad checkpoint config: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("bad checkpoint config: ") + e.what());
  }
  int vocab_size = 0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "vocab %d",
                                             &vocab_size) != 1) {
    throw DataError("checkpoint is missing its vocab header");
  }
  for (int i = 0; i < vocab_size; ++i) {
    if (!std::getline(in, line)) throw DataError("truncated vocabulary");
    if (i >= Vocabulary::kNumReserved) ckpt.vocab.Add(line);
  }
  if (ckpt.vocab.size() != vocab_size) {
    throw DataError("checkpoint vocabulary has duplicate words");
  }
  ckpt.params = EncoderParams::Zeros(ckpt.config);
  ckpt.params.ForEach([&in, &line](const std::string& name, Matrix& m) {
    if (!std::getline(in, line)) throw DataError("truncated checkpoint");
    std::istringstream header(line);
    std::string tag, got_name;
    long rows = -1, cols = -1;
    header >> tag >> got_name >> rows >> cols;
    if (tag != "tensor" || got_name != name || rows != m.rows() ||
        cols != m.cols()) {
      throw DataError("checkpoint tensor '" + got_name + "' does not match "
                      "expected '" + name + "' " + std::to_string(m.rows()) +
                      "x" + std::to_string(m.cols()));
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::getline(in, line)) throw DataError("truncated tensor " + name);
      std::istringstream values(line);
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::string token;
        if (!(values >> token)) throw DataError("short row in tensor " + name);
        m(r, c) = std::strtod(token.c_str(), nullptr);
      }
    }
  });
  if (!std::getline(in, line) || line != "end") {
    throw DataError("checkpoint has trailing or missing data");
  }
  return ckpt;
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadCheckpoint(in);
}

}  // namespace factsum
