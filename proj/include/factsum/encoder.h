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

// A small transformer encoder whose attention is restricted by the
// hierarchical graph mask, followed by a sigmoid fact classifier over the
// concatenation of document, sentence and fact [cls] states.
//
// Layers are post-norm: x = LN(x + Attn(x)); x = LN(x + FFN(x)), with an
// exact (erf) GELU in the feed-forward block. Gradients are derived by hand;
// see ComputeLossAndGradient and GradCheck.

#ifndef FACTSUM_ENCODER_H_
#define FACTSUM_ENCODER_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "factsum/hierseq.h"
#include "json.hpp"

namespace factsum {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Which [cls] states feed the classifier.
enum class ClassifierMode { kF, kDF, kSF, kDSF };

std::string ClassifierModeName(ClassifierMode mode);
ClassifierMode ParseClassifierMode(const std::string& name);
bool UsesDocument(ClassifierMode mode);
bool UsesSentence(ClassifierMode mode);
int ClassifierParts(ClassifierMode mode);

// kAdditive sends masked logits to -inf so masked weights are exactly zero.
// kMultiplicative multiplies the logits elementwise by the 0/1 mask before
// the softmax, which leaves masked positions with logit 0.
enum class MaskStyle { kAdditive, kMultiplicative };

std::string MaskStyleName(MaskStyle style);
MaskStyle ParseMaskStyle(const std::string& name);

struct EncoderConfig {
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 2;
  int d_ff = 128;
  int vocab_size = 0;
  int max_len = kDefaultMaxLen;
  bool use_segment = true;
  bool use_position = true;
  ClassifierMode classifier_mode = ClassifierMode::kSF;
  WordScope word_scope = WordScope::kGlobal;
  MaskStyle mask_style = MaskStyle::kAdditive;

  int head_dim() const { return d_model / n_heads; }
  int classifier_width() const {
    return d_model * ClassifierParts(classifier_mode);
  }
  void Validate() const;  // throws UsageError
};

nlohmann::json EncoderConfigToJson(const EncoderConfig& config);
// Missing keys keep their defaults.
EncoderConfig EncoderConfigFromJson(const nlohmann::json& j);

// Whole-word vocabulary. Ids 0-4 are reserved for [unk] and the four
// structural markers.
class Vocabulary {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kDocCls = 1;
  static constexpr int kSentCls = 2;
  static constexpr int kFactCls = 3;
  static constexpr int kSeq = 4;
  static constexpr int kNumReserved = 5;

  Vocabulary();

  // Words are added in first-seen order.
  static Vocabulary Build(const std::vector<HierSequence>& sequences);

  int Add(const std::string& word);
  int Id(const std::string& word) const;  // kUnk when absent
  int IdFor(const SeqToken& token) const;
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::map<std::string, int> index_;
};

struct LayerParams {
  Matrix wq, bq, wk, bk, wv, bv, wo, bo;
  Matrix ln1_gain, ln1_bias;
  Matrix w1, b1, w2, b2;
  Matrix ln2_gain, ln2_bias;

  template <typename Fn>
  void ForEach(const std::string& prefix, Fn&& fn) {
    fn(prefix + "wq", wq);
    fn(prefix + "bq", bq);
    fn(prefix + "wk", wk);
    fn(prefix + "bk", bk);
    fn(prefix + "wv", wv);
    fn(prefix + "bv", bv);
    fn(prefix + "wo", wo);
    fn(prefix + "bo", bo);
    fn(prefix + "ln1_gain", ln1_gain);
    fn(prefix + "ln1_bias", ln1_bias);
    fn(prefix + "w1", w1);
    fn(prefix + "b1", b1);
    fn(prefix + "w2", w2);
    fn(prefix + "b2", b2);
    fn(prefix + "ln2_gain", ln2_gain);
    fn(prefix + "ln2_bias", ln2_bias);
  }
};

struct EncoderParams {
  Matrix token_embedding;     // vocab_size x d_model
  Matrix segment_embedding;   // 2 x d_model, rows E_A and E_B
  Matrix position_embedding;  // max_len x d_model
  std::vector<LayerParams> layers;
  Matrix classifier_weight;  // 1 x classifier_width
  Matrix classifier_bias;    // 1 x 1

  // Every tensor with the same shapes, all zero.
  static EncoderParams Zeros(const EncoderConfig& config);

  // Uniform(-0.05, 0.05) embeddings and projection weights, zero biases,
  // unit layer-norm gains. The three [cls] rows start from one shared draw.
  static EncoderParams Initialize(const EncoderConfig& config, uint64_t seed);

  template <typename Fn>
  void ForEach(Fn&& fn) {
    fn("token_embedding", token_embedding);
    fn("segment_embedding", segment_embedding);
    fn("position_embedding", position_embedding);
    for (size_t l = 0; l < layers.size(); ++l) {
      layers[l].ForEach("layer" + std::to_string(l) + ".", fn);
    }
    fn("classifier_weight", classifier_weight);
    fn("classifier_bias", classifier_bias);
  }
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    const_cast<EncoderParams*>(this)->ForEach(
        [&fn](const std::string& name, Matrix& m) {
          fn(name, static_cast<const Matrix&>(m));
        });
  }

  bool AllFinite() const;
  bool operator==(const EncoderParams& other) const;
};

// A HierSequence mapped to ids, with its mask.
struct EncoderInput {
  std::vector<int> token_ids;
  std::vector<int> segment_ids;
  MaskMatrix mask;
  int doc_cls = 0;
  std::vector<int> sentence_cls;
  std::vector<int> fact_cls;
  std::vector<int> fact_sentence;  // index into sentence_cls per fact

  int size() const { return static_cast<int>(token_ids.size()); }
  int num_facts() const { return static_cast<int>(fact_cls.size()); }
};

EncoderInput MakeEncoderInput(const HierSequence& seq, const Vocabulary& vocab,
                              WordScope scope);

// Token + segment + position embeddings (the last two when enabled). Throws
// CapacityError when the input is longer than max_len.
Matrix Embed(const EncoderInput& input, const EncoderParams& params,
             const EncoderConfig& config);

// Single-head masked attention. `weights`, when given, receives the n x n
// attention distribution.
Matrix MaskedAttention(const Matrix& q, const Matrix& k, const Matrix& v,
                       const MaskMatrix& mask, MaskStyle style,
                       Matrix* weights = nullptr);

struct Encoding {
  Matrix hidden;     // n x d_model, last layer
  Matrix document;   // 1 x d_model
  Matrix sentences;  // one row per [cls_s]
  Matrix facts;      // one row per [cls_f]
};

Encoding Encode(const EncoderInput& input, const EncoderParams& params,
                const EncoderConfig& config);
// Runs the layers on an explicit embedding matrix.
Matrix EncodeEmbeddings(const Matrix& embeddings, const MaskMatrix& mask,
                        const EncoderParams& params,
                        const EncoderConfig& config);

// Classifier logits and sigmoid scores, one per fact.
std::vector<double> FactLogits(const Encoding& encoding,
                               const EncoderInput& input,
                               const EncoderParams& params,
                               const EncoderConfig& config);
std::vector<double> ClassifyFacts(const Encoding& encoding,
                                  const EncoderInput& input,
                                  const EncoderParams& params,
                                  const EncoderConfig& config);
std::vector<double> ScoreFacts(const EncoderInput& input,
                               const EncoderParams& params,
                               const EncoderConfig& config);

inline constexpr double kBceEpsilon = 1e-7;

// Mean binary cross-entropy over facts, scores clamped to
// [kBceEpsilon, 1 - kBceEpsilon]. Throws UsageError on a length mismatch.
double BceLoss(const std::vector<double>& scores,
               const std::vector<bool>& labels);

// Mean binary cross-entropy computed from logits as softplus(z) - y z. This
// is the training objective; it matches BceLoss away from the clamp.
double BceLossFromLogits(const std::vector<double>& logits,
                         const std::vector<bool>& labels);

// Adds scale * d(sum of per-fact losses)/d(params) into `grad` and returns
// the sum of per-fact losses.
double AccumulateGradient(const EncoderInput& input,
                          const std::vector<bool>& labels,
                          const EncoderParams& params,
                          const EncoderConfig& config, double scale,
                          EncoderParams* grad);

// Mean per-fact loss and its gradient.
double ComputeLossAndGradient(const EncoderInput& input,
                              const std::vector<bool>& labels,
                              const EncoderParams& params,
                              const EncoderConfig& config,
                              EncoderParams* grad);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_tensor;
  long checked = 0;
};

// Central finite differences over every parameter entry. The relative error
// of one entry is |a - n| / max(|a|, |n|, kGradCheckFloor).
inline constexpr double kGradCheckFloor = 1e-7;
GradCheckResult GradCheck(const EncoderParams& params,
                          const EncoderInput& input,
                          const std::vector<bool>& labels,
                          const EncoderConfig& config, double epsilon = 1e-4);

}  // namespace factsum

#endif  // FACTSUM_ENCODER_H_
