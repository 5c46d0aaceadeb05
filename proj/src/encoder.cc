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

#include "factsum/encoder.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "factsum/status.h"

namespace factsum {
namespace {

constexpr double kLayerNormEpsilon = 1e-12;
constexpr double kInitScale = 0.05;

// Uniform draw in [lo, hi) from the top 53 bits, independent of the
// standard library's distribution implementation.
double Uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

void FillUniform(Matrix& m, std::mt19937_64& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = Uniform(rng, -kInitScale, kInitScale);
  }
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Gelu(double u) { return 0.5 * u * (1.0 + std::erf(u / std::sqrt(2.0))); }

double GeluGrad(double u) {
  constexpr double kInvSqrt2Pi = 0.3989422804014327;
  return 0.5 * (1.0 + std::erf(u / std::sqrt(2.0))) +
         u * kInvSqrt2Pi * std::exp(-0.5 * u * u);
}

void AddRowBias(Matrix& m, const Matrix& bias) {
  m.rowwise() += bias.row(0);
}

struct LayerNormCache {
  Matrix normalized;             // x-hat
  Eigen::VectorXd inverse_std;   // per row
};

Matrix LayerNorm(const Matrix& x, const Matrix& gain, const Matrix& bias,
                 LayerNormCache* cache) {
  const Eigen::Index n = x.rows(), d = x.cols();
  Matrix xhat(n, d);
  Eigen::VectorXd inv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = x.row(i).mean();
    const double var = (x.row(i).array() - mean).square().mean();
    inv(i) = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    xhat.row(i) = (x.row(i).array() - mean) * inv(i);
  }
  Matrix y = (xhat.array().rowwise() * gain.row(0).array()).matrix();
  AddRowBias(y, bias);
  if (cache) {
    cache->normalized = std::move(xhat);
    cache->inverse_std = std::move(inv);
  }
  return y;
}

// Returns dx; accumulates into the gain/bias gradients.
Matrix LayerNormBackward(const Matrix& dy, const LayerNormCache& cache,
                         const Matrix& gain, Matrix& dgain, Matrix& dbias) {
  const Matrix& xhat = cache.normalized;
  dgain.row(0) += (dy.array() * xhat.array()).colwise().sum().matrix();
  dbias.row(0) += dy.colwise().sum();
  const Matrix dxhat = (dy.array().rowwise() * gain.row(0).array()).matrix();
  const double d = static_cast<double>(dy.cols());
  Matrix dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double mean_dxhat = dxhat.row(i).sum() / d;
    const double mean_dot = dxhat.row(i).dot(xhat.row(i)) / d;
    dx.row(i) = cache.inverse_std(i) *
                (dxhat.row(i).array() - mean_dxhat -
                 xhat.row(i).array() * mean_dot)
                    .matrix();
  }
  return dx;
}

// Attention over one head. Rows of `weights` are the softmax distributions.
// Masked entries (additive style) are skipped outright so that they cannot
// contribute even a signed zero.
Matrix AttendHead(const Matrix& q, const Matrix& k, const Matrix& v,
                  const MaskMatrix& mask, MaskStyle style, Matrix& weights) {
  const int n = static_cast<int>(q.rows());
  FACTSUM_CHECK(mask.size() == n && k.rows() == n && v.rows() == n,
                "attention shapes disagree with the mask");
  const double scale = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  weights.setZero(n, n);
  Matrix out = Matrix::Zero(n, v.cols());
  for (int i = 0; i < n; ++i) {
    double max_logit = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (int j = 0; j < n; ++j) {
      double logit;
      if (style == MaskStyle::kAdditive) {
        if (!mask.at(i, j)) continue;
        logit = q.row(i).dot(k.row(j)) * scale;
      } else {
        logit = mask.at(i, j) ? q.row(i).dot(k.row(j)) * scale : 0.0;
      }
      weights(i, j) = logit;
      max_logit = std::max(max_logit, logit);
      any = true;
    }
    FACTSUM_CHECK(any, "mask row " + std::to_string(i) + " is all zero");
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (style == MaskStyle::kAdditive && !mask.at(i, j)) continue;
      weights(i, j) = std::exp(weights(i, j) - max_logit);
      total += weights(i, j);
    }
    for (int j = 0; j < n; ++j) {
      if (style == MaskStyle::kAdditive && !mask.at(i, j)) continue;
      weights(i, j) /= total;
      out.row(i) += weights(i, j) * v.row(j);
    }
  }
  return out;
}

struct LayerCache {
  Matrix input;
  Matrix q, k, v;
  std::vector<Matrix> weights;  // per head
  Matrix context;               // concatenated head outputs
  LayerNormCache ln1;
  Matrix h1;
  Matrix pre_activation;
  Matrix activation;
  LayerNormCache ln2;
};

Matrix LayerForward(const Matrix& x, const MaskMatrix& mask,
                    const LayerParams& p, const EncoderConfig& config,
                    LayerCache* cache) {
  const int heads = config.n_heads;
  const int dk = config.head_dim();
  Matrix q = x * p.wq;
  AddRowBias(q, p.bq);
  Matrix k = x * p.wk;
  AddRowBias(k, p.bk);
  Matrix v = x * p.wv;
  AddRowBias(v, p.bv);

  Matrix context(x.rows(), config.d_model);
  std::vector<Matrix> weights(heads);
  for (int h = 0; h < heads; ++h) {
    const Matrix qh = q.middleCols(h * dk, dk);
    const Matrix kh = k.middleCols(h * dk, dk);
    const Matrix vh = v.middleCols(h * dk, dk);
    context.middleCols(h * dk, dk) =
        AttendHead(qh, kh, vh, mask, config.mask_style, weights[h]);
  }
  Matrix attn = context * p.wo;
  AddRowBias(attn, p.bo);

  LayerNormCache ln1;
  Matrix h1 = LayerNorm(x + attn, p.ln1_gain, p.ln1_bias, &ln1);

  Matrix pre = h1 * p.w1;
  AddRowBias(pre, p.b1);
  Matrix act = pre.unaryExpr(&Gelu);
  Matrix ff = act * p.w2;
  AddRowBias(ff, p.b2);

  LayerNormCache ln2;
  Matrix out = LayerNorm(h1 + ff, p.ln2_gain, p.ln2_bias, &ln2);

  if (cache) {
    cache->input = x;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->weights = std::move(weights);
    cache->context = std::move(context);
    cache->ln1 = std::move(ln1);
    cache->h1 = std::move(h1);
    cache->pre_activation = std::move(pre);
    cache->activation = std::move(act);
    cache->ln2 = std::move(ln2);
  }
  return out;
}

// Returns d(layer input).
Matrix LayerBackward(const Matrix& dout, const MaskMatrix& mask,
                     const LayerParams& p, const LayerCache& c,
                     const EncoderConfig& config, LayerParams& g) {
  const int heads = config.n_heads;
  const int dk = config.head_dim();
  const int n = static_cast<int>(dout.rows());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

  // Feed-forward block.
  const Matrix dr2 =
      LayerNormBackward(dout, c.ln2, p.ln2_gain, g.ln2_gain, g.ln2_bias);
  Matrix dh1 = dr2;
  g.w2 += c.activation.transpose() * dr2;
  g.b2.row(0) += dr2.colwise().sum();
  const Matrix dact = dr2 * p.w2.transpose();
  const Matrix dpre =
      (dact.array() * c.pre_activation.unaryExpr(&GeluGrad).array()).matrix();
  g.w1 += c.h1.transpose() * dpre;
  g.b1.row(0) += dpre.colwise().sum();
  dh1 += dpre * p.w1.transpose();

  // Attention block.
  const Matrix dr1 =
      LayerNormBackward(dh1, c.ln1, p.ln1_gain, g.ln1_gain, g.ln1_bias);
  Matrix dx = dr1;
  g.wo += c.context.transpose() * dr1;
  g.bo.row(0) += dr1.colwise().sum();
  const Matrix dcontext = dr1 * p.wo.transpose();

  Matrix dq(n, config.d_model), dk_all(n, config.d_model),
      dv(n, config.d_model);
  for (int h = 0; h < heads; ++h) {
    const Matrix& a = c.weights[h];
    const Matrix qh = c.q.middleCols(h * dk, dk);
    const Matrix kh = c.k.middleCols(h * dk, dk);
    const Matrix vh = c.v.middleCols(h * dk, dk);
    const Matrix dctx = dcontext.middleCols(h * dk, dk);

    dv.middleCols(h * dk, dk) = a.transpose() * dctx;
    const Matrix da = dctx * vh.transpose();
    Matrix dlogit(n, n);
    for (int i = 0; i < n; ++i) {
      const double dot = da.row(i).dot(a.row(i));
      for (int j = 0; j < n; ++j) {
        double ds = a(i, j) * (da(i, j) - dot);
        // Multiplicative masking zeroes the gradient of masked products;
        // additive masking already has a(i, j) == 0 there.
        if (config.mask_style == MaskStyle::kMultiplicative && !mask.at(i, j))
          ds = 0.0;
        dlogit(i, j) = ds * scale;
      }
    }
    dq.middleCols(h * dk, dk) = dlogit * kh;
    dk_all.middleCols(h * dk, dk) = dlogit.transpose() * qh;
  }
  g.wq += c.input.transpose() * dq;
  g.bq.row(0) += dq.colwise().sum();
  g.wk += c.input.transpose() * dk_all;
  g.bk.row(0) += dk_all.colwise().sum();
  g.wv += c.input.transpose() * dv;
  g.bv.row(0) += dv.colwise().sum();
  dx += dq * p.wq.transpose() + dk_all * p.wk.transpose() +
        dv * p.wv.transpose();
  return dx;
}

// Classifier feature layout: [d | s_j | f_i] restricted to the mode's parts.
Eigen::RowVectorXd FactFeatures(const Matrix& hidden, const EncoderInput& in,
                                int fact, const EncoderConfig& config) {
  const int d = config.d_model;
  Eigen::RowVectorXd features(config.classifier_width());
  int offset = 0;
  if (UsesDocument(config.classifier_mode)) {
    features.segment(offset, d) = hidden.row(in.doc_cls);
    offset += d;
  }
  if (UsesSentence(config.classifier_mode)) {
    const int sentence = in.fact_sentence[fact];
    FACTSUM_CHECK(sentence >= 0 && sentence < (int)in.sentence_cls.size(),
                  "fact without a sentence [cls]");
    features.segment(offset, d) = hidden.row(in.sentence_cls[sentence]);
    offset += d;
  }
  features.segment(offset, d) = hidden.row(in.fact_cls[fact]);
  return features;
}

struct ForwardCache {
  std::vector<LayerCache> layers;
  Matrix hidden;
};

std::vector<double> ForwardLogits(const EncoderInput& input,
                                  const EncoderParams& params,
                                  const EncoderConfig& config,
                                  ForwardCache* cache) {
  Matrix x = Embed(input, params, config);
  if (cache) cache->layers.resize(params.layers.size());
  for (size_t l = 0; l < params.layers.size(); ++l) {
    x = LayerForward(x, input.mask, params.layers[l], config,
                     cache ? &cache->layers[l] : nullptr);
  }
  std::vector<double> logits(input.num_facts());
  for (int i = 0; i < input.num_facts(); ++i) {
    logits[i] = FactFeatures(x, input, i, config)
                    .dot(params.classifier_weight.row(0)) +
                params.classifier_bias(0, 0);
  }
  if (cache) cache->hidden = std::move(x);
  return logits;
}

void CheckLabels(const EncoderInput& input, const std::vector<bool>& labels) {
  if (static_cast<int>(labels.size()) != input.num_facts()) {
    throw UsageError("got " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(input.num_facts()) + " facts");
  }
}

}  // namespace

std::string ClassifierModeName(ClassifierMode mode) {
  switch (mode) {
    case ClassifierMode::kF:
      return "f";
    case ClassifierMode::kDF:
      return "d+f";
    case ClassifierMode::kSF:
      return "s+f";
    case ClassifierMode::kDSF:
      return "d+s+f";
  }
  return "f";
}

ClassifierMode ParseClassifierMode(const std::string& name) {
  if (name == "f") return ClassifierMode::kF;
  if (name == "d+f") return ClassifierMode::kDF;
  if (name == "s+f") return ClassifierMode::kSF;
  if (name == "d+s+f") return ClassifierMode::kDSF;
  throw UsageError("unknown classifier mode '" + name +
                   "' (want f, d+f, s+f or d+s+f)");
}

bool UsesDocument(ClassifierMode mode) {
  return mode == ClassifierMode::kDF || mode == ClassifierMode::kDSF;
}

bool UsesSentence(ClassifierMode mode) {
  return mode == ClassifierMode::kSF || mode == ClassifierMode::kDSF;
}

int ClassifierParts(ClassifierMode mode) {
  return 1 + (UsesDocument(mode) ? 1 : 0) + (UsesSentence(mode) ? 1 : 0);
}

std::string MaskStyleName(MaskStyle style) {
  return style == MaskStyle::kAdditive ? "additive" : "multiplicative";
}

MaskStyle ParseMaskStyle(const std::string& name) {
  if (name == "additive") return MaskStyle::kAdditive;
  if (name == "multiplicative") return MaskStyle::kMultiplicative;
  throw UsageError("unknown mask style '" + name +
                   "' (want additive|multiplicative)");
}

void EncoderConfig::Validate() const {
  if (d_model < 1 || n_heads < 1 || d_ff < 1 || n_layers < 0 || max_len < 1)
    throw UsageError("encoder dimensions must be positive");
  if (d_model % n_heads != 0)
    throw UsageError("d_model " + std::to_string(d_model) +
                     " is not divisible by n_heads " +
                     std::to_string(n_heads));
  if (vocab_size < Vocabulary::kNumReserved)
    throw UsageError("vocab_size must cover the reserved symbols");
}

nlohmann::json EncoderConfigToJson(const EncoderConfig& c) {
  return {{"d_model", c.d_model},
          {"n_layers", c.n_layers},
          {"n_heads", c.n_heads},
          {"d_ff", c.d_ff},
          {"vocab_size", c.vocab_size},
          {"max_len", c.max_len},
          {"use_segment", c.use_segment},
          {"use_position", c.use_position},
          {"classifier_mode", ClassifierModeName(c.classifier_mode)},
          {"word_scope", WordScopeName(c.word_scope)},
          {"mask_style", MaskStyleName(c.mask_style)}};
}

EncoderConfig EncoderConfigFromJson(const nlohmann::json& j) {
  EncoderConfig c;
  try {
    if (j.contains("d_model")) c.d_model = j["d_model"].get<int>();
    if (j.contains("n_layers")) c.n_layers = j["n_layers"].get<int>();
    if (j.contains("n_heads")) c.n_heads = j["n_heads"].get<int>();
    if (j.contains("d_ff")) c.d_ff = j["d_ff"].get<int>();
    if (j.contains("vocab_size")) c.vocab_size = j["vocab_size"].get<int>();
    if (j.contains("max_len")) c.max_len = j["max_len"].get<int>();
    if (j.contains("use_segment")) c.use_segment = j["use_segment"].get<bool>();
    if (j.contains("use_position"))
      c.use_position = j["use_position"].get<bool>();
    if (j.contains("classifier_mode"))
      c.classifier_mode =
          ParseClassifierMode(j["classifier_mode"].get<std::string>());
    if (j.contains("word_scope"))
      c.word_scope = ParseWordScope(j["word_scope"].get<std::string>());
    if (j.contains("mask_style"))
      c.mask_style = ParseMaskStyle(j["mask_style"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad encoder config: ") + e.what());
  }
  return c;
}

Vocabulary::Vocabulary() {
  for (const char* w : {"[unk]", "[cls_d]", "[cls_s]", "[cls_f]", "[seq]"}) {
    Add(w);
  }
}

Vocabulary Vocabulary::Build(const std::vector<HierSequence>& sequences) {
  Vocabulary vocab;
  for (const HierSequence& seq : sequences) {
    for (const SeqToken& t : seq.tokens) {
      if (t.role == Role::kWord) vocab.Add(t.text);
    }
  }
  return vocab;
}

int Vocabulary::Add(const std::string& word) {
  auto [it, inserted] = index_.emplace(word, size());
  if (inserted) words_.push_back(word);
  return it->second;
}

int Vocabulary::Id(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnk : it->second;
}

int Vocabulary::IdFor(const SeqToken& token) const {
  switch (token.role) {
    case Role::kDocCls:
      return kDocCls;
    case Role::kSentCls:
      return kSentCls;
    case Role::kFactCls:
      return kFactCls;
    case Role::kSeq:
      return kSeq;
    case Role::kWord:
      return Id(token.text);
  }
  return kUnk;
}

EncoderParams EncoderParams::Zeros(const EncoderConfig& c) {
  EncoderParams p;
  const int d = c.d_model;
  p.token_embedding = Matrix::Zero(c.vocab_size, d);
  p.segment_embedding = Matrix::Zero(2, d);
  p.position_embedding = Matrix::Zero(c.max_len, d);
  p.layers.resize(c.n_layers);
  for (LayerParams& l : p.layers) {
    l.wq = l.wk = l.wv = l.wo = Matrix::Zero(d, d);
    l.bq = l.bk = l.bv = l.bo = Matrix::Zero(1, d);
    l.ln1_gain = l.ln1_bias = l.ln2_gain = l.ln2_bias = Matrix::Zero(1, d);
    l.w1 = Matrix::Zero(d, c.d_ff);
    l.b1 = Matrix::Zero(1, c.d_ff);
    l.w2 = Matrix::Zero(c.d_ff, d);
    l.b2 = Matrix::Zero(1, d);
  }
  p.classifier_weight = Matrix::Zero(1, c.classifier_width());
  p.classifier_bias = Matrix::Zero(1, 1);
  return p;
}

EncoderParams EncoderParams::Initialize(const EncoderConfig& c, uint64_t seed) {
  c.Validate();
  EncoderParams p = Zeros(c);
  std::mt19937_64 rng(seed);
  FillUniform(p.token_embedding, rng);
  p.token_embedding.row(Vocabulary::kSentCls) =
      p.token_embedding.row(Vocabulary::kDocCls);
  p.token_embedding.row(Vocabulary::kFactCls) =
      p.token_embedding.row(Vocabulary::kDocCls);
  FillUniform(p.segment_embedding, rng);
  FillUniform(p.position_embedding, rng);
  for (LayerParams& l : p.layers) {
    FillUniform(l.wq, rng);
    FillUniform(l.wk, rng);
    FillUniform(l.wv, rng);
    FillUniform(l.wo, rng);
    FillUniform(l.w1, rng);
    FillUniform(l.w2, rng);
    l.ln1_gain.setOnes();
    l.ln2_gain.setOnes();
  }
  FillUniform(p.classifier_weight, rng);
  return p;
}

bool EncoderParams::AllFinite() const {
  bool finite = true;
  ForEach([&finite](const std::string&, const Matrix& m) {
    finite = finite && m.allFinite();
  });
  return finite;
}

bool EncoderParams::operator==(const EncoderParams& other) const {
  std::vector<const Matrix*> mine, theirs;
  ForEach([&mine](const std::string&, const Matrix& m) { mine.push_back(&m); });
  other.ForEach(
      [&theirs](const std::string&, const Matrix& m) { theirs.push_back(&m); });
  if (mine.size() != theirs.size()) return false;
  for (size_t i = 0; i < mine.size(); ++i) {
    if (mine[i]->rows() != theirs[i]->rows() ||
        mine[i]->cols() != theirs[i]->cols() || *mine[i] != *theirs[i])
      return false;
  }
  return true;
}

EncoderInput MakeEncoderInput(const HierSequence& seq, const Vocabulary& vocab,
                              WordScope scope) {
  EncoderInput in;
  in.token_ids.reserve(seq.size());
  for (const SeqToken& t : seq.tokens) in.token_ids.push_back(vocab.IdFor(t));
  for (Segment s : seq.segment_ids) in.segment_ids.push_back(static_cast<int>(s));
  in.mask = BuildMask(seq, scope);
  in.doc_cls = seq.doc_cls;
  in.sentence_cls = seq.sentence_cls;
  in.fact_cls = seq.fact_cls;
  for (const SequenceFact& f : seq.facts) in.fact_sentence.push_back(f.sentence);
  return in;
}

Matrix Embed(const EncoderInput& input, const EncoderParams& params,
             const EncoderConfig& config) {
  const int n = input.size();
  if (n > config.max_len) {
    throw CapacityError("sequence of " + std::to_string(n) +
                        " tokens exceeds max_len " +
                        std::to_string(config.max_len));
  }
  Matrix x(n, config.d_model);
  for (int t = 0; t < n; ++t) {
    const int id = input.token_ids[t];
    FACTSUM_CHECK(id >= 0 && id < params.token_embedding.rows(),
                  "token id out of range");
    x.row(t) = params.token_embedding.row(id);
    if (config.use_segment) x.row(t) += params.segment_embedding.row(input.segment_ids[t]);
    if (config.use_position) x.row(t) += params.position_embedding.row(t);
  }
  return x;
}

Matrix MaskedAttention(const Matrix& q, const Matrix& k, const Matrix& v,
                       const MaskMatrix& mask, MaskStyle style,
                       Matrix* weights) {
  Matrix local;
  Matrix& w = weights ? *weights : local;
  return AttendHead(q, k, v, mask, style, w);
}

Matrix EncodeEmbeddings(const Matrix& embeddings, const MaskMatrix& mask,
                        const EncoderParams& params,
                        const EncoderConfig& config) {
  Matrix x = embeddings;
  for (const LayerParams& layer : params.layers) {
    x = LayerForward(x, mask, layer, config, nullptr);
  }
  return x;
}

Encoding Encode(const EncoderInput& input, const EncoderParams& params,
                const EncoderConfig& config) {
  Encoding e;
  e.hidden = EncodeEmbeddings(Embed(input, params, config), input.mask, params,
                              config);
  e.document = e.hidden.row(input.doc_cls);
  e.sentences.resize(input.sentence_cls.size(), config.d_model);
  for (size_t s = 0; s < input.sentence_cls.size(); ++s)
    e.sentences.row(s) = e.hidden.row(input.sentence_cls[s]);
  e.facts.resize(input.fact_cls.size(), config.d_model);
  for (size_t f = 0; f < input.fact_cls.size(); ++f)
    e.facts.row(f) = e.hidden.row(input.fact_cls[f]);
  return e;
}

std::vector<double> FactLogits(const Encoding& encoding,
                               const EncoderInput& input,
                               const EncoderParams& params,
                               const EncoderConfig& config) {
  FACTSUM_CHECK(params.classifier_weight.cols() == config.classifier_width(),
                "classifier width does not match classifier_mode");
  std::vector<double> logits(input.num_facts());
  for (int i = 0; i < input.num_facts(); ++i) {
    logits[i] = FactFeatures(encoding.hidden, input, i, config)
                    .dot(params.classifier_weight.row(0)) +
                params.classifier_bias(0, 0);
  }
  return logits;
}

std::vector<double> ClassifyFacts(const Encoding& encoding,
                                  const EncoderInput& input,
                                  const EncoderParams& params,
                                  const EncoderConfig& config) {
  std::vector<double> scores = FactLogits(encoding, input, params, config);
  for (double& s : scores) s = Sigmoid(s);
  return scores;
}

std::vector<double> ScoreFacts(const EncoderInput& input,
                               const EncoderParams& params,
                               const EncoderConfig& config) {
  std::vector<double> scores = ForwardLogits(input, params, config, nullptr);
  for (double& s : scores) s = Sigmoid(s);
  return scores;
}

double BceLoss(const std::vector<double>& scores,
               const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw UsageError("BCE needs one label per score");
  }
  if (scores.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const double p = std::clamp(scores[i], kBceEpsilon, 1.0 - kBceEpsilon);
    total -= labels[i] ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(scores.size());
}

double BceLossFromLogits(const std::vector<double>& logits,
                         const std::vector<bool>& labels) {
  if (logits.size() != labels.size()) {
    throw UsageError("BCE needs one label per logit");
  }
  if (logits.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    total += Softplus(logits[i]) - (labels[i] ? logits[i] : 0.0);
  }
  return total / static_cast<double>(logits.size());
}

double AccumulateGradient(const EncoderInput& input,
                          const std::vector<bool>& labels,
                          const EncoderParams& params,
                          const EncoderConfig& config, double scale,
                          EncoderParams* grad) {
  CheckLabels(input, labels);
  ForwardCache cache;
  const std::vector<double> logits =
      ForwardLogits(input, params, config, &cache);

  const int d = config.d_model;
  const int n = input.size();
  double loss = 0.0;
  Matrix dhidden = Matrix::Zero(n, d);
  for (int i = 0; i < input.num_facts(); ++i) {
    const double z = logits[i];
    loss += Softplus(z) - (labels[i] ? z : 0.0);
    const double dz = scale * (Sigmoid(z) - (labels[i] ? 1.0 : 0.0));
    grad->classifier_weight.row(0) +=
        dz * FactFeatures(cache.hidden, input, i, config);
    grad->classifier_bias(0, 0) += dz;
    int offset = 0;
    const auto& w = params.classifier_weight;
    if (UsesDocument(config.classifier_mode)) {
      dhidden.row(input.doc_cls) += dz * w.block(0, offset, 1, d);
      offset += d;
    }
    if (UsesSentence(config.classifier_mode)) {
      dhidden.row(input.sentence_cls[input.fact_sentence[i]]) +=
          dz * w.block(0, offset, 1, d);
      offset += d;
    }
    dhidden.row(input.fact_cls[i]) += dz * w.block(0, offset, 1, d);
  }

  Matrix dx = std::move(dhidden);
  for (int l = static_cast<int>(params.layers.size()) - 1; l >= 0; --l) {
    dx = LayerBackward(dx, input.mask, params.layers[l], cache.layers[l],
                       config, grad->layers[l]);
  }
  for (int t = 0; t < n; ++t) {
    grad->token_embedding.row(input.token_ids[t]) += dx.row(t);
    if (config.use_segment)
      grad->segment_embedding.row(input.segment_ids[t]) += dx.row(t);
    if (config.use_position) grad->position_embedding.row(t) += dx.row(t);
  }
  return loss;
}

double ComputeLossAndGradient(const EncoderInput& input,
                              const std::vector<bool>& labels,
                              const EncoderParams& params,
                              const EncoderConfig& config,
                              EncoderParams* grad) {
  *grad = EncoderParams::Zeros(config);
  if (input.num_facts() == 0) return 0.0;
  const double scale = 1.0 / input.num_facts();
  return AccumulateGradient(input, labels, params, config, scale, grad) *
         scale;
}

GradCheckResult GradCheck(const EncoderParams& params,
                          const EncoderInput& input,
                          const std::vector<bool>& labels,
                          const EncoderConfig& config, double epsilon) {
  CheckLabels(input, labels);
  EncoderParams analytic;
  ComputeLossAndGradient(input, labels, params, config, &analytic);

  std::vector<std::pair<std::string, const Matrix*>> grads;
  analytic.ForEach([&grads](const std::string& name, const Matrix& m) {
    grads.emplace_back(name, &m);
  });

  EncoderParams probe = params;
  GradCheckResult result;
  size_t tensor = 0;
  probe.ForEach([&](const std::string& name, Matrix& m) {
    const Matrix& g = *grads[tensor++].second;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double saved = m.data()[i];
      m.data()[i] = saved + epsilon;
      const double up =
          BceLossFromLogits(ForwardLogits(input, probe, config, nullptr), labels);
      m.data()[i] = saved - epsilon;
      const double down =
          BceLossFromLogits(ForwardLogits(input, probe, config, nullptr), labels);
      m.data()[i] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double a = g.data()[i];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), kGradCheckFloor});
      const double err = std::abs(a - numeric) / denom;
      ++result.checked;
      if (err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_tensor = name;
      }
    }
  });
  return result;
}

}  // namespace factsum
