#include "sparsent/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsent/error.hpp"
#include "sparsent/parallel.hpp"
#include "sparsent/rng.hpp"

namespace sparsent {
namespace {

void check_ids(const AutoencoderModel& model, std::span<const TokenId> ids) {
  if (ids.empty()) throw Error("cannot encode an empty sequence");
  for (TokenId id : ids) {
    if (id >= model.config.vocab_size) {
      throw Error("token id " + std::to_string(id) + " outside vocabulary of size " +
                  std::to_string(model.config.vocab_size));
    }
  }
}

std::span<const double> embedding(const AutoencoderModel& model, TokenId id) {
  return model.params.embeddings.row(id);
}

DenseVector output_logits(const AutoencoderModel& model, std::span<const double> h) {
  DenseVector logits = matvec(model.params.out_weight, h);
  auto bias = model.params.out_bias.row(0);
  for (std::size_t i = 0; i < logits.size(); ++i) logits[i] += bias[i];
  return logits;
}

// Softmax in place; returns log-sum-exp of the input.
double softmax_inplace(DenseVector& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return mx + std::log(sum);
}

struct EncoderPass {
  std::vector<GruStepCache> steps;
  DenseVector z;
};

EncoderPass run_encoder(const AutoencoderModel& model, std::span<const TokenId> ids,
                        bool keep_cache) {
  EncoderPass pass;
  DenseVector h(model.config.hidden_dim, 0.0);
  if (keep_cache) pass.steps.reserve(ids.size());
  for (TokenId id : ids) {
    GruStepCache step = gru_cell_forward_cached(embedding(model, id), h, model.params.encoder);
    h = step.h;
    if (keep_cache) pass.steps.push_back(std::move(step));
  }
  pass.z = std::move(h);
  return pass;
}

}  // namespace

void ModelConfig::validate() const {
  if (vocab_size < kNumReserved) throw Error("vocab_size must cover the reserved symbols");
  if (embed_dim == 0 || hidden_dim == 0) throw Error("embed_dim and hidden_dim must be >= 1");
  sparsity.validate();
}

AutoencoderParams::AutoencoderParams(const ModelConfig& cfg)
    : embeddings(cfg.vocab_size, cfg.embed_dim),
      encoder(cfg.embed_dim, cfg.hidden_dim),
      decoder(cfg.embed_dim, cfg.hidden_dim),
      out_weight(cfg.vocab_size, cfg.hidden_dim),
      out_bias(1, cfg.vocab_size) {}

std::vector<DenseMatrix*> AutoencoderParams::tensors() {
  std::vector<DenseMatrix*> out{&embeddings};
  for (auto* t : encoder.tensors()) out.push_back(t);
  for (auto* t : decoder.tensors()) out.push_back(t);
  out.push_back(&out_weight);
  out.push_back(&out_bias);
  return out;
}

std::vector<const DenseMatrix*> AutoencoderParams::tensors() const {
  std::vector<const DenseMatrix*> out{&embeddings};
  for (auto* t : encoder.tensors()) out.push_back(t);
  for (auto* t : decoder.tensors()) out.push_back(t);
  out.push_back(&out_weight);
  out.push_back(&out_bias);
  return out;
}

const std::vector<std::string>& AutoencoderParams::tensor_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"embeddings"};
    for (const auto& s : GruWeights::tensor_names()) n.push_back("encoder." + s);
    for (const auto& s : GruWeights::tensor_names()) n.push_back("decoder." + s);
    n.push_back("out_weight");
    n.push_back("out_bias");
    return n;
  }();
  return names;
}

void AutoencoderParams::set_zero() {
  for (auto* t : tensors()) t->fill(0.0);
}

AutoencoderModel make_model(const ModelConfig& cfg, double init_scale) {
  cfg.validate();
  AutoencoderModel model{cfg, AutoencoderParams(cfg)};
  Rng rng(cfg.seed);
  for (auto* t : model.params.tensors()) {
    for (double& x : t->data()) x = rng.uniform(-init_scale, init_scale);
  }
  return model;
}

DenseVector encode(const AutoencoderModel& model, std::span<const TokenId> ids) {
  check_ids(model, ids);
  return run_encoder(model, ids, false).z;
}

DecodeResult decode_train(const AutoencoderModel& model, std::span<const double> e,
                          std::span<const TokenId> target) {
  check_ids(model, target);
  if (e.size() != model.config.hidden_dim) {
    throw DimensionError("decoder state length " + std::to_string(e.size()) + ", expected " +
                         std::to_string(model.config.hidden_dim));
  }
  DecodeResult out;
  DenseVector h(e.begin(), e.end());
  TokenId prev = kEosId;
  double total = 0.0;
  for (TokenId tok : target) {
    h = gru_cell_forward(embedding(model, prev), h, model.params.decoder);
    DenseVector logits = output_logits(model, h);
    DenseVector probs = logits;
    const double lse = softmax_inplace(probs);
    total += lse - logits[tok];
    out.logits.push_back(std::move(logits));
    prev = tok;
  }
  out.loss = total / static_cast<double>(target.size());
  return out;
}

std::vector<TokenId> decode_greedy(const AutoencoderModel& model, std::span<const double> e,
                                   std::size_t max_len) {
  std::vector<TokenId> out;
  DenseVector h(e.begin(), e.end());
  TokenId prev = kEosId;
  while (out.size() < max_len) {
    h = gru_cell_forward(embedding(model, prev), h, model.params.decoder);
    const DenseVector logits = output_logits(model, h);
    const auto best = static_cast<TokenId>(
        std::max_element(logits.begin(), logits.end()) - logits.begin());
    if (best == kEosId) break;
    out.push_back(best);
    prev = best;
  }
  return out;
}

double sentence_loss(const AutoencoderModel& model, std::span<const TokenId> ids) {
  const DenseVector z = encode(model, ids);
  const LayerActivation act = apply_sparsity(z, model.config.sparsity);
  return decode_train(model, act.output, ids).loss;
}

LossSum accumulate_gradients(const AutoencoderModel& model, std::span<const TokenId> ids,
                             double grad_scale, AutoencoderParams& grads) {
  check_ids(model, ids);
  const auto& p = model.params;
  const std::size_t vocab = model.config.vocab_size;

  EncoderPass enc = run_encoder(model, ids, true);
  const LayerActivation act = apply_sparsity(enc.z, model.config.sparsity);

  std::vector<GruStepCache> dec_steps;
  std::vector<DenseVector> probs;
  dec_steps.reserve(ids.size());
  probs.reserve(ids.size());
  LossSum loss;
  DenseVector h = act.output;
  TokenId prev = kEosId;
  for (TokenId tok : ids) {
    GruStepCache step = gru_cell_forward_cached(embedding(model, prev), h, p.decoder);
    h = step.h;
    DenseVector pr = output_logits(model, h);
    const double logit = pr[tok];
    loss.total += softmax_inplace(pr) - logit;
    dec_steps.push_back(std::move(step));
    probs.push_back(std::move(pr));
    prev = tok;
  }
  loss.steps = ids.size();

  DenseVector dh_next(model.config.hidden_dim, 0.0);
  for (std::size_t t = ids.size(); t-- > 0;) {
    DenseVector& dlogits = probs[t];
    dlogits[ids[t]] -= 1.0;
    for (double& x : dlogits) x *= grad_scale;
    const auto& hs = dec_steps[t].h;
    auto bias_grad = grads.out_bias.row(0);
    DenseVector dh = dh_next;
    for (std::size_t v = 0; v < vocab; ++v) {
      const double g = dlogits[v];
      if (g == 0.0) continue;
      bias_grad[v] += g;
      auto wrow = p.out_weight.row(v);
      auto grow = grads.out_weight.row(v);
      for (std::size_t c = 0; c < hs.size(); ++c) {
        grow[c] += g * hs[c];
        dh[c] += g * wrow[c];
      }
    }
    GruStepGrad step = gru_cell_backward(dec_steps[t], dh, p.decoder, grads.decoder);
    const TokenId input = t == 0 ? kEosId : ids[t - 1];
    auto erow = grads.embeddings.row(input);
    for (std::size_t c = 0; c < erow.size(); ++c) erow[c] += step.dx[c];
    dh_next = std::move(step.dh_prev);
  }

  DenseVector dh = sparsity_backward(dh_next, act, model.config.sparsity);
  for (std::size_t t = ids.size(); t-- > 0;) {
    GruStepGrad step = gru_cell_backward(enc.steps[t], dh, p.encoder, grads.encoder);
    auto erow = grads.embeddings.row(ids[t]);
    for (std::size_t c = 0; c < erow.size(); ++c) erow[c] += step.dx[c];
    dh = std::move(step.dh_prev);
  }
  return loss;
}

CorpusEmbedding embed_corpus(const AutoencoderModel& model,
                             std::span<const std::vector<TokenId>> corpus, std::size_t threads) {
  const std::size_t hidden = model.config.hidden_dim;
  std::vector<DenseVector> rows(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    rows[i] = apply_sparsity(encode(model, corpus[i]), model.config.sparsity).output;
  });
  DenseMatrix dense(corpus.size(), hidden);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), dense.row(i).begin());
  }
  if (model.config.sparsity.kind == SparsityKind::kNone) return dense;
  return SparseCodeMatrix::from_dense(dense);
}

DenseMatrix encode_corpus(const AutoencoderModel& model,
                          std::span<const std::vector<TokenId>> corpus, std::size_t threads) {
  DenseMatrix out(corpus.size(), model.config.hidden_dim);
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const DenseVector z = encode(model, corpus[i]);
    std::copy(z.begin(), z.end(), out.row(i).begin());
  });
  return out;
}

}  // namespace sparsent
