#pragma once

// GRU sequence autoencoder with a sparsity transformation between encoder
// and decoder. The encoder reads the token ids (ending with <eos>) and its
// final hidden state z is mapped to e = sparsity(z). The decoder starts
// from h_0 = e, reads <eos> as the start marker followed by the target
// tokens shifted by one (teacher forcing), and predicts every target token
// through softmax(W_o h_t + b_o).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sparsent/corpus.hpp"
#include "sparsent/gru.hpp"
#include "sparsent/sparse_codes.hpp"
#include "sparsent/sparsity.hpp"
#include "sparsent/tensor.hpp"

namespace sparsent {

struct ModelConfig {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 32;
  std::size_t hidden_dim = 32;
  SparsityConfig sparsity;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

struct AutoencoderParams {
  AutoencoderParams() = default;
  // All-zero tensors shaped for `cfg`.
  explicit AutoencoderParams(const ModelConfig& cfg);

  DenseMatrix embeddings;  // vocab x embed
  GruWeights encoder;
  GruWeights decoder;
  DenseMatrix out_weight;  // vocab x hidden
  DenseMatrix out_bias;    // 1 x vocab

  // embeddings, encoder.*, decoder.*, out_weight, out_bias.
  std::vector<DenseMatrix*> tensors();
  std::vector<const DenseMatrix*> tensors() const;
  static const std::vector<std::string>& tensor_names();

  void set_zero();
};

struct AutoencoderModel {
  ModelConfig config;
  AutoencoderParams params;
};

inline constexpr double kDefaultInitScale = 0.08;

// Parameters drawn uniform(-scale, scale) from config.seed.
AutoencoderModel make_model(const ModelConfig& cfg, double init_scale = kDefaultInitScale);

// Final encoder hidden state. Throws Error on an empty sequence or an id
// outside the vocabulary.
DenseVector encode(const AutoencoderModel& model, std::span<const TokenId> ids);

struct DecodeResult {
  double loss = 0.0;                 // mean cross-entropy over steps
  std::vector<DenseVector> logits;   // one per target token
};

DecodeResult decode_train(const AutoencoderModel& model, std::span<const double> e,
                          std::span<const TokenId> target);

// Argmax decoding until <eos> (not emitted) or max_len tokens.
std::vector<TokenId> decode_greedy(const AutoencoderModel& model, std::span<const double> e,
                                   std::size_t max_len);

// Mean cross-entropy of reconstructing `ids` through the full model.
double sentence_loss(const AutoencoderModel& model, std::span<const TokenId> ids);

struct LossSum {
  double total = 0.0;     // summed cross-entropy
  std::size_t steps = 0;  // predicted tokens
};

// One forward/backward pass; adds grad_scale * d(summed CE)/dθ into `grads`.
LossSum accumulate_gradients(const AutoencoderModel& model, std::span<const TokenId> ids,
                             double grad_scale, AutoencoderParams& grads);

using CorpusEmbedding = std::variant<DenseMatrix, SparseCodeMatrix>;

// Row i = sparsity(encode(sentence i)). Dense models give a DenseMatrix,
// sparse models a SparseCodeMatrix.
CorpusEmbedding embed_corpus(const AutoencoderModel& model,
                             std::span<const std::vector<TokenId>> corpus,
                             std::size_t threads = 1);

// Row i = encode(sentence i), before the sparsity transformation.
DenseMatrix encode_corpus(const AutoencoderModel& model,
                          std::span<const std::vector<TokenId>> corpus, std::size_t threads = 1);

}  // namespace sparsent
