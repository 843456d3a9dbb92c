#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sparsent/adam.hpp"
#include "sparsent/autoencoder.hpp"
#include "sparsent/corpus.hpp"

namespace sparsent {

struct TrainConfig {
  std::size_t batch_size = 16;
  std::size_t epochs = 10;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::size_t max_seq_len = 20;  // longer sentences are cut, keeping <eos>
  double clip_norm = 5.0;        // global gradient norm; <= 0 disables
  // k-Sparse only: over this many epochs k falls linearly from hidden_dim to
  // the configured k, so that every unit receives gradient early on. 0 disables.
  std::size_t ksparse_anneal_epochs = 0;

  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double mean_loss = 0.0;  // token-weighted mean cross-entropy over the epoch
};

struct TrainLog {
  std::vector<EpochLog> epochs;
  std::vector<double> step_losses;  // batch mean loss before each update
};

using EpochCallback = std::function<void(const EpochLog&)>;

// Mini-batch Adam on mean cross-entropy. Batches come from a seeded shuffle
// per epoch. Throws Error on an empty corpus and propagates NumericError.
TrainLog train(AutoencoderModel& model, std::span<const std::vector<TokenId>> corpus,
               const TrainConfig& cfg, const EpochCallback& on_epoch = {});

// Ids cut to at most max_len entries, the last one always <eos>.
std::vector<TokenId> clip_sequence(std::span<const TokenId> ids, std::size_t max_len);

}  // namespace sparsent
