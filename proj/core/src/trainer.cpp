#include "sparsent/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sparsent/error.hpp"
#include "sparsent/rng.hpp"

namespace sparsent {

void TrainConfig::validate() const {
  if (batch_size == 0) throw Error("batch_size must be >= 1");
  if (max_seq_len == 0) throw Error("max_seq_len must be >= 1");
  if (!(lr > 0.0)) throw Error("learning rate must be > 0");
}

std::vector<TokenId> clip_sequence(std::span<const TokenId> ids, std::size_t max_len) {
  if (ids.size() <= max_len) return {ids.begin(), ids.end()};
  std::vector<TokenId> out(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(max_len));
  out.back() = kEosId;
  return out;
}

namespace {

std::size_t annealed_k(std::size_t target, std::size_t hidden, std::size_t step,
                       std::size_t anneal_steps) {
  if (step >= anneal_steps || hidden <= target) return target;
  const double left = static_cast<double>(anneal_steps - step) / static_cast<double>(anneal_steps);
  const auto extra = static_cast<std::size_t>(std::lround(static_cast<double>(hidden - target) * left));
  return target + extra;
}

// Restores the configured k even when training throws.
struct KRestore {
  SparsityConfig& sparsity;
  std::size_t k;
  ~KRestore() { sparsity.k = k; }
};

}  // namespace

TrainLog train(AutoencoderModel& model, std::span<const std::vector<TokenId>> corpus,
               const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  model.config.validate();
  if (corpus.empty()) throw Error("training corpus is empty");

  std::vector<std::vector<TokenId>> data;
  data.reserve(corpus.size());
  for (const auto& s : corpus) data.push_back(clip_sequence(s, cfg.max_seq_len));

  AutoencoderParams grads(model.config);
  std::vector<ParamSlot> slots;
  {
    auto values = model.params.tensors();
    auto gtensors = std::as_const(grads).tensors();
    const auto& names = AutoencoderParams::tensor_names();
    for (std::size_t i = 0; i < values.size(); ++i) {
      slots.push_back({names[i], values[i], gtensors[i]});
    }
  }

  AdamState adam;
  adam.hyper.lr = cfg.lr;
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  const bool anneal = model.config.sparsity.kind == SparsityKind::kKSparse &&
                      cfg.ksparse_anneal_epochs > 0;
  const std::size_t batches = (data.size() + cfg.batch_size - 1) / cfg.batch_size;
  const std::size_t anneal_steps = anneal ? cfg.ksparse_anneal_epochs * batches : 0;
  KRestore restore{model.config.sparsity, model.config.sparsity.k};
  std::size_t step = 0;

  TrainLog log;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    std::size_t epoch_steps = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      std::size_t tokens = 0;
      for (std::size_t b = start; b < stop; ++b) tokens += data[order[b]].size();

      if (anneal) {
        model.config.sparsity.k =
            annealed_k(restore.k, model.config.hidden_dim, step, anneal_steps);
      }
      ++step;
      grads.set_zero();
      const double scale = 1.0 / static_cast<double>(tokens);
      double batch_loss = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        batch_loss += accumulate_gradients(model, data[order[b]], scale, grads).total;
      }
      if (!std::isfinite(batch_loss)) throw NumericError("gradient blow-up: non-finite loss");

      if (cfg.clip_norm > 0.0) {
        double sq = 0.0;
        for (const auto* g : std::as_const(grads).tensors()) {
          for (double x : g->data()) sq += x * x;
        }
        const double norm = std::sqrt(sq);
        if (norm > cfg.clip_norm) {
          const double s = cfg.clip_norm / norm;
          for (auto* g : grads.tensors()) {
            for (double& x : g->data()) x *= s;
          }
        }
      }
      adam_step(slots, adam);

      log.step_losses.push_back(batch_loss / static_cast<double>(tokens));
      epoch_loss += batch_loss;
      epoch_steps += tokens;
    }
    EpochLog entry{epoch + 1, epoch_loss / static_cast<double>(epoch_steps)};
    log.epochs.push_back(entry);
    if (on_epoch) on_epoch(entry);
  }
  return log;
}

}  // namespace sparsent
