#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparsent/tensor.hpp"

namespace sparsent {

struct AdamHyperparams {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct ParamSlot {
  std::string name;
  DenseMatrix* value = nullptr;
  const DenseMatrix* grad = nullptr;
};

struct AdamState {
  AdamHyperparams hyper;
  std::uint64_t step = 0;
  // Moment accumulators, one per slot; created zeroed on the first step.
  std::vector<DenseMatrix> first_moment;
  std::vector<DenseMatrix> second_moment;
};

// Bias-corrected Adam update of every slot. Throws NumericError naming the
// parameter if any gradient entry is non-finite (nothing is modified then),
// DimensionError if shapes disagree with the accumulators.
void adam_step(std::span<const ParamSlot> slots, AdamState& state);

}  // namespace sparsent
