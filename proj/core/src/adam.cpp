#include "sparsent/adam.hpp"

#include <cmath>

#include "sparsent/error.hpp"

namespace sparsent {

void adam_step(std::span<const ParamSlot> slots, AdamState& state) {
  for (const auto& slot : slots) {
    if (slot.value->rows() != slot.grad->rows() || slot.value->cols() != slot.grad->cols()) {
      throw DimensionError("adam: gradient shape mismatch for " + slot.name);
    }
    if (!all_finite(slot.grad->data())) {
      throw NumericError("gradient blow-up: non-finite gradient for " + slot.name);
    }
  }
  if (state.first_moment.empty()) {
    for (const auto& slot : slots) {
      state.first_moment.emplace_back(slot.value->rows(), slot.value->cols());
      state.second_moment.emplace_back(slot.value->rows(), slot.value->cols());
    }
  }
  if (state.first_moment.size() != slots.size()) {
    throw DimensionError("adam: state tracks " + std::to_string(state.first_moment.size()) +
                         " parameters, got " + std::to_string(slots.size()));
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (state.first_moment[i].size() != slots[i].value->size()) {
      throw DimensionError("adam: state shape mismatch for " + slots[i].name);
    }
  }

  const auto& h = state.hyper;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(h.beta1, t);
  const double correction2 = 1.0 - std::pow(h.beta2, t);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto p = slots[i].value->data();
    auto g = slots[i].grad->data();
    auto m = state.first_moment[i].data();
    auto v = state.second_moment[i].data();
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = h.beta1 * m[j] + (1.0 - h.beta1) * g[j];
      v[j] = h.beta2 * v[j] + (1.0 - h.beta2) * g[j] * g[j];
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      p[j] -= h.lr * m_hat / (std::sqrt(v_hat) + h.eps);
    }
  }
}

}  // namespace sparsent
