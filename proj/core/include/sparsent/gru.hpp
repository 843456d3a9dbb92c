#pragma once

// Single GRU layer:
//   u  = σ(W_u x + R_u h + b_u)
//   r  = σ(W_r x + R_r h + b_r)
//   c  = tanh(W_c x + R_c (r ∘ h) + b_c)
//   h' = (1 - u) ∘ h + u ∘ c

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sparsent/tensor.hpp"

namespace sparsent {

struct GruWeights {
  GruWeights() = default;
  GruWeights(std::size_t input_dim, std::size_t hidden_dim);

  std::size_t input_dim() const noexcept { return w_update.cols(); }
  std::size_t hidden_dim() const noexcept { return w_update.rows(); }

  // Input kernels, hidden x input.
  DenseMatrix w_update, w_reset, w_candidate;
  // Recurrent kernels, hidden x hidden.
  DenseMatrix r_update, r_reset, r_candidate;
  // Biases, 1 x hidden.
  DenseMatrix b_update, b_reset, b_candidate;

  // Fixed order used by serialization and the optimizer.
  std::vector<DenseMatrix*> tensors();
  std::vector<const DenseMatrix*> tensors() const;
  static const std::vector<std::string>& tensor_names();
};

struct GruStepCache {
  DenseVector x;
  DenseVector h_prev;
  DenseVector update;
  DenseVector reset;
  DenseVector candidate;
  DenseVector reset_hidden;  // r ∘ h_prev
  DenseVector h;
};

DenseVector gru_cell_forward(std::span<const double> x, std::span<const double> h_prev,
                             const GruWeights& w);

GruStepCache gru_cell_forward_cached(std::span<const double> x,
                                     std::span<const double> h_prev, const GruWeights& w);

struct GruStepGrad {
  DenseVector dx;
  DenseVector dh_prev;
};

// Backpropagates dL/dh' through one step; parameter gradients are added
// into `grads`.
GruStepGrad gru_cell_backward(const GruStepCache& cache, std::span<const double> dh,
                              const GruWeights& w, GruWeights& grads);

}  // namespace sparsent
