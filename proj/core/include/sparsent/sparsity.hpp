#pragma once

// Sparsity transformations inserted between encoder and decoder: k-Sparse
// top-k masking and Sparsemax (Euclidean projection onto the probability
// simplex) with temperature. Both preserve dimensionality.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsent/tensor.hpp"

namespace sparsent {

enum class SparsityKind { kNone, kKSparse, kSparsemax };

std::string_view to_string(SparsityKind kind);
// Accepts "none", "ksparse", "sparsemax"; throws Error otherwise.
SparsityKind parse_sparsity_kind(std::string_view name);

struct SparsityConfig {
  SparsityKind kind = SparsityKind::kNone;
  std::size_t k = 1;           // k-Sparse support size
  double temperature = 1.0;    // Sparsemax τ
  bool signed_selection = false;  // k-Sparse by value instead of |value|

  // Throws Error when k == 0 (k-Sparse) or τ <= 0 (Sparsemax).
  void validate() const;

  bool operator==(const SparsityConfig&) const = default;
};

struct LayerActivation {
  DenseVector output;
  // Kept dimensions in ascending order. For Sparsemax: {i : output_i > 0}.
  std::vector<std::size_t> support;
};

// Keeps the k entries of largest |z_i| (or largest z_i when
// signed_selection), lowest index first on ties; zeroes the rest.
LayerActivation ksparse_forward(std::span<const double> z, std::size_t k,
                                bool signed_selection = false);

// Gradient flows only through the support.
DenseVector ksparse_backward(std::span<const double> grad_out,
                             std::span<const std::size_t> support);

// Sparsemax(z / τ) by sort and threshold.
LayerActivation sparsemax_forward(std::span<const double> z, double temperature);

// For i in S = {i : e_i > 0}: (g_i - mean_S g) / τ, else 0.
DenseVector sparsemax_backward(std::span<const double> grad_out, std::span<const double> e,
                               double temperature);

// Dispatch on cfg.kind; kNone is the identity with full support.
LayerActivation apply_sparsity(std::span<const double> z, const SparsityConfig& cfg);
DenseVector sparsity_backward(std::span<const double> grad_out, const LayerActivation& act,
                              const SparsityConfig& cfg);

}  // namespace sparsent
