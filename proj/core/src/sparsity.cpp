#include "sparsent/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "sparsent/error.hpp"

namespace sparsent {

std::string_view to_string(SparsityKind kind) {
  switch (kind) {
    case SparsityKind::kNone:
      return "none";
    case SparsityKind::kKSparse:
      return "ksparse";
    case SparsityKind::kSparsemax:
      return "sparsemax";
  }
  return "unknown";
}

SparsityKind parse_sparsity_kind(std::string_view name) {
  if (name == "none") return SparsityKind::kNone;
  if (name == "ksparse") return SparsityKind::kKSparse;
  if (name == "sparsemax") return SparsityKind::kSparsemax;
  throw Error("unknown sparsity kind '" + std::string(name) +
              "' (expected none, ksparse or sparsemax)");
}

void SparsityConfig::validate() const {
  if (kind == SparsityKind::kKSparse && k == 0) throw Error("k-Sparse requires k >= 1");
  if (kind == SparsityKind::kSparsemax && !(temperature > 0.0 && std::isfinite(temperature))) {
    throw Error("Sparsemax requires a finite temperature > 0");
  }
}

LayerActivation ksparse_forward(std::span<const double> z, std::size_t k,
                                bool signed_selection) {
  LayerActivation act;
  act.output.assign(z.size(), 0.0);
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(k, z.size());
  auto score = [&](std::size_t i) { return signed_selection ? z[i] : std::abs(z[i]); };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      const double sa = score(a);
                      const double sb = score(b);
                      return sa > sb || (sa == sb && a < b);
                    });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  for (std::size_t i : order) act.output[i] = z[i];
  act.support = std::move(order);
  return act;
}

DenseVector ksparse_backward(std::span<const double> grad_out,
                             std::span<const std::size_t> support) {
  DenseVector grad(grad_out.size(), 0.0);
  for (std::size_t i : support) grad[i] = grad_out[i];
  return grad;
}

LayerActivation sparsemax_forward(std::span<const double> z, double temperature) {
  if (!(temperature > 0.0)) throw Error("sparsemax: temperature must be > 0");
  LayerActivation act;
  if (z.empty()) return act;

  std::vector<double> s(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) s[i] = z[i] / temperature;
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // ρ = max{j : 1 + j s_(j) > Σ_{r<=j} s_(r)}; j = 1 always qualifies.
  double cumsum = 0.0;
  double support_sum = sorted[0];
  std::size_t rho = 1;
  for (std::size_t j = 1; j <= sorted.size(); ++j) {
    cumsum += sorted[j - 1];
    if (1.0 + static_cast<double>(j) * sorted[j - 1] > cumsum) {
      rho = j;
      support_sum = cumsum;
    }
  }
  const double theta = (support_sum - 1.0) / static_cast<double>(rho);

  act.output.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    act.output[i] = std::max(s[i] - theta, 0.0);
    if (act.output[i] > 0.0) act.support.push_back(i);
  }
  return act;
}

DenseVector sparsemax_backward(std::span<const double> grad_out, std::span<const double> e,
                               double temperature) {
  if (grad_out.size() != e.size()) {
    throw DimensionError("sparsemax_backward: gradient length " +
                         std::to_string(grad_out.size()) + ", output length " +
                         std::to_string(e.size()));
  }
  DenseVector grad(e.size(), 0.0);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0.0) {
      sum += grad_out[i];
      ++count;
    }
  }
  if (count == 0) return grad;
  const double mean = sum / static_cast<double>(count);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0.0) grad[i] = (grad_out[i] - mean) / temperature;
  }
  return grad;
}

LayerActivation apply_sparsity(std::span<const double> z, const SparsityConfig& cfg) {
  switch (cfg.kind) {
    case SparsityKind::kKSparse:
      return ksparse_forward(z, cfg.k, cfg.signed_selection);
    case SparsityKind::kSparsemax:
      return sparsemax_forward(z, cfg.temperature);
    case SparsityKind::kNone:
      break;
  }
  LayerActivation act;
  act.output.assign(z.begin(), z.end());
  act.support.resize(z.size());
  std::iota(act.support.begin(), act.support.end(), std::size_t{0});
  return act;
}

DenseVector sparsity_backward(std::span<const double> grad_out, const LayerActivation& act,
                              const SparsityConfig& cfg) {
  switch (cfg.kind) {
    case SparsityKind::kKSparse:
      return ksparse_backward(grad_out, act.support);
    case SparsityKind::kSparsemax:
      return sparsemax_backward(grad_out, act.output, cfg.temperature);
    case SparsityKind::kNone:
      break;
  }
  return DenseVector(grad_out.begin(), grad_out.end());
}

}  // namespace sparsent
