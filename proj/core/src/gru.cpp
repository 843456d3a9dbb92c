#include "sparsent/gru.hpp"

#include <cmath>

#include "sparsent/error.hpp"

namespace sparsent {
namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// out += W x
void add_matvec(DenseVector& out, const DenseMatrix& w, std::span<const double> x) {
  for (std::size_t r = 0; r < w.rows(); ++r) {
    auto row = w.row(r);
    double s = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * x[c];
    out[r] += s;
  }
}

// out += Wᵀ g
void add_matvec_t(DenseVector& out, const DenseMatrix& w, std::span<const double> g) {
  for (std::size_t r = 0; r < w.rows(); ++r) {
    auto row = w.row(r);
    const double gr = g[r];
    if (gr == 0.0) continue;
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c] * gr;
  }
}

// grad += g xᵀ
void add_outer(DenseMatrix& grad, std::span<const double> g, std::span<const double> x) {
  for (std::size_t r = 0; r < grad.rows(); ++r) {
    const double gr = g[r];
    if (gr == 0.0) continue;
    auto row = grad.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += gr * x[c];
  }
}

void add_bias(DenseMatrix& grad, std::span<const double> g) {
  auto row = grad.row(0);
  for (std::size_t c = 0; c < row.size(); ++c) row[c] += g[c];
}

DenseVector bias_copy(const DenseMatrix& b) {
  auto row = b.row(0);
  return DenseVector(row.begin(), row.end());
}

}  // namespace

GruWeights::GruWeights(std::size_t input_dim, std::size_t hidden_dim)
    : w_update(hidden_dim, input_dim),
      w_reset(hidden_dim, input_dim),
      w_candidate(hidden_dim, input_dim),
      r_update(hidden_dim, hidden_dim),
      r_reset(hidden_dim, hidden_dim),
      r_candidate(hidden_dim, hidden_dim),
      b_update(1, hidden_dim),
      b_reset(1, hidden_dim),
      b_candidate(1, hidden_dim) {}

std::vector<DenseMatrix*> GruWeights::tensors() {
  return {&w_update, &w_reset, &w_candidate, &r_update, &r_reset,
          &r_candidate, &b_update, &b_reset, &b_candidate};
}

std::vector<const DenseMatrix*> GruWeights::tensors() const {
  return {&w_update, &w_reset, &w_candidate, &r_update, &r_reset,
          &r_candidate, &b_update, &b_reset, &b_candidate};
}

const std::vector<std::string>& GruWeights::tensor_names() {
  static const std::vector<std::string> names = {
      "w_update", "w_reset", "w_candidate", "r_update", "r_reset",
      "r_candidate", "b_update", "b_reset", "b_candidate"};
  return names;
}

GruStepCache gru_cell_forward_cached(std::span<const double> x,
                                     std::span<const double> h_prev, const GruWeights& w) {
  const std::size_t hidden = w.hidden_dim();
  if (x.size() != w.input_dim() || h_prev.size() != hidden) {
    throw DimensionError("gru: input " + std::to_string(x.size()) + "/" +
                         std::to_string(w.input_dim()) + ", hidden " +
                         std::to_string(h_prev.size()) + "/" + std::to_string(hidden));
  }
  GruStepCache c;
  c.x.assign(x.begin(), x.end());
  c.h_prev.assign(h_prev.begin(), h_prev.end());

  c.update = bias_copy(w.b_update);
  add_matvec(c.update, w.w_update, x);
  add_matvec(c.update, w.r_update, h_prev);
  c.reset = bias_copy(w.b_reset);
  add_matvec(c.reset, w.w_reset, x);
  add_matvec(c.reset, w.r_reset, h_prev);
  for (std::size_t i = 0; i < hidden; ++i) {
    c.update[i] = sigmoid(c.update[i]);
    c.reset[i] = sigmoid(c.reset[i]);
  }

  c.reset_hidden.resize(hidden);
  for (std::size_t i = 0; i < hidden; ++i) c.reset_hidden[i] = c.reset[i] * h_prev[i];
  c.candidate = bias_copy(w.b_candidate);
  add_matvec(c.candidate, w.w_candidate, x);
  add_matvec(c.candidate, w.r_candidate, c.reset_hidden);

  c.h.resize(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    c.candidate[i] = std::tanh(c.candidate[i]);
    c.h[i] = (1.0 - c.update[i]) * h_prev[i] + c.update[i] * c.candidate[i];
  }
  return c;
}

DenseVector gru_cell_forward(std::span<const double> x, std::span<const double> h_prev,
                             const GruWeights& w) {
  return gru_cell_forward_cached(x, h_prev, w).h;
}

GruStepGrad gru_cell_backward(const GruStepCache& c, std::span<const double> dh,
                              const GruWeights& w, GruWeights& grads) {
  const std::size_t hidden = w.hidden_dim();
  GruStepGrad out;
  out.dx.assign(w.input_dim(), 0.0);
  out.dh_prev.assign(hidden, 0.0);

  DenseVector d_update_pre(hidden), d_cand_pre(hidden), d_reset_pre(hidden);
  for (std::size_t i = 0; i < hidden; ++i) {
    const double du = dh[i] * (c.candidate[i] - c.h_prev[i]);
    const double dc = dh[i] * c.update[i];
    out.dh_prev[i] = dh[i] * (1.0 - c.update[i]);
    d_update_pre[i] = du * c.update[i] * (1.0 - c.update[i]);
    d_cand_pre[i] = dc * (1.0 - c.candidate[i] * c.candidate[i]);
  }

  DenseVector d_reset_hidden(hidden, 0.0);
  add_matvec_t(d_reset_hidden, w.r_candidate, d_cand_pre);
  for (std::size_t i = 0; i < hidden; ++i) {
    const double dr = d_reset_hidden[i] * c.h_prev[i];
    out.dh_prev[i] += d_reset_hidden[i] * c.reset[i];
    d_reset_pre[i] = dr * c.reset[i] * (1.0 - c.reset[i]);
  }

  add_matvec_t(out.dh_prev, w.r_update, d_update_pre);
  add_matvec_t(out.dh_prev, w.r_reset, d_reset_pre);
  add_matvec_t(out.dx, w.w_update, d_update_pre);
  add_matvec_t(out.dx, w.w_reset, d_reset_pre);
  add_matvec_t(out.dx, w.w_candidate, d_cand_pre);

  add_outer(grads.w_update, d_update_pre, c.x);
  add_outer(grads.w_reset, d_reset_pre, c.x);
  add_outer(grads.w_candidate, d_cand_pre, c.x);
  add_outer(grads.r_update, d_update_pre, c.h_prev);
  add_outer(grads.r_reset, d_reset_pre, c.h_prev);
  add_outer(grads.r_candidate, d_cand_pre, c.reset_hidden);
  add_bias(grads.b_update, d_update_pre);
  add_bias(grads.b_reset, d_reset_pre);
  add_bias(grads.b_candidate, d_cand_pre);
  return out;
}

}  // namespace sparsent
