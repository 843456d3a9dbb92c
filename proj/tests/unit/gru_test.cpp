#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "sparsent/gru.hpp"
#include "test_util.hpp"

namespace {

using sparsent::GruWeights;
using sparsent::Rng;

void randomize(GruWeights& w, Rng& rng, double scale) {
  for (auto* t : w.tensors()) {
    for (double& x : t->data()) x = scale * rng.normal();
  }
}

std::vector<double> flatten(const GruWeights& w) {
  std::vector<double> out;
  for (const auto* t : w.tensors()) out.insert(out.end(), t->data().begin(), t->data().end());
  return out;
}

void unflatten(GruWeights& w, const std::vector<double>& flat) {
  std::size_t pos = 0;
  for (auto* t : w.tensors()) {
    for (double& x : t->data()) x = flat[pos++];
  }
}

TEST(Gru, ZeroParameters) {
  const GruWeights w(3, 4);
  const std::vector<double> x{1.0, -2.0, 0.5};
  const std::vector<double> h{0.4, -0.2, 1.0, 0.0};
  const auto next = sparsent::gru_cell_forward(x, h, w);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(next[i], 0.5 * h[i]);
  const auto zero = sparsent::gru_cell_forward(x, std::vector<double>(4, 0.0), w);
  for (double v : zero) EXPECT_EQ(v, 0.0);
}

TEST(Gru, TensorOrderAndShapes) {
  GruWeights w(3, 5);
  const auto& names = GruWeights::tensor_names();
  ASSERT_EQ(names.size(), 9u);
  EXPECT_EQ(names.front(), "w_update");
  EXPECT_EQ(names.back(), "b_candidate");
  const auto t = w.tensors();
  EXPECT_EQ(t[0]->rows(), 5u);
  EXPECT_EQ(t[0]->cols(), 3u);
  EXPECT_EQ(t[3]->cols(), 5u);
  EXPECT_EQ(t[6]->rows(), 1u);
}

TEST(Gru, CachedForwardAgrees) {
  Rng rng(1);
  GruWeights w(3, 4);
  randomize(w, rng, 0.5);
  const auto x = testutil::random_vector(rng, 3);
  const auto h = testutil::random_vector(rng, 4);
  EXPECT_EQ(sparsent::gru_cell_forward_cached(x, h, w).h, sparsent::gru_cell_forward(x, h, w));
}

// L = w . h'(x, h, params); compare every partial derivative.
TEST(Gru, BackwardMatchesFiniteDifferences) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t in = 1 + rng.index(4), hid = 1 + rng.index(4);
    GruWeights w(in, hid);
    randomize(w, rng, 0.7);
    const auto x = testutil::random_vector(rng, in);
    const auto h = testutil::random_vector(rng, hid);
    const auto dl = testutil::random_vector(rng, hid);

    GruWeights grads(in, hid);
    const auto cache = sparsent::gru_cell_forward_cached(x, h, w);
    const auto step = sparsent::gru_cell_backward(cache, dl, w, grads);

    auto loss = [&](const std::vector<double>& xx, const std::vector<double>& hh,
                    const GruWeights& ww) {
      const auto out = sparsent::gru_cell_forward(xx, hh, ww);
      return std::inner_product(out.begin(), out.end(), dl.begin(), 0.0);
    };
    const auto num_x = oracle::numeric_gradient([&](const auto& v) { return loss(v, h, w); }, x);
    const auto num_h = oracle::numeric_gradient([&](const auto& v) { return loss(x, v, w); }, h);
    const auto num_p = oracle::numeric_gradient(
        [&](const auto& v) {
          GruWeights ww = w;
          unflatten(ww, v);
          return loss(x, h, ww);
        },
        flatten(w));
    EXPECT_LT(oracle::relative_error(num_x, step.dx), 1e-5);
    EXPECT_LT(oracle::relative_error(num_h, step.dh_prev), 1e-5);
    EXPECT_LT(oracle::relative_error(num_p, flatten(grads)), 1e-5);
  }
}

TEST(Gru, BackwardAccumulates) {
  Rng rng(3);
  GruWeights w(2, 3);
  randomize(w, rng, 0.5);
  const auto x = testutil::random_vector(rng, 2);
  const auto h = testutil::random_vector(rng, 3);
  const auto dl = testutil::random_vector(rng, 3);
  const auto cache = sparsent::gru_cell_forward_cached(x, h, w);
  GruWeights once(2, 3), twice(2, 3);
  sparsent::gru_cell_backward(cache, dl, w, once);
  sparsent::gru_cell_backward(cache, dl, w, twice);
  sparsent::gru_cell_backward(cache, dl, w, twice);
  const auto a = flatten(once), b = flatten(twice);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(2 * a[i], b[i], 1e-14);
}

}  // namespace
