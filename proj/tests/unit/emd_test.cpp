#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sparsent/emd.hpp"
#include "sparsent/error.hpp"
#include "test_util.hpp"

namespace {

using sparsent::DenseMatrix;
using sparsent::Rng;

std::vector<double> random_histogram(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) s += (x = rng.uniform(0.05, 1.0));
  for (double& x : p) x /= s;
  return p;
}

TEST(Emd, IdentityIsZero) {
  DenseMatrix cost(3, 3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) cost(i, i) = 0.0;
  const std::vector<double> p{0.2, 0.3, 0.5};
  EXPECT_NEAR(sparsent::emd(p, p, cost), 0.0, 1e-15);
}

TEST(Emd, PointMasses) {
  const DenseMatrix cost(1, 1, {2.5});
  EXPECT_DOUBLE_EQ(sparsent::emd(std::vector<double>{1.0}, std::vector<double>{1.0}, cost), 2.5);
  DenseMatrix c2(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_DOUBLE_EQ(sparsent::emd(std::vector<double>{0, 1}, std::vector<double>{0, 0, 1}, c2), 6.0);
}

TEST(Emd, MassMismatchAndNegativeWeightsThrow) {
  const DenseMatrix cost(2, 2, 1.0);
  EXPECT_THROW(sparsent::emd(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.6}, cost),
               sparsent::Error);
  EXPECT_THROW(sparsent::emd(std::vector<double>{1.5, -0.5}, std::vector<double>{0.5, 0.5}, cost),
               sparsent::Error);
  EXPECT_THROW(sparsent::emd(std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}, cost),
               sparsent::DimensionError);
}

TEST(Emd, MatchesTransportLpOracle) {
  Rng rng(1);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + rng.index(4), n = 1 + rng.index(4);
    const auto p = random_histogram(rng, m);
    const auto q = random_histogram(rng, n);
    DenseMatrix cost(m, n);
    for (double& c : cost.data()) c = rng.uniform(0.0, 3.0);
    const double ref = oracle::transport_lp(p, q, testutil::to_rows(cost));
    EXPECT_NEAR(sparsent::emd(p, q, cost), ref, 1e-8) << m << "x" << n;
  }
}

TEST(Emd, ZeroWeightsAreAllowed) {
  const std::vector<double> p{0.0, 1.0, 0.0};
  const std::vector<double> q{0.5, 0.5};
  const DenseMatrix cost(3, 2, {9, 9, 1, 2, 9, 9});
  EXPECT_NEAR(sparsent::emd(p, q, cost), 1.5, 1e-15);
}

}  // namespace
