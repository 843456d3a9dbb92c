#include <benchmark/benchmark.h>

#include "sparsent/autoencoder.hpp"
#include "sparsent/coherence.hpp"
#include "sparsent/emd.hpp"
#include "sparsent/gru.hpp"
#include "sparsent/rng.hpp"
#include "sparsent/sparse_coding.hpp"
#include "sparsent/sparsity.hpp"
#include "sparsent/synthetic.hpp"

namespace {

using sparsent::Rng;

std::vector<double> gaussian(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

void BM_Sparsemax(benchmark::State& state) {
  Rng rng(1);
  const auto z = gaussian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::sparsemax_forward(z, 1.0));
}
BENCHMARK(BM_Sparsemax)->Arg(64)->Arg(512);

void BM_KSparse(benchmark::State& state) {
  Rng rng(2);
  const auto z = gaussian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::ksparse_forward(z, 8));
}
BENCHMARK(BM_KSparse)->Arg(64)->Arg(512);

void BM_Omp(benchmark::State& state) {
  Rng rng(3);
  const std::size_t atoms = static_cast<std::size_t>(state.range(0));
  sparsent::DenseMatrix u(atoms, 64);
  for (double& x : u.data()) x = rng.normal();
  const sparsent::Dictionary dict(u);
  const auto z = gaussian(rng, 64);
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::omp_encode(z, dict, 15));
}
BENCHMARK(BM_Omp)->Arg(256)->Arg(2000);

void BM_KsvdIteration(benchmark::State& state) {
  const auto data = sparsent::make_sparse_model_data(400, 16, 3, 0.01, 4);
  sparsent::KsvdOptions opt;
  opt.num_atoms = 16;
  opt.sparsity = 3;
  opt.iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::ksvd_fit(data.z, opt));
}
BENCHMARK(BM_KsvdIteration);

void BM_Emd(benchmark::State& state) {
  Rng rng(5);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> p(n, 1.0 / static_cast<double>(n)), q = p;
  sparsent::DenseMatrix cost(n, n);
  for (double& x : cost.data()) x = rng.uniform(0.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::emd(p, q, cost));
}
BENCHMARK(BM_Emd)->Arg(8)->Arg(32);

void BM_GruStep(benchmark::State& state) {
  Rng rng(6);
  const std::size_t hid = static_cast<std::size_t>(state.range(0));
  sparsent::GruWeights w(32, hid);
  for (auto* t : w.tensors()) {
    for (double& x : t->data()) x = 0.1 * rng.normal();
  }
  const auto x = gaussian(rng, 32);
  const auto h = gaussian(rng, hid);
  for (auto _ : state) benchmark::DoNotOptimize(sparsent::gru_cell_forward(x, h, w));
}
BENCHMARK(BM_GruStep)->Arg(32)->Arg(128);

void BM_SentenceGradient(benchmark::State& state) {
  sparsent::ModelConfig cfg;
  cfg.vocab_size = 120;
  cfg.embed_dim = 32;
  cfg.hidden_dim = 64;
  cfg.sparsity.kind = sparsent::SparsityKind::kKSparse;
  cfg.sparsity.k = 4;
  const auto model = sparsent::make_model(cfg);
  sparsent::AutoencoderParams grads(cfg);
  const std::vector<sparsent::TokenId> ids{5, 9, 17, 30, 4, 11, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparsent::accumulate_gradients(model, ids, 1.0, grads));
  }
}
BENCHMARK(BM_SentenceGradient);

}  // namespace

BENCHMARK_MAIN();
