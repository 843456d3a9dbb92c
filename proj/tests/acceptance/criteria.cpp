#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "oracles.hpp"
#include "sparsent/autoencoder.hpp"
#include "sparsent/coherence.hpp"
#include "sparsent/corpus.hpp"
#include "sparsent/emd.hpp"
#include "sparsent/gru.hpp"
#include "sparsent/matrix_io.hpp"
#include "sparsent/model_io.hpp"
#include "sparsent/rng.hpp"
#include "sparsent/similarity.hpp"
#include "sparsent/sparse_codes.hpp"
#include "sparsent/sparse_coding.hpp"
#include "sparsent/sparsity.hpp"
#include "sparsent/synthetic.hpp"
#include "sparsent/trainer.hpp"
#include "sparsent/word_vectors.hpp"

namespace acceptance {
namespace {

using sparsent::Rng;
using Tokens = std::vector<std::string>;

// Pinned tolerances.
constexpr double kSparsemaxTol = 1e-8;
constexpr double kLayerGradTol = 1e-5;
constexpr double kChainGradTol = 1e-4;
constexpr double kRecoveryNoiselessTol = 1e-6;
constexpr double kRecoveryNoisyTol = 0.05;
constexpr double kEmdTol = 1e-8;
constexpr double kWmdCoherenceTol = 1e-9;
constexpr double kMinCoherenceGap = 0.05;
constexpr double kReferenceCocoBaseline = 0.05;
constexpr double kCocoBaselineTol = 0.03;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

std::vector<double> histogram(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) s += (x = rng.uniform(0.05, 1.0));
  for (double& x : p) x /= s;
  return p;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

template <class Tensors>
std::vector<double> flatten(const Tensors& tensors) {
  std::vector<double> out;
  for (const auto* t : tensors) out.insert(out.end(), t->data().begin(), t->data().end());
  return out;
}

template <class Tensors>
void unflatten(Tensors tensors, const std::vector<double>& flat) {
  std::size_t pos = 0;
  for (auto* t : tensors) {
    for (double& x : t->data()) x = flat[pos++];
  }
}

// ------------------------------------------------------------------ 1

Outcome sparsemax_oracle() {
  Rng rng(101);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 2 + rng.index(9);
    const auto z = random_vector(rng, dim, 2.0);
    for (double tau : {0.5, 1.0, 10.0}) {
      const auto e = sparsent::sparsemax_forward(z, tau).output;
      const auto ref = oracle::sparsemax(z, tau);
      for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(e[i] - ref[i]));
      ++checks;
    }
  }
  return {worst < kSparsemaxTol,
          std::to_string(checks) + " projections, max |diff| " + fmt("%.3g", worst)};
}

// ------------------------------------------------------------------ 2

double sparsemax_grad_worst(int cases) {
  Rng rng(202);
  double worst = 0.0;
  int checked = 0;
  while (checked < cases) {
    const std::size_t dim = 2 + rng.index(7);
    const auto z = random_vector(rng, dim);
    const double taus[] = {0.5, 1.0, 10.0};
    const double tau = taus[checked % 3];
    const auto base = sparsent::sparsemax_forward(z, tau);
    if (base.support.size() < 2) continue;  // gradient identically zero
    double theta = 0.0;
    for (std::size_t i : base.support) theta = z[i] / tau - base.output[i];
    bool near_boundary = false;
    for (double zi : z) near_boundary |= std::abs(zi / tau - theta) < 1e-4;
    if (near_boundary) continue;
    const auto w = random_vector(rng, dim);
    const auto num = oracle::numeric_gradient(
        [&](const std::vector<double>& x) { return dot(sparsent::sparsemax_forward(x, tau).output, w); },
        z);
    worst = std::max(worst,
                     oracle::relative_error(num, sparsent::sparsemax_backward(w, base.output, tau)));
    ++checked;
  }
  return worst;
}

double ksparse_grad_worst(int cases) {
  Rng rng(203);
  double worst = 0.0;
  int checked = 0;
  while (checked < cases) {
    const std::size_t dim = 3 + rng.index(6);
    const std::size_t k = 1 + rng.index(dim - 1);
    const auto z = random_vector(rng, dim);
    auto mags = z;
    for (double& m : mags) m = std::abs(m);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    if (mags[k - 1] - mags[k] < 1e-4) continue;  // selection would flip under the step
    const auto w = random_vector(rng, dim);
    const auto base = sparsent::ksparse_forward(z, k);
    const auto num = oracle::numeric_gradient(
        [&](const std::vector<double>& x) { return dot(sparsent::ksparse_forward(x, k).output, w); },
        z);
    worst = std::max(worst, oracle::relative_error(num, sparsent::ksparse_backward(w, base.support)));
    ++checked;
  }
  return worst;
}

double gru_grad_worst(int cases) {
  Rng rng(204);
  double worst = 0.0;
  for (int t = 0; t < cases; ++t) {
    const std::size_t in = 1 + rng.index(4), hid = 1 + rng.index(4);
    sparsent::GruWeights w(in, hid);
    for (auto* p : w.tensors()) {
      for (double& x : p->data()) x = 0.7 * rng.normal();
    }
    const auto x = random_vector(rng, in);
    const auto h = random_vector(rng, hid);
    const auto dl = random_vector(rng, hid);
    sparsent::GruWeights grads(in, hid);
    const auto step =
        sparsent::gru_cell_backward(sparsent::gru_cell_forward_cached(x, h, w), dl, w, grads);
    auto loss = [&](const std::vector<double>& xx, const std::vector<double>& hh,
                    const sparsent::GruWeights& ww) {
      return dot(sparsent::gru_cell_forward(xx, hh, ww), dl);
    };
    const auto num_x = oracle::numeric_gradient([&](const auto& v) { return loss(v, h, w); }, x);
    const auto num_h = oracle::numeric_gradient([&](const auto& v) { return loss(x, v, w); }, h);
    const auto num_p = oracle::numeric_gradient(
        [&](const auto& v) {
          sparsent::GruWeights ww = w;
          unflatten(ww.tensors(), v);
          return loss(x, h, ww);
        },
        flatten(std::as_const(w).tensors()));
    worst = std::max({worst, oracle::relative_error(num_x, step.dx),
                      oracle::relative_error(num_h, step.dh_prev),
                      oracle::relative_error(num_p, flatten(std::as_const(grads).tensors()))});
  }
  return worst;
}

double chain_grad_worst(int cases_per_kind) {
  Rng rng(205);
  double worst = 0.0;
  for (auto kind : {sparsent::SparsityKind::kNone, sparsent::SparsityKind::kKSparse,
                    sparsent::SparsityKind::kSparsemax}) {
    int checked = 0;
    while (checked < cases_per_kind) {
      sparsent::ModelConfig cfg;
      cfg.vocab_size = 7;
      cfg.embed_dim = 3;
      cfg.hidden_dim = 4;
      cfg.sparsity.kind = kind;
      cfg.sparsity.k = 2;
      cfg.sparsity.temperature = 0.7;
      cfg.seed = rng.next_u64();
      const auto model = sparsent::make_model(cfg, 0.5);
      const std::vector<sparsent::TokenId> ids{static_cast<sparsent::TokenId>(3 + rng.index(4)),
                                               static_cast<sparsent::TokenId>(rng.index(7)),
                                               sparsent::kEosId};
      const auto support =
          sparsent::apply_sparsity(sparsent::encode(model, ids), cfg.sparsity).support;
      bool support_changed = false;
      const auto num = oracle::numeric_gradient(
          [&](const std::vector<double>& flat) {
            sparsent::AutoencoderModel m = model;
            unflatten(m.params.tensors(), flat);
            support_changed |=
                sparsent::apply_sparsity(sparsent::encode(m, ids), cfg.sparsity).support != support;
            return sparsent::sentence_loss(m, ids);
          },
          flatten(model.params.tensors()));
      if (support_changed) continue;
      sparsent::AutoencoderParams grads(cfg);
      sparsent::accumulate_gradients(model, ids, 1.0 / static_cast<double>(ids.size()), grads);
      worst = std::max(worst, oracle::relative_error(num, flatten(std::as_const(grads).tensors())));
      ++checked;
    }
  }
  return worst;
}

Outcome gradients() {
  const double sm = sparsemax_grad_worst(60);
  const double ks = ksparse_grad_worst(60);
  const double gru = gru_grad_worst(60);
  const double chain = chain_grad_worst(20);
  std::ostringstream d;
  d << "max rel err sparsemax " << fmt("%.2g", sm) << ", ksparse " << fmt("%.2g", ks) << ", gru "
    << fmt("%.2g", gru) << " (60 cases each, tol 1e-5); chain " << fmt("%.2g", chain)
    << " (60 cases, tol 1e-4)";
  return {sm < kLayerGradTol && ks < kLayerGradTol && gru < kLayerGradTol && chain < kChainGradTol,
          d.str()};
}

// ------------------------------------------------------------------ 3

Outcome ksvd_recovery() {
  bool ok = true;
  std::ostringstream d;
  std::size_t sweeps = 0, rising = 0;
  for (double noise : {0.0, 0.01}) {
    const auto data = sparsent::make_sparse_model_data(400, 16, 3, noise, 2024);
    sparsent::KsvdOptions opt;
    opt.num_atoms = 16;
    opt.sparsity = 3;
    opt.iterations = 30;
    opt.seed = 1;
    const auto res = sparsent::ksvd_fit(data.z, opt);
    const double err = sparsent::relative_reconstruction_error(res.codes, res.dictionary, data.z);
    const double tol = noise == 0.0 ? kRecoveryNoiselessTol : kRecoveryNoisyTol;
    ok &= err < tol;
    for (const auto& t : res.trace) {
      ++sweeps;
      if (t.objective_after_sweep > t.objective_after_coding * (1 + 1e-12) + 1e-12) ++rising;
    }
    d << "sigma " << noise << " rel err " << fmt("%.3g", err) << " (tol " << tol << "); ";
  }
  ok &= rising == 0;
  d << rising << "/" << sweeps << " sweeps raised the objective";
  return {ok, d.str()};
}

// ------------------------------------------------------------------ 4

Outcome emd_oracle() {
  Rng rng(404);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng.index(4), n = 1 + rng.index(4);
    const auto p = histogram(rng, m), q = histogram(rng, n);
    sparsent::DenseMatrix cost(m, n);
    oracle::Mat rows(m, oracle::Vec(n));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = cost(i, j) = rng.uniform(0.0, 3.0);
    }
    worst = std::max(worst, std::abs(sparsent::emd(p, q, cost) - oracle::transport_lp(p, q, rows)));
  }

  const Tokens words{"w0", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9"};
  std::size_t violations = 0;
  for (int t = 0; t < 100; ++t) {
    sparsent::WordVectorTable table(8);
    for (const auto& w : words) table.add(w, random_vector(rng, 8));
    std::vector<sparsent::SentenceBag> bags;
    for (int s = 0; s < 3; ++s) {
      Tokens tk;
      for (std::size_t i = 1 + rng.index(5); i > 0; --i) tk.push_back(words[rng.index(10)]);
      bags.emplace_back(tk);
    }
    auto d = [&](int a, int b) { return *sparsent::wmd(bags[a], bags[b], table); };
    for (int a = 0; a < 3; ++a) {
      if (d(a, a) != 0.0) ++violations;
      for (int b = 0; b < 3; ++b) {
        if (std::abs(d(a, b) - d(b, a)) > kEmdTol) ++violations;
        const bool same = bags[a].words() == bags[b].words() && bags[a].nbow() == bags[b].nbow();
        if (!same && !(d(a, b) > 0.0)) ++violations;
        for (int c = 0; c < 3; ++c) {
          if (d(a, c) > d(a, b) + d(b, c) + kEmdTol) ++violations;
        }
      }
    }
  }
  return {worst < kEmdTol && violations == 0,
          "200 LP instances max |diff| " + fmt("%.3g", worst) + "; 100 triples, " +
              std::to_string(violations) + " metric violations"};
}

// ------------------------------------------------------------------ 5

struct SmallCase {
  std::vector<Tokens> tokens;
  std::vector<sparsent::SentenceBag> bags;
  sparsent::SparseCodeMatrix codes;
};

SmallCase make_small_case(Rng& rng, const Tokens& words) {
  SmallCase c;
  const std::size_t n = 2 + rng.index(19);  // 2..20 sentences
  const std::size_t dims = 1 + rng.index(8);
  for (std::size_t i = 0; i < n; ++i) {
    Tokens tk;
    // At most 4 distinct words keeps every WMD pair within the LP oracle's size.
    const std::size_t distinct = 1 + rng.index(4);
    Tokens pool;
    for (std::size_t k = 0; k < distinct; ++k) pool.push_back(words[rng.index(words.size())]);
    for (std::size_t j = 1 + rng.index(6); j > 0; --j) tk.push_back(pool[rng.index(pool.size())]);
    c.bags.emplace_back(tk);
    c.tokens.push_back(std::move(tk));
  }
  c.codes = sparsent::SparseCodeMatrix(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    sparsent::SparseRow row;
    for (std::uint32_t d = 0; d < dims; ++d) {
      if (rng.uniform() < 0.45) {
        // Coarse values so that ties occur.
        row.push_back({d, std::round(rng.uniform(-2.0, 4.0) * 4.0) / 4.0});
        if (row.back().value == 0.0) row.pop_back();
      }
    }
    c.codes.set_row(i, std::move(row));
  }
  return c;
}

std::optional<double> oracle_similarity(sparsent::SimilarityKind kind, const Tokens& a,
                                        const Tokens& b,
                                        const std::map<std::string, std::vector<double>>& vec) {
  if (kind == sparsent::SimilarityKind::kJaccard) return oracle::jaccard(a, b);
  if (kind == sparsent::SimilarityKind::kBow) return oracle::bow_cosine(a, b);
  auto hist = [](const Tokens& t) {
    std::map<std::string, double> h;
    for (const auto& w : t) h[w] += 1.0 / static_cast<double>(t.size());
    return h;
  };
  const auto ha = hist(a), hb = hist(b);
  oracle::Vec p, q;
  oracle::Mat cost;
  for (const auto& [wa, pa] : ha) {
    p.push_back(pa);
    cost.emplace_back();
    for (const auto& [wb, qb] : hb) {
      double s = 0.0;
      for (std::size_t c = 0; c < vec.at(wa).size(); ++c) {
        const double diff = vec.at(wa)[c] - vec.at(wb)[c];
        s += diff * diff;
      }
      cost.back().push_back(std::sqrt(s));
    }
  }
  for (const auto& entry : hb) q.push_back(entry.second);
  return -oracle::transport_lp(p, q, cost);
}

Outcome coherence_oracle() {
  Rng rng(505);
  const Tokens words{"cat", "dog", "bike", "red", "tree", "car", "ball", "sky"};
  std::map<std::string, std::vector<double>> vec;
  sparsent::WordVectorTable table(5);
  for (const auto& w : words) {
    vec[w] = random_vector(rng, 5);
    table.add(w, vec[w]);
  }

  std::size_t dims_checked = 0, mismatches = 0, fallbacks = 0, seeding_failures = 0;
  for (int t = 0; t < 60; ++t) {
    const SmallCase c = make_small_case(rng, words);
    for (auto kind : {sparsent::SimilarityKind::kJaccard, sparsent::SimilarityKind::kBow,
                      sparsent::SimilarityKind::kWmd}) {
      for (auto mode : {sparsent::SampleMode::kTop, sparsent::SampleMode::kRandom}) {
        sparsent::CoherenceOptions opt;
        opt.similarity = kind;
        opt.mode = mode;
        opt.n = 2 + rng.index(6);
        opt.seed = rng.next_u64();
        opt.vectors = &table;
        const auto report = sparsent::model_coherence(c.codes, c.bags, opt);

        double sum = 0.0;
        std::size_t usable = 0;
        for (std::size_t d = 0; d < c.codes.cols(); ++d) {
          std::vector<std::pair<double, std::size_t>> col;  // (-value, sample) sorts as ranked
          for (std::size_t i = 0; i < c.codes.rows(); ++i) {
            if (c.codes.value(i, d) != 0.0) col.push_back({-c.codes.value(i, d), i});
          }
          std::vector<std::size_t> chosen;
          if (col.size() <= opt.n) {
            // Fewer nonzero samples than n: every one of them is used.
            for (const auto& e : col) chosen.push_back(e.second);
            if (!col.empty() && col.size() < opt.n) ++fallbacks;
            if (mode == sparsent::SampleMode::kTop) {
              std::sort(col.begin(), col.end());
              chosen.clear();
              for (const auto& e : col) chosen.push_back(e.second);
            }
          } else if (mode == sparsent::SampleMode::kTop) {
            std::sort(col.begin(), col.end());
            for (std::size_t r = 0; r < opt.n; ++r) chosen.push_back(col[r].second);
          } else {
            chosen = sparsent::select_samples(c.codes, d, opt);
            // The draw must be n distinct nonzero samples and a pure function of (seed, d).
            auto sorted = chosen;
            std::sort(sorted.begin(), sorted.end());
            const bool distinct =
                std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
            const bool nonzero = std::all_of(sorted.begin(), sorted.end(), [&](std::size_t i) {
              return c.codes.value(i, d) != 0.0;
            });
            if (chosen.size() != opt.n || !distinct || !nonzero ||
                chosen != sparsent::select_samples(c.codes, d, opt)) {
              ++seeding_failures;
            }
            Rng expected(sparsent::derive_seed(opt.seed, d));
            const auto pos = expected.sample_without_replacement(col.size(), opt.n);
            std::vector<std::size_t> ascending;
            for (const auto& e : col) ascending.push_back(e.second);
            for (std::size_t r = 0; r < pos.size(); ++r) {
              if (chosen[r] != ascending[pos[r]]) ++seeding_failures;
            }
          }

          const auto ref = oracle::mean_pairwise(chosen, [&](std::size_t a, std::size_t b) {
            return oracle_similarity(kind, c.tokens[a], c.tokens[b], vec);
          });
          const auto got = report.dimensions[d].coherence;
          const auto single = sparsent::dim_coherence(c.codes, d, c.bags, opt).coherence;
          bool same = ref.has_value() == got.has_value() && got == single;
          if (same && ref) {
            same = kind == sparsent::SimilarityKind::kWmd ? std::abs(*ref - *got) <= kWmdCoherenceTol
                                                          : *ref == *got;
          }
          mismatches += !same;
          ++dims_checked;
          if (ref) {
            sum += *ref;
            ++usable;
          }
        }
        if (usable != report.usable_dims) ++mismatches;
        if (usable > 0) {
          const double mean = sum / static_cast<double>(usable);
          const double tol = kind == sparsent::SimilarityKind::kWmd ? kWmdCoherenceTol : 0.0;
          if (!report.mean || std::abs(*report.mean - mean) > tol) ++mismatches;
        } else if (report.mean) {
          ++mismatches;
        }
      }
    }
  }
  std::ostringstream d;
  d << dims_checked << " dimensions, " << mismatches << " mismatches; " << fallbacks
    << " fewer-than-n fallbacks; " << seeding_failures << " seeding failures";
  return {mismatches == 0 && seeding_failures == 0 && fallbacks > 0, d.str()};
}

// ------------------------------------------------------------------ 6, 7

struct PairedRun {
  double dense_coherence = 0.0;
  double sparse_coherence = 0.0;
  double baseline = 0.0;
  double dense_loss = 0.0;
  double sparse_loss = 0.0;
  std::size_t sparse_usable = 0;
};

const PairedRun& paired_run() {
  static const PairedRun run = [] {
    const auto corpus = sparsent::make_topic_corpus({8, 250, 1});
    std::string text;
    for (const auto& line : corpus.lines) text += line + "\n";
    auto sentences = sparsent::parse_corpus(text);
    std::vector<Tokens> tokens;
    for (const auto& s : sentences) tokens.push_back(s.tokens);
    const auto vocab = sparsent::build_vocab(tokens, 500);
    sparsent::encode_sentences(sentences, vocab);
    std::vector<std::vector<sparsent::TokenId>> ids;
    for (const auto& s : sentences) ids.push_back(s.ids);
    const auto bags = sparsent::make_bags(sentences, sparsent::StopwordList::english());

    sparsent::TrainConfig tcfg;
    tcfg.batch_size = 16;
    tcfg.epochs = 20;
    tcfg.lr = 2e-2;
    tcfg.seed = 7;
    tcfg.ksparse_anneal_epochs = 3;

    sparsent::CoherenceOptions copt;  // top-10 Jaccard

    auto train_one = [&](std::size_t hidden, sparsent::SparsityKind kind, std::size_t k,
                         double& loss, std::size_t* usable) {
      sparsent::ModelConfig mcfg;
      mcfg.vocab_size = vocab.size();
      mcfg.embed_dim = 32;
      mcfg.hidden_dim = hidden;
      mcfg.sparsity.kind = kind;
      mcfg.sparsity.k = k;
      mcfg.seed = 7;
      auto model = sparsent::make_model(mcfg);
      loss = sparsent::train(model, ids, tcfg).epochs.back().mean_loss;
      const auto emb = sparsent::embed_corpus(model, ids);
      // Score what the embed command would store: .semb and .ssc hold f32 values.
      const auto codes =
          std::holds_alternative<sparsent::DenseMatrix>(emb)
              ? sparsent::SparseCodeMatrix::from_dense(sparsent::deserialize_dense(
                    sparsent::serialize_dense(std::get<sparsent::DenseMatrix>(emb))))
              : sparsent::deserialize_codes(
                    sparsent::serialize_codes(std::get<sparsent::SparseCodeMatrix>(emb)));
      const auto rep = sparsent::model_coherence(codes, bags, copt);
      if (usable) *usable = rep.usable_dims;
      return rep.mean.value_or(0.0);
    };

    PairedRun r;
    r.dense_coherence = train_one(32, sparsent::SparsityKind::kNone, 4, r.dense_loss, nullptr);
    r.sparse_coherence =
        train_one(64, sparsent::SparsityKind::kKSparse, 4, r.sparse_loss, &r.sparse_usable);
    r.baseline = sparsent::random_pair_baseline(bags, sparsent::SimilarityKind::kJaccard, 500, 0);
    return r;
  }();
  return run;
}

Outcome synthetic_coherence() {
  const auto& r = paired_run();
  const double gap = r.sparse_coherence - r.dense_coherence;
  std::ostringstream d;
  d << "k-Sparse " << fmt("%.4f", r.sparse_coherence) << " (" << r.sparse_usable
    << "/64 usable dims), dense " << fmt("%.4f", r.dense_coherence) << ", baseline "
    << fmt("%.4f", r.baseline) << ", gap " << fmt("%.4f", gap) << " (need >= 0.05)";
  return {r.sparse_coherence > r.dense_coherence && r.dense_coherence > r.baseline &&
              gap >= kMinCoherenceGap,
          d.str()};
}

Outcome sparse_loss_gap() {
  const auto& r = paired_run();
  return {r.sparse_loss >= r.dense_loss, "final loss k-Sparse " + fmt("%.4f", r.sparse_loss) +
                                             ", dense " + fmt("%.4f", r.dense_loss)};
}

// ------------------------------------------------------------------ 8

Outcome round_trips() {
  Rng rng(808);
  std::vector<std::string> broken;

  sparsent::DenseMatrix dense(7, 5);
  for (double& x : dense.data()) x = rng.normal();
  for (const auto& m : {dense, sparsent::cast_to_f32(dense), sparsent::DenseMatrix(0, 3)}) {
    const auto bytes = sparsent::serialize_dense(m);
    if (sparsent::serialize_dense(sparsent::deserialize_dense(bytes)) != bytes) broken.push_back(".semb");
  }

  sparsent::SparseCodeMatrix codes(6, 9);
  for (std::size_t i = 0; i < 6; ++i) {
    sparsent::SparseRow row;
    for (std::uint32_t d = 0; d < 9; ++d) {
      if (rng.uniform() < 0.3) row.push_back({d, rng.normal()});
    }
    codes.set_row(i, std::move(row));
  }
  const auto ssc = sparsent::serialize_codes(codes);
  if (sparsent::serialize_codes(sparsent::deserialize_codes(ssc)) != ssc) broken.push_back(".ssc");

  for (auto kind : {sparsent::SparsityKind::kNone, sparsent::SparsityKind::kKSparse,
                    sparsent::SparsityKind::kSparsemax}) {
    sparsent::ModelConfig cfg;
    cfg.vocab_size = 11;
    cfg.embed_dim = 4;
    cfg.hidden_dim = 6;
    cfg.sparsity.kind = kind;
    cfg.sparsity.k = 3;
    cfg.sparsity.temperature = 0.3;
    cfg.seed = rng.next_u64();
    const auto bytes = sparsent::serialize_model(sparsent::make_model(cfg));
    if (sparsent::serialize_model(sparsent::deserialize_model(bytes)) != bytes) {
      broken.push_back(".samodel");
    }
  }

  const auto corpus = sparsent::make_topic_corpus({3, 20, 5});
  std::vector<Tokens> tokens;
  for (const auto& line : corpus.lines) tokens.push_back(sparsent::tokenize(line));
  const auto vtext = sparsent::serialize_vocab(sparsent::build_vocab(tokens, 30));
  if (sparsent::serialize_vocab(sparsent::deserialize_vocab(vtext)) != vtext) broken.push_back("vocab");

  std::vector<sparsent::SentenceBag> bags;
  for (const auto& t : tokens) bags.emplace_back(t);
  sparsent::SparseCodeMatrix rep_codes(bags.size(), 5);
  for (std::size_t i = 0; i < bags.size(); ++i) {
    sparsent::SparseRow row;
    for (std::uint32_t d = 0; d < 4; ++d) {
      if (rng.uniform() < 0.4) row.push_back({d, rng.normal()});
    }
    rep_codes.set_row(i, std::move(row));
  }
  auto report = sparsent::model_coherence(rep_codes, bags, {});
  report.baseline = sparsent::random_pair_baseline(bags, sparsent::SimilarityKind::kJaccard, 50, 2);
  const auto json = sparsent::report_to_json(report);
  if (sparsent::report_to_json(sparsent::report_from_json(json)) != json) broken.push_back("report");

  std::string detail = "semb (f64, f32, empty), ssc, samodel (3 kinds), vocab, report JSON";
  if (!broken.empty()) {
    detail += "; not byte-exact:";
    for (const auto& b : broken) detail += " " + b;
  }
  return {broken.empty(), detail};
}

// ------------------------------------------------------------------ 9

Outcome coco_baseline() {
  const char* path = std::getenv("SPARSENT_COCO_CAPTIONS");
  if (path == nullptr || *path == '\0') {
    return {true, "skipped: set SPARSENT_COCO_CAPTIONS to a captions file, one per line"};
  }
  const auto sentences = sparsent::load_corpus(path);
  const auto bags = sparsent::make_bags(sentences, sparsent::StopwordList::english());
  const double b = sparsent::random_pair_baseline(bags, sparsent::SimilarityKind::kJaccard, 500, 0);
  return {std::abs(b - kReferenceCocoBaseline) <= kCocoBaselineTol,
          "Jaccard baseline " + fmt("%.4f", b) + " over " + std::to_string(bags.size()) +
              " captions, reference 0.05 +/- 0.03"};
}

}  // namespace

const std::vector<Criterion>& all_criteria() {
  static const std::vector<Criterion> list{
      {1, "sparsemax oracle equivalence", 60, false, sparsemax_oracle},
      {2, "gradient suite", 120, false, gradients},
      {3, "k-SVD synthetic recovery", 60, false, ksvd_recovery},
      {4, "EMD oracle equivalence and metric properties", 60, false, emd_oracle},
      {5, "coherence oracle equivalence", 0, false, coherence_oracle},
      {6, "synthetic topic coherence ordering", 600, false, synthetic_coherence},
      {7, "sparse training loss gap", 0, false, sparse_loss_gap},
      {8, "format round-trips", 0, false, round_trips},
      {9, "COCO random-pair baseline", 0, true, coco_baseline},
  };
  return list;
}

}  // namespace acceptance
