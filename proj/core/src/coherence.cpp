#include "sparsent/coherence.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sparsent/error.hpp"
#include "sparsent/parallel.hpp"
#include "sparsent/rng.hpp"

namespace sparsent {
namespace {

using Column = std::vector<std::pair<std::size_t, double>>;  // (sample, value)

std::vector<std::size_t> rank_column(Column col) {
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  std::vector<std::size_t> out;
  out.reserve(col.size());
  for (const auto& [sample, value] : col) out.push_back(sample);
  return out;
}

Column extract_column(const SparseCodeMatrix& codes, std::size_t d) {
  Column col;
  for (std::size_t i = 0; i < codes.rows(); ++i) {
    const double v = codes.value(i, d);
    if (v != 0.0) col.emplace_back(i, v);
  }
  return col;
}

std::vector<Column> all_columns(const SparseCodeMatrix& codes) {
  std::vector<Column> cols(codes.cols());
  for (std::size_t i = 0; i < codes.rows(); ++i) {
    for (const auto& e : codes.row(i)) cols[e.index].emplace_back(i, e.value);
  }
  return cols;
}

std::vector<std::size_t> choose(const Column& col, std::size_t d,
                                const CoherenceOptions& options) {
  if (options.mode == SampleMode::kTop) {
    std::vector<std::size_t> ranked = rank_column(col);
    if (ranked.size() > options.n) ranked.resize(options.n);
    return ranked;
  }
  // Column entries are in ascending sample order; draw positions from it.
  std::vector<std::size_t> out;
  if (col.size() <= options.n) {
    for (const auto& entry : col) out.push_back(entry.first);
    return out;
  }
  Rng rng(derive_seed(options.seed, d));
  for (std::size_t pos : rng.sample_without_replacement(col.size(), options.n)) {
    out.push_back(col[pos].first);
  }
  return out;
}

void check_options(const CoherenceOptions& options) {
  if (options.n < 2) throw Error("coherence needs n >= 2");
  if (options.similarity == SimilarityKind::kWmd && options.vectors == nullptr) {
    throw Error("WMD coherence requires word vectors");
  }
}

DimensionRecord evaluate(std::size_t d, const std::vector<std::size_t>& samples,
                         std::span<const SentenceBag> bags, const CoherenceOptions& options) {
  DimensionRecord rec;
  rec.d = static_cast<std::uint32_t>(d);
  rec.n_used = samples.size();
  if (samples.size() < 2) {
    rec.skipped_reason = std::string(kSkipTooFewSamples);
    return rec;
  }
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < samples.size(); ++p) {
    for (std::size_t q = p + 1; q < samples.size(); ++q) {
      const auto s =
          similarity(options.similarity, bags[samples[p]], bags[samples[q]], options.vectors);
      if (s) {
        sum += *s;
        ++rec.pairs_used;
      } else {
        ++rec.pairs_skipped;
      }
    }
  }
  if (rec.pairs_used == 0) {
    rec.skipped_reason = std::string(kSkipNoComparablePairs);
    return rec;
  }
  rec.coherence = sum / static_cast<double>(rec.pairs_used);
  return rec;
}

}  // namespace

std::string_view to_string(SampleMode mode) {
  return mode == SampleMode::kTop ? "top" : "random";
}

SampleMode parse_sample_mode(std::string_view name) {
  if (name == "top") return SampleMode::kTop;
  if (name == "random") return SampleMode::kRandom;
  throw Error("unknown sampling mode '" + std::string(name) + "' (expected top or random)");
}

std::vector<SentenceBag> make_bags(std::span<const Sentence> sentences,
                                   const StopwordList& stopwords, bool keep_punct) {
  std::vector<SentenceBag> bags;
  bags.reserve(sentences.size());
  for (const auto& s : sentences) {
    bags.emplace_back(strip_stopwords(s.tokens, stopwords, keep_punct));
  }
  return bags;
}

std::vector<std::size_t> rank_dimension(const SparseCodeMatrix& codes, std::size_t d) {
  if (d >= codes.cols()) {
    throw DimensionError("dimension " + std::to_string(d) + " out of range for " +
                         std::to_string(codes.cols()) + " dimensions");
  }
  return rank_column(extract_column(codes, d));
}

std::vector<std::size_t> select_samples(const SparseCodeMatrix& codes, std::size_t d,
                                        const CoherenceOptions& options) {
  if (d >= codes.cols()) {
    throw DimensionError("dimension " + std::to_string(d) + " out of range for " +
                         std::to_string(codes.cols()) + " dimensions");
  }
  return choose(extract_column(codes, d), d, options);
}

DimensionRecord dim_coherence(const SparseCodeMatrix& codes, std::size_t d,
                              std::span<const SentenceBag> bags,
                              const CoherenceOptions& options) {
  check_options(options);
  if (bags.size() != codes.rows()) {
    throw DimensionError("codes have " + std::to_string(codes.rows()) + " rows but corpus has " +
                         std::to_string(bags.size()) + " sentences");
  }
  return evaluate(d, select_samples(codes, d, options), bags, options);
}

CoherenceReport model_coherence(const SparseCodeMatrix& codes,
                                std::span<const SentenceBag> bags,
                                const CoherenceOptions& options) {
  check_options(options);
  if (bags.size() != codes.rows()) {
    throw DimensionError("codes have " + std::to_string(codes.rows()) + " rows but corpus has " +
                         std::to_string(bags.size()) + " sentences");
  }
  const std::vector<Column> columns = all_columns(codes);

  CoherenceReport report;
  report.similarity = options.similarity;
  report.mode = options.mode;
  report.n = options.n;
  report.seed = options.seed;
  report.dimensions.resize(codes.cols());
  parallel_for(codes.cols(), options.threads, [&](std::size_t d) {
    report.dimensions[d] = evaluate(d, choose(columns[d], d, options), bags, options);
  });

  double sum = 0.0;
  for (const auto& rec : report.dimensions) {
    if (rec.coherence) {
      sum += *rec.coherence;
      ++report.usable_dims;
    } else {
      ++report.skipped_dims;
    }
  }
  if (report.usable_dims > 0) report.mean = sum / static_cast<double>(report.usable_dims);
  return report;
}

double random_pair_baseline(std::span<const SentenceBag> bags, SimilarityKind kind,
                            std::size_t pairs, std::uint64_t seed,
                            const WordVectorTable* vectors) {
  if (bags.size() < 2) throw Error("random-pair baseline needs at least 2 sentences");
  if (pairs == 0) throw Error("random-pair baseline needs at least 1 pair");
  if (kind == SimilarityKind::kWmd && vectors == nullptr) {
    throw Error("WMD baseline requires word vectors");
  }
  Rng rng(seed);
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t i = rng.index(bags.size());
    std::size_t j = rng.index(bags.size() - 1);
    if (j >= i) ++j;
    if (const auto s = similarity(kind, bags[i], bags[j], vectors)) {
      sum += *s;
      ++used;
    }
  }
  if (used == 0) throw Error("random-pair baseline: no comparable pairs");
  return sum / static_cast<double>(used);
}

std::vector<TopSample> top_samples(const SparseCodeMatrix& codes,
                                   std::span<const Sentence> sentences, std::size_t d,
                                   std::size_t n) {
  if (sentences.size() != codes.rows()) {
    throw DimensionError("codes have " + std::to_string(codes.rows()) + " rows but corpus has " +
                         std::to_string(sentences.size()) + " sentences");
  }
  std::vector<std::size_t> ranked = rank_dimension(codes, d);
  if (ranked.size() > n) ranked.resize(n);
  std::vector<TopSample> out;
  out.reserve(ranked.size());
  for (std::size_t i : ranked) out.push_back({i, codes.value(i, d), sentences[i].text});
  return out;
}

}  // namespace sparsent
