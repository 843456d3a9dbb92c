#include "sparsent/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sparsent/emd.hpp"
#include "sparsent/error.hpp"

namespace sparsent {

std::string_view to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kJaccard:
      return "jaccard";
    case SimilarityKind::kBow:
      return "bow";
    case SimilarityKind::kWmd:
      return "wmd";
  }
  return "unknown";
}

SimilarityKind parse_similarity_kind(std::string_view name) {
  if (name == "jaccard") return SimilarityKind::kJaccard;
  if (name == "bow") return SimilarityKind::kBow;
  if (name == "wmd") return SimilarityKind::kWmd;
  throw Error("unknown similarity '" + std::string(name) + "' (expected jaccard, bow or wmd)");
}

SentenceBag::SentenceBag(std::span<const std::string> tokens) {
  std::map<std::string, double> counts;
  for (const auto& t : tokens) counts[t] += 1.0;
  for (auto& [w, c] : counts) {
    words_.push_back(w);
    counts_.push_back(c);
  }
}

std::vector<double> SentenceBag::nbow() const {
  double total = 0.0;
  for (double c : counts_) total += c;
  std::vector<double> out(counts_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = counts_[i] / total;
  return out;
}

double sim_jaccard(const SentenceBag& a, const SentenceBag& b) {
  const auto& wa = a.words();
  const auto& wb = b.words();
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < wa.size() && j < wb.size()) {
    const int c = wa[i].compare(wb[j]);
    if (c == 0) {
      ++common;
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = wa.size() + wb.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double sim_bow(const SentenceBag& a, const SentenceBag& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  double inner = 0.0;
  std::size_t i = 0, j = 0;
  while (i < wa.size() && j < wb.size()) {
    const int c = wa[i].compare(wb[j]);
    if (c == 0) {
      inner += a.counts()[i] * b.counts()[j];
      ++i;
      ++j;
    } else if (c < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  double na = 0.0, nb = 0.0;
  for (double x : a.counts()) na += x * x;
  for (double x : b.counts()) nb += x * x;
  return inner / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

struct FilteredBag {
  std::vector<std::span<const double>> vectors;
  std::vector<double> weights;
};

FilteredBag filter_oov(const SentenceBag& bag, const WordVectorTable& table) {
  FilteredBag out;
  double total = 0.0;
  for (std::size_t i = 0; i < bag.words().size(); ++i) {
    auto v = table.lookup(bag.words()[i]);
    if (v.empty()) continue;
    out.vectors.push_back(v);
    out.weights.push_back(bag.counts()[i]);
    total += bag.counts()[i];
  }
  for (double& w : out.weights) w /= total;
  return out;
}

}  // namespace

std::optional<double> wmd(const SentenceBag& a, const SentenceBag& b,
                          const WordVectorTable& vectors) {
  const FilteredBag fa = filter_oov(a, vectors);
  const FilteredBag fb = filter_oov(b, vectors);
  if (fa.weights.empty() || fb.weights.empty()) return std::nullopt;
  DenseMatrix cost(fa.weights.size(), fb.weights.size());
  for (std::size_t i = 0; i < fa.vectors.size(); ++i) {
    for (std::size_t j = 0; j < fb.vectors.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < vectors.dim(); ++c) {
        const double d = fa.vectors[i][c] - fb.vectors[j][c];
        s += d * d;
      }
      cost(i, j) = std::sqrt(s);
    }
  }
  return emd(fa.weights, fb.weights, cost);
}

std::optional<double> sim_wmd(const SentenceBag& a, const SentenceBag& b,
                              const WordVectorTable& vectors) {
  auto d = wmd(a, b, vectors);
  if (!d) return std::nullopt;
  return *d == 0.0 ? 0.0 : -*d;
}

std::optional<double> similarity(SimilarityKind kind, const SentenceBag& a,
                                 const SentenceBag& b, const WordVectorTable* vectors) {
  switch (kind) {
    case SimilarityKind::kJaccard:
      return sim_jaccard(a, b);
    case SimilarityKind::kBow:
      return sim_bow(a, b);
    case SimilarityKind::kWmd:
      if (vectors == nullptr) throw Error("WMD similarity requires word vectors");
      return sim_wmd(a, b, *vectors);
  }
  return std::nullopt;
}

}  // namespace sparsent
