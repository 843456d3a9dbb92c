#pragma once

// Sentence similarities over stop-word-stripped token bags.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsent/word_vectors.hpp"

namespace sparsent {

enum class SimilarityKind { kJaccard, kBow, kWmd };

std::string_view to_string(SimilarityKind kind);
SimilarityKind parse_similarity_kind(std::string_view name);

// Unique tokens in lexicographic order with occurrence counts.
class SentenceBag {
 public:
  SentenceBag() = default;
  explicit SentenceBag(std::span<const std::string> tokens);

  bool empty() const noexcept { return words_.empty(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::vector<double>& counts() const noexcept { return counts_; }
  // Counts normalized to sum 1 (empty for an empty bag).
  std::vector<double> nbow() const;

 private:
  std::vector<std::string> words_;
  std::vector<double> counts_;
};

// |A ∩ B| / |A ∪ B| over unique tokens; 0 if both are empty.
double sim_jaccard(const SentenceBag& a, const SentenceBag& b);

// Cosine of the count vectors; 0 if either is empty.
double sim_bow(const SentenceBag& a, const SentenceBag& b);

// Word Mover's Distance with Euclidean ground cost between word vectors.
// Tokens missing from `vectors` are dropped and the weights renormalized.
// nullopt if either bag is empty after that.
std::optional<double> wmd(const SentenceBag& a, const SentenceBag& b,
                          const WordVectorTable& vectors);

// -WMD, nullopt when the pair is not comparable.
std::optional<double> sim_wmd(const SentenceBag& a, const SentenceBag& b,
                              const WordVectorTable& vectors);

// Dispatch; nullopt only for WMD pairs that cannot be compared. `vectors`
// is required for kWmd (Error otherwise).
std::optional<double> similarity(SimilarityKind kind, const SentenceBag& a,
                                 const SentenceBag& b, const WordVectorTable* vectors);

}  // namespace sparsent
