#pragma once

// Topic coherence of embedding dimensions. The coherence of dimension d is
// the mean pairwise similarity of the n sentences it ranks highest (or of n
// random sentences among those where it is nonzero); the model coherence is
// the mean over dimensions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsent/corpus.hpp"
#include "sparsent/similarity.hpp"
#include "sparsent/sparse_codes.hpp"
#include "sparsent/word_vectors.hpp"

namespace sparsent {

enum class SampleMode { kTop, kRandom };

std::string_view to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view name);

// Stop-word-stripped bag for every sentence.
std::vector<SentenceBag> make_bags(std::span<const Sentence> sentences,
                                   const StopwordList& stopwords, bool keep_punct = false);

// Samples with e_{i,d} != 0 by descending value, lower sample id first on ties.
std::vector<std::size_t> rank_dimension(const SparseCodeMatrix& codes, std::size_t d);

struct CoherenceOptions {
  SimilarityKind similarity = SimilarityKind::kJaccard;
  std::size_t n = 10;
  SampleMode mode = SampleMode::kTop;
  std::uint64_t seed = 0;
  const WordVectorTable* vectors = nullptr;  // required for WMD
  std::size_t threads = 1;
};

struct DimensionRecord {
  std::uint32_t d = 0;
  std::optional<double> coherence;  // nullopt when skipped
  std::size_t n_used = 0;           // sentences compared
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;    // WMD pairs with an empty bag after OOV drop
  std::optional<std::string> skipped_reason;

  bool operator==(const DimensionRecord&) const = default;
};

struct CoherenceReport {
  SimilarityKind similarity = SimilarityKind::kJaccard;
  SampleMode mode = SampleMode::kTop;
  std::size_t n = 10;
  std::uint64_t seed = 0;
  std::optional<double> mean;  // nullopt when no dimension is usable
  std::size_t usable_dims = 0;
  std::size_t skipped_dims = 0;
  std::optional<double> baseline;
  std::vector<DimensionRecord> dimensions;

  bool operator==(const CoherenceReport&) const = default;
};

inline constexpr std::string_view kSkipTooFewSamples = "fewer than 2 nonzero samples";
inline constexpr std::string_view kSkipNoComparablePairs = "no comparable pairs";

// The sample ids dim_coherence compares for dimension d.
std::vector<std::size_t> select_samples(const SparseCodeMatrix& codes, std::size_t d,
                                        const CoherenceOptions& options);

// Requires n >= 2 and bags.size() == codes.rows().
DimensionRecord dim_coherence(const SparseCodeMatrix& codes, std::size_t d,
                              std::span<const SentenceBag> bags,
                              const CoherenceOptions& options);

CoherenceReport model_coherence(const SparseCodeMatrix& codes,
                                std::span<const SentenceBag> bags,
                                const CoherenceOptions& options);

// Mean similarity over `pairs` random pairs of distinct sentences. WMD
// pairs that cannot be compared are left out of the mean; throws Error if
// none remain.
double random_pair_baseline(std::span<const SentenceBag> bags, SimilarityKind kind,
                            std::size_t pairs, std::uint64_t seed,
                            const WordVectorTable* vectors = nullptr);

struct TopSample {
  std::size_t sample = 0;
  double value = 0.0;
  std::string text;
};

// First n entries of rank_dimension with the raw sentence text.
std::vector<TopSample> top_samples(const SparseCodeMatrix& codes,
                                   std::span<const Sentence> sentences, std::size_t d,
                                   std::size_t n);

std::string report_to_json(const CoherenceReport& report);
CoherenceReport report_from_json(std::string_view json);

}  // namespace sparsent
