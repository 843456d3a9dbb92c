#pragma once

// Generators for synthetic data with known structure.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sparsent/sparse_codes.hpp"
#include "sparsent/tensor.hpp"

namespace sparsent {

struct TopicCorpusOptions {
  std::size_t topics = 8;
  std::size_t sentences_per_topic = 250;
  std::uint64_t seed = 0;
};

struct TopicCorpus {
  std::vector<std::string> lines;
  std::vector<std::size_t> topic;  // topic of each line
};

// Templated sentences (4 to 9 tokens) drawn from per-topic word pools plus
// shared function words, in shuffled order. At most 8 topics.
TopicCorpus make_topic_corpus(const TopicCorpusOptions& options);

struct SparseModelData {
  DenseMatrix z;          // codes * atoms (+ noise)
  SparseCodeMatrix codes;
  DenseMatrix atoms;      // orthonormal rows
};

// Z = E* U* with U* a random orthogonal dim x dim matrix and each row of E*
// holding `sparsity` coefficients of magnitude in [0.5, 1.5] with random
// sign, plus Gaussian noise of standard deviation `noise`.
SparseModelData make_sparse_model_data(std::size_t samples, std::size_t dim,
                                       std::size_t sparsity, double noise, std::uint64_t seed);

}  // namespace sparsent
