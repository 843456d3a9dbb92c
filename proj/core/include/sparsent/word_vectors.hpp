#pragma once

// Word vector text format: one `token v1 ... vd` entry per line, separated
// by spaces. An optional first line holding exactly two integers
// (`count dim`) is detected and skipped.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sparsent {

class WordVectorTable {
 public:
  WordVectorTable() = default;
  explicit WordVectorTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return index_.size(); }

  // Throws DimensionError on a length mismatch or non-finite entry.
  // Re-adding a token overwrites it.
  void add(std::string token, std::vector<double> vec);

  bool contains(std::string_view token) const;
  // Empty span if absent.
  std::span<const double> lookup(std::string_view token) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> storage_;
  std::unordered_map<std::string, std::size_t> index_;  // token -> row
};

WordVectorTable parse_word_vectors(std::string_view text);
WordVectorTable load_word_vectors(const std::filesystem::path& path);

}  // namespace sparsent
