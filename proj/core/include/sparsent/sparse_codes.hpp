#pragma once

// Sparse code file (.ssc):
//
//   "SSC1"            4 bytes magic (53 53 43 31)
//   version           u32 LE, = 1
//   N                 u64 LE   rows (samples)
//   D                 u64 LE   cols (dimensions)
//   N times:
//     nnz             u32 LE
//     nnz times:      u32 LE index, f32 LE value   (indices ascending)
//
// Entries whose value rounds to 0.0f are dropped on write.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsent/tensor.hpp"

namespace sparsent {

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

// Entries sorted by strictly increasing index, all values nonzero.
using SparseRow = std::vector<SparseEntry>;

class SparseCodeMatrix {
 public:
  SparseCodeMatrix() = default;
  SparseCodeMatrix(std::size_t rows, std::size_t cols);

  // Every nonzero entry of `dense` becomes a stored entry.
  static SparseCodeMatrix from_dense(const DenseMatrix& dense);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const SparseRow& row(std::size_t i) const { return rows_.at(i); }
  // Validates ordering, range and nonzero values (DimensionError otherwise).
  void set_row(std::size_t i, SparseRow row);

  // Value at (i, d), zero when not stored.
  double value(std::size_t i, std::size_t d) const;

  std::size_t nnz() const;
  DenseMatrix to_dense() const;

  bool operator==(const SparseCodeMatrix&) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

// Throws DimensionError when the row breaks the SparseRow invariants for a
// code of width `cols`.
void validate_sparse_row(const SparseRow& row, std::size_t cols);

inline constexpr std::string_view kSparseMagic = "SSC1";
inline constexpr std::uint32_t kSparseVersion = 1;

std::string serialize_codes(const SparseCodeMatrix& codes);
SparseCodeMatrix deserialize_codes(std::string_view bytes);

void write_codes(const std::filesystem::path& path, const SparseCodeMatrix& codes);
SparseCodeMatrix read_codes(const std::filesystem::path& path);

// Loads either a .ssc or a .semb file, dispatching on the magic bytes.
// Dense inputs are converted with SparseCodeMatrix::from_dense.
SparseCodeMatrix read_codes_any(const std::filesystem::path& path);

}  // namespace sparsent
