#include "sparsent/sparse_codes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sparsent/binary_io.hpp"
#include "sparsent/error.hpp"
#include "sparsent/matrix_io.hpp"

namespace sparsent {

void validate_sparse_row(const SparseRow& row, std::size_t cols) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].index >= cols) {
      throw DimensionError("sparse entry index " + std::to_string(row[i].index) +
                           " out of range for width " + std::to_string(cols));
    }
    if (i > 0 && row[i].index <= row[i - 1].index) {
      throw DimensionError("sparse row indices must be strictly increasing");
    }
    if (row[i].value == 0.0 || !std::isfinite(row[i].value)) {
      throw DimensionError("sparse row values must be nonzero and finite");
    }
  }
}

SparseCodeMatrix::SparseCodeMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows) {}

SparseCodeMatrix SparseCodeMatrix::from_dense(const DenseMatrix& dense) {
  SparseCodeMatrix out(dense.rows(), dense.cols());
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    auto src = dense.row(i);
    SparseRow& row = out.rows_[i];
    for (std::size_t d = 0; d < src.size(); ++d) {
      if (src[d] != 0.0) row.push_back({static_cast<std::uint32_t>(d), src[d]});
    }
  }
  return out;
}

void SparseCodeMatrix::set_row(std::size_t i, SparseRow row) {
  if (i >= rows_.size()) {
    throw DimensionError("row " + std::to_string(i) + " out of range for " +
                         std::to_string(rows_.size()) + " rows");
  }
  validate_sparse_row(row, cols_);
  rows_[i] = std::move(row);
}

double SparseCodeMatrix::value(std::size_t i, std::size_t d) const {
  for (const auto& e : rows_.at(i)) {
    if (e.index == d) return e.value;
    if (e.index > d) break;
  }
  return 0.0;
}

std::size_t SparseCodeMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

DenseMatrix SparseCodeMatrix::to_dense() const {
  DenseMatrix out(rows(), cols_);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (const auto& e : rows_[i]) out(i, e.index) = e.value;
  }
  return out;
}

std::string serialize_codes(const SparseCodeMatrix& codes) {
  if (codes.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw DimensionError("code width exceeds u32 index range");
  }
  ByteWriter w;
  w.put_bytes(kSparseMagic);
  w.put_u32(kSparseVersion);
  w.put_u64(codes.rows());
  w.put_u64(codes.cols());
  for (std::size_t i = 0; i < codes.rows(); ++i) {
    const SparseRow& row = codes.row(i);
    std::uint32_t nnz = 0;
    for (const auto& e : row) nnz += static_cast<float>(e.value) != 0.0f;
    w.put_u32(nnz);
    for (const auto& e : row) {
      const float f = static_cast<float>(e.value);
      if (f == 0.0f) continue;
      w.put_u32(e.index);
      w.put_f32(f);
    }
  }
  return std::move(w).take();
}

SparseCodeMatrix deserialize_codes(std::string_view bytes) {
  ByteReader r(bytes);
  r.expect_magic(kSparseMagic, "sparse code (.ssc)");
  const std::uint32_t version = r.get_u32();
  if (version != kSparseVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported .ssc version " + std::to_string(version));
  }
  const std::uint64_t rows = r.get_u64();
  const std::uint64_t cols = r.get_u64();
  // Every row needs at least its 4-byte count.
  if (rows > r.remaining() / 4) {
    throw FormatError(FormatError::Kind::kDimensionOverflow,
                      "dimension overflow: " + std::to_string(rows) +
                          " rows cannot fit in " + std::to_string(r.remaining()) + " bytes");
  }
  if (cols > std::numeric_limits<std::uint32_t>::max() + std::uint64_t{1}) {
    throw FormatError(FormatError::Kind::kDimensionOverflow,
                      "dimension overflow: width " + std::to_string(cols));
  }
  SparseCodeMatrix codes(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint32_t nnz = r.get_u32();
    if (nnz > cols || nnz > r.remaining() / 8) {
      if (nnz > cols) {
        throw FormatError(FormatError::Kind::kInvalidData,
                          "row " + std::to_string(i) + " has " + std::to_string(nnz) +
                              " entries for width " + std::to_string(cols));
      }
      throw FormatError(FormatError::Kind::kTruncated,
                        "truncated .ssc data in row " + std::to_string(i));
    }
    SparseRow row(nnz);
    for (auto& e : row) {
      e.index = r.get_u32();
      e.value = r.get_f32();
    }
    try {
      validate_sparse_row(row, codes.cols());
    } catch (const DimensionError& err) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "row " + std::to_string(i) + ": " + err.what());
    }
    codes.set_row(i, std::move(row));
  }
  if (!r.at_end()) {
    throw FormatError(FormatError::Kind::kTrailingBytes,
                      std::to_string(r.remaining()) + " trailing bytes after .ssc data");
  }
  return codes;
}

void write_codes(const std::filesystem::path& path, const SparseCodeMatrix& codes) {
  write_file_bytes(path, serialize_codes(codes));
}

SparseCodeMatrix read_codes(const std::filesystem::path& path) {
  return deserialize_codes(read_file_bytes(path));
}

SparseCodeMatrix read_codes_any(const std::filesystem::path& path) {
  const std::string bytes = read_file_bytes(path);
  if (bytes.starts_with(kDenseMagic)) {
    return SparseCodeMatrix::from_dense(deserialize_dense(bytes));
  }
  return deserialize_codes(bytes);
}

}  // namespace sparsent
