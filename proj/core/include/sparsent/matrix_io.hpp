#pragma once

// Dense matrix file (.semb):
//
//   "SEMB"            4 bytes magic (53 45 4D 42)
//   version           u32 LE, = 1
//   rows              u64 LE
//   cols              u64 LE
//   data              rows * cols IEEE-754 f32 LE, row-major
//
// No padding and no trailing bytes. Values are stored at single precision,
// so read(write(m)) equals m with every entry rounded to float.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sparsent/binary_io.hpp"
#include "sparsent/tensor.hpp"

namespace sparsent {

inline constexpr std::string_view kDenseMagic = "SEMB";
inline constexpr std::uint32_t kDenseVersion = 1;

void encode_dense(ByteWriter& out, const DenseMatrix& m);
// Consumes exactly one framed matrix from `in`.
DenseMatrix decode_dense(ByteReader& in);

std::string serialize_dense(const DenseMatrix& m);
// Rejects trailing bytes.
DenseMatrix deserialize_dense(std::string_view bytes);

void write_dense(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_dense(const std::filesystem::path& path);

// Entry-wise rounding through float, i.e. what a round-trip through .semb
// produces.
DenseMatrix cast_to_f32(const DenseMatrix& m);

}  // namespace sparsent
