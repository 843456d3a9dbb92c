#include "sparsent/matrix_io.hpp"

#include <cmath>
#include <limits>

#include "sparsent/error.hpp"

namespace sparsent {

void encode_dense(ByteWriter& out, const DenseMatrix& m) {
  out.put_bytes(kDenseMagic);
  out.put_u32(kDenseVersion);
  out.put_u64(m.rows());
  out.put_u64(m.cols());
  for (double x : m.data()) out.put_f32(static_cast<float>(x));
}

DenseMatrix decode_dense(ByteReader& in) {
  in.expect_magic(kDenseMagic, "dense matrix (.semb)");
  const std::uint32_t version = in.get_u32();
  if (version != kDenseVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported .semb version " + std::to_string(version));
  }
  const std::uint64_t rows = in.get_u64();
  const std::uint64_t cols = in.get_u64();
  // Guard the element count before allocating anything.
  if (cols != 0 && rows > std::numeric_limits<std::uint64_t>::max() / cols) {
    throw FormatError(FormatError::Kind::kDimensionOverflow,
                      "dimension overflow: " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
  const std::uint64_t count = rows * cols;
  if (count > in.remaining() / 4) {
    if (count > std::numeric_limits<std::size_t>::max() / 8) {
      throw FormatError(FormatError::Kind::kDimensionOverflow,
                        "dimension overflow: " + std::to_string(rows) + "x" +
                            std::to_string(cols));
    }
    throw FormatError(FormatError::Kind::kTruncated,
                      "truncated .semb data: " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " needs " + std::to_string(count * 4) +
                          " bytes, " + std::to_string(in.remaining()) + " available");
  }
  std::vector<double> data(static_cast<std::size_t>(count));
  for (auto& x : data) {
    const float f = in.get_f32();
    if (!std::isfinite(f)) {
      throw FormatError(FormatError::Kind::kInvalidData, "non-finite value in .semb data");
    }
    x = f;
  }
  return DenseMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                     std::move(data));
}

std::string serialize_dense(const DenseMatrix& m) {
  ByteWriter w;
  encode_dense(w, m);
  return std::move(w).take();
}

DenseMatrix deserialize_dense(std::string_view bytes) {
  ByteReader r(bytes);
  DenseMatrix m = decode_dense(r);
  if (!r.at_end()) {
    throw FormatError(FormatError::Kind::kTrailingBytes,
                      std::to_string(r.remaining()) + " trailing bytes after .semb data");
  }
  return m;
}

void write_dense(const std::filesystem::path& path, const DenseMatrix& m) {
  write_file_bytes(path, serialize_dense(m));
}

DenseMatrix read_dense(const std::filesystem::path& path) {
  return deserialize_dense(read_file_bytes(path));
}

DenseMatrix cast_to_f32(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (double& x : out.data()) x = static_cast<float>(x);
  return out;
}

}  // namespace sparsent
