#include "sparsent/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sparsent/error.hpp"

namespace sparsent {
namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian targets are not supported");

template <class T>
void append_le(std::string& buf, T v) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  }
  buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T load_le(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

}  // namespace

void ByteWriter::put_u32(std::uint32_t v) { append_le(buf_, v); }
void ByteWriter::put_u64(std::uint64_t v) { append_le(buf_, v); }
void ByteWriter::put_f32(float v) { put_u32(std::bit_cast<std::uint32_t>(v)); }

void ByteReader::require(std::size_t n) const {
  if (remaining() < n) {
    throw FormatError(FormatError::Kind::kTruncated,
                      "truncated input: need " + std::to_string(n) + " bytes at offset " +
                          std::to_string(pos_) + ", " + std::to_string(remaining()) +
                          " available");
  }
}

std::uint8_t ByteReader::get_u8() {
  require(1);
  return static_cast<std::uint8_t>(bytes_[pos_++]);
}

std::uint32_t ByteReader::get_u32() {
  require(4);
  auto v = load_le<std::uint32_t>(bytes_.data() + pos_);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::get_u64() {
  require(8);
  auto v = load_le<std::uint64_t>(bytes_.data() + pos_);
  pos_ += 8;
  return v;
}

float ByteReader::get_f32() { return std::bit_cast<float>(get_u32()); }

std::string_view ByteReader::get_bytes(std::size_t n) {
  require(n);
  auto out = bytes_.substr(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::expect_magic(std::string_view magic, std::string_view what) {
  if (remaining() < magic.size() || bytes_.substr(pos_, magic.size()) != magic) {
    throw FormatError(FormatError::Kind::kBadMagic,
                      "bad magic: not a " + std::string(what) + " stream");
  }
  pos_ += magic.size();
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sparsent
