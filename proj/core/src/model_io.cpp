#include "sparsent/model_io.hpp"

#include <string>

#include "sparsent/binary_io.hpp"
#include "sparsent/error.hpp"
#include "sparsent/matrix_io.hpp"

namespace sparsent {
namespace {

constexpr std::uint32_t kMetadataLength = 48;
constexpr std::uint32_t kFlagSignedSelection = 1u;

std::uint32_t kind_code(SparsityKind kind) {
  switch (kind) {
    case SparsityKind::kNone:
      return 0;
    case SparsityKind::kKSparse:
      return 1;
    case SparsityKind::kSparsemax:
      return 2;
  }
  return 0;
}

SparsityKind kind_from_code(std::uint32_t code) {
  switch (code) {
    case 0:
      return SparsityKind::kNone;
    case 1:
      return SparsityKind::kKSparse;
    case 2:
      return SparsityKind::kSparsemax;
    default:
      throw FormatError(FormatError::Kind::kInvalidData,
                        "unknown sparsity kind code " + std::to_string(code));
  }
}

}  // namespace

std::string serialize_model(const AutoencoderModel& model) {
  const auto& cfg = model.config;
  ByteWriter w;
  w.put_bytes(kModelMagic);
  w.put_u32(kModelVersion);
  w.put_u32(kMetadataLength);
  w.put_u64(cfg.vocab_size);
  w.put_u64(cfg.embed_dim);
  w.put_u64(cfg.hidden_dim);
  w.put_u32(kind_code(cfg.sparsity.kind));
  w.put_u32(static_cast<std::uint32_t>(cfg.sparsity.k));
  w.put_f32(static_cast<float>(cfg.sparsity.temperature));
  w.put_u32(cfg.sparsity.signed_selection ? kFlagSignedSelection : 0u);
  w.put_u64(cfg.seed);
  for (const auto* t : model.params.tensors()) encode_dense(w, *t);
  return std::move(w).take();
}

AutoencoderModel deserialize_model(std::string_view bytes) {
  ByteReader r(bytes);
  r.expect_magic(kModelMagic, "model (.samodel)");
  const std::uint32_t version = r.get_u32();
  if (version != kModelVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported .samodel version " + std::to_string(version));
  }
  const std::uint32_t meta_len = r.get_u32();
  if (meta_len != kMetadataLength) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      "unexpected metadata length " + std::to_string(meta_len));
  }
  ByteReader meta(r.get_bytes(meta_len));
  ModelConfig cfg;
  cfg.vocab_size = meta.get_u64();
  cfg.embed_dim = meta.get_u64();
  cfg.hidden_dim = meta.get_u64();
  cfg.sparsity.kind = kind_from_code(meta.get_u32());
  cfg.sparsity.k = meta.get_u32();
  cfg.sparsity.temperature = meta.get_f32();
  cfg.sparsity.signed_selection = (meta.get_u32() & kFlagSignedSelection) != 0;
  cfg.seed = meta.get_u64();
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw FormatError(FormatError::Kind::kInvalidData,
                      std::string("invalid model metadata: ") + e.what());
  }

  AutoencoderModel model;
  model.config = cfg;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  {
    const std::size_t v = cfg.vocab_size, e = cfg.embed_dim, h = cfg.hidden_dim;
    shapes.push_back({v, e});
    for (int net = 0; net < 2; ++net) {
      for (int i = 0; i < 3; ++i) shapes.push_back({h, e});
      for (int i = 0; i < 3; ++i) shapes.push_back({h, h});
      for (int i = 0; i < 3; ++i) shapes.push_back({1, h});
    }
    shapes.push_back({v, h});
    shapes.push_back({1, v});
  }
  std::vector<DenseMatrix> tensors;
  const auto& names = AutoencoderParams::tensor_names();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    DenseMatrix t = decode_dense(r);
    if (t.rows() != shapes[i].first || t.cols() != shapes[i].second) {
      throw FormatError(FormatError::Kind::kInvalidData,
                        "tensor " + names[i] + " has shape " + std::to_string(t.rows()) + "x" +
                            std::to_string(t.cols()) + ", expected " +
                            std::to_string(shapes[i].first) + "x" +
                            std::to_string(shapes[i].second));
    }
    tensors.push_back(std::move(t));
  }
  if (!r.at_end()) {
    throw FormatError(FormatError::Kind::kTrailingBytes,
                      std::to_string(r.remaining()) + " trailing bytes after model data");
  }
  auto slots = model.params.tensors();
  for (std::size_t i = 0; i < slots.size(); ++i) *slots[i] = std::move(tensors[i]);
  return model;
}

void write_model(const std::filesystem::path& path, const AutoencoderModel& model) {
  write_file_bytes(path, serialize_model(model));
}

AutoencoderModel read_model(const std::filesystem::path& path) {
  return deserialize_model(read_file_bytes(path));
}

}  // namespace sparsent
