#pragma once

// Model file (.samodel):
//
//   "SAM1"             4 bytes magic
//   version            u32 LE, = 1
//   metadata_length    u32 LE, byte length of the block below (= 48)
//   metadata:
//     vocab_size       u64 LE
//     embed_dim        u64 LE
//     hidden_dim       u64 LE
//     sparsity kind    u32 LE   0 none, 1 ksparse, 2 sparsemax
//     k                u32 LE
//     temperature      f32 LE
//     flags            u32 LE   bit 0: signed k-Sparse selection
//     seed             u64 LE
//   tensors, each framed exactly like a .semb file, in this order:
//     embeddings,
//     encoder w_update w_reset w_candidate r_update r_reset r_candidate
//             b_update b_reset b_candidate,
//     decoder (same nine),
//     out_weight, out_bias
//
// Parameters are stored at single precision.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sparsent/autoencoder.hpp"

namespace sparsent {

inline constexpr std::string_view kModelMagic = "SAM1";
inline constexpr std::uint32_t kModelVersion = 1;

std::string serialize_model(const AutoencoderModel& model);
AutoencoderModel deserialize_model(std::string_view bytes);

void write_model(const std::filesystem::path& path, const AutoencoderModel& model);
AutoencoderModel read_model(const std::filesystem::path& path);

}  // namespace sparsent
