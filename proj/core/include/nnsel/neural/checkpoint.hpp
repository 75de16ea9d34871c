#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "nnsel/neural/model.hpp"

namespace nnsel::nn {

/// Binary layout, little-endian throughout:
///   "NNSELCK1" | u32 version | u32 arch | u32 vocab_size, dim, hidden,
///   cnn_layers, cnn_patch, wavenet_blocks, wavenet_layers, tree_layers,
///   max_len | f32 token_dropout, feature_dropout | u64 vocab_hash |
///   u32 param_count | per parameter: u32 numel, numel x f32
std::string save_checkpoint(const Model& model);

/// Throws when the bytes are malformed or when `expected_vocab_hash` is given
/// and differs from the stored hash.
Model load_checkpoint(std::string_view bytes, std::optional<std::uint64_t> expected_vocab_hash = {});

void save_checkpoint_file(const Model& model, const std::filesystem::path& path);
Model load_checkpoint_file(const std::filesystem::path& path,
                           std::optional<std::uint64_t> expected_vocab_hash = {});

}  // namespace nnsel::nn
