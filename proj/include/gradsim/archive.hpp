#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gradsim/model.hpp"

namespace gradsim {

// Versioned binary container shared by checkpoints, adversarial sets and
// datasets:
//   "GRADSIM\0" | u32 version | u64 header length | header text
//   | u64 tensor count | per tensor: u32 name length, name, u32 rank,
//     u64 dims..., little-endian f64 values | "END\0"
struct Archive {
  std::string header;
  std::vector<NamedTensor> tensors;

  const Tensor& get(const std::string& name) const;
};

inline constexpr std::uint32_t kArchiveVersion = 1;

void write_archive(const std::filesystem::path& path, const Archive& archive);
Archive read_archive(const std::filesystem::path& path);

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace gradsim
