#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sagan/constant.hpp"
#include "sagan/digit_block.hpp"

namespace sagan::digits {

// On-disk digit cache ("SGND" v1):
//   "SGND" | u8 version=1 | u16le base | u8 id_len | id bytes |
//   u64le digit count | one byte per digit | u32le CRC-32 of all preceding bytes
struct CachedDigits {
  std::string constant_id;
  unsigned base = 10;
  std::vector<Digit> digits;

  bool operator==(const CachedDigits&) const = default;
};

inline constexpr std::uint8_t kCacheVersion = 1;

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_cache(const CachedDigits& cached);

// Throws Error(CacheCorrupt) on bad magic, version, truncation, digit >= base
// or CRC mismatch.
CachedDigits decode_cache(std::span<const std::uint8_t> bytes);

// Writes through a temporary file in the same directory and renames it into
// place. Creates the parent directory if needed.
void write_cache_file(const std::filesystem::path& path, const CachedDigits& cached);

CachedDigits read_cache_file(const std::filesystem::path& path);

// One file per (constant, base), e.g. "pi.b11.sgnd".
std::string cache_file_name(const ConstantSpec& constant, unsigned base);

}  // namespace sagan::digits
