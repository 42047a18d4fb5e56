#include "sagan/digit_cache.hpp"

#include <fstream>
#include <iterator>
#include <random>

#include <zlib.h>

#include "sagan/error.hpp"

namespace sagan::digits {

namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'G', 'N', 'D'};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t offset, int width) {
  std::uint64_t value = 0;
  for (int i = 0; i < width; ++i) value |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
  return value;
}

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorCode::CacheCorrupt, why); }

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    auto len = static_cast<uInt>(std::min(kChunk, bytes.size() - off));
    crc = ::crc32(crc, bytes.data() + off, len);
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> encode_cache(const CachedDigits& cached) {
  require_base(cached.base);
  if (cached.constant_id.size() > 255) throw Error(ErrorCode::InvalidArgument, "constant id longer than 255 bytes");
  std::vector<std::uint8_t> out;
  out.reserve(4 + 1 + 2 + 1 + cached.constant_id.size() + 8 + cached.digits.size() + 4);
  for (std::uint8_t m : kMagic) out.push_back(m);
  out.push_back(kCacheVersion);
  put_le(out, cached.base, 2);
  out.push_back(static_cast<std::uint8_t>(cached.constant_id.size()));
  out.insert(out.end(), cached.constant_id.begin(), cached.constant_id.end());
  put_le(out, cached.digits.size(), 8);
  for (Digit d : cached.digits) {
    if (d >= cached.base) throw Error(ErrorCode::InvalidDigit, "digit >= base in cache payload");
    out.push_back(d);
  }
  put_le(out, crc32(out), 4);
  return out;
}

CachedDigits decode_cache(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 + 1 + 2 + 1 + 8 + 4) corrupt("file too short");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) corrupt("bad magic");
  if (bytes[4] != kCacheVersion) corrupt("unsupported version " + std::to_string(bytes[4]));

  CachedDigits out;
  out.base = static_cast<unsigned>(get_le(bytes, 5, 2));
  if (out.base < kMinBase || out.base > kMaxBase) corrupt("base out of range");
  std::size_t id_len = bytes[7];
  std::size_t offset = 8;
  if (bytes.size() < offset + id_len + 8 + 4) corrupt("truncated header");
  out.constant_id.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                         bytes.begin() + static_cast<std::ptrdiff_t>(offset + id_len));
  offset += id_len;
  std::uint64_t count = get_le(bytes, offset, 8);
  offset += 8;
  if (count != bytes.size() - offset - 4) corrupt("digit count does not match file size");

  std::uint32_t stored = static_cast<std::uint32_t>(get_le(bytes, bytes.size() - 4, 4));
  if (stored != crc32(bytes.first(bytes.size() - 4))) corrupt("CRC mismatch");

  out.digits.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset), bytes.end() - 4);
  for (Digit d : out.digits) {
    if (d >= out.base) corrupt("digit " + std::to_string(d) + " >= base " + std::to_string(out.base));
  }
  return out;
}

void write_cache_file(const std::filesystem::path& path, const CachedDigits& cached) {
  auto bytes = encode_cache(cached);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());

  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

CachedDigits read_cache_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::CacheCorrupt, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_cache(bytes);
}

std::string cache_file_name(const ConstantSpec& constant, unsigned base) {
  std::string id = constant.id();
  for (char& c : id) {
    if (c == '/' || c == ':') c = '_';
  }
  return id + ".b" + std::to_string(base) + ".sgnd";
}

}  // namespace sagan::digits
