#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sagan {

using Digit = std::uint8_t;

inline constexpr unsigned kMinBase = 2;
inline constexpr unsigned kMaxBase = 256;

// Throws InvalidArgument unless 2 <= base <= 256.
void require_base(unsigned base);

// A contiguous run of fractional digits. Position 1 is the first digit after
// the radix point.
struct DigitBlock {
  unsigned base = 10;
  std::uint64_t start_position = 1;
  std::vector<Digit> digits;

  std::size_t size() const { return digits.size(); }
  std::uint64_t end_position() const { return start_position + digits.size(); }

  // Digit at an absolute 1-indexed position inside the block.
  Digit at(std::uint64_t position) const;

  // Sub-block covering [position, position + count).
  DigitBlock slice(std::uint64_t position, std::size_t count) const;

  // Throws InvalidDigit if any digit is out of range for the base.
  void validate() const;

  bool operator==(const DigitBlock&) const = default;
};

enum class GlyphStyle {
  // 0-9, a-z for 10..35, "[n]" beyond.
  Alnum,
  // 0-9, "[n]" for everything >= 10.
  Bracketed,
};

std::string render_digits(std::span<const Digit> digits, GlyphStyle style = GlyphStyle::Alnum);

// Inverse of render_digits for either style. Throws InvalidDigit on
// malformed input.
std::vector<Digit> parse_digits(std::string_view text);

}  // namespace sagan
