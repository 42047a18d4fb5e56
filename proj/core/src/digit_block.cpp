#include "sagan/digit_block.hpp"

#include <charconv>

#include "sagan/error.hpp"

namespace sagan {

void require_base(unsigned base) {
  if (base < kMinBase || base > kMaxBase) {
    throw Error(ErrorCode::InvalidArgument,
                "base " + std::to_string(base) + " outside [2, 256]");
  }
}

Digit DigitBlock::at(std::uint64_t position) const {
  if (position < start_position || position >= end_position()) {
    throw Error(ErrorCode::InvalidArgument,
                "position " + std::to_string(position) + " outside block");
  }
  return digits[position - start_position];
}

DigitBlock DigitBlock::slice(std::uint64_t position, std::size_t count) const {
  if (position < start_position || position + count > end_position()) {
    throw Error(ErrorCode::InvalidArgument, "slice outside block");
  }
  auto first = digits.begin() + static_cast<std::ptrdiff_t>(position - start_position);
  return DigitBlock{base, position, std::vector<Digit>(first, first + static_cast<std::ptrdiff_t>(count))};
}

void DigitBlock::validate() const {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= base) {
      throw Error(ErrorCode::InvalidDigit, "digit " + std::to_string(digits[i]) + " at position " +
                                               std::to_string(start_position + i) + " >= base " +
                                               std::to_string(base));
    }
  }
}

std::string render_digits(std::span<const Digit> digits, GlyphStyle style) {
  std::string out;
  out.reserve(digits.size());
  for (Digit d : digits) {
    if (d < 10) {
      out.push_back(static_cast<char>('0' + d));
    } else if (style == GlyphStyle::Alnum && d < 36) {
      out.push_back(static_cast<char>('a' + (d - 10)));
    } else {
      out.push_back('[');
      out += std::to_string(d);
      out.push_back(']');
    }
  }
  return out;
}

std::vector<Digit> parse_digits(std::string_view text) {
  std::vector<Digit> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      out.push_back(static_cast<Digit>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<Digit>(c - 'a' + 10));
    } else if (c == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::InvalidDigit, "unterminated bracketed digit");
      }
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + close, value);
      if (ec != std::errc{} || ptr != text.data() + close || value > 255) {
        throw Error(ErrorCode::InvalidDigit, "bad bracketed digit");
      }
      out.push_back(static_cast<Digit>(value));
      i = close;
    } else {
      throw Error(ErrorCode::InvalidDigit, std::string("unexpected glyph '") + c + "'");
    }
  }
  return out;
}

}  // namespace sagan
