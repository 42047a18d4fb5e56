#include "radix.hpp"

#include <string>

#include "sagan/digits.hpp"
#include "sagan/error.hpp"

namespace sagan::detail {

namespace {

constexpr std::size_t kLeafWidth = 64;

mpz_class power(unsigned base, std::size_t exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

void emit_digits(const mpz_class& value, unsigned base, std::size_t width, Digit* out) {
  if (width <= kLeafWidth) {
    mpz_class v = value;
    for (std::size_t i = width; i-- > 0;) {
      out[i] = static_cast<Digit>(mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), base));
    }
    return;
  }
  std::size_t low_width = width / 2;
  mpz_class q;
  mpz_class r;
  mpz_class divisor = power(base, low_width);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
  emit_digits(q, base, width - low_width, out);
  emit_digits(r, base, low_width, out + (width - low_width));
}

mpz_class collect_digits(std::span<const Digit> digits, unsigned base) {
  if (digits.size() <= kLeafWidth) {
    mpz_class v = 0;
    for (Digit d : digits) {
      v *= base;
      v += d;
    }
    return v;
  }
  std::size_t low_width = digits.size() / 2;
  std::size_t high_width = digits.size() - low_width;
  mpz_class high = collect_digits(digits.first(high_width), base);
  mpz_class low = collect_digits(digits.subspan(high_width), base);
  return high * power(base, low_width) + low;
}

// GMP's alphabet: lowercase for bases <= 36, 0-9A-Za-z above.
int glyph_value(char c, unsigned base) {
  if (c >= '0' && c <= '9') return c - '0';
  if (base <= 36) return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return c - 'a' + 36;
}

char glyph_for(Digit d, unsigned base) {
  if (d < 10) return static_cast<char>('0' + d);
  if (base <= 36) return static_cast<char>('a' + d - 10);
  if (d < 36) return static_cast<char>('A' + d - 10);
  return static_cast<char>('a' + d - 36);
}

}  // namespace

mpz_class pow_ui(unsigned base, std::size_t exponent) { return power(base, exponent); }

std::vector<Digit> to_digits(const mpz_class& value, unsigned base, std::size_t width) {
  std::vector<Digit> out(width, 0);
  if (base <= 62) {
    std::string text = value.get_str(static_cast<int>(base));
    if (text.size() > width) throw Error(ErrorCode::InvalidArgument, "value wider than requested digits");
    std::size_t offset = width - text.size();
    for (std::size_t i = 0; i < text.size(); ++i) {
      out[offset + i] = static_cast<Digit>(glyph_value(text[i], base));
    }
    return out;
  }
  emit_digits(value, base, width, out.data());
  return out;
}

mpz_class from_digits(std::span<const Digit> digits, unsigned base) {
  if (digits.empty()) return 0;
  if (base <= 62) {
    std::string text(digits.size(), '0');
    for (std::size_t i = 0; i < digits.size(); ++i) text[i] = glyph_for(digits[i], base);
    return mpz_class(text, static_cast<int>(base));
  }
  return collect_digits(digits, base);
}

std::optional<std::vector<Digit>> digits_from_enclosure(const Enclosure& enclosure, unsigned base,
                                                        std::size_t count) {
  mpz_class scale_out = power(base, count);
  mpz_class lo;
  mpz_class hi;
  mpz_class num = enclosure.lo * scale_out;
  mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), enclosure.scale.get_mpz_t());
  num = enclosure.hi * scale_out;
  mpz_fdiv_q(hi.get_mpz_t(), num.get_mpz_t(), enclosure.scale.get_mpz_t());
  if (lo != hi) return std::nullopt;
  mpz_class frac;
  mpz_fdiv_r(frac.get_mpz_t(), lo.get_mpz_t(), scale_out.get_mpz_t());
  return to_digits(frac, base, count);
}

}  // namespace sagan::detail

namespace sagan::digits {

std::vector<Digit> to_base_digits(const mpz_class& value, unsigned base, std::size_t width) {
  require_base(base);
  return detail::to_digits(value, base, width);
}

}  // namespace sagan::digits
