#include "sagan/digits.hpp"

#include <algorithm>
#include <cmath>

#include "radix.hpp"
#include "real_constants.hpp"
#include "sagan/error.hpp"

namespace sagan::digits {

namespace {

constexpr int kEnclosureAttempts = 4;

void require_count(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "digit count must be >= 1");
}

DigitBlock series_digits(ConstantKind kind, unsigned base, std::size_t count) {
  auto bits = static_cast<std::size_t>(std::ceil(static_cast<double>(count) * std::log2(base))) + 64;
  for (int attempt = 0; attempt < kEnclosureAttempts; ++attempt) {
    auto enclosure = detail::enclose_real(kind, bits);
    if (auto digits = detail::digits_from_enclosure(enclosure, base, count)) {
      return DigitBlock{base, 1, std::move(*digits)};
    }
    bits += bits / 2 + 64;
  }
  throw Error(ErrorCode::PrecisionExhausted, "enclosure did not settle after " +
                                                 std::to_string(kEnclosureAttempts) + " attempts");
}

// Converts a source expansion into `base`, consuming the guard policy's
// input length at `guard` and `2 * guard` and insisting that both agree.
template <typename Source>
DigitBlock guarded_conversion(Source&& source, unsigned source_base, unsigned base, std::size_t count,
                              unsigned guard) {
  std::size_t short_len = required_input_digits(source_base, base, count, guard);
  std::size_t long_len = required_input_digits(source_base, base, count, 2 * guard);
  DigitBlock input = source(long_len);
  Conversion first = convert_fraction(input.slice(1, short_len), base, count, guard);
  Conversion second = convert_fraction(input, base, count, 2 * guard);
  if (first.block.digits != second.block.digits || !second.stable) {
    throw Error(ErrorCode::PrecisionExhausted,
                "conversion to base " + std::to_string(base) + " not stable under guard doubling");
  }
  return std::move(second.block);
}

}  // namespace

std::size_t required_input_digits(unsigned source_base, unsigned target_base, std::size_t out_count,
                                  unsigned guard) {
  double ratio = std::log(static_cast<double>(target_base)) / std::log(static_cast<double>(source_base));
  return static_cast<std::size_t>(std::ceil(static_cast<double>(out_count) * ratio)) + guard;
}

Conversion convert_fraction(const DigitBlock& fraction, unsigned target_base, std::size_t out_count,
                            unsigned guard) {
  require_base(fraction.base);
  require_base(target_base);
  require_count(out_count);
  if (fraction.start_position != 1) {
    throw Error(ErrorCode::InvalidArgument, "conversion input must start at position 1");
  }
  fraction.validate();
  std::size_t needed = required_input_digits(fraction.base, target_base, out_count, guard);
  if (fraction.size() < needed) {
    throw Error(ErrorCode::InsufficientInputDigits, "need " + std::to_string(needed) + " input digits, got " +
                                                        std::to_string(fraction.size()));
  }

  // Input truncation t <= x < t + source^-L; emit floor(x * target^M).
  mpz_class value = detail::from_digits(fraction.digits, fraction.base);
  mpz_class scale_in = detail::pow_ui(fraction.base, fraction.size());
  mpz_class scale_out = detail::pow_ui(target_base, out_count);

  mpz_class lo;
  mpz_class num = value * scale_out;
  mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), scale_in.get_mpz_t());
  mpz_class hi;
  num = (value + 1) * scale_out;
  mpz_cdiv_q(hi.get_mpz_t(), num.get_mpz_t(), scale_in.get_mpz_t());
  hi -= 1;

  Conversion out;
  out.stable = lo == hi;
  out.block = DigitBlock{target_base, 1, detail::to_digits(lo, target_base, out_count)};
  return out;
}

Conversion base_convert(const DigitBlock& decimal_fraction, unsigned target_base, std::size_t out_count,
                        unsigned guard) {
  if (decimal_fraction.base != 10) {
    throw Error(ErrorCode::InvalidArgument, "base_convert expects a decimal input block");
  }
  return convert_fraction(decimal_fraction, target_base, out_count, guard);
}

DigitBlock rational_digits(std::int64_t p, std::int64_t q, unsigned base, std::size_t count,
                           std::uint64_t start_position) {
  require_base(base);
  if (q < 1) throw Error(ErrorCode::UnsupportedConstant, "rational denominator must be >= 1");
  if (start_position < 1) throw Error(ErrorCode::InvalidArgument, "positions start at 1");

  using u128 = unsigned __int128;
  auto uq = static_cast<std::uint64_t>(q);
  // Fractional part numerator in [0, q).
  std::int64_t r0 = p % q;
  if (r0 < 0) r0 += q;
  auto rem = static_cast<std::uint64_t>(r0);

  // Skip to start_position: rem * base^(start - 1) mod q.
  std::uint64_t skip = start_position - 1;
  std::uint64_t factor = base % uq;
  while (skip > 0) {
    if (skip & 1) rem = static_cast<std::uint64_t>(static_cast<u128>(rem) * factor % uq);
    factor = static_cast<std::uint64_t>(static_cast<u128>(factor) * factor % uq);
    skip >>= 1;
  }

  DigitBlock out{base, start_position, {}};
  out.digits.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    u128 scaled = static_cast<u128>(rem) * base;
    out.digits[i] = static_cast<Digit>(scaled / uq);
    rem = static_cast<std::uint64_t>(scaled % uq);
  }
  return out;
}

DigitBlock digits_in_base(const ConstantSpec& constant, unsigned base, std::size_t count, unsigned guard) {
  require_base(base);
  require_count(count);
  switch (constant.kind) {
    case ConstantKind::Rational:
      return rational_digits(constant.numerator, constant.denominator, base, count);

    case ConstantKind::Champernowne:
    case ConstantKind::CopelandErdos:
    case ConstantKind::FibonacciConcat: {
      unsigned native = constant.native_base();
      if (base == native) return concat_constant_digits(constant, count);
      return guarded_conversion([&](std::size_t n) { return concat_constant_digits(constant, n); }, native,
                                base, count, guard);
    }

    case ConstantKind::FibonacciCFrac:
      return cfrac_digits(fibonacci_coefficients(), base, count);

    case ConstantKind::Pi:
    case ConstantKind::Sqrt2:
    case ConstantKind::Log2:
    case ConstantKind::E:
      if (base == 10) return series_digits(constant.kind, 10, count);
      return guarded_conversion([&](std::size_t n) { return series_digits(constant.kind, 10, n); }, 10, base,
                                count, guard);
  }
  throw Error(ErrorCode::UnsupportedConstant, constant.id());
}

DigitBlock decimal_digits(const ConstantSpec& constant, std::size_t count) {
  return digits_in_base(constant, 10, count);
}

DigitStream::DigitStream(ConstantSpec source, unsigned base, std::size_t block_size)
    : source_(source), base_(base), block_size_(block_size) {
  require_base(base);
  if (block_size == 0) throw Error(ErrorCode::InvalidArgument, "block size must be >= 1");
}

void DigitStream::seek(std::uint64_t position) {
  if (position < 1) throw Error(ErrorCode::InvalidArgument, "positions start at 1");
  cursor_ = position;
  if (position < buffer_start_) {
    // Rewind: drop the buffer, the next ensure() recomputes the prefix.
    buffer_.clear();
    buffer_start_ = position;
    computed_ = position - 1;
  }
}

void DigitStream::ensure(std::uint64_t last_position) {
  if (last_position <= computed_ && cursor_ >= buffer_start_) return;
  std::uint64_t target = std::max<std::uint64_t>({last_position, 2 * computed_, 1024});
  DigitBlock block = digits_in_base(source_, base_, static_cast<std::size_t>(target));
  auto keep_from = static_cast<std::ptrdiff_t>(cursor_ - 1);
  buffer_.assign(block.digits.begin() + keep_from, block.digits.end());
  buffer_start_ = cursor_;
  computed_ = target;
}

DigitBlock DigitStream::pull(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "pull count must be >= 1");
  std::uint64_t last = cursor_ + count - 1;
  ensure(last);
  // Drop consumed digits once they dominate the buffer.
  std::uint64_t consumed = cursor_ - buffer_start_;
  if (consumed > 0 && consumed >= buffer_.size() / 2) {
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(consumed));
    buffer_start_ = cursor_;
  }
  auto first = buffer_.begin() + static_cast<std::ptrdiff_t>(cursor_ - buffer_start_);
  DigitBlock out{base_, cursor_, std::vector<Digit>(first, first + static_cast<std::ptrdiff_t>(count))};
  cursor_ += count;
  return out;
}

DigitStream open_stream(const ConstantSpec& constant, unsigned base, std::size_t block_size) {
  // Fail fast on unsupported constants instead of at the first pull.
  (void)constant.id();
  if (constant.kind == ConstantKind::Rational && constant.denominator < 1) {
    throw Error(ErrorCode::UnsupportedConstant, "rational denominator must be >= 1");
  }
  return DigitStream(constant, base, block_size);
}

}  // namespace sagan::digits
