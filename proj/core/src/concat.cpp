#include <algorithm>
#include <cmath>

#include "radix.hpp"
#include "sagan/digits.hpp"
#include "sagan/error.hpp"

namespace sagan::digits {

namespace {

constexpr std::uint64_t kSegmentSpan = 1u << 16;

void append_numeral(std::uint64_t value, unsigned base, std::vector<Digit>& out) {
  Digit buf[64];
  int len = 0;
  do {
    buf[len++] = static_cast<Digit>(value % base);
    value /= base;
  } while (value > 0);
  while (len > 0) out.push_back(buf[--len]);
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

PrimeSieve::PrimeSieve() = default;

void PrimeSieve::sieve_next_segment() {
  std::uint64_t low = segment_low_;
  std::uint64_t high = low + kSegmentSpan;  // exclusive
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(high))) + 1;
  if (base_primes_.empty() || base_primes_.back() < root) {
    base_primes_ = primes_up_to(std::max<std::uint64_t>(2 * root, 256));
  }
  std::vector<bool> composite(kSegmentSpan, false);
  for (std::uint64_t p : base_primes_) {
    if (p * p >= high) break;
    std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
    for (std::uint64_t j = start; j < high; j += p) composite[j - low] = true;
  }
  pending_.clear();
  pending_index_ = 0;
  for (std::uint64_t i = 0; i < kSegmentSpan; ++i) {
    if (!composite[i] && low + i >= 2) pending_.push_back(low + i);
  }
  segment_low_ = high;
}

std::uint64_t PrimeSieve::next() {
  while (pending_index_ >= pending_.size()) sieve_next_segment();
  return pending_[pending_index_++];
}

DigitBlock concat_constant_digits(const ConstantSpec& constant, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "digit count must be >= 1");
  std::vector<Digit> out;
  out.reserve(count + 64);

  switch (constant.kind) {
    case ConstantKind::Champernowne: {
      unsigned base = constant.concat_base;
      require_base(base);
      for (std::uint64_t k = 1; out.size() < count; ++k) append_numeral(k, base, out);
      out.resize(count);
      return DigitBlock{base, 1, std::move(out)};
    }
    case ConstantKind::CopelandErdos: {
      PrimeSieve primes;
      while (out.size() < count) append_numeral(primes.next(), 10, out);
      out.resize(count);
      return DigitBlock{10, 1, std::move(out)};
    }
    case ConstantKind::FibonacciConcat: {
      mpz_class current = 0;
      mpz_class next = 1;
      while (out.size() < count) {
        std::string text = current.get_str(10);
        for (char c : text) out.push_back(static_cast<Digit>(c - '0'));
        current += next;
        std::swap(current, next);
      }
      out.resize(count);
      return DigitBlock{10, 1, std::move(out)};
    }
    default: break;
  }
  throw Error(ErrorCode::UnsupportedConstant, constant.id() + " is not a concatenation constant");
}

}  // namespace sagan::digits
