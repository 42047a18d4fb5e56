#include "sagan/search.hpp"

#include <algorithm>
#include <future>
#include <map>

#include <mpfr.h>

#include "sagan/error.hpp"

namespace sagan::search {

namespace {

void require_matcher_base(unsigned base) {
  if (base < 2 || base > kMaxBase) {
    throw Error(ErrorCode::BaseTooSmall, "matcher base " + std::to_string(base) + " outside [2, 256]");
  }
}

// RAII wrapper for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~Mpfr() { mpfr_clear(value_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

mpfr_prec_t precision_for(std::uint64_t magnitude) {
  mpfr_prec_t bits = 128;
  while (magnitude > 0) {
    ++bits;
    magnitude >>= 1;
  }
  return bits;
}

// 10^t as a BigDecimal, t >= 0.
BigDecimal pow10_of(mpfr_ptr t, mpfr_prec_t precision) {
  Mpfr whole(precision);
  Mpfr frac(precision);
  mpfr_floor(whole.get(), t);
  mpfr_sub(frac.get(), t, whole.get(), MPFR_RNDN);
  Mpfr mant(precision);
  mpfr_exp10(mant.get(), frac.get(), MPFR_RNDN);
  auto exponent = static_cast<std::int64_t>(mpfr_get_sj(whole.get(), MPFR_RNDN));
  return BigDecimal::make(mpfr_get_d(mant.get(), MPFR_RNDN), exponent);
}

struct WindowContext {
  DigitBlock window;
  DigitBlock before;
  DigitBlock after;
};

WindowContext fetch_context(const ConstantSpec& constant, unsigned base, std::uint64_t anchor, std::size_t length,
                            std::size_t context_width) {
  std::uint64_t first = anchor > context_width ? anchor - context_width : 1;
  auto stream = digits::open_stream(constant, base, 4096);
  stream.seek(first);
  DigitBlock all = stream.pull(static_cast<std::size_t>(anchor - first) + length + context_width);
  WindowContext out;
  out.before = all.slice(first, static_cast<std::size_t>(anchor - first));
  out.window = all.slice(anchor, length);
  out.after = all.slice(anchor + length, context_width);
  return out;
}

}  // namespace

CompiledMatcher::CompiledMatcher(unsigned base, std::vector<DigitSet> sets)
    : base_(base), sets_(std::move(sets)), masks_(256, 0) {
  require_matcher_base(base);
  if (sets_.empty()) throw Error(ErrorCode::InvalidArgument, "empty matcher");
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].none()) throw Error(ErrorCode::InvalidArgument, "empty admissible set");
    for (unsigned d = base; d < 256; ++d) {
      if (sets_[i].test(d)) {
        throw Error(ErrorCode::BaseTooSmall,
                    "digit " + std::to_string(d) + " not representable in base " + std::to_string(base));
      }
    }
  }
  if (bit_parallel()) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (unsigned d = 0; d < base; ++d) {
        if (sets_[i].test(d)) masks_[d] |= std::uint64_t{1} << i;
      }
    }
  }
}

bool CompiledMatcher::matches(std::span<const Digit> window) const {
  if (window.size() != sets_.size()) return false;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!sets_[i].test(window[i])) return false;
  }
  return true;
}

CompiledMatcher compile(const raster::RasterPattern& pattern, unsigned base) {
  require_matcher_base(base);
  std::vector<DigitSet> sets(pattern.bits().size());
  for (std::size_t i = 0; i < sets.size(); ++i) sets[i].set(pattern.bits()[i] ? 1 : 0);
  return CompiledMatcher(base, std::move(sets));
}

CompiledMatcher compile(const raster::GeneralizedPattern& pattern, unsigned base) {
  require_matcher_base(base);
  if (base <= pattern.max_digit()) {
    throw Error(ErrorCode::BaseTooSmall, "base " + std::to_string(base) + " cannot hold digit " +
                                             std::to_string(pattern.max_digit()));
  }
  DigitSet circle;
  DigitSet background;
  for (unsigned d : pattern.circle_set()) circle.set(d);
  for (unsigned d : pattern.background_set()) background.set(d);
  const auto& bits = pattern.shape().bits();
  std::vector<DigitSet> sets(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) sets[i] = bits[i] ? circle : background;
  return CompiledMatcher(base, std::move(sets));
}

CompiledMatcher compile_literal(std::span<const Digit> digits, unsigned base) {
  std::vector<DigitSet> sets(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) sets[i].set(digits[i]);
  return CompiledMatcher(base, std::move(sets));
}

Scanner::Scanner(const CompiledMatcher& matcher) : matcher_(&matcher) {
  if (!matcher.bit_parallel()) ring_.assign(matcher.length(), 0);
}

void Scanner::reset() {
  state_ = 0;
  head_ = 0;
  seen_ = 0;
}

std::optional<std::size_t> Scanner::feed(std::span<const Digit> digits) {
  const std::size_t len = matcher_->length();
  if (matcher_->bit_parallel()) {
    const std::uint64_t accept = std::uint64_t{1} << (len - 1);
    std::uint64_t state = state_;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      state = ((state << 1) | 1) & matcher_->shift_mask(digits[i]);
      if (state & accept) {
        state_ = state;
        return i;
      }
    }
    state_ = state;
    return std::nullopt;
  }

  // Sliding check over a ring holding the last `len` digits.
  for (std::size_t i = 0; i < digits.size(); ++i) {
    ring_[head_] = digits[i];
    head_ = head_ + 1 == len ? 0 : head_ + 1;
    if (++seen_ < len) continue;
    bool ok = true;
    for (std::size_t j = 0, slot = head_; j < len; ++j) {
      if (!matcher_->admits(j, ring_[slot])) {
        ok = false;
        break;
      }
      slot = slot + 1 == len ? 0 : slot + 1;
    }
    if (ok) return i;
  }
  return std::nullopt;
}

SearchResult find_first(digits::DigitStream& stream, const CompiledMatcher& matcher, std::uint64_t limit,
                        std::size_t context_width) {
  if (stream.base() != matcher.base()) {
    throw Error(ErrorCode::BaseMismatch, "stream base " + std::to_string(stream.base()) + " vs matcher base " +
                                             std::to_string(matcher.base()));
  }
  const std::size_t len = matcher.length();
  if (limit < len) {
    throw Error(ErrorCode::LimitTooSmall,
                "limit " + std::to_string(limit) + " shorter than window " + std::to_string(len));
  }
  if (stream.cursor() != 1) stream.seek(1);

  SearchResult result;
  result.limit = limit;
  Scanner scanner(matcher);
  // Most recent digits before the current block, enough for window + context.
  const std::size_t keep = len + context_width;
  std::vector<Digit> recent;
  std::uint64_t examined = 0;

  while (examined < limit) {
    auto take = static_cast<std::size_t>(std::min<std::uint64_t>(stream.block_size(), limit - examined));
    DigitBlock block = stream.pull(take);
    if (auto hit = scanner.feed(block.digits)) {
      std::uint64_t end = block.start_position + *hit;  // last window digit
      std::uint64_t anchor = end + 1 - len;
      recent.insert(recent.end(), block.digits.begin(), block.digits.begin() + static_cast<std::ptrdiff_t>(*hit + 1));
      std::uint64_t recent_start = end + 1 - recent.size();

      result.found = true;
      result.position = anchor;
      result.digits_examined = end;
      auto at = [&](std::uint64_t pos) { return recent.begin() + static_cast<std::ptrdiff_t>(pos - recent_start); };
      result.window = DigitBlock{block.base, anchor, std::vector<Digit>(at(anchor), at(end + 1))};
      std::uint64_t before_start = std::max<std::uint64_t>(recent_start, anchor > context_width ? anchor - context_width : 1);
      result.context_before = DigitBlock{block.base, before_start, std::vector<Digit>(at(before_start), at(anchor))};

      std::vector<Digit> after(block.digits.begin() + static_cast<std::ptrdiff_t>(*hit + 1), block.digits.end());
      if (after.size() < context_width) {
        DigitBlock more = stream.pull(context_width - after.size());
        after.insert(after.end(), more.digits.begin(), more.digits.end());
      }
      after.resize(context_width);
      result.context_after = DigitBlock{block.base, end + 1, std::move(after)};
      return result;
    }
    examined += block.size();
    recent.insert(recent.end(), block.digits.begin(), block.digits.end());
    if (recent.size() > keep) recent.erase(recent.begin(), recent.end() - static_cast<std::ptrdiff_t>(keep));
  }
  result.digits_examined = limit;
  return result;
}

SearchResult find_digit(digits::DigitStream& stream, unsigned digit, std::uint64_t limit, std::size_t context_width) {
  if (digit >= stream.base()) {
    throw Error(ErrorCode::DigitOutOfRange,
                "digit " + std::to_string(digit) + " not below base " + std::to_string(stream.base()));
  }
  const Digit d = static_cast<Digit>(digit);
  auto matcher = compile_literal(std::span<const Digit>(&d, 1), stream.base());
  return find_first(stream, matcher, limit, context_width);
}

std::optional<std::uint64_t> scan_block(const DigitBlock& block, const CompiledMatcher& matcher) {
  if (block.base != matcher.base()) throw Error(ErrorCode::BaseMismatch, "block and matcher bases differ");
  Scanner scanner(matcher);
  if (auto hit = scanner.feed(block.digits)) {
    return block.start_position + *hit + 1 - matcher.length();
  }
  return std::nullopt;
}

std::optional<std::uint64_t> scan_block_chunked(const DigitBlock& block, const CompiledMatcher& matcher,
                                                std::size_t chunks) {
  const std::size_t len = matcher.length();
  if (block.size() < len) return std::nullopt;
  const std::size_t anchors = block.size() - len + 1;
  chunks = std::clamp<std::size_t>(chunks, 1, anchors);
  const std::size_t span = (anchors + chunks - 1) / chunks;

  std::vector<std::future<std::optional<std::uint64_t>>> jobs;
  for (std::size_t first = 0; first < anchors; first += span) {
    std::size_t count = std::min(span, anchors - first);
    jobs.push_back(std::async(std::launch::async, [&, first, count] {
      // Anchors [first, first + count) need digits up to first + count + len - 1.
      return scan_block(block.slice(block.start_position + first, count + len - 1), matcher);
    }));
  }
  std::optional<std::uint64_t> best;
  for (auto& job : jobs) {
    auto hit = job.get();
    if (hit && (!best || *hit < *best)) best = hit;
  }
  return best;
}

SearchResult find_first_chunked(const ConstantSpec& constant, const CompiledMatcher& matcher, std::uint64_t limit,
                                std::size_t chunks, std::size_t context_width) {
  const std::size_t len = matcher.length();
  if (limit < len) throw Error(ErrorCode::LimitTooSmall, "limit shorter than window");
  const std::uint64_t anchors = limit - len + 1;
  chunks = static_cast<std::size_t>(std::clamp<std::uint64_t>(chunks, 1, anchors));
  const std::uint64_t span = (anchors + chunks - 1) / chunks;

  std::vector<std::future<std::optional<std::uint64_t>>> jobs;
  for (std::uint64_t first = 1; first <= anchors; first += span) {
    std::uint64_t count = std::min(span, anchors - first + 1);
    jobs.push_back(std::async(std::launch::async, [&, first, count] {
      auto stream = digits::open_stream(constant, matcher.base(), 4096);
      stream.seek(first);
      DigitBlock block = stream.pull(static_cast<std::size_t>(count + len - 1));
      return scan_block(block, matcher);
    }));
  }
  std::optional<std::uint64_t> best;
  for (auto& job : jobs) {
    auto hit = job.get();
    if (hit && (!best || *hit < *best)) best = hit;
  }

  SearchResult result;
  result.limit = limit;
  if (!best) {
    result.digits_examined = limit;
    return result;
  }
  auto ctx = fetch_context(constant, matcher.base(), *best, len, context_width);
  result.found = true;
  result.position = *best;
  result.digits_examined = *best + len - 1;
  result.window = std::move(ctx.window);
  result.context_before = std::move(ctx.before);
  result.context_after = std::move(ctx.after);
  return result;
}

BigDecimal expected_position(unsigned base, std::uint64_t window_length) {
  if (base < 2) throw Error(ErrorCode::BaseTooSmall, "base must be >= 2");
  const mpfr_prec_t precision = precision_for(window_length);
  Mpfr t(precision);
  mpfr_set_ui(t.get(), base, MPFR_RNDN);
  mpfr_log10(t.get(), t.get(), MPFR_RNDN);
  Mpfr len(precision);
  mpfr_set_uj(len.get(), window_length, MPFR_RNDN);
  mpfr_mul(t.get(), t.get(), len.get(), MPFR_RNDN);
  return pow10_of(t.get(), precision);
}

mpz_class class_frequency_gain_exact(const CompiledMatcher& matcher) {
  mpz_class product = 1;
  for (std::size_t i = 0; i < matcher.length(); ++i) product *= static_cast<unsigned long>(matcher.admissible(i).count());
  return product;
}

BigDecimal class_frequency_gain(const CompiledMatcher& matcher) {
  std::map<std::size_t, std::uint64_t> sizes;
  for (std::size_t i = 0; i < matcher.length(); ++i) ++sizes[matcher.admissible(i).count()];
  const mpfr_prec_t precision = precision_for(matcher.length() * 8);
  Mpfr total(precision);
  mpfr_set_zero(total.get(), 1);
  Mpfr term(precision);
  Mpfr count(precision);
  for (auto [size, times] : sizes) {
    mpfr_set_ui(term.get(), static_cast<unsigned long>(size), MPFR_RNDN);
    mpfr_log10(term.get(), term.get(), MPFR_RNDN);
    mpfr_set_uj(count.get(), times, MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), count.get(), MPFR_RNDN);
    mpfr_add(total.get(), total.get(), term.get(), MPFR_RNDN);
  }
  return pow10_of(total.get(), precision);
}

CostEstimate cost_estimate(const BigDecimal& expected_digits, double ns_per_digit) {
  if (expected_digits.mantissa <= 0.0) throw Error(ErrorCode::InvalidArgument, "expected digits must be > 0");
  if (!(ns_per_digit > 0.0)) throw Error(ErrorCode::InvalidArgument, "ns per digit must be > 0");
  BigDecimal ns = expected_digits * BigDecimal::from_double(ns_per_digit);
  CostEstimate out;
  out.expected_digits = expected_digits;
  out.cpu_seconds = ns / BigDecimal::from_double(1e9);
  out.cpu_years = ns / BigDecimal::from_double(kNanosecondsPerYear);
  out.universe_age_multiples = out.cpu_years / BigDecimal::from_double(kUniverseAgeYears);
  return out;
}

PrimeProductRoot prime_product_root(unsigned count) {
  PrimeProductRoot out;
  out.product = 1;
  digits::PrimeSieve primes;
  for (unsigned i = 0; i < count; ++i) out.product *= static_cast<unsigned long>(primes.next());
  mpz_sqrt(out.floor_root.get_mpz_t(), out.product.get_mpz_t());
  out.ceil_root = out.floor_root * out.floor_root == out.product ? out.floor_root : out.floor_root + 1;
  return out;
}

}  // namespace sagan::search
