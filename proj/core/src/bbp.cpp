#include "sagan/bbp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <gmpxx.h>

#include "radix.hpp"
#include "sagan/error.hpp"

namespace sagan::bbp {

namespace {

using u128 = unsigned __int128;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  std::uint64_t result = 1;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1) result = static_cast<std::uint64_t>(static_cast<u128>(result) * base % modulus);
    base = static_cast<std::uint64_t>(static_cast<u128>(base) * base % modulus);
    exponent >>= 1;
  }
  return result;
}

// Fraction in [0, 1) as `limbs` 64-bit words, most significant first;
// arithmetic wraps modulo 1.
class FixedFraction {
 public:
  explicit FixedFraction(std::size_t limbs) : words_(limbs, 0) {}

  // Adds floor(numerator * 2^bits / denominator) with numerator < denominator.
  void add_ratio(std::uint64_t numerator, std::uint64_t denominator) {
    std::uint64_t rem = numerator;
    std::uint64_t carry = 0;
    // Produce quotient limbs most significant first, then add from the end.
    scratch_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      u128 cur = static_cast<u128>(rem) << 64;
      scratch_[i] = static_cast<std::uint64_t>(cur / denominator);
      rem = static_cast<std::uint64_t>(cur % denominator);
    }
    for (std::size_t i = words_.size(); i-- > 0;) {
      u128 sum = static_cast<u128>(words_[i]) + scratch_[i] + carry;
      words_[i] = static_cast<std::uint64_t>(sum);
      carry = static_cast<std::uint64_t>(sum >> 64);
    }
  }

  mpz_class to_mpz() const {
    mpz_class out = 0;
    for (std::uint64_t w : words_) {
      out <<= 64;
      out += mpz_class(static_cast<unsigned long>(w));
    }
    return out;
  }

  std::size_t bits() const { return words_.size() * 64; }

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> scratch_;
};

std::optional<std::vector<Digit>> window_digits(const mpz_class& fraction, std::size_t fraction_bits,
                                                unsigned base, unsigned count) {
  mpz_class num = fraction * detail::pow_ui(base, count);
  mpz_class digits_value = num >> static_cast<mp_bitcnt_t>(fraction_bits);
  return detail::to_digits(digits_value, base, count);
}

std::optional<std::vector<Digit>> try_extract(const BBPFormula& f, std::uint64_t position, unsigned count,
                                              unsigned guard) {
  const double window_bits = std::ceil(count * std::log2(static_cast<double>(f.base)));
  const std::size_t limbs = (static_cast<std::size_t>(window_bits) + guard + 63) / 64;
  FixedFraction acc(limbs);
  const std::size_t frac_bits = acc.bits();

  // frac(base^(position-1) * alpha): head k < position with modular powers.
  const std::uint64_t shift = position - 1;
  std::uint64_t error_units = 0;
  for (std::uint64_t k = 0; k <= shift; ++k) {
    for (const auto& term : f.terms) {
      std::uint64_t d = static_cast<std::uint64_t>(f.modulus) * k + term.offset;
      auto c = static_cast<std::int64_t>(static_cast<std::int64_t>(term.coefficient % static_cast<std::int64_t>(d) +
                                                                   static_cast<std::int64_t>(d)) %
                                         static_cast<std::int64_t>(d));
      std::uint64_t r = static_cast<std::uint64_t>(
          static_cast<u128>(static_cast<std::uint64_t>(c)) * pow_mod(f.base, shift - k, d) % d);
      if (r != 0) acc.add_ratio(r, d);
      ++error_units;
    }
  }

  // Tail k > shift: base^-(k - shift) * c / d, done in mpz.
  mpz_class frac = acc.to_mpz();
  const mpz_class one = mpz_class(1) << static_cast<mp_bitcnt_t>(frac_bits);
  std::uint64_t abs_coeff_sum = 0;
  for (const auto& term : f.terms) abs_coeff_sum += static_cast<std::uint64_t>(std::llabs(term.coefficient));
  mpz_class base_power = f.base;
  for (std::uint64_t k = shift + 1;; ++k) {
    // Remaining terms from k on are below abs_coeff_sum * 2^bits / base^(k-shift)
    // * base/(base-1) units; stop once that is under one unit.
    if (mpz_class(static_cast<unsigned long>(abs_coeff_sum)) * one < base_power) {
      error_units += 2;
      break;
    }
    for (const auto& term : f.terms) {
      mpz_class d = base_power * (static_cast<unsigned long>(f.modulus) * k + term.offset);
      mpz_class q = mpz_class(static_cast<unsigned long>(std::llabs(term.coefficient))) * one / d;
      if (term.coefficient >= 0) {
        frac += q;
      } else {
        frac -= q;
      }
      ++error_units;
    }
    base_power *= f.base;
  }
  frac %= one;
  if (frac < 0) frac += one;

  // True value within error_units of frac (mod 1).
  mpz_class lo = frac - error_units;
  mpz_class hi = frac + error_units;
  if (lo < 0 || hi >= one) return std::nullopt;
  auto lo_digits = window_digits(lo, frac_bits, f.base, count);
  auto hi_digits = window_digits(hi, frac_bits, f.base, count);
  if (*lo_digits != *hi_digits) return std::nullopt;
  return lo_digits;
}

std::int64_t eval_poly(const std::vector<std::int64_t>& coeffs, std::int64_t k, mpz_class& out) {
  out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    out *= k;
    out += static_cast<long>(coeffs[i]);
  }
  return 0;
}

}  // namespace

void BBPFormula::validate() const {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "formula base must be >= 2");
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "formula needs at least one term");
  std::set<std::uint32_t> offsets;
  for (const auto& t : terms) {
    if (t.offset < 1 || t.offset > modulus) throw Error(ErrorCode::InvalidArgument, "offset outside [1, modulus]");
    if (!offsets.insert(t.offset).second) throw Error(ErrorCode::InvalidArgument, "duplicate offset");
  }
}

BBPFormula pi_formula() {
  return {16, 8, {{4, 1}, {-2, 4}, {-1, 5}, {-1, 6}}, "pi = sum 16^-k (4/(8k+1) - 2/(8k+4) - 1/(8k+5) - 1/(8k+6))"};
}

BBPFormula log2_formula() { return {2, 2, {{1, 2}}, "log 2 = sum 2^-k / (2k+2)"}; }

PolynomialFormula to_polynomial(const BBPFormula& formula) {
  formula.validate();
  // q(k) = prod_j (m k + j); p(k) = sum_j c_j prod_{i != j} (m k + i).
  auto multiply = [](const std::vector<std::int64_t>& a, std::int64_t slope, std::int64_t constant) {
    std::vector<std::int64_t> out(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] += a[i] * constant;
      out[i + 1] += a[i] * slope;
    }
    return out;
  };
  PolynomialFormula out;
  out.base = formula.base;
  out.denominator = {1};
  for (const auto& t : formula.terms) out.denominator = multiply(out.denominator, formula.modulus, t.offset);
  out.numerator.assign(formula.terms.size(), 0);
  for (std::size_t j = 0; j < formula.terms.size(); ++j) {
    std::vector<std::int64_t> part = {formula.terms[j].coefficient};
    for (std::size_t i = 0; i < formula.terms.size(); ++i) {
      if (i != j) part = multiply(part, formula.modulus, formula.terms[i].offset);
    }
    for (std::size_t i = 0; i < part.size(); ++i) out.numerator[i] += part[i];
  }
  return out;
}

Extraction digit_extract(const BBPFormula& formula, std::uint64_t position, unsigned count) {
  formula.validate();
  if (position < 1) throw Error(ErrorCode::InvalidArgument, "positions start at 1");
  if (count < 1 || count > kMaxExtractCount) {
    throw Error(ErrorCode::InvalidArgument, "extract count must be in [1, 8]");
  }
  for (unsigned guard : kGuardLevels) {
    if (auto digits = try_extract(formula, position, count, guard)) {
      return {DigitBlock{formula.base, position, std::move(*digits)}, guard};
    }
  }
  throw Error(ErrorCode::CarryAmbiguity,
              "digits at position " + std::to_string(position) + " unresolved at 256 guard bits");
}

DigitBlock evaluate(const BBPFormula& formula, std::size_t digit_count) {
  formula.validate();
  if (digit_count == 0) throw Error(ErrorCode::InvalidArgument, "digit count must be >= 1");
  const unsigned b = formula.base;
  std::uint64_t abs_coeff_sum = 0;
  for (const auto& t : formula.terms) abs_coeff_sum += static_cast<std::uint64_t>(std::llabs(t.coefficient));

  std::size_t guard = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(digit_count) + 64.0) /
                                                         std::log(static_cast<double>(b)))) + 4;
  for (int attempt = 0; attempt < 3; ++attempt, guard *= 2) {
    const std::size_t scale_digits = digit_count + guard;
    const mpz_class scale = detail::pow_ui(b, scale_digits);
    mpz_class acc = 0;
    std::uint64_t error_units = 0;
    // Terms k <= scale_digits have integral base^(scale_digits - k).
    for (std::size_t k = 0; k <= scale_digits; ++k) {
      mpz_class weight = detail::pow_ui(b, scale_digits - k);
      for (const auto& t : formula.terms) {
        mpz_class num = weight * static_cast<long>(t.coefficient);
        mpz_class q;
        mpz_class d(static_cast<unsigned long>(formula.modulus) * k + t.offset);
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
        acc += q;
        ++error_units;
      }
    }
    // Tail below abs_coeff_sum * sum_{t>=1} base^-t <= abs_coeff_sum units.
    error_units += abs_coeff_sum + 1;
    detail::Enclosure enclosure{acc - error_units, acc + error_units, scale};
    if (auto digits = detail::digits_from_enclosure(enclosure, b, digit_count)) {
      return DigitBlock{b, 1, std::move(*digits)};
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "series evaluation did not settle");
}

DigitBlock evaluate(const PolynomialFormula& formula, std::size_t digit_count) {
  if (formula.base < 2) throw Error(ErrorCode::InvalidArgument, "formula base must be >= 2");
  if (digit_count == 0) throw Error(ErrorCode::InvalidArgument, "digit count must be >= 1");
  if (formula.denominator.empty() || formula.denominator.back() == 0) {
    throw Error(ErrorCode::InvalidArgument, "denominator needs a non-zero leading coefficient");
  }
  const unsigned b = formula.base;
  const std::size_t deg_p = formula.numerator.empty() ? 0 : formula.numerator.size() - 1;

  // Cauchy bound on the roots of q: beyond it q(k) != 0.
  double cauchy = 0.0;
  for (std::size_t i = 0; i + 1 < formula.denominator.size(); ++i) {
    cauchy = std::max(cauchy, std::fabs(static_cast<double>(formula.denominator[i]) /
                                        static_cast<double>(formula.denominator.back())));
  }
  const auto min_terms = static_cast<std::size_t>(std::ceil(cauchy)) + 2 + 2 * deg_p;

  auto abs_poly = [&](std::size_t k) {
    mpz_class out = 0;
    for (std::size_t i = formula.numerator.size(); i-- > 0;) {
      out *= static_cast<unsigned long>(k);
      out += static_cast<unsigned long>(std::llabs(formula.numerator[i]));
    }
    return out;
  };

  std::size_t guard = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(digit_count) + 64.0) /
                                                         std::log(static_cast<double>(b)))) + 4;
  for (int attempt = 0; attempt < 3; ++attempt, guard *= 2) {
    const std::size_t scale_digits = digit_count + guard;
    const mpz_class scale = detail::pow_ui(b, scale_digits);
    // Stop at K once 8 * |p|(K) * scale < base^K: with K >= 2 deg p the
    // tail ratio is below (1 + 1/K)^deg / base <= e^(1/2) / base, so the
    // whole tail is under 8 |p|(K) base^-K.
    std::size_t terms = std::max(min_terms, scale_digits);
    while (8 * abs_poly(terms) * scale >= detail::pow_ui(b, terms)) terms += 8;

    mpz_class acc = 0;
    mpz_class p_val;
    mpz_class q_val;
    for (std::size_t k = 0; k < terms; ++k) {
      eval_poly(formula.numerator, static_cast<std::int64_t>(k), p_val);
      eval_poly(formula.denominator, static_cast<std::int64_t>(k), q_val);
      if (q_val == 0) throw Error(ErrorCode::InvalidArgument, "denominator vanishes at k = " + std::to_string(k));
      mpz_class num = p_val * scale;
      mpz_class den = q_val * detail::pow_ui(b, k);
      if (den < 0) {
        num = -num;
        den = -den;
      }
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      acc += q;
    }
    mpz_class slack = mpz_class(static_cast<unsigned long>(terms)) + 2;
    detail::Enclosure enclosure{acc - slack, acc + slack, scale};
    if (auto digits = detail::digits_from_enclosure(enclosure, b, digit_count)) {
      return DigitBlock{b, 1, std::move(*digits)};
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "series evaluation did not settle");
}

}  // namespace sagan::bbp
