#include "sagan/normality.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <future>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gmpxx.h>
#include <mpfr.h>

#include "sagan/digits.hpp"
#include "sagan/error.hpp"

namespace sagan::normality {

namespace {

using TailPolicy = boost::math::policies::policy<boost::math::policies::underflow_error<boost::math::policies::ignore_error>>;

std::string format_p(double p, bool underflow) {
  if (underflow) return "<1e-308";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", p);
  return buf;
}

// log10 of a positive rational, accurate well beyond double rounding of
// the mantissa.
double log10_rational(const mpq_class& value) {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
  mpfr_log10(x, x, MPFR_RNDN);
  double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

// m.mmmmm e E, rounded half up on the 6th significant digit.
std::string render_rational(const mpq_class& value, int significant) {
  if (value == 0) return "0";
  // Locate the decimal exponent exactly.
  long e = static_cast<long>(std::floor(log10_rational(value)));
  auto scaled_round = [&](long exponent) {
    mpz_class num = value.get_num();
    mpz_class den = value.get_den();
    long shift = significant - 1 - exponent;
    mpz_class p;
    if (shift >= 0) {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
      num *= p;
    } else {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
      den *= p;
    }
    mpz_class twice = (2 * num + den) / (2 * den);
    return twice;
  };
  mpz_class lower;
  mpz_ui_pow_ui(lower.get_mpz_t(), 10, static_cast<unsigned long>(significant - 1));
  mpz_class upper = lower * 10;
  mpz_class m = scaled_round(e);
  // Correct for log10 misplacing the exponent by one.
  if (m < lower) m = scaled_round(--e);
  if (m >= upper) m = scaled_round(++e);
  if (m >= upper) {
    m /= 10;
    ++e;
  }
  std::string digits = m.get_str();
  return digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(e);
}

std::string render_log10(double log10_value) {
  double e = std::floor(log10_value);
  double m = std::pow(10.0, log10_value - e);
  if (m >= 9.999995) {
    m /= 10.0;
    e += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5fe%.0f", m, e);
  return buf;
}

// ln n! by Stirling's formula; 0! = 1 exactly.
double stirling_ln_factorial(double n) {
  if (n == 0.0) return 0.0;
  return 0.5 * std::log(2.0 * M_PI * n) + n * std::log(n) - n;
}

}  // namespace

std::uint64_t KGramCounts::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::uint64_t KGramCounts::count(std::span<const Digit> gram) const {
  if (gram.size() != k) throw Error(ErrorCode::InvalidArgument, "gram length differs from k");
  std::size_t index = 0;
  for (Digit d : gram) {
    if (d >= base) throw Error(ErrorCode::InvalidDigit, "digit outside base");
    index = index * base + d;
  }
  return counts[index];
}

std::vector<Digit> KGramCounts::gram(std::size_t index) const {
  std::vector<Digit> out(k);
  for (std::size_t i = k; i-- > 0;) {
    out[i] = static_cast<Digit>(index % base);
    index /= base;
  }
  return out;
}

KGramCounts kgram_counts(const DigitBlock& digits, unsigned k) {
  require_base(digits.base);
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (static_cast<double>(k) * std::log2(static_cast<double>(digits.base)) > 24.0 + 1e-9) {
    throw Error(ErrorCode::KTooLarge, "base^k exceeds the 2^24 counting table");
  }
  if (digits.size() < k) throw Error(ErrorCode::BlockTooShort, "block shorter than k");
  std::size_t cells = 1;
  for (unsigned i = 0; i < k; ++i) cells *= digits.base;

  KGramCounts out{digits.base, k, digits.size(), std::vector<std::uint64_t>(cells, 0)};
  const auto& d = digits.digits;
  std::size_t index = 0;
  for (unsigned i = 0; i + 1 < k; ++i) index = index * digits.base + d[i];
  for (std::size_t i = k - 1; i < d.size(); ++i) {
    index = (index * digits.base + d[i]) % cells;
    ++out.counts[index];
  }
  return out;
}

double chi_square_upper_tail(double statistic, double degrees_of_freedom) {
  if (degrees_of_freedom <= 0.0) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be positive");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0, TailPolicy());
}

ChiSquare chi_square_uniform(const KGramCounts& counts, double min_expected) {
  const auto cells = static_cast<double>(counts.counts.size());
  const std::uint64_t n = counts.total();
  const double expected = static_cast<double>(n) / cells;
  if (counts.counts.size() < 2 || expected < min_expected) {
    throw Error(ErrorCode::TooFewSamples, std::to_string(n) + " windows over " +
                                              std::to_string(counts.counts.size()) + " cells");
  }
  // Sum (N - E)^2 / E = (sum N^2) * cells / n - n, kept in exact integers.
  mpz_class sum_sq = 0;
  for (auto c : counts.counts) {
    mpz_class cz(static_cast<unsigned long>(c));
    sum_sq += cz * cz;
  }
  mpq_class stat(sum_sq * static_cast<unsigned long>(counts.counts.size()), mpz_class(static_cast<unsigned long>(n)));
  stat -= mpz_class(static_cast<unsigned long>(n));
  ChiSquare out;
  out.statistic = stat.get_d();
  out.degrees_of_freedom = counts.counts.size() - 1;
  double p = chi_square_upper_tail(out.statistic, static_cast<double>(out.degrees_of_freedom));
  if (p < DBL_MIN) {
    out.p_value = 0.0;
    out.underflow = true;
  } else {
    out.p_value = std::min(1.0, p);
  }
  return out;
}

NormalityReport normality_scan(const DigitBlock& digits, const std::string& label, unsigned k_max,
                               double min_expected) {
  if (k_max == 0) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 1");
  NormalityReport report;
  report.constant = label;
  report.base = digits.base;
  report.length = digits.size();

  std::vector<std::future<KReport>> jobs;
  for (unsigned k = 1; k <= k_max; ++k) {
    jobs.push_back(std::async(std::launch::async, [&digits, k, min_expected] {
      KGramCounts counts = kgram_counts(digits, k);
      KReport row;
      row.k = k;
      row.cells = counts.counts.size();
      row.windows = counts.total();
      auto [lo, hi] = std::minmax_element(counts.counts.begin(), counts.counts.end());
      row.min_count = *lo;
      row.max_count = *hi;
      row.chi = chi_square_uniform(counts, min_expected);
      return row;
    }));
  }
  for (auto& job : jobs) report.rows.push_back(job.get());

  const KReport* worst = &report.rows.front();
  for (const auto& row : report.rows) {
    if (row.chi.p_value < worst->chi.p_value) worst = &row;
  }
  std::string verdict = "Finite-sample diagnostic over " + std::to_string(report.length) +
                        " digits, not a proof of normality. ";
  if (worst->chi.p_value < 1e-6) {
    verdict += "k-gram frequencies are far from uniform (smallest p " +
               format_p(worst->chi.p_value, worst->chi.underflow) + " at k=" + std::to_string(worst->k) + ").";
  } else {
    verdict += "No significant departure from uniform k-gram frequencies (smallest p " +
               format_p(worst->chi.p_value, worst->chi.underflow) + " at k=" + std::to_string(worst->k) + ").";
  }
  report.verdict = verdict;
  return report;
}

NormalityReport normality_scan(const ConstantSpec& constant, unsigned base, std::uint64_t length, unsigned k_max,
                               double min_expected) {
  if (length == 0) throw Error(ErrorCode::InvalidArgument, "length must be >= 1");
  DigitBlock block = digits::digits_in_base(constant, base, length);
  return normality_scan(block, constant.id(), k_max, min_expected);
}

EquidistributionProbability exact_equidistribution_probability(std::uint64_t trials, std::uint64_t categories,
                                                               std::uint64_t per_category) {
  if (trials == 0 || categories == 0 || per_category == 0) {
    throw Error(ErrorCode::InvalidArgument, "arguments must be positive");
  }
  if (categories > trials || trials / categories != per_category || trials % categories != 0) {
    throw Error(ErrorCode::MismatchedTotals, std::to_string(trials) + " != " + std::to_string(categories) + " * " +
                                                 std::to_string(per_category));
  }
  mpz_class numerator;
  mpz_fac_ui(numerator.get_mpz_t(), trials);
  mpz_class per_fact;
  mpz_fac_ui(per_fact.get_mpz_t(), per_category);
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), per_fact.get_mpz_t(), categories);
  mpz_class spread;
  mpz_ui_pow_ui(spread.get_mpz_t(), categories, trials);
  denominator *= spread;
  mpq_class value(numerator, denominator);
  value.canonicalize();

  EquidistributionProbability out;
  out.exact = render_rational(value, 6);
  out.exact_log10 = log10_rational(value);
  const double ln_stirling = stirling_ln_factorial(static_cast<double>(trials)) -
                             static_cast<double>(categories) *
                                 stirling_ln_factorial(static_cast<double>(per_category)) -
                             static_cast<double>(trials) * std::log(static_cast<double>(categories));
  out.stirling_log10 = ln_stirling / std::log(10.0);
  out.stirling = render_log10(out.stirling_log10);
  out.stirling_ratio = std::pow(10.0, out.stirling_log10 - out.exact_log10);
  return out;
}

}  // namespace sagan::normality
