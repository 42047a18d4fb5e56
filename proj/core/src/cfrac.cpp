#include <memory>

#include "radix.hpp"
#include "sagan/digits.hpp"
#include "sagan/error.hpp"

namespace sagan::digits {

namespace {

std::vector<Digit> exact_fraction_digits(const mpz_class& p, const mpz_class& q, unsigned base,
                                         std::size_t count) {
  mpz_class scale = detail::pow_ui(base, count);
  mpz_class num = p * scale;
  mpz_class full;
  mpz_fdiv_q(full.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  mpz_class frac;
  mpz_fdiv_r(frac.get_mpz_t(), full.get_mpz_t(), scale.get_mpz_t());
  return detail::to_digits(frac, base, count);
}

}  // namespace

CoefficientSource fibonacci_coefficients() {
  auto cache = std::make_shared<std::vector<mpz_class>>(std::vector<mpz_class>{0, 1});
  return [cache](std::size_t index) -> std::optional<mpz_class> {
    while (cache->size() <= index) {
      std::size_t n = cache->size();
      cache->push_back((*cache)[n - 1] + (*cache)[n - 2]);
    }
    return (*cache)[index];
  };
}

CoefficientSource finite_coefficients(std::vector<mpz_class> coefficients) {
  auto shared = std::make_shared<std::vector<mpz_class>>(std::move(coefficients));
  return [shared](std::size_t index) -> std::optional<mpz_class> {
    if (index >= shared->size()) return std::nullopt;
    return (*shared)[index];
  };
}

CfracEvaluation cfrac_evaluate(const CoefficientSource& coefficients, unsigned base, std::size_t count,
                               std::size_t min_depth, std::size_t max_depth) {
  require_base(base);
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "digit count must be >= 1");

  // Convergents h_i / k_i; the value lies between consecutive convergents.
  // Seeds h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0.
  mpz_class h_prev = 0;
  mpz_class k_prev = 1;
  mpz_class h = 1;
  mpz_class k = 0;
  mpz_class scale = detail::pow_ui(base, count);
  // Required interval width: base^-(count + 2).
  mpz_class width_bound = scale * base * base;

  std::size_t depth = 0;
  bool have_convergent = false;
  for (;;) {
    if (depth >= max_depth) {
      throw Error(ErrorCode::PrecisionExhausted,
                  "continued fraction did not settle within " + std::to_string(max_depth) + " terms");
    }
    std::optional<mpz_class> a = coefficients(depth);
    if (!a) {
      if (!have_convergent) throw Error(ErrorCode::InvalidArgument, "empty continued fraction");
      // Finite expansion: the last convergent is the exact value.
      return {DigitBlock{base, 1, exact_fraction_digits(h, k, base, count)}, depth, mpq_class(0)};
    }
    if (depth > 0 && *a <= 0) {
      throw Error(ErrorCode::NonPositiveCoefficient,
                  "coefficient a" + std::to_string(depth) + " = " + a->get_str() + " is not positive");
    }
    mpz_class h_next = *a * h + h_prev;
    mpz_class k_next = *a * k + k_prev;
    ++depth;

    if (have_convergent && depth >= min_depth) {
      // |h/k - h_next/k_next| = 1 / (k * k_next).
      mpz_class denom = k * k_next;
      if (denom > width_bound) {
        mpz_class lo_num = h * scale;
        mpz_class hi_num = h_next * scale;
        mpz_class lo;
        mpz_class hi;
        mpz_fdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), k.get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), k_next.get_mpz_t());
        if (lo == hi) {
          mpz_class frac;
          mpz_fdiv_r(frac.get_mpz_t(), lo.get_mpz_t(), scale.get_mpz_t());
          mpq_class width(1, denom);
          width.canonicalize();
          return {DigitBlock{base, 1, detail::to_digits(frac, base, count)}, depth, width};
        }
      }
    }

    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
    have_convergent = true;
  }
}

DigitBlock cfrac_digits(const CoefficientSource& coefficients, unsigned base, std::size_t count) {
  return cfrac_evaluate(coefficients, base, count).block;
}

}  // namespace sagan::digits
