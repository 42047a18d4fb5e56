#include <doctest.h>

#include <future>
#include <random>

#include "sagan/bbp.hpp"
#include "sagan/digits.hpp"
#include "sagan/error.hpp"
#include "support/oracles.hpp"

using namespace sagan;
using namespace sagan::bbp;

namespace {

std::vector<int> ints(const DigitBlock& b) { return {b.digits.begin(), b.digits.end()}; }

}  // namespace

TEST_CASE("formula shapes") {
  auto pi = pi_formula();
  CHECK(pi.base == 16);
  CHECK(pi.modulus == 8);
  CHECK(pi.terms.size() == 4);
  // k = 0 partial sum: 4 - 2/4 - 1/5 - 1/6 = 47/15.
  mpq_class partial = 0;
  for (const auto& t : pi.terms) partial += mpq_class(t.coefficient, t.offset);
  partial.canonicalize();
  CHECK(partial == mpq_class(47, 15));

  auto l2 = log2_formula();
  CHECK(l2.base == 2);
  // 64 terms already pin log 2 inside (0.693, 0.6932).
  mpq_class sum = 0;
  for (unsigned k = 0; k < 64; ++k) {
    for (const auto& t : l2.terms) {
      mpz_class pow2 = mpz_class(1) << k;
      sum += mpq_class(mpz_class(t.coefficient), pow2 * (l2.modulus * k + t.offset));
    }
  }
  sum.canonicalize();
  CHECK(sum > mpq_class(693, 1000));
  CHECK(sum < mpq_class(6932, 10000));

  BBPFormula dup{16, 8, {{1, 1}, {2, 1}}, ""};
  CHECK_THROWS_AS(dup.validate(), Error);
  BBPFormula range{16, 8, {{1, 9}}, ""};
  CHECK_THROWS_AS(range.validate(), Error);
}

TEST_CASE("evaluate matches the digit pipeline") {
  CHECK(ints(evaluate(pi_formula(), 8)) == std::vector<int>{2, 4, 3, 15, 6, 10, 8, 8});
  CHECK(evaluate(pi_formula(), 40) == digits::digits_in_base(ConstantSpec::pi(), 16, 40));
  CHECK(evaluate(pi_formula(), 500) == digits::digits_in_base(ConstantSpec::pi(), 16, 500));
  CHECK(evaluate(log2_formula(), 20) == digits::digits_in_base(ConstantSpec::log2(), 2, 20));
  CHECK(evaluate(log2_formula(), 16) == digits::digits_in_base(ConstantSpec::log2(), 2, 16));
  CHECK(evaluate(to_polynomial(pi_formula()), 300) == digits::digits_in_base(ConstantSpec::pi(), 16, 300));
  CHECK(evaluate(to_polynomial(log2_formula()), 300) == digits::digits_in_base(ConstantSpec::log2(), 2, 300));
}

TEST_CASE("evaluate a rational test series") {
  // sum_k 4^-k / 4 = 1/3.
  PolynomialFormula third{4, {1}, {4}};
  CHECK(ints(evaluate(third, 6)) == oracle::long_division(1, 3, 4, 6));
  // sum_k 2^-k (k + 1) / 12 = 1/3: p grows with k.
  PolynomialFormula linear{2, {1, 1}, {12}};
  CHECK(ints(evaluate(linear, 12)) == oracle::long_division(1, 3, 2, 12));
  // A value sitting exactly on a digit boundary (0.1 in base 10) can never be
  // separated from it by a truncated series.
  PolynomialFormula tenth{10, {9}, {100}};
  try {
    evaluate(tenth, 6);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionExhausted);
  }
  PolynomialFormula vanishing{2, {1}, {-3, 1}};
  CHECK_THROWS_AS(evaluate(vanishing, 4), Error);
}

TEST_CASE("digit extraction windows") {
  CHECK(ints(digit_extract(pi_formula(), 1, 8).block) == std::vector<int>{2, 4, 3, 15, 6, 10, 8, 8});
  auto hex = digits::digits_in_base(ConstantSpec::pi(), 16, 10007);
  CHECK(digit_extract(pi_formula(), 101, 4).block == hex.slice(101, 4));
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> positions{1, 2, 9, 10, 100, 1000, 9999, 10000};
  for (int i = 0; i < 150; ++i) positions.push_back(std::uniform_int_distribution<std::uint64_t>(1, 10000)(rng));
  for (auto p : positions) {
    CAPTURE(p);
    auto x = digit_extract(pi_formula(), p, 8);
    REQUIRE(x.block == hex.slice(p, 8));
    CHECK(x.block.start_position == p);
  }
  CHECK(ints(digit_extract(log2_formula(), 1, 1).block) == std::vector<int>{1});
  auto bin = digits::digits_in_base(ConstantSpec::log2(), 2, 3000);
  for (std::uint64_t p = 1; p <= 2990; p += 37) REQUIRE(digit_extract(log2_formula(), p, 8).block == bin.slice(p, 8));
}

TEST_CASE("hex digits expand to the binary expansion") {
  auto bin = digits::digits_in_base(ConstantSpec::pi(), 2, 4 * 520);
  for (std::uint64_t p = 1; p <= 512; p += 17) {
    auto hex = digit_extract(pi_formula(), p, 2).block;
    for (std::size_t i = 0; i < 2; ++i) {
      for (int b = 0; b < 4; ++b) {
        CHECK(((hex.digits[i] >> (3 - b)) & 1) == bin.at(4 * (p - 1 + i) + 1 + static_cast<std::uint64_t>(b)));
      }
    }
  }
}

TEST_CASE("extraction is independent of call order") {
  auto hex = digits::digits_in_base(ConstantSpec::pi(), 16, 3000);
  std::vector<std::future<Extraction>> jobs;
  for (int p = 2900; p >= 100; p -= 200) {
    jobs.push_back(std::async(std::launch::async, [p] { return digit_extract(pi_formula(), static_cast<std::uint64_t>(p), 8); }));
  }
  std::uint64_t p = 2900;
  for (auto& j : jobs) {
    auto x = j.get();
    CHECK(x.block == hex.slice(p, 8));
    CHECK(x.block == digit_extract(pi_formula(), p, 8).block);
    p -= 200;
  }
}

TEST_CASE("extraction arguments") {
  CHECK_THROWS_AS(digit_extract(pi_formula(), 0, 4), Error);
  CHECK_THROWS_AS(digit_extract(pi_formula(), 1, 0), Error);
  CHECK_THROWS_AS(digit_extract(pi_formula(), 1, 9), Error);
  CHECK(kGuardLevels[0] == 64);
  CHECK(kGuardLevels[2] == 256);
}
