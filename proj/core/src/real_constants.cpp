#include "real_constants.hpp"

#include <cmath>

#include "sagan/error.hpp"

namespace sagan::detail {

namespace {

// Chudnovsky series, binary splitting over [a, b).
struct ChudnovskyTriple {
  mpz_class p;
  mpz_class q;
  mpz_class t;
};

const mpz_class& c3_over_24() {
  static const mpz_class value("10939058860032000");
  return value;
}

ChudnovskyTriple chudnovsky(unsigned long a, unsigned long b) {
  if (b - a == 1) {
    ChudnovskyTriple out;
    if (a == 0) {
      out.p = 1;
      out.q = 1;
    } else {
      out.p = mpz_class(6 * a - 5) * (2 * a - 1) * (6 * a - 1);
      out.q = mpz_class(a) * a * a * c3_over_24();
    }
    out.t = out.p * (mpz_class(545140134) * a + 13591409);
    if (a & 1) out.t = -out.t;
    return out;
  }
  unsigned long m = a + (b - a) / 2;
  ChudnovskyTriple left = chudnovsky(a, m);
  ChudnovskyTriple right = chudnovsky(m, b);
  ChudnovskyTriple out;
  out.p = left.p * right.p;
  out.q = left.q * right.q;
  out.t = right.q * left.t + left.p * right.t;
  return out;
}

Enclosure enclose_pi(std::size_t bits) {
  // Each term shrinks by a factor of about 151931373056000 (~2^47.1).
  unsigned long terms = static_cast<unsigned long>((bits + 64) / 47 + 2);
  ChudnovskyTriple s = chudnovsky(0, terms);

  mpz_class root;
  mpz_class radicand = mpz_class(10005) << static_cast<mp_bitcnt_t>(2 * bits);
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());

  mpz_class num = mpz_class(426880) * root * s.q;
  mpz_class approx;
  mpz_fdiv_q(approx.get_mpz_t(), num.get_mpz_t(), s.t.get_mpz_t());

  // Square root and division truncation contribute < 1 unit each; the
  // series tail < 2^-bits relative.
  constexpr long kSlack = 4;
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  return {approx - kSlack, approx + kSlack, scale};
}

// sum_{k} 1/k! over [a, b): value p/q with q = prod max(k, 1).
struct Pair {
  mpz_class p;
  mpz_class q;
};

Pair exp_series(unsigned long a, unsigned long b) {
  if (b - a == 1) return {1, a == 0 ? 1 : a};
  unsigned long m = a + (b - a) / 2;
  Pair left = exp_series(a, m);
  Pair right = exp_series(m, b);
  return {left.p * right.q + right.p, left.q * right.q};
}

Enclosure enclose_e(std::size_t bits) {
  // Tail after n terms is below 2/n!.
  unsigned long terms = 2;
  double log2_factorial = 0.0;
  while (log2_factorial < static_cast<double>(bits) + 8.0) {
    log2_factorial += std::log2(static_cast<double>(terms));
    ++terms;
  }
  Pair s = exp_series(0, terms);
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  mpz_class approx;
  mpz_class num = s.p * scale;
  mpz_fdiv_q(approx.get_mpz_t(), num.get_mpz_t(), s.q.get_mpz_t());
  return {approx - 2, approx + 2, scale};
}

// sum_k x^k / (2k + 1) with x = 1/m^2, binary splitting over [a, b).
// Value = t / (b * q).
struct AtanhTriple {
  mpz_class q;
  mpz_class b;
  mpz_class t;
};

AtanhTriple atanh_series(unsigned long a, unsigned long b, unsigned long m_squared) {
  if (b - a == 1) {
    AtanhTriple out;
    out.q = a == 0 ? 1 : m_squared;
    out.b = 2 * a + 1;
    out.t = 1;
    return out;
  }
  unsigned long mid = a + (b - a) / 2;
  AtanhTriple left = atanh_series(a, mid, m_squared);
  AtanhTriple right = atanh_series(mid, b, m_squared);
  AtanhTriple out;
  out.q = left.q * right.q;
  out.b = left.b * right.b;
  out.t = right.b * right.q * left.t + left.b * right.t;
  return out;
}

Enclosure enclose_log2(std::size_t bits) {
  // log 2 = 2 atanh(1/3) = (2/3) sum_k 9^-k / (2k + 1).
  unsigned long terms = static_cast<unsigned long>(static_cast<double>(bits + 16) / std::log2(9.0)) + 2;
  AtanhTriple s = atanh_series(0, terms, 9);
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  mpz_class num = 2 * s.t * scale;
  mpz_class den = 3 * s.b * s.q;
  mpz_class approx;
  mpz_fdiv_q(approx.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return {approx - 2, approx + 2, scale};
}

Enclosure enclose_sqrt2(std::size_t bits) {
  mpz_class radicand = mpz_class(2) << static_cast<mp_bitcnt_t>(2 * bits);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  return {root, root + 1, scale};
}

}  // namespace

bool is_series_constant(ConstantKind kind) {
  return kind == ConstantKind::Pi || kind == ConstantKind::Sqrt2 || kind == ConstantKind::Log2 ||
         kind == ConstantKind::E;
}

Enclosure enclose_real(ConstantKind kind, std::size_t bits) {
  switch (kind) {
    case ConstantKind::Pi: return enclose_pi(bits);
    case ConstantKind::Sqrt2: return enclose_sqrt2(bits);
    case ConstantKind::Log2: return enclose_log2(bits);
    case ConstantKind::E: return enclose_e(bits);
    default: break;
  }
  throw Error(ErrorCode::UnsupportedConstant, "not a series constant");
}

}  // namespace sagan::detail
