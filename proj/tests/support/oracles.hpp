#pragma once

// Deliberately naive reference implementations used to check the library.
// They share no code with core/.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace oracle {

inline mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// floor(atan(1/x) * scale), error at most one unit per term.
inline mpz_class arctan_inverse(unsigned long x, const mpz_class& scale) {
  mpz_class sum = 0;
  mpz_class power = scale / x;  // scale / x^(2k+1)
  const unsigned long x2 = x * x;
  for (unsigned long k = 0; power != 0; ++k) {
    mpz_class term = power / (2 * k + 1);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power /= x2;
  }
  return sum;
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239), scaled by 10^digits (+ guard).
inline mpz_class machin_pi_scaled(unsigned long digits) {
  const unsigned long guard = 20;
  mpz_class scale = pow10(digits + guard);
  mpz_class pi = 16 * arctan_inverse(5, scale) - 4 * arctan_inverse(239, scale);
  return pi / pow10(guard);
}

// Fractional digits of value / scale in `base` by repeated multiplication.
inline std::vector<int> fraction_digits(mpz_class numerator, const mpz_class& scale, unsigned base, std::size_t count) {
  mpz_class frac = numerator % scale;
  std::vector<int> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    frac *= base;
    mpz_class d = frac / scale;
    out.push_back(static_cast<int>(d.get_si()));
    frac -= d * scale;
  }
  return out;
}

// Digits of pi in any base, from a Machin expansion with 30 spare decimals.
inline std::vector<int> pi_digits(unsigned base, std::size_t count) {
  auto decimals = static_cast<unsigned long>(static_cast<double>(count) * std::log10(static_cast<double>(base))) + 30;
  return fraction_digits(machin_pi_scaled(decimals), pow10(decimals), base, count);
}

// Schoolbook digit-pair square root of 2: returns the first `count`
// decimals of sqrt(2) - 1.
inline std::vector<int> sqrt2_decimals(std::size_t count) {
  mpz_class remainder = 2 - 1;  // after the leading digit 1
  mpz_class root = 1;
  std::vector<int> out;
  for (std::size_t i = 0; i < count; ++i) {
    remainder *= 100;  // bring down "00"
    int digit = 9;
    while (true) {
      mpz_class trial = (root * 20 + digit) * digit;
      if (trial <= remainder) {
        remainder -= trial;
        break;
      }
      --digit;
    }
    root = root * 10 + digit;
    out.push_back(digit);
  }
  return out;
}

// Long division of the fractional part of p/q (q > 0).
inline std::vector<int> long_division(long p, long q, unsigned base, std::size_t count) {
  long r = p % q;
  if (r < 0) r += q;
  std::vector<int> out;
  for (std::size_t i = 0; i < count; ++i) {
    r *= static_cast<long>(base);
    out.push_back(static_cast<int>(r / q));
    r %= q;
  }
  return out;
}

// sum_{k} 1/k! scaled; e - 2 fractional digits.
inline std::vector<int> e_digits(unsigned base, std::size_t count) {
  auto decimals = static_cast<unsigned long>(static_cast<double>(count) * std::log10(static_cast<double>(base))) + 30;
  mpz_class scale = pow10(decimals);
  mpz_class term = scale;
  mpz_class sum = 0;
  for (unsigned long k = 1; term != 0; ++k) {
    sum += term;
    term /= k;
  }
  return fraction_digits(sum, scale, base, count);
}

// log 2 from MPFR's constant, with a wide precision margin.
inline std::vector<int> log2_digits(unsigned base, std::size_t count) {
  const auto bits = static_cast<mpfr_prec_t>(static_cast<double>(count) * std::log2(static_cast<double>(base))) + 256;
  mpfr_t x;
  mpfr_init2(x, bits);
  mpfr_const_log2(x, MPFR_RNDD);
  mpfr_mul_2si(x, x, static_cast<long>(bits), MPFR_RNDD);
  mpz_class scaled;
  mpfr_get_z(scaled.get_mpz_t(), x, MPFR_RNDD);
  mpfr_clear(x);
  mpz_class scale = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
  return fraction_digits(scaled, scale, base, count);
}

// Champernowne digits in base b by writing integers one at a time.
inline std::vector<int> champernowne_digits(unsigned base, std::size_t count) {
  std::vector<int> out;
  for (unsigned long k = 1; out.size() < count; ++k) {
    std::vector<int> rev;
    for (unsigned long v = k; v > 0; v /= base) rev.push_back(static_cast<int>(v % base));
    for (auto it = rev.rbegin(); it != rev.rend() && out.size() < count; ++it) out.push_back(*it);
  }
  return out;
}

// First anchor (1-indexed) whose window matches the per-position sets.
inline long naive_find(const std::vector<int>& digits, const std::vector<std::set<int>>& sets) {
  if (sets.size() > digits.size()) return 0;
  for (std::size_t p = 0; p + sets.size() <= digits.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < sets.size() && ok; ++i) ok = sets[i].count(digits[p + i]) > 0;
    if (ok) return static_cast<long>(p) + 1;
  }
  return 0;
}

// Rasters on doubled coordinates: pixel (r, c) spans [2c-2, 2c] x [2r-2, 2r],
// circle center (n, n), radius n (all in half units).
inline std::vector<int> naive_raster(int n) {
  if (n == 1) return {1};
  std::vector<int> out;
  const long r2 = static_cast<long>(n) * n;
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      long x0 = 2 * c - 2, x1 = 2 * c, y0 = 2 * r - 2, y1 = 2 * r;
      auto clamp = [](long lo, long hi, long v) { return v < lo ? lo : (v > hi ? hi : v); };
      long nx = clamp(x0, x1, n) - n, ny = clamp(y0, y1, n) - n;
      long fx = std::max(std::labs(x0 - n), std::labs(x1 - n));
      long fy = std::max(std::labs(y0 - n), std::labs(y1 - n));
      long near = nx * nx + ny * ny, far = fx * fx + fy * fy;
      out.push_back(near <= r2 && r2 <= far ? 1 : 0);
    }
  }
  return out;
}

inline std::vector<int> center_raster(int n) {
  // Pixel center in half units: (2c - 1, 2r - 1).
  auto inside = [n](int r, int c) {
    if (r < 1 || c < 1 || r > n || c > n) return false;
    long dx = 2 * c - 1 - n, dy = 2 * r - 1 - n;
    return dx * dx + dy * dy <= static_cast<long>(n) * n;
  };
  std::vector<int> out;
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      bool ring = inside(r, c) && (!inside(r - 1, c) || !inside(r + 1, c) || !inside(r, c - 1) || !inside(r, c + 1));
      out.push_back(ring ? 1 : 0);
    }
  }
  return out;
}

struct BoardCounts {
  long crossed = 0;
  long interior = 0;
  long exterior = 0;
};

// 2n x 2n board, circle of diameter 2n - 1 at the center, doubled units:
// cell corners at even coordinates 0..4n, center (2n, 2n), radius 2n - 1.
inline BoardCounts chessboard(int n) {
  BoardCounts out;
  const long c0 = 2L * n, rad2 = (2L * n - 1) * (2L * n - 1);
  for (long i = 0; i < 2L * n; ++i) {
    for (long j = 0; j < 2L * n; ++j) {
      long xs[2] = {2 * i - c0, 2 * i + 2 - c0};
      long ys[2] = {2 * j - c0, 2 * j + 2 - c0};
      long far = 0;
      for (long x : xs)
        for (long y : ys) far = std::max(far, x * x + y * y);
      auto nearest = [](long a, long b) { return (a <= 0 && 0 <= b) ? 0L : std::min(std::labs(a), std::labs(b)); };
      long nx = nearest(xs[0], xs[1]), ny = nearest(ys[0], ys[1]);
      long near = nx * nx + ny * ny;
      if (far < rad2) {
        ++out.interior;
      } else if (near > rad2) {
        ++out.exterior;
      } else {
        ++out.crossed;
      }
    }
  }
  return out;
}

// Regularized upper incomplete gamma Q(a, x) by the power series of P at
// a working precision wide enough to absorb the cancellation.
inline double gamma_q(double a, double x) {
  if (x <= 0) return 1.0;
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(x * 1.4427 + 256);
  mpfr_t sum, term, t, ax, ln_pref;
  mpfr_inits2(prec, sum, term, t, ax, ln_pref, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(term, 1, MPFR_RNDN);
  mpfr_div_d(term, term, a, MPFR_RNDN);  // 1/a
  mpfr_set(sum, term, MPFR_RNDN);
  for (long k = 1; k < 1000000; ++k) {
    mpfr_mul_d(term, term, x, MPFR_RNDN);
    mpfr_div_d(term, term, a + static_cast<double>(k), MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    if (static_cast<double>(k) > x && mpfr_get_exp(term) < mpfr_get_exp(sum) - prec) break;
  }
  // P = x^a e^-x / Gamma(a) * sum
  mpfr_set_d(t, x, MPFR_RNDN);
  mpfr_log(ln_pref, t, MPFR_RNDN);
  mpfr_mul_d(ln_pref, ln_pref, a, MPFR_RNDN);
  mpfr_sub_d(ln_pref, ln_pref, x, MPFR_RNDN);
  mpfr_set_d(ax, a, MPFR_RNDN);
  mpfr_lngamma(ax, ax, MPFR_RNDN);
  mpfr_sub(ln_pref, ln_pref, ax, MPFR_RNDN);
  mpfr_exp(ln_pref, ln_pref, MPFR_RNDN);
  mpfr_mul(sum, sum, ln_pref, MPFR_RNDN);
  mpfr_ui_sub(sum, 1, sum, MPFR_RNDN);
  double q = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(sum, term, t, ax, ln_pref, static_cast<mpfr_ptr>(nullptr));
  return q;
}

// Leading `sig` decimal digits and exponent of base^length, exactly.
inline std::pair<std::string, long> power_leading_digits(unsigned base, unsigned long length, int sig) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), base, length);
  std::string s = v.get_str();
  std::string lead = s.substr(0, static_cast<std::size_t>(sig));
  lead.resize(static_cast<std::size_t>(sig), '0');
  return {lead, static_cast<long>(s.size()) - 1};
}

}  // namespace oracle
