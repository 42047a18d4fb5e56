#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sagan {

enum class ConstantKind {
  Pi,
  Sqrt2,
  Log2,
  E,
  Rational,
  Champernowne,
  CopelandErdos,
  FibonacciConcat,
  FibonacciCFrac,
};

// Names a computable real. Only the fields relevant to `kind` are read.
struct ConstantSpec {
  ConstantKind kind = ConstantKind::Pi;
  std::int64_t numerator = 0;    // Rational
  std::int64_t denominator = 1;  // Rational, >= 1
  unsigned concat_base = 10;     // Champernowne

  static ConstantSpec pi() { return {ConstantKind::Pi}; }
  static ConstantSpec sqrt2() { return {ConstantKind::Sqrt2}; }
  static ConstantSpec log2() { return {ConstantKind::Log2}; }
  static ConstantSpec e() { return {ConstantKind::E}; }
  static ConstantSpec rational(std::int64_t p, std::int64_t q);
  static ConstantSpec champernowne(unsigned base);
  static ConstantSpec copeland_erdos() { return {ConstantKind::CopelandErdos}; }
  static ConstantSpec fibonacci_concat() { return {ConstantKind::FibonacciConcat}; }
  static ConstantSpec fibonacci_cfrac() { return {ConstantKind::FibonacciCFrac}; }

  // Stable identifier used by the CLI and the digit cache, e.g. "pi",
  // "sqrt2", "champernowne10", "rational:1/3".
  std::string id() const;

  // Parses an identifier produced by id(). Throws UnsupportedConstant.
  static ConstantSpec parse(std::string_view id);

  // Base whose expansion is defined by digit concatenation (Champernowne,
  // Copeland-Erdos, Fibonacci concatenation); 0 for everything else.
  unsigned native_base() const;

  bool operator==(const ConstantSpec&) const = default;
};

}  // namespace sagan
