#include "sagan/constant.hpp"

#include <charconv>
#include <numeric>

#include "sagan/error.hpp"

namespace sagan {

namespace {

template <typename T>
bool parse_int(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

ConstantSpec ConstantSpec::rational(std::int64_t p, std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::UnsupportedConstant, "rational denominator must be >= 1");
  ConstantSpec spec{ConstantKind::Rational};
  spec.numerator = p;
  spec.denominator = q;
  return spec;
}

ConstantSpec ConstantSpec::champernowne(unsigned base) {
  if (base < 2 || base > 256) {
    throw Error(ErrorCode::UnsupportedConstant, "Champernowne base outside [2, 256]");
  }
  ConstantSpec spec{ConstantKind::Champernowne};
  spec.concat_base = base;
  return spec;
}

std::string ConstantSpec::id() const {
  switch (kind) {
    case ConstantKind::Pi: return "pi";
    case ConstantKind::Sqrt2: return "sqrt2";
    case ConstantKind::Log2: return "log2";
    case ConstantKind::E: return "e";
    case ConstantKind::Rational:
      return "rational:" + std::to_string(numerator) + "/" + std::to_string(denominator);
    case ConstantKind::Champernowne: return "champernowne" + std::to_string(concat_base);
    case ConstantKind::CopelandErdos: return "copeland-erdos";
    case ConstantKind::FibonacciConcat: return "fibonacci-concat";
    case ConstantKind::FibonacciCFrac: return "fibonacci-cfrac";
  }
  return "?";
}

ConstantSpec ConstantSpec::parse(std::string_view id) {
  if (id == "pi") return pi();
  if (id == "sqrt2") return sqrt2();
  if (id == "log2") return log2();
  if (id == "e") return e();
  if (id == "copeland-erdos") return copeland_erdos();
  if (id == "fibonacci-concat") return fibonacci_concat();
  if (id == "fibonacci-cfrac") return fibonacci_cfrac();

  constexpr std::string_view kChamp = "champernowne";
  if (id.starts_with(kChamp)) {
    unsigned base = 0;
    if (!parse_int(id.substr(kChamp.size()), base)) {
      throw Error(ErrorCode::UnsupportedConstant, "bad Champernowne base in '" + std::string(id) + "'");
    }
    return champernowne(base);
  }

  constexpr std::string_view kRational = "rational:";
  if (id.starts_with(kRational)) {
    auto body = id.substr(kRational.size());
    auto slash = body.find('/');
    std::int64_t p = 0;
    std::int64_t q = 1;
    bool ok = slash == std::string_view::npos
                  ? parse_int(body, p)
                  : parse_int(body.substr(0, slash), p) && parse_int(body.substr(slash + 1), q);
    if (!ok) throw Error(ErrorCode::UnsupportedConstant, "bad rational '" + std::string(id) + "'");
    return rational(p, q);
  }

  throw Error(ErrorCode::UnsupportedConstant, "unknown constant '" + std::string(id) + "'");
}

unsigned ConstantSpec::native_base() const {
  switch (kind) {
    case ConstantKind::Champernowne: return concat_base;
    case ConstantKind::CopelandErdos:
    case ConstantKind::FibonacciConcat: return 10;
    default: return 0;
  }
}

}  // namespace sagan
