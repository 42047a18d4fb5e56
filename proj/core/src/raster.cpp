#include "sagan/raster.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <gmpxx.h>

#include "sagan/error.hpp"

namespace sagan::raster {

namespace {

using i128 = __int128;

constexpr int kMaxSide = 1 << 14;
constexpr std::int64_t kMaxRationalPart = std::int64_t{1} << 30;

void require_side(int n) {
  if (n < 1 || n > kMaxSide) {
    throw Error(ErrorCode::InvalidArgument, "raster side " + std::to_string(n) + " outside [1, 16384]");
  }
}

void require_rational(const Rational& r) {
  if (r.den < 1 || r.num < 0 || r.num > kMaxRationalPart || r.den > kMaxRationalPart) {
    throw Error(ErrorCode::InvalidArgument, "rational " + r.str() + " outside supported range");
  }
}

i128 sq(i128 v) { return v * v; }

// Distance bounds from a point to an axis-aligned interval, per axis.
i128 near_gap(i128 lo, i128 hi, i128 p) {
  if (p < lo) return lo - p;
  if (p > hi) return p - hi;
  return 0;
}

i128 far_gap(i128 lo, i128 hi, i128 p) { return std::max(p - lo, hi - p); }

std::vector<std::uint8_t> boundary_ring(const std::vector<std::uint8_t>& inside, int width, int height) {
  std::vector<std::uint8_t> out(inside.size(), 0);
  auto in = [&](int row, int col) {
    if (row < 0 || col < 0 || row >= height || col >= width) return false;
    return inside[static_cast<std::size_t>(row * width + col)] != 0;
  };
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      if (!in(row, col)) continue;
      bool edge = !in(row - 1, col) || !in(row + 1, col) || !in(row, col - 1) || !in(row, col + 1);
      out[static_cast<std::size_t>(row * width + col)] = edge ? 1 : 0;
    }
  }
  return out;
}

template <typename T>
bool parse_int(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::NaiveCrossing ? "naive" : "center";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "naive") return Scheme::NaiveCrossing;
  if (name == "center") return Scheme::CenterBoundary;
  throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

Rational Rational::parse(std::string_view text) {
  Rational out;
  auto slash = text.find('/');
  auto dot = text.find('.');
  bool ok = false;
  if (slash != std::string_view::npos) {
    ok = parse_int(text.substr(0, slash), out.num) && parse_int(text.substr(slash + 1), out.den);
  } else if (dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string_view frac = text.substr(dot + 1);
    digits += frac;
    out.den = 1;
    for (std::size_t i = 0; i < frac.size() && i < 9; ++i) out.den *= 10;
    ok = frac.size() <= 9 && parse_int(std::string_view(digits), out.num);
  } else {
    ok = parse_int(text, out.num);
  }
  if (!ok || out.den < 1) throw Error(ErrorCode::InvalidArgument, "bad rational '" + std::string(text) + "'");
  std::int64_t g = std::gcd(out.num, out.den);
  if (g > 1) {
    out.num /= g;
    out.den /= g;
  }
  require_rational(out);
  return out;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

RasterPattern::RasterPattern(int n, Scheme scheme, std::vector<std::uint8_t> bits)
    : n_(n), scheme_(scheme), bits_(std::move(bits)) {
  require_side(n);
  if (bits_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "raster needs exactly n^2 bits");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t RasterPattern::ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

std::string RasterPattern::flat() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ? '1' : '0';
  return out;
}

std::string RasterPattern::ascii(bool frame) const {
  std::string out;
  int side = frame ? n_ + 2 : n_;
  std::string blank(static_cast<std::size_t>(side), '.');
  if (frame) out += blank + "\n";
  for (int row = 1; row <= n_; ++row) {
    if (frame) out.push_back('.');
    for (int col = 1; col <= n_; ++col) out.push_back(bit(row, col) ? '#' : '.');
    if (frame) out.push_back('.');
    out.push_back('\n');
  }
  if (frame) out += blank + "\n";
  return out;
}

std::string Bitmap::ascii() const {
  std::string out;
  for (int row = 1; row <= height; ++row) {
    for (int col = 1; col <= width; ++col) out.push_back(bit(row, col) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

RasterPattern rasterize_naive(int n, std::optional<Rational> radius) {
  require_side(n);
  Rational r = radius.value_or(Rational{n, 2});
  require_rational(r);
  // Coordinates scaled by 2 * den so the center and pixel edges are integers.
  const i128 scale = 2 * static_cast<i128>(r.den);
  const i128 center = static_cast<i128>(n) * r.den;
  const i128 r2 = sq(2 * static_cast<i128>(r.num));

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int row = 1; row <= n; ++row) {
    i128 y0 = scale * (row - 1);
    i128 y1 = scale * row;
    for (int col = 1; col <= n; ++col) {
      i128 x0 = scale * (col - 1);
      i128 x1 = scale * col;
      i128 near = sq(near_gap(x0, x1, center)) + sq(near_gap(y0, y1, center));
      i128 far = sq(far_gap(x0, x1, center)) + sq(far_gap(y0, y1, center));
      bits[static_cast<std::size_t>((row - 1) * n + (col - 1))] = (near <= r2 && r2 <= far) ? 1 : 0;
    }
  }
  if (n == 1 && !radius) bits[0] = 1;
  return RasterPattern(n, Scheme::NaiveCrossing, std::move(bits));
}

RasterPattern rasterize_center(int n, std::optional<Rational> radius) {
  require_side(n);
  Rational r = radius.value_or(Rational{n, 2});
  require_rational(r);
  // (2x - 1 - n) * den is twice the scaled offset of the pixel center.
  const i128 r2 = sq(2 * static_cast<i128>(r.num));
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int row = 1; row <= n; ++row) {
    i128 dy = static_cast<i128>(2 * row - 1 - n) * r.den;
    for (int col = 1; col <= n; ++col) {
      i128 dx = static_cast<i128>(2 * col - 1 - n) * r.den;
      inside[static_cast<std::size_t>((row - 1) * n + (col - 1))] = sq(dx) + sq(dy) <= r2 ? 1 : 0;
    }
  }
  return RasterPattern(n, Scheme::CenterBoundary, boundary_ring(inside, n, n));
}

RasterPattern rasterize(int n, Scheme scheme, std::optional<Rational> radius) {
  return scheme == Scheme::NaiveCrossing ? rasterize_naive(n, radius) : rasterize_center(n, radius);
}

Bitmap rasterize_ellipse(Rational a, Rational b, int width, int height) {
  require_side(width);
  require_side(height);
  require_rational(a);
  require_rational(b);
  if (a.num == 0 || b.num == 0) throw Error(ErrorCode::InvalidArgument, "semi-axes must be positive");
  // 2a <= width and 2b <= height.
  if (mpz_class(2) * a.num > mpz_class(width) * a.den || mpz_class(2) * b.num > mpz_class(height) * b.den) {
    throw Error(ErrorCode::EllipseOutOfRaster, "ellipse " + a.str() + " x " + b.str() + " does not fit " +
                                                   std::to_string(width) + "x" + std::to_string(height));
  }
  // u^2 ad^2 bn^2 + v^2 bd^2 an^2 <= 4 an^2 bn^2 with u = 2x - 1 - W, v = 2y - 1 - H.
  mpz_class an2 = mpz_class(a.num) * a.num;
  mpz_class bn2 = mpz_class(b.num) * b.num;
  mpz_class ad2 = mpz_class(a.den) * a.den;
  mpz_class bd2 = mpz_class(b.den) * b.den;
  mpz_class x_weight = ad2 * bn2;
  mpz_class y_weight = bd2 * an2;
  mpz_class bound = 4 * an2 * bn2;

  std::vector<std::uint8_t> inside(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  for (int row = 1; row <= height; ++row) {
    long v = 2L * row - 1 - height;
    mpz_class yv = y_weight * v * v;
    for (int col = 1; col <= width; ++col) {
      long u = 2L * col - 1 - width;
      inside[static_cast<std::size_t>((row - 1) * width + (col - 1))] = x_weight * u * u + yv <= bound ? 1 : 0;
    }
  }
  return Bitmap{width, height, boundary_ring(inside, width, height)};
}

bool corner_crossed(int n) {
  require_side(n);
  // Doubled coordinates: corner pixel [0,2]^2, center (n, n), radius n.
  i128 gap = std::max(0, n - 2);
  return 2 * sq(gap) <= sq(n);
}

RadiusBounds centered_one_radius_bounds(int n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenOrTooSmallN, "n must be odd and >= 3, got " + std::to_string(n));
  }
  // lower = (n - 2) / 2; upper^2 = ((n - 2)^2 + 1) / 4.
  std::int64_t m = n - 2;
  Rational lower{m, 2};
  Rational upper_sq{m * m + 1, 4};
  auto reduce = [](Rational& r) {
    std::int64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
  };
  reduce(lower);
  reduce(upper_sq);
  return {lower, upper_sq};
}

std::uint64_t chessboard_crossed_cells(int n) {
  require_side(n);
  // Per quadrant the arc crosses each of the n - 1 interior vertical and
  // horizontal lattice lines once and never a lattice point, so it visits
  // 1 + 2(n - 1) cells.
  return 4 * (2 * static_cast<std::uint64_t>(n) - 1);
}

std::uint64_t chessboard_interior_column(int n, int k) {
  require_side(n);
  if (k < 1 || k >= n) return 0;
  // Cell [k-1,k] x [j-1,j] lies inside iff k^2 + j^2 < (n - 1/2)^2, i.e.
  // k^2 + j^2 <= n^2 - n.
  std::int64_t room = static_cast<std::int64_t>(n) * (n - 1) - static_cast<std::int64_t>(k) * k;
  mpz_class root;
  mpz_class radicand(static_cast<long>(room));
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  return 4 * root.get_ui();
}

std::uint64_t chessboard_interior_cells(int n) {
  require_side(n);
  std::uint64_t total = 0;
  for (int k = 1; k < n; ++k) total += chessboard_interior_column(n, k);
  return total;
}

SymmetryReport check_symmetries(const RasterPattern& p) {
  SymmetryReport report{true, true, true, true};
  const int n = p.n();
  const auto& bits = p.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != bits[bits.size() - 1 - i]) {
      report.palindrome = false;
      break;
    }
  }
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      if (p.bit(r, c) != p.bit(c, r)) report.transpose = false;
      if (p.bit(r, c) != p.bit(r, n + 1 - c)) report.row_mirror = false;
      if (p.bit(r, c) != p.bit(n + 1 - r, c)) report.column_mirror = false;
    }
  }
  return report;
}

std::size_t octant_cell_count(int n) {
  require_side(n);
  auto m = static_cast<std::size_t>((n + 1) / 2);
  return m * (m + 1) / 2;
}

std::vector<std::uint8_t> extract_octant(const RasterPattern& pattern) {
  if (!check_symmetries(pattern).all()) {
    throw Error(ErrorCode::AsymmetricPattern, "pattern lacks the dihedral symmetries");
  }
  const int m = (pattern.n() + 1) / 2;
  std::vector<std::uint8_t> out;
  out.reserve(octant_cell_count(pattern.n()));
  for (int r = 1; r <= m; ++r) {
    for (int c = r; c <= m; ++c) out.push_back(pattern.bit(r, c));
  }
  return out;
}

RasterPattern reconstruct_from_octant(const std::vector<std::uint8_t>& octant, int n, Scheme scheme) {
  if (octant.size() != octant_cell_count(n)) {
    throw Error(ErrorCode::WrongOctantLength, "expected " + std::to_string(octant_cell_count(n)) +
                                                  " octant cells, got " + std::to_string(octant.size()));
  }
  const int m = (n + 1) / 2;
  // Index of (r, c), r <= c <= m, in row-major triangle order.
  auto index = [m](int r, int c) {
    return static_cast<std::size_t>((r - 1) * m - (r - 1) * (r - 2) / 2 + (c - r));
  };
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      int fr = std::min(r, n + 1 - r);
      int fc = std::min(c, n + 1 - c);
      if (fr > fc) std::swap(fr, fc);
      bits[static_cast<std::size_t>((r - 1) * n + (c - 1))] = octant[index(fr, fc)];
    }
  }
  return RasterPattern(n, scheme, std::move(bits));
}

bool octant_thinning_effective(int n) {
  require_side(n);
  auto m = static_cast<std::size_t>((n + 1) / 2);
  return octant_cell_count(n) < m * m;
}

int smallest_effective_octant_n() {
  for (int n = 1; n <= kMaxSide; ++n) {
    if (octant_thinning_effective(n)) return n;
  }
  return -1;
}

GeneralizedPattern::GeneralizedPattern(RasterPattern shape, std::set<unsigned> circle_set,
                                       std::set<unsigned> background_set)
    : shape_(std::move(shape)), circle_(std::move(circle_set)), background_(std::move(background_set)) {
  if (circle_.empty() || background_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "digit sets P and Q must be non-empty");
  }
  if (*circle_.rbegin() > 255 || *background_.rbegin() > 255) {
    throw Error(ErrorCode::InvalidArgument, "digits must be <= 255");
  }
  degenerate_ = std::any_of(circle_.begin(), circle_.end(), [&](unsigned d) { return background_.count(d) > 0; });
}

bool GeneralizedPattern::circle_within_background() const {
  return std::includes(background_.begin(), background_.end(), circle_.begin(), circle_.end());
}

bool GeneralizedPattern::background_within_circle() const {
  return std::includes(circle_.begin(), circle_.end(), background_.begin(), background_.end());
}

unsigned GeneralizedPattern::max_digit() const { return std::max(*circle_.rbegin(), *background_.rbegin()); }

}  // namespace sagan::raster
