#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sagan::raster {

enum class Scheme {
  // 1 for every pixel the circle passes through (closed squares).
  NaiveCrossing,
  // 1 for inside pixels (center test) that touch an outside pixel or the edge.
  CenterBoundary,
};

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);  // "naive" | "center"

// Exact non-negative rational num/den, small enough for 128-bit products.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(std::string_view text);  // "31/20", "1.55", "3"
  std::string str() const;
};

// n x n bit raster, row-major from the top-left. Rows and columns are
// 1-indexed in the accessors.
class RasterPattern {
 public:
  RasterPattern(int n, Scheme scheme, std::vector<std::uint8_t> bits);

  int n() const { return n_; }
  Scheme scheme() const { return scheme_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::uint8_t bit(int row, int col) const { return bits_[static_cast<std::size_t>((row - 1) * n_ + (col - 1))]; }
  std::size_t ones() const;

  // Row-major '0'/'1' string.
  std::string flat() const;
  // '#' for 1, '.' for 0, one row per line; `frame` adds a ring of '.'.
  std::string ascii(bool frame = false) const;

  bool operator==(const RasterPattern&) const = default;

 private:
  int n_;
  Scheme scheme_;
  std::vector<std::uint8_t> bits_;
};

// Non-square raster (ellipses).
struct Bitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t bit(int row, int col) const { return bits[static_cast<std::size_t>((row - 1) * width + (col - 1))]; }
  std::string ascii() const;
  bool operator==(const Bitmap&) const = default;
};

// Circle of radius n/2 (or `radius`) centered on the raster.
RasterPattern rasterize_naive(int n, std::optional<Rational> radius = std::nullopt);
RasterPattern rasterize_center(int n, std::optional<Rational> radius = std::nullopt);
RasterPattern rasterize(int n, Scheme scheme, std::optional<Rational> radius = std::nullopt);

// Center-boundary digitization of ((x - cx)/a)^2 + ((y - cy)/b)^2 <= 1 with
// the ellipse centered on a width x height raster.
Bitmap rasterize_ellipse(Rational semi_axis_a, Rational semi_axis_b, int width, int height);

// Whether the naive-scheme circle of diameter n touches the corner pixel.
bool corner_crossed(int n);

// Open interval of radii giving a single centered 1 in the top row under
// the naive scheme: n/2 - 1 < r < sqrt(upper_squared).
struct RadiusBounds {
  Rational lower;
  Rational upper_squared;
};
RadiusBounds centered_one_radius_bounds(int n);

// Circle of diameter 2n - 1 centered on a 2n x 2n board.
std::uint64_t chessboard_crossed_cells(int n);
std::uint64_t chessboard_interior_cells(int n);
// Interior cells in column k of one quadrant (the summand of the interior
// count, times the four quadrants).
std::uint64_t chessboard_interior_column(int n, int k);

struct SymmetryReport {
  bool palindrome = false;
  bool transpose = false;
  bool row_mirror = false;
  bool column_mirror = false;

  bool all() const { return palindrome && transpose && row_mirror && column_mirror; }
};

SymmetryReport check_symmetries(const RasterPattern& pattern);

// Cells with row <= col <= ceil(n/2), row-major.
std::size_t octant_cell_count(int n);
std::vector<std::uint8_t> extract_octant(const RasterPattern& pattern);
RasterPattern reconstruct_from_octant(const std::vector<std::uint8_t>& octant, int n,
                                      Scheme scheme = Scheme::CenterBoundary);

// Whether the half-quadrant carries strictly fewer cells than a quadrant,
// i.e. whether octant thinning reduces anything at this n.
bool octant_thinning_effective(int n);
// Smallest n at which octant thinning is effective, found by scanning.
int smallest_effective_octant_n();

// A raster traced in digits from P on a background of digits from Q.
class GeneralizedPattern {
 public:
  GeneralizedPattern(RasterPattern shape, std::set<unsigned> circle_set, std::set<unsigned> background_set);

  const RasterPattern& shape() const { return shape_; }
  const std::set<unsigned>& circle_set() const { return circle_; }
  const std::set<unsigned>& background_set() const { return background_; }

  // P and Q share a digit.
  bool degenerate() const { return degenerate_; }
  bool circle_within_background() const;  // P subset of Q
  bool background_within_circle() const;  // Q subset of P
  unsigned max_digit() const;

 private:
  RasterPattern shape_;
  std::set<unsigned> circle_;
  std::set<unsigned> background_;
  bool degenerate_;
};

}  // namespace sagan::raster
