#include <doctest.h>

#include "sagan/error.hpp"
#include "sagan/raster.hpp"
#include "support/oracles.hpp"

using namespace sagan;
using namespace sagan::raster;

namespace {

std::vector<int> ints(const RasterPattern& p) { return {p.bits().begin(), p.bits().end()}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("naive scheme small cases") {
  CHECK(rasterize_naive(1).flat() == "1");
  CHECK(rasterize_naive(2).flat() == "1111");
  CHECK(rasterize_naive(3).flat() == "111101111");
  auto seven = rasterize_naive(7);
  CHECK(seven.bit(1, 1) == 0);
  CHECK(seven.bit(1, 7) == 0);
  CHECK(seven.bit(7, 1) == 0);
  CHECK(seven.bit(7, 7) == 0);
  CHECK(rasterize_naive(3).ascii() == "###\n#.#\n###\n");
  CHECK(rasterize_naive(2).ascii(true) == "....\n.##.\n.##.\n....\n");
}

TEST_CASE("center scheme small cases") {
  CHECK(rasterize_center(1).flat() == "1");
  CHECK(rasterize_center(2).flat() == "1111");
  CHECK(ints(rasterize_center(4)) == oracle::center_raster(4));
  CHECK(rasterize_center(4).flat() == "0110100110010110");
  CHECK(rasterize_center(5).ascii() == ".###.\n#...#\n#...#\n#...#\n.###.\n");
}

TEST_CASE("both schemes agree with the brute-force rasterizers") {
  for (int n = 1; n <= 96; ++n) {
    CAPTURE(n);
    REQUIRE(ints(rasterize_naive(n)) == oracle::naive_raster(n));
    REQUIRE(ints(rasterize_center(n)) == oracle::center_raster(n));
  }
}

TEST_CASE("corner crossing threshold") {
  CHECK(corner_crossed(1));
  for (int n = 2; n <= 6; ++n) CHECK(corner_crossed(n));
  for (int n = 7; n <= 200; ++n) CHECK_FALSE(corner_crossed(n));
  for (int n = 1; n <= 64; ++n) CHECK((rasterize_naive(n).bit(1, 1) == 1) == corner_crossed(n));
}

TEST_CASE("centered single one radius bounds") {
  auto b3 = centered_one_radius_bounds(3);
  CHECK(b3.lower.num == 1);
  CHECK(b3.lower.den == 2);
  CHECK(b3.upper_squared.num == 1);
  CHECK(b3.upper_squared.den == 2);
  auto b5 = centered_one_radius_bounds(5);
  CHECK(b5.lower.str() == "3/2");
  CHECK(b5.upper_squared.str() == "5/2");
  auto r = rasterize_naive(5, Rational::parse("1.55"));
  CHECK(r.flat().substr(0, 5) == "00100");
  CHECK(Rational::parse("31/20").str() == "31/20");
  CHECK(code_of([] { centered_one_radius_bounds(4); }) == ErrorCode::EvenOrTooSmallN);
  CHECK(code_of([] { centered_one_radius_bounds(1); }) == ErrorCode::EvenOrTooSmallN);
  // Just inside and just outside the interval.
  for (int n : {3, 5, 7, 9, 11}) {
    auto b = centered_one_radius_bounds(n);
    Rational inside{b.lower.num * 1000 + b.lower.den, b.lower.den * 1000};
    std::string top = rasterize_naive(n, inside).flat().substr(0, static_cast<std::size_t>(n));
    std::string expect(static_cast<std::size_t>(n), '0');
    expect[static_cast<std::size_t>(n / 2)] = '1';
    CHECK(top == expect);
  }
}

TEST_CASE("ellipse digitization") {
  for (int n : {1, 2, 5, 8, 13}) {
    Rational half{n, 2};
    auto e = rasterize_ellipse(half, half, n, n);
    CHECK(std::vector<int>(e.bits.begin(), e.bits.end()) == oracle::center_raster(n));
  }
  auto e = rasterize_ellipse({4, 1}, {3, 1}, 8, 6);
  CHECK(e.width == 8);
  CHECK(e.height == 6);
  // Per-pixel check in doubled units: centers (2c-1, 2r-1), center (8, 6).
  auto inside = [](int r, int c) {
    if (r < 1 || c < 1 || r > 6 || c > 8) return false;
    long dx = 2 * c - 1 - 8, dy = 2 * r - 1 - 6;
    return dx * dx * 9 + dy * dy * 16 <= 4 * 144;
  };
  for (int r = 1; r <= 6; ++r) {
    for (int c = 1; c <= 8; ++c) {
      bool ring = inside(r, c) && (!inside(r - 1, c) || !inside(r + 1, c) || !inside(r, c - 1) || !inside(r, c + 1));
      CHECK(e.bit(r, c) == (ring ? 1 : 0));
    }
  }
  CHECK(rasterize_ellipse({1, 2}, {1, 2}, 1, 1).bits == std::vector<std::uint8_t>{1});
  CHECK(code_of([] { rasterize_ellipse({5, 1}, {3, 1}, 8, 6); }) == ErrorCode::EllipseOutOfRaster);
}

TEST_CASE("chessboard counts") {
  CHECK(chessboard_crossed_cells(1) == 4);
  CHECK(chessboard_interior_cells(1) == 0);
  for (int n = 1; n <= 64; ++n) {
    CAPTURE(n);
    auto brute = oracle::chessboard(n);
    CHECK(chessboard_crossed_cells(n) == static_cast<std::uint64_t>(brute.crossed));
    CHECK(chessboard_interior_cells(n) == static_cast<std::uint64_t>(brute.interior));
    CHECK(brute.crossed + brute.interior + brute.exterior == 4L * n * n);
  }
}

TEST_CASE("symmetries of generated rasters") {
  for (auto scheme : {Scheme::NaiveCrossing, Scheme::CenterBoundary}) {
    for (int n = 1; n <= 128; ++n) {
      auto p = rasterize(n, scheme);
      REQUIRE(check_symmetries(p).all());
      REQUIRE(reconstruct_from_octant(extract_octant(p), n, scheme) == p);
    }
  }
  auto lone = check_symmetries(RasterPattern(2, Scheme::NaiveCrossing, {1, 0, 0, 0}));
  CHECK_FALSE(lone.palindrome);
  CHECK(lone.transpose);
  CHECK(check_symmetries(RasterPattern(1, Scheme::NaiveCrossing, {0})).all());
}

TEST_CASE("octants") {
  CHECK(extract_octant(rasterize_naive(2)) == std::vector<std::uint8_t>{1});
  CHECK(extract_octant(rasterize_naive(3)) == std::vector<std::uint8_t>{1, 1, 0});
  CHECK(octant_cell_count(3) == 3);
  CHECK(reconstruct_from_octant(std::vector<std::uint8_t>(octant_cell_count(4), 0), 4).flat() ==
        std::string(16, '0'));
  CHECK(code_of([] { reconstruct_from_octant({1, 0}, 3); }) == ErrorCode::WrongOctantLength);
  CHECK(code_of([] { extract_octant(RasterPattern(2, Scheme::NaiveCrossing, {1, 0, 0, 0})); }) ==
        ErrorCode::AsymmetricPattern);
  CHECK_FALSE(octant_thinning_effective(1));
  CHECK_FALSE(octant_thinning_effective(2));
  CHECK(octant_thinning_effective(3));
  CHECK(smallest_effective_octant_n() == 3);
}

TEST_CASE("generalized patterns") {
  auto shape = rasterize_naive(3);
  GeneralizedPattern g(shape, {1, 7}, {0, 3});
  CHECK_FALSE(g.degenerate());
  CHECK(g.max_digit() == 7);
  GeneralizedPattern overlap(shape, {1, 2}, {1, 2, 3});
  CHECK(overlap.degenerate());
  CHECK(overlap.circle_within_background());
  CHECK_FALSE(overlap.background_within_circle());
  CHECK_THROWS_AS(GeneralizedPattern(shape, {}, {0}), Error);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(rasterize_naive(0), Error);
  CHECK_THROWS_AS(parse_scheme("bresenham"), Error);
  CHECK(parse_scheme("center") == Scheme::CenterBoundary);
  CHECK(to_string(Scheme::NaiveCrossing) == "naive");
}
