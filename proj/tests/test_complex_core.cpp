#include <doctest.h>

#include <cmath>
#include <set>
#include <utility>

#include "fdyn/complex_core.hpp"

using namespace fdyn;

namespace {

const GridSpec kGrid401({0, 0}, 4, 4, 401, 401);

}  // namespace

TEST_CASE("grid construction rejects degenerate windows") {
  CHECK_THROWS_AS(GridSpec({0, 0}, 0, 1, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({0, 0}, 1, -1, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({0, 0}, 1, 1, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({0, 0}, 1, 1, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({NAN, 0}, 1, 1, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({0, 0}, INFINITY, 1, 10, 10), std::invalid_argument);
}

TEST_CASE("from_bounds reproduces the window") {
  const auto g = GridSpec::from_bounds(-2, 1, -0.5, 1.5, 30, 20);
  CHECK(g.re_min() == doctest::Approx(-2));
  CHECK(g.re_max() == doctest::Approx(1));
  CHECK(g.im_min() == doctest::Approx(-0.5));
  CHECK(g.im_max() == doctest::Approx(1.5));
  CHECK(g.pitch_x() == doctest::Approx(0.1));
  CHECK(g.pitch_y() == doctest::Approx(0.1));
}

TEST_CASE("point_of: center pixel and corner pixel") {
  CHECK(point_of(kGrid401, 200, 200) == ComplexPoint(0, 0));
  const double d = 4.0 / 401;
  const auto corner = point_of(kGrid401, 0, 0);
  CHECK(corner.real() == doctest::Approx(-2 + d / 2).epsilon(1e-14));
  CHECK(corner.imag() == doctest::Approx(2 - d / 2).epsilon(1e-14));
  const auto last = point_of(kGrid401, 400, 400);
  CHECK(last.real() == doctest::Approx(2 - d / 2).epsilon(1e-14));
  CHECK(last.imag() == doctest::Approx(-2 + d / 2).epsilon(1e-14));
}

TEST_CASE("point_of: row index decreases the imaginary part") {
  const GridSpec g({1, 1}, 2, 1, 8, 4);
  for (int j = 1; j < 4; ++j) CHECK(point_of(g, 3, j).imag() < point_of(g, 3, j - 1).imag());
  for (int i = 1; i < 8; ++i) CHECK(point_of(g, i, 2).real() > point_of(g, i - 1, 2).real());
}

TEST_CASE("point_of rejects out-of-range indices") {
  CHECK_THROWS_AS(point_of(kGrid401, -1, 0), std::out_of_range);
  CHECK_THROWS_AS(point_of(kGrid401, 401, 0), std::out_of_range);
  CHECK_THROWS_AS(point_of(kGrid401, 0, 401), std::out_of_range);
}

TEST_CASE("pixel_of: examples") {
  CHECK(pixel_of(kGrid401, ComplexPoint(0, 0)) == PixelIndex{200, 200});
  CHECK_FALSE(pixel_of(kGrid401, ComplexPoint(10, 0)).has_value());
  CHECK_FALSE(pixel_of(kGrid401, ComplexPoint(0, -2.5)).has_value());
  const double d = 4.0 / 401;
  CHECK(pixel_of(kGrid401, point_of(kGrid401, 17, 311) + ComplexPoint(d / 4, 0)) == PixelIndex{17, 311});
  CHECK(pixel_of(kGrid401, point_of(kGrid401, 17, 311) + ComplexPoint(0, d / 4)) == PixelIndex{17, 311});
}

TEST_CASE("pixel_of: window edges belong to the edge pixels") {
  CHECK(pixel_of(kGrid401, ComplexPoint(2, 2)) == PixelIndex{400, 0});
  CHECK(pixel_of(kGrid401, ComplexPoint(-2, -2)) == PixelIndex{0, 400});
}

TEST_CASE("pixel_of rejects non-finite points") {
  CHECK_THROWS_AS(pixel_of(kGrid401, ComplexPoint(NAN, 0)), std::invalid_argument);
  CHECK_THROWS_AS(pixel_of(kGrid401, ComplexPoint(0, INFINITY)), std::invalid_argument);
}

TEST_CASE("pixel_of inverts point_of on every pixel") {
  const GridSpec g({0.3, -0.7}, 3, 1.25, 61, 37);
  std::set<std::pair<double, double>> seen;
  for (int j = 0; j < g.px_h(); ++j) {
    for (int i = 0; i < g.px_w(); ++i) {
      const auto z = point_of(g, i, j);
      CHECK(pixel_of(g, z) == PixelIndex{i, j});
      seen.insert({z.real(), z.imag()});
    }
  }
  CHECK(seen.size() == g.size());
}

TEST_CASE("point_of(pixel_of(z)) lies within half a pixel pitch of z") {
  const GridSpec g({-0.25, 0.5}, 2.5, 1.5, 97, 53);
  for (int k = 0; k < 5000; ++k) {
    const double u = std::fmod(0.6180339887498949 * k, 1.0);
    const double v = std::fmod(0.7548776662466927 * k, 1.0);
    const ComplexPoint z(g.re_min() + u * g.width(), g.im_min() + v * g.height());
    const auto px = pixel_of(g, z);
    REQUIRE(px.has_value());
    const auto c = point_of(g, px->i, px->j);
    CHECK(std::abs(c.real() - z.real()) <= g.pitch_x() / 2 * (1 + 1e-12));
    CHECK(std::abs(c.imag() - z.imag()) <= g.pitch_y() / 2 * (1 + 1e-12));
    CHECK(std::abs(c - z) <= std::hypot(g.pitch_x(), g.pitch_y()) / 2 * (1 + 1e-12));
  }
}

TEST_CASE("OrbitResult factories") {
  const auto b = OrbitResult::bounded(0.5);
  CHECK(b.is_bounded());
  CHECK(b.last_magnitude == 0.5);
  const auto e = OrbitResult::escaped(7, 3.0);
  CHECK(e.is_escaped());
  CHECK(e.iteration == 7);
  CHECK(OrbitResult::invalid().is_invalid());
  CHECK(OrbitResult{}.is_invalid());
}

TEST_CASE("RasterField storage is row-major from the top-left") {
  RasterField f(GridSpec({0, 0}, 1, 1, 3, 2));
  CHECK(f.size() == 6);
  f.at(2, 1) = OrbitResult::bounded(0);
  CHECK(f.cells()[5].is_bounded());
  CHECK(f.bounded_count() == 1);
  CHECK_THROWS_AS(f.at(3, 0), std::out_of_range);
  RasterField g = f;
  CHECK(f == g);
  g.at(0, 0) = OrbitResult::escaped(1, 3);
  CHECK_FALSE(f == g);
}

TEST_CASE_TEMPLATE("grid arithmetic instantiates for other scalars", Scalar, float, long double) {
  const BasicGridSpec<Scalar> g({0, 0}, 4, 4, 401, 401);
  CHECK(point_of(g, 200, 200) == Complex<Scalar>(0, 0));
  const auto z = point_of(g, 12, 345);
  CHECK(pixel_of(g, z) == PixelIndex{12, 345});
  BasicRasterField<Scalar> field(g);
  CHECK(field.size() == g.size());
}
