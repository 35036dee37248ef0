#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fdyn/analysis.hpp"
#include "fdyn/fmi.hpp"

using namespace fdyn;

namespace {

using C = ComplexPoint;

const C kC1(-0.7589, 0.0735);
const C kC2(-0.175, -0.655);

FmiScene julia_scene(const GridSpec& g, C c, MapSpec m, IterParams p = {}) {
  return FmiScene{g, c, std::move(m), p, FmiMode::JuliaFmi, std::nullopt};
}

FmiScene mandel_scene(const GridSpec& g, MapSpec m, IterParams p = {}) {
  return FmiScene{g, {0, 0}, std::move(m), p, FmiMode::MandelbrotFmi, std::nullopt};
}

// Bounded where the pixel center scaled by `factor` lands on a bounded pixel of `base`.
RasterField rescaled(const RasterField& base, double factor) {
  const GridSpec& g = base.grid();
  RasterField out(g);
  for (int j = 0; j < g.px_h(); ++j)
    for (int i = 0; i < g.px_w(); ++i) {
      const auto px = pixel_of(g, point_of(g, i, j) * factor);
      out.at(i, j) = px && base.at(px->i, px->j).is_bounded() ? OrbitResult::bounded(0) : OrbitResult::escaped(0, 0);
    }
  return out;
}

}  // namespace

TEST_CASE("Identity map reproduces the plain renders cell for cell") {
  const GridSpec g({0, 0}, 3, 3, 128, 96);
  for (const C c : {kC1, kC2, C(0, 0)})
    CHECK(fmi_julia(julia_scene(g, c, maps::Identity{})) == render_julia(g, c, IterParams{}));
  const GridSpec gm({-0.5, 0}, 3, 3, 128, 96);
  CHECK(fmi_mandelbrot(mandel_scene(gm, maps::Identity{})) == render_mandelbrot(gm, IterParams{}));
}

TEST_CASE("fmi_julia: Affine(2, 0) maps the unit disk to the disk of radius 2") {
  const GridSpec g({0, 0}, 5, 5, 201, 201);
  const auto f = fmi_julia(julia_scene(g, {0, 0}, maps::Affine<double>{{2, 0}, {0, 0}}));
  const double slack = std::hypot(g.pitch_x(), g.pitch_y());
  for (int j = 0; j < g.px_h(); ++j)
    for (int i = 0; i < g.px_w(); ++i) {
      const double r = std::abs(point_of(g, i, j));
      if (r < 2 - slack) CHECK(f.at(i, j).is_bounded());
      if (r > 2 + slack) CHECK(f.at(i, j).is_escaped());
    }
}

TEST_CASE("fmi_mandelbrot: Affine(1, 1) pulls c' back to c' - 1") {
  // Pixel centers at c' = 0 and c' = 2.
  const GridSpec g = GridSpec::from_bounds(-1, 3, -1, 1, 2, 1);
  const auto f = fmi_mandelbrot(mandel_scene(g, maps::Affine<double>{{1, 0}, {1, 0}}));
  CHECK(f.at(0, 0).is_bounded());
  CHECK(f.at(1, 0).is_escaped());
  CHECK(f.at(1, 0) == classify_orbit(C(0, 0), C(1, 0), IterParams{}));
}

TEST_CASE("fmi_julia classifies the pullback of each pixel") {
  const GridSpec g({1.2, 0.1}, 2.5, 3, 48, 40);
  const MapSpec m = maps::ArcsinRoot5{};
  const auto f = fmi_julia(julia_scene(g, kC2, m));
  for (int j = 0; j < g.px_h(); ++j)
    for (int i = 0; i < g.px_w(); ++i) {
      const auto w = try_eval_inverse(m, point_of(g, i, j));
      REQUIRE(w.has_value());
      CHECK(f.at(i, j) == classify_orbit(*w, kC2, IterParams{}));
    }
}

TEST_CASE("pullback failures are Invalid") {
  // The center pixel sits exactly on w = pi, where cos w = -1.
  const GridSpec g({std::numbers::pi, 0}, 0.5, 0.5, 5, 5);
  const auto f = fmi_julia(julia_scene(g, kC1, maps::ArccosReciprocal{}));
  CHECK(f.at(2, 2).is_invalid());
  CHECK_FALSE(f.at(0, 0).is_invalid());

  const GridSpec gm({0, 0}, 2.2, 2.2, 11, 11);
  const auto fm = fmi_mandelbrot(mandel_scene(gm, maps::ReciprocalSqrt{}));
  // w = +-i are poles of 1 / (w^2 + 1); pixel (5, 0) has center i.
  CHECK(fm.at(5, 0).is_invalid());
  CHECK(fm.at(5, 10).is_invalid());
}

TEST_CASE("domain restriction marks pullbacks outside A as Invalid") {
  const GridSpec g({0, 0}, 4, 4, 64, 64);
  FmiScene scene = julia_scene(g, {0, 0}, maps::Affine<double>{{2, 0}, {0, 0}});
  scene.domain = GridSpec({0.5, 0}, 1, 2, 1, 1);
  const auto f = fmi_julia(scene);
  for (int j = 0; j < g.px_h(); ++j)
    for (int i = 0; i < g.px_w(); ++i) {
      const C w = point_of(g, i, j) / 2.0;
      CHECK(f.at(i, j).is_invalid() == !scene.domain->contains(w));
    }
}

TEST_CASE("scene mode and argument checks") {
  const GridSpec g({0, 0}, 1, 1, 4, 4);
  CHECK_THROWS_AS(fmi_julia(mandel_scene(g, maps::Identity{})), std::invalid_argument);
  CHECK_THROWS_AS(fmi_mandelbrot(julia_scene(g, kC1, maps::Identity{})), std::invalid_argument);
  CHECK_THROWS_AS(fmi_julia(julia_scene(g, kC1, maps::Affine<double>{{0, 0}, {0, 0}})), std::invalid_argument);
  const RasterField src(g);
  CHECK_THROWS_AS(forward_image(src, MapSpec(maps::Identity{}), g, 0), std::invalid_argument);
  CHECK_THROWS_AS(discrete_trajectory(kC1, MapSpec(maps::Identity{}), -1, g, IterParams{}), std::invalid_argument);
}

TEST_CASE("forward_image: Identity on the same grid keeps the mask") {
  const GridSpec g({0, 0}, 3, 3, 100, 80);
  const auto src = render_julia(g, kC1, IterParams{40, 2});
  const auto img = forward_image(src, MapSpec(maps::Identity{}), g, 3);
  CHECK((bounded_mask(img) == bounded_mask(src)).all());
}

TEST_CASE("forward_image: Affine(2, 0) maps the unit disk raster to the radius-2 disk") {
  const GridSpec src_grid({0, 0}, 2.5, 2.5, 201, 201);
  const GridSpec dst_grid({0, 0}, 5, 5, 201, 201);
  const auto disk = render_julia(src_grid, {0, 0}, IterParams{});
  const auto img = forward_image(disk, MapSpec(maps::Affine<double>{{2, 0}, {0, 0}}), dst_grid, 3);
  const double slack = std::hypot(dst_grid.pitch_x(), dst_grid.pitch_y());
  for (int j = 0; j < dst_grid.px_h(); ++j)
    for (int i = 0; i < dst_grid.px_w(); ++i) {
      const double r = std::abs(point_of(dst_grid, i, j));
      if (r < 2 - slack) CHECK(img.at(i, j).is_bounded());
      if (r > 2 + slack) CHECK(img.at(i, j).is_escaped());
    }
}

TEST_CASE("forward_image: supersampling closes the holes of an expanding map") {
  const GridSpec src_grid({0, 0}, 1.2, 1.2, 64, 64);
  const GridSpec dst_grid({0, 0}, 3.6, 3.6, 192, 192);
  const auto disk = render_julia(src_grid, {0, 0}, IterParams{});
  const MapSpec triple = maps::Affine<double>{{3, 0}, {0, 0}};
  const auto sparse = forward_image(disk, triple, dst_grid, 1);
  const auto dense = forward_image(disk, triple, dst_grid, 3);
  CHECK(dense.bounded_count() > 5 * sparse.bounded_count());
}

TEST_CASE("forward_image agrees with fmi_julia for an aligned affine map") {
  // Pixel centers of the source map exactly onto pixel centers of the destination.
  const GridSpec src({0, 0}, 3, 3, 255, 255);
  const GridSpec dst({1, 0}, 6, 6, 255, 255);
  const MapSpec m = maps::Affine<double>{{2, 0}, {1, 0}};
  const auto direct = forward_image(render_julia(src, kC2, IterParams{}), m, dst, 3);
  const auto pulled = fmi_julia(julia_scene(dst, kC2, m));
  const auto cmp = compare_masks(direct, pulled);
  CHECK(cmp.jaccard >= 0.95);
  CHECK(cmp.hausdorff_px <= 2);
}

TEST_CASE("discrete_trajectory: k_max = 0 is the Julia render") {
  const GridSpec g({0, 0}, 3, 3, 64, 64);
  const auto frames = discrete_trajectory(kC2, MapSpec(maps::Affine<double>{{0.5, 0}, {0, 0}}), 0, g, IterParams{});
  REQUIRE(frames.pullback.size() == 1);
  REQUIRE(frames.pushforward.size() == 1);
  CHECK(frames.pullback[0] == render_julia(g, kC2, IterParams{}));
  CHECK(frames.pushforward[0] == frames.pullback[0]);
}

TEST_CASE("discrete_trajectory: element k is the pullback through f^k") {
  const GridSpec g({0, 0}, 4, 4, 64, 64);
  const MapSpec f = maps::QuadraticParam<double>{0.6, {0.02, -0.02}, kC2};
  const auto frames = discrete_trajectory(kC2, f, 3, g, IterParams{});
  REQUIRE(frames.pullback.size() == 4);
  for (int k = 1; k <= 3; ++k) {
    CHECK(frames.pullback[static_cast<std::size_t>(k)] == fmi_julia(julia_scene(g, kC2, iterate_map(f, k))));
    // Semigroup: one more inverse step on top of f^{k-1}.
    const auto& field = frames.pullback[static_cast<std::size_t>(k)];
    for (int j = 0; j < g.px_h(); j += 7)
      for (int i = 0; i < g.px_w(); i += 5) {
        auto w = try_eval_inverse(f, point_of(g, i, j));
        for (int s = 1; s < k && w; ++s) w = try_eval_inverse(f, *w);
        REQUIRE(w.has_value());
        CHECK(field.at(i, j) == classify_orbit(*w, kC2, IterParams{}));
      }
  }
}

TEST_CASE("discrete_trajectory: Affine(0.5) frames are scaled copies of frame 0") {
  // 30 iterations keep the escape-time set of this parameter at pixel scale.
  const IterParams p{30, 2};
  const GridSpec g({0, 0}, 3, 3, 257, 257);
  const auto frames = discrete_trajectory(kC2, MapSpec(maps::Affine<double>{{0.5, 0}, {0, 0}}), 5, g, p);
  for (int k = 1; k <= 5; ++k) {
    const auto expected = rescaled(frames.pullback[0], std::ldexp(1.0, k));
    CHECK(compare_masks(frames.pullback[static_cast<std::size_t>(k)], expected).jaccard >= 0.9);
  }
}

TEST_CASE("discrete_trajectory: pullback and push-forward agree for grid-aligned rotations") {
  const IterParams p{30, 2};
  const GridSpec g({0, 0}, 3, 3, 201, 201);
  for (const C a : {C(0, 1), C(-1, 0)}) {
    const auto frames = discrete_trajectory(kC2, MapSpec(maps::Affine<double>{a, {0, 0}}), 5, g, p);
    for (std::size_t k = 0; k < frames.pullback.size(); ++k)
      CHECK(compare_masks(frames.pullback[k], frames.pushforward[k]).jaccard >= 0.95);
  }
}

TEST_CASE_TEMPLATE("fmi instantiates for other scalars", Scalar, float, long double) {
  const BasicGridSpec<Scalar> g({0, 0}, 5, 5, 41, 41);
  const BasicFmiScene<Scalar> scene{g, {0, 0}, maps::Affine<Scalar>{{2, 0}, {0, 0}}, {}, FmiMode::JuliaFmi, std::nullopt};
  const auto f = fmi_julia(scene);
  CHECK(f.at(20, 20).is_bounded());
  CHECK(f.at(0, 0).is_escaped());
  const auto img = forward_image(render_julia(g, Complex<Scalar>(0, 0), BasicIterParams<Scalar>{}),
                                 BasicMapSpec<Scalar>(maps::Identity{}), g, 2);
  CHECK(img.bounded_count() == render_julia(g, Complex<Scalar>(0, 0), BasicIterParams<Scalar>{}).bounded_count());
}
