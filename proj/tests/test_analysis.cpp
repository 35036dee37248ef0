#include <doctest.h>

#include <cmath>
#include <limits>

#include "fdyn/analysis.hpp"
#include "fdyn/fji.hpp"

using namespace fdyn;

namespace {

Mask empty(int w, int h) { return Mask::Constant(h, w, false); }

Mask filled_disk(int side, double radius) {
  Mask m = empty(side, side);
  const double c = (side - 1) / 2.0;
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) m(j, i) = std::hypot(i - c, j - c) <= radius;
  return m;
}

// 4-neighbour boundary of a mask, computed directly.
Mask outline(const Mask& m) {
  Mask out = m;
  for (Eigen::Index j = 1; j + 1 < m.rows(); ++j)
    for (Eigen::Index i = 1; i + 1 < m.cols(); ++i)
      out(j, i) = m(j, i) && !(m(j - 1, i) && m(j + 1, i) && m(j, i - 1) && m(j, i + 1));
  return out;
}

double brute_hausdorff(const Mask& a, const Mask& b) {
  auto directed = [](const Mask& from, const Mask& to) {
    double worst = 0;
    for (Eigen::Index j = 0; j < from.rows(); ++j)
      for (Eigen::Index i = 0; i < from.cols(); ++i) {
        if (!from(j, i)) continue;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index q = 0; q < to.rows(); ++q)
          for (Eigen::Index p = 0; p < to.cols(); ++p)
            if (to(q, p)) best = std::min(best, std::hypot(double(i - p), double(j - q)));
        worst = std::max(worst, best);
      }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Mask pseudo_random_mask(int w, int h, unsigned seed, int density) {
  Mask m = empty(w, h);
  unsigned s = seed;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      s = s * 1664525u + 1013904223u;
      m(j, i) = (s >> 24) % 100 < static_cast<unsigned>(density);
    }
  return m;
}

}  // namespace

TEST_CASE("box counting: a filled square has dimension 2") {
  const Mask m = Mask::Constant(512, 512, true);
  const auto est = box_counting_dimension(m, 2, 128);
  CHECK(est.slope == doctest::Approx(2).epsilon(0.025));
  CHECK(est.r_squared > 0.999);
  CHECK(est.scales_used == std::vector<int>{2, 4, 8, 16, 32, 64, 128});
  CHECK(est.counts.front() == 256 * 256);
}

TEST_CASE("box counting: a straight line has dimension 1") {
  Mask m = empty(512, 512);
  for (int i = 0; i < 512; ++i) m(200, i) = true;
  CHECK(box_counting_dimension(m, 2, 128).slope == doctest::Approx(1).epsilon(0.1));
  Mask diag = empty(512, 512);
  for (int i = 0; i < 512; ++i) diag(i, i) = true;
  CHECK(box_counting_dimension(diag, 2, 128).slope == doctest::Approx(1).epsilon(0.1));
}

TEST_CASE("box counting: a circle outline has dimension 1") {
  const Mask circle = outline(filled_disk(512, 200));
  CHECK(box_counting_dimension(circle, 2, 128).slope == doctest::Approx(1).epsilon(0.1));
}

TEST_CASE("box counting: counts are non-increasing in the box size") {
  const Mask m = pseudo_random_mask(256, 256, 7, 3);
  const auto est = box_counting_dimension(m, 2, 64);
  for (std::size_t k = 1; k < est.counts.size(); ++k) CHECK(est.counts[k] <= est.counts[k - 1]);
  for (std::size_t k = 0; k < est.counts.size(); ++k) CHECK(est.counts[k] == count_boxes(m, est.scales_used[k]));
}

TEST_CASE("count_boxes counts partial boxes at the far edges") {
  Mask m = empty(10, 10);
  m(9, 9) = true;
  m(0, 0) = true;
  CHECK(count_boxes(m, 4) == 2);
  CHECK(count_boxes(m, 1) == 2);
  CHECK_THROWS_AS(count_boxes(m, 0), std::invalid_argument);
}

TEST_CASE("box counting error paths") {
  CHECK_THROWS_AS(box_counting_dimension(empty(64, 64), 2, 16), EmptyMask);
  Mask one = empty(64, 64);
  one(3, 3) = true;
  CHECK_THROWS_AS(box_counting_dimension(one, 2, 4), InsufficientScales);
  CHECK_THROWS_AS(box_counting_dimension(one, 1, 16), std::invalid_argument);
  CHECK_THROWS_AS(box_counting_dimension(one, 8, 8), std::invalid_argument);
  CHECK_THROWS_AS(box_counting_dimension(one, 2, 32), std::invalid_argument);
}

TEST_CASE("box counting accepts a raster field") {
  // Window inscribed in the unit disk: every cell is Bounded.
  const GridSpec inside({0, 0}, 1.4, 1.4, 256, 256);
  CHECK(box_counting_dimension(render_julia(inside, {0, 0}, IterParams{}), 2, 64).slope ==
        doctest::Approx(2).epsilon(0.025));
  const GridSpec g({0, 0}, 2.2, 2.2, 512, 512);
  const auto disk = render_julia(g, {0, 0}, IterParams{});
  CHECK(box_counting_dimension(extract_boundary(disk), 2, 128).slope == doctest::Approx(1).epsilon(0.1));
}

TEST_CASE("compare_masks: identical masks") {
  const Mask m = pseudo_random_mask(40, 30, 3, 20);
  const auto cmp = compare_masks(m, m);
  CHECK(cmp.jaccard == 1.0);
  CHECK(cmp.hausdorff_px == 0.0);
}

TEST_CASE("compare_masks: disjoint single pixels five apart") {
  Mask a = empty(20, 20);
  Mask b = empty(20, 20);
  a(10, 2) = true;
  b(10, 7) = true;
  const auto cmp = compare_masks(a, b);
  CHECK(cmp.jaccard == 0.0);
  CHECK(cmp.hausdorff_px == doctest::Approx(5));
  b(10, 7) = false;
  b(13, 6) = true;
  CHECK(compare_masks(a, b).hausdorff_px == doctest::Approx(5));
}

TEST_CASE("compare_masks is symmetric") {
  for (unsigned seed = 1; seed < 6; ++seed) {
    const Mask a = pseudo_random_mask(31, 23, seed, 5);
    const Mask b = pseudo_random_mask(31, 23, seed + 100, 8);
    const auto ab = compare_masks(a, b);
    const auto ba = compare_masks(b, a);
    CHECK(ab.jaccard == ba.jaccard);
    CHECK(ab.hausdorff_px == ba.hausdorff_px);
  }
}

TEST_CASE("compare_masks matches a brute-force oracle") {
  for (unsigned seed = 1; seed < 8; ++seed) {
    const Mask a = pseudo_random_mask(29, 17, seed, 4);
    const Mask b = pseudo_random_mask(29, 17, seed * 31, 6);
    if (!a.any() || !b.any()) continue;
    const auto cmp = compare_masks(a, b);
    CHECK(cmp.hausdorff_px == doctest::Approx(brute_hausdorff(a, b)));
    const double inter = static_cast<double>((a && b).count());
    const double uni = static_cast<double>((a || b).count());
    CHECK(cmp.jaccard == doctest::Approx(inter / uni));
  }
}

TEST_CASE("compare_masks: empty masks") {
  CHECK_THROWS_AS(compare_masks(empty(8, 8), empty(8, 8)), UndefinedComparison);
  Mask a = empty(8, 8);
  a(1, 1) = true;
  const auto cmp = compare_masks(a, empty(8, 8));
  CHECK(cmp.jaccard == 0.0);
  CHECK(std::isinf(cmp.hausdorff_px));
  CHECK_THROWS_AS(compare_masks(a, empty(8, 9)), std::invalid_argument);
}

TEST_CASE("compare_masks excludes Invalid cells of either field") {
  const GridSpec g({0, 0}, 1, 1, 3, 1);
  RasterField a(g), b(g);
  a.at(0, 0) = OrbitResult::bounded(0);
  b.at(0, 0) = OrbitResult::bounded(0);
  a.at(1, 0) = OrbitResult::bounded(0);
  b.at(1, 0) = OrbitResult::invalid();
  a.at(2, 0) = OrbitResult::invalid();
  b.at(2, 0) = OrbitResult::bounded(0);
  const auto cmp = compare_masks(a, b);
  CHECK(cmp.jaccard == 1.0);
  CHECK(cmp.hausdorff_px == 0.0);
  CHECK_THROWS_AS(compare_masks(a, RasterField(GridSpec({0, 0}, 1, 1, 2, 1))), std::invalid_argument);
}

TEST_CASE("squared distance transform matches brute force") {
  const Mask m = pseudo_random_mask(23, 19, 11, 3);
  REQUIRE(m.any());
  const auto d = squared_distance_transform(m);
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index q = 0; q < m.rows(); ++q)
        for (Eigen::Index p = 0; p < m.cols(); ++p)
          if (m(q, p)) best = std::min(best, double((i - p) * (i - p) + (j - q) * (j - q)));
      CHECK(d(j, i) == best);
    }
  CHECK(std::isinf(squared_distance_transform(empty(4, 4))(2, 2)));
}

TEST_CASE("zeno_states: times and distances") {
  const auto z = zeno_states(1, 1, 3, 1);
  CHECK(z.times == std::vector<double>{1.0, 1.5, 1.75});
  CHECK(z.heights == std::vector<double>{0.5, 0.25, 0.125});
  const auto z0 = zeno_states(2, 3, 2, 0);
  CHECK(z0.times == std::vector<double>{0.0, 3.0});
  CHECK(z0.heights == std::vector<double>{2.0, 1.0});
  CHECK_THROWS_AS(zeno_states(0, 1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(zeno_states(1, -1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(zeno_states(1, 1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(zeno_states(1, 1, 3, -1), std::invalid_argument);
}

TEST_CASE("zeno_states: each state halves the remaining gap") {
  const auto z = zeno_states(1.7, 2.3, 40, 0);
  for (std::size_t i = 1; i < z.times.size(); ++i) {
    CHECK(z.heights[i] == z.heights[i - 1] / 2);
    CHECK(2 * 2.3 - z.times[i] == doctest::Approx((2 * 2.3 - z.times[i - 1]) / 2));
    CHECK(z.times[i] < 2 * 2.3);
  }
}

TEST_CASE("zeno_states: shifting i0 is the contraction (t, d) -> (t1 + t/2, d/2)") {
  const auto a = zeno_states(1, 1, 10, 1);
  const auto b = zeno_states(1, 1, 10, 2);
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    CHECK(b.times[i] == doctest::Approx(1 + a.times[i] / 2));
    CHECK(b.heights[i] == a.heights[i] / 2);
  }
}

TEST_CASE("rasterize_zeno draws one segment per state") {
  const auto z = zeno_states(1, 1, 3, 1);
  const Mask m = rasterize_zeno(z, 2, 1, 8, 8);
  CHECK(m.count() == 4 + 2 + 1);
  CHECK(m.col(4).count() == 4);
  CHECK(m.col(6).count() == 2);
  CHECK(m.col(7).count() == 1);
  CHECK(m(7, 4));
  CHECK_FALSE(m(3, 4));
  CHECK_THROWS_AS(rasterize_zeno(z, 0, 1, 8, 8), std::invalid_argument);
}
