#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fdyn/complex_core.hpp"

namespace fdyn {

/// Boolean raster, rows = px_h, cols = px_w, row 0 at the top.
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
Mask bounded_mask(const BasicRasterField<Scalar>& field) {
  Mask m(field.px_h(), field.px_w());
  const auto& cells = field.cells();
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index i = 0; i < m.cols(); ++i) m(j, i) = cells[j * m.cols() + i].is_bounded();
  return m;
}

template <typename Scalar>
Mask invalid_mask(const BasicRasterField<Scalar>& field) {
  Mask m(field.px_h(), field.px_w());
  const auto& cells = field.cells();
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index i = 0; i < m.cols(); ++i) m(j, i) = cells[j * m.cols() + i].is_invalid();
  return m;
}

class EmptyMask : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientScales : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedComparison : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DimensionEstimate {
  double slope = 0;
  double r_squared = 0;
  std::vector<int> scales_used;
  std::vector<long long> counts;
};

/// Box-counting dimension of the set cells. Boxes are grid-aligned at the
/// raster origin with dyadic sizes min_box * 2^k <= max_box; partial boxes at
/// the far edges count. The slope of log N(eps) against log(1/eps) is a
/// least-squares fit.
///
/// Requires 2 <= min_box < max_box <= min(px_w, px_h) / 4.
DimensionEstimate box_counting_dimension(const Mask& mask, int min_box, int max_box);

template <typename Scalar>
DimensionEstimate box_counting_dimension(const BasicRasterField<Scalar>& field, int min_box, int max_box) {
  return box_counting_dimension(bounded_mask(field), min_box, max_box);
}

/// Number of occupied boxes of side `box` (grid-aligned at the origin).
long long count_boxes(const Mask& mask, int box);

struct MaskComparison {
  double jaccard = 0;
  /// Symmetric Hausdorff distance between the two pixel sets, in pixel pitches.
  double hausdorff_px = 0;
};

/// Jaccard index and Hausdorff distance of two masks of equal shape. Cells set
/// in `excluded` are removed from both masks first.
MaskComparison compare_masks(const Mask& a, const Mask& b, const Mask& excluded);
MaskComparison compare_masks(const Mask& a, const Mask& b);

/// Bounded cells of two fields; Invalid cells of either field are excluded from both.
template <typename Scalar>
MaskComparison compare_masks(const BasicRasterField<Scalar>& a, const BasicRasterField<Scalar>& b) {
  if (!a.grid().same_shape(b.grid())) throw std::invalid_argument("compare_masks: grid dimensions differ");
  return compare_masks(bounded_mask(a), bounded_mask(b), invalid_mask(a) || invalid_mask(b));
}

/// Exact squared Euclidean distance (in pixels) from every cell to the nearest
/// set cell of `mask`; +inf everywhere when the mask is empty.
Eigen::ArrayXXd squared_distance_transform(const Mask& mask);

/// The Achilles-and-tortoise states: moments t_i = t1 (2 - 2^{1-i}) with
/// distances d_i = d0 2^{-i}, i = i0 .. i0 + n - 1.
struct ZenoDiagram {
  std::vector<double> times;
  std::vector<double> heights;
  int i0 = 0;
};

ZenoDiagram zeno_states(double d0, double t1, int n, int i0);

/// Draws the diagram as one-pixel-wide vertical segments of height d_i at t_i
/// over the window [0, t_max] x [0, h_max].
Mask rasterize_zeno(const ZenoDiagram& diagram, double t_max, double h_max, int px_w, int px_h);

}  // namespace fdyn
