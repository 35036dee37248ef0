#include "fdyn/analysis.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdyn {

long long count_boxes(const Mask& mask, int box) {
  if (box < 1) throw std::invalid_argument("count_boxes: box size must be >= 1");
  const Eigen::Index bw = (mask.cols() + box - 1) / box;
  const Eigen::Index bh = (mask.rows() + box - 1) / box;
  Mask occupied = Mask::Constant(bh, bw, false);
  for (Eigen::Index j = 0; j < mask.rows(); ++j)
    for (Eigen::Index i = 0; i < mask.cols(); ++i)
      if (mask(j, i)) occupied(j / box, i / box) = true;
  return occupied.count();
}

DimensionEstimate box_counting_dimension(const Mask& mask, int min_box, int max_box) {
  const Eigen::Index side = std::min(mask.rows(), mask.cols());
  if (min_box < 2 || min_box >= max_box || max_box > side / 4)
    throw std::invalid_argument("box_counting_dimension: need 2 <= min_box < max_box <= min(px_w, px_h)/4");
  if (!mask.any()) throw EmptyMask("box_counting_dimension: mask has no set cells");

  DimensionEstimate est;
  for (long long box = min_box; box <= max_box; box *= 2) {
    est.scales_used.push_back(static_cast<int>(box));
    est.counts.push_back(count_boxes(mask, static_cast<int>(box)));
  }
  if (est.scales_used.size() < 3)
    throw InsufficientScales("box_counting_dimension: fewer than 3 dyadic scales between the bounds");

  const auto n = static_cast<Eigen::Index>(est.scales_used.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd log_counts(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    design(k, 0) = 1.0;
    design(k, 1) = -std::log(static_cast<double>(est.scales_used[k]));
    log_counts(k) = std::log(static_cast<double>(est.counts[k]));
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(log_counts);
  est.slope = coef(1);

  const Eigen::VectorXd residual = log_counts - design * coef;
  const double ss_tot = (log_counts.array() - log_counts.mean()).square().sum();
  est.r_squared = ss_tot > 0 ? std::clamp(1.0 - residual.squaredNorm() / ss_tot, 0.0, 1.0) : 1.0;
  return est;
}

namespace {

// Stand-in for "no set cell"; dominates any squared distance inside a raster.
constexpr double kFar = 1e20;

// One-dimensional squared distance transform of a sampled function
// (lower envelope of parabolas, Felzenszwalb-Huttenlocher).
void distance_transform_1d(const double* f, double* d, Eigen::Index n, std::vector<Eigen::Index>& v,
                           std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  v.assign(static_cast<std::size_t>(n), 0);
  z.assign(static_cast<std::size_t>(n) + 1, 0);
  Eigen::Index k = 0;
  z[0] = -inf;
  z[1] = inf;
  for (Eigen::Index q = 1; q < n; ++q) {
    double s = 0;
    while (true) {
      const Eigen::Index p = v[k];
      s = ((f[q] + double(q) * double(q)) - (f[p] + double(p) * double(p))) / (2.0 * double(q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (Eigen::Index q = 0; q < n; ++q) {
    while (z[k + 1] < double(q)) ++k;
    const double diff = double(q - v[k]);
    d[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

Eigen::ArrayXXd squared_distance_transform(const Mask& mask) {
  const Eigen::Index rows = mask.rows();
  const Eigen::Index cols = mask.cols();
  // Column-major result, so columns are contiguous for the first pass.
  Eigen::ArrayXXd grid(rows, cols);
  for (Eigen::Index j = 0; j < rows; ++j)
    for (Eigen::Index i = 0; i < cols; ++i) grid(j, i) = mask(j, i) ? 0.0 : kFar;

  std::vector<Eigen::Index> v;
  std::vector<double> z;
  std::vector<double> in(static_cast<std::size_t>(std::max(rows, cols)));
  std::vector<double> out(in.size());
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) in[j] = grid(j, i);
    distance_transform_1d(in.data(), out.data(), rows, v, z);
    for (Eigen::Index j = 0; j < rows; ++j) grid(j, i) = out[j];
  }
  for (Eigen::Index j = 0; j < rows; ++j) {
    for (Eigen::Index i = 0; i < cols; ++i) in[i] = grid(j, i);
    distance_transform_1d(in.data(), out.data(), cols, v, z);
    for (Eigen::Index i = 0; i < cols; ++i) grid(j, i) = out[i];
  }
  return (grid >= kFar / 2).select(std::numeric_limits<double>::infinity(), grid);
}

namespace {

double directed_hausdorff(const Mask& from, const Eigen::ArrayXXd& to_distance) {
  double worst = 0;
  for (Eigen::Index j = 0; j < from.rows(); ++j)
    for (Eigen::Index i = 0; i < from.cols(); ++i)
      if (from(j, i)) worst = std::max(worst, to_distance(j, i));
  return std::sqrt(worst);
}

}  // namespace

MaskComparison compare_masks(const Mask& a, const Mask& b, const Mask& excluded) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != excluded.rows() ||
      a.cols() != excluded.cols())
    throw std::invalid_argument("compare_masks: mask dimensions differ");
  const Mask keep = !excluded;
  const Mask ka = a && keep;
  const Mask kb = b && keep;
  const auto inter = (ka && kb).count();
  const auto uni = (ka || kb).count();
  if (uni == 0) throw UndefinedComparison("compare_masks: both masks are empty");

  MaskComparison cmp;
  cmp.jaccard = static_cast<double>(inter) / static_cast<double>(uni);
  if (!ka.any() || !kb.any()) {
    cmp.hausdorff_px = std::numeric_limits<double>::infinity();
    return cmp;
  }
  const double ab = directed_hausdorff(ka, squared_distance_transform(kb));
  const double ba = directed_hausdorff(kb, squared_distance_transform(ka));
  cmp.hausdorff_px = std::max(ab, ba);
  return cmp;
}

MaskComparison compare_masks(const Mask& a, const Mask& b) {
  return compare_masks(a, b, Mask::Constant(a.rows(), a.cols(), false));
}

ZenoDiagram zeno_states(double d0, double t1, int n, int i0) {
  if (!(d0 > 0) || !(t1 > 0) || !std::isfinite(d0) || !std::isfinite(t1))
    throw std::invalid_argument("zeno_states: d0 and t1 must be positive");
  if (n < 1 || i0 < 0) throw std::invalid_argument("zeno_states: need n >= 1 and i0 >= 0");
  ZenoDiagram diagram;
  diagram.i0 = i0;
  diagram.times.reserve(static_cast<std::size_t>(n));
  diagram.heights.reserve(static_cast<std::size_t>(n));
  for (int i = i0; i < i0 + n; ++i) {
    diagram.times.push_back(t1 * (2.0 - std::ldexp(1.0, 1 - i)));
    diagram.heights.push_back(std::ldexp(d0, -i));
  }
  return diagram;
}

Mask rasterize_zeno(const ZenoDiagram& diagram, double t_max, double h_max, int px_w, int px_h) {
  if (px_w < 1 || px_h < 1 || !(t_max > 0) || !(h_max > 0))
    throw std::invalid_argument("rasterize_zeno: invalid window");
  Mask m = Mask::Constant(px_h, px_w, false);
  for (std::size_t k = 0; k < diagram.times.size(); ++k) {
    const auto col = std::clamp<long>(std::lround(std::floor(diagram.times[k] / t_max * px_w)), 0, px_w - 1);
    const long rows = std::clamp<long>(std::lround(diagram.heights[k] / h_max * px_h), 1, px_h);
    for (long r = 0; r < rows; ++r) m(px_h - 1 - r, col) = true;
  }
  return m;
}

}  // namespace fdyn
