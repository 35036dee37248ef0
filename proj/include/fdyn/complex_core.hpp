#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fdyn {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Raised when a map, flow or inverse is evaluated outside its domain
/// (poles, branch points, finite-time blow-up).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
inline bool is_finite(const Complex<Scalar>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Rectangular window of the complex plane sampled at pixel centers.
/// Pixel (0,0) is the top-left corner: minimal real part, maximal imaginary part.
template <typename Scalar>
class BasicGridSpec {
 public:
  BasicGridSpec(Complex<Scalar> center, Scalar width, Scalar height, int px_w, int px_h)
      : center_(center), width_(width), height_(height), px_w_(px_w), px_h_(px_h) {
    if (!is_finite(center) || !std::isfinite(width) || !std::isfinite(height))
      throw std::invalid_argument("grid: non-finite center or extent");
    if (!(width > 0) || !(height > 0))
      throw std::invalid_argument("grid: width and height must be positive");
    if (px_w < 1 || px_h < 1)
      throw std::invalid_argument("grid: pixel dimensions must be >= 1");
  }

  /// Window [re_min, re_max] x [im_min, im_max].
  static BasicGridSpec from_bounds(Scalar re_min, Scalar re_max, Scalar im_min, Scalar im_max,
                                   int px_w, int px_h) {
    return BasicGridSpec({(re_min + re_max) / 2, (im_min + im_max) / 2}, re_max - re_min,
                         im_max - im_min, px_w, px_h);
  }

  Complex<Scalar> center() const { return center_; }
  Scalar width() const { return width_; }
  Scalar height() const { return height_; }
  int px_w() const { return px_w_; }
  int px_h() const { return px_h_; }
  std::size_t size() const { return static_cast<std::size_t>(px_w_) * static_cast<std::size_t>(px_h_); }

  Scalar pitch_x() const { return width_ / px_w_; }
  Scalar pitch_y() const { return height_ / px_h_; }
  Scalar re_min() const { return center_.real() - width_ / 2; }
  Scalar re_max() const { return center_.real() + width_ / 2; }
  Scalar im_min() const { return center_.imag() - height_ / 2; }
  Scalar im_max() const { return center_.imag() + height_ / 2; }

  bool contains(const Complex<Scalar>& z) const {
    return z.real() >= re_min() && z.real() <= re_max() && z.imag() >= im_min() &&
           z.imag() <= im_max();
  }

  bool same_shape(const BasicGridSpec& other) const {
    return px_w_ == other.px_w_ && px_h_ == other.px_h_;
  }

  friend bool operator==(const BasicGridSpec&, const BasicGridSpec&) = default;

 private:
  Complex<Scalar> center_;
  Scalar width_;
  Scalar height_;
  int px_w_;
  int px_h_;
};

/// Center of pixel (i, j). Row index j decreases the imaginary part.
template <typename Scalar>
Complex<Scalar> point_of(const BasicGridSpec<Scalar>& grid, int i, int j) {
  if (i < 0 || i >= grid.px_w() || j < 0 || j >= grid.px_h())
    throw std::out_of_range("point_of: pixel index (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside grid");
  // (i + 1/2) * width / px_w keeps the center pixel of odd grids exactly on the center.
  const Scalar re = -grid.width() / 2 + (Scalar(i) + Scalar(0.5)) * grid.width() / grid.px_w();
  const Scalar im = grid.height() / 2 - (Scalar(j) + Scalar(0.5)) * grid.height() / grid.px_h();
  return {grid.center().real() + re, grid.center().imag() + im};
}

struct PixelIndex {
  int i;
  int j;
  friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Pixel whose center is nearest to z, or nullopt when z lies outside the window.
template <typename Scalar>
std::optional<PixelIndex> pixel_of(const BasicGridSpec<Scalar>& grid, const Complex<Scalar>& z) {
  if (!is_finite(z)) throw std::invalid_argument("pixel_of: non-finite point");
  if (!grid.contains(z)) return std::nullopt;
  const Scalar u = (z.real() - grid.re_min()) * grid.px_w() / grid.width();
  const Scalar v = (grid.im_max() - z.imag()) * grid.px_h() / grid.height();
  int i = static_cast<int>(std::floor(u));
  int j = static_cast<int>(std::floor(v));
  // Points on the far edges belong to the last pixel.
  if (i >= grid.px_w()) i = grid.px_w() - 1;
  if (j >= grid.px_h()) j = grid.px_h() - 1;
  if (i < 0) i = 0;
  if (j < 0) j = 0;
  return PixelIndex{i, j};
}

enum class OrbitStatus : std::uint8_t { Bounded, Escaped, Invalid };

/// Boundedness verdict for one seed. `iteration` is meaningful only when Escaped.
template <typename Scalar>
struct BasicOrbitResult {
  OrbitStatus status = OrbitStatus::Invalid;
  int iteration = 0;
  Scalar last_magnitude = 0;

  static BasicOrbitResult bounded(Scalar magnitude) { return {OrbitStatus::Bounded, 0, magnitude}; }
  static BasicOrbitResult escaped(int n, Scalar magnitude) {
    return {OrbitStatus::Escaped, n, magnitude};
  }
  static BasicOrbitResult invalid() { return {OrbitStatus::Invalid, 0, 0}; }

  bool is_bounded() const { return status == OrbitStatus::Bounded; }
  bool is_escaped() const { return status == OrbitStatus::Escaped; }
  bool is_invalid() const { return status == OrbitStatus::Invalid; }

  friend bool operator==(const BasicOrbitResult&, const BasicOrbitResult&) = default;
};

/// Per-pixel classification results over a grid, row-major from the top-left pixel.
template <typename Scalar>
class BasicRasterField {
 public:
  using Cell = BasicOrbitResult<Scalar>;

  explicit BasicRasterField(BasicGridSpec<Scalar> grid)
      : grid_(std::move(grid)), cells_(grid_.size()) {}

  const BasicGridSpec<Scalar>& grid() const { return grid_; }
  int px_w() const { return grid_.px_w(); }
  int px_h() const { return grid_.px_h(); }
  std::size_t size() const { return cells_.size(); }

  Cell& at(int i, int j) { return cells_[index(i, j)]; }
  const Cell& at(int i, int j) const { return cells_[index(i, j)]; }

  std::vector<Cell>& cells() { return cells_; }
  const std::vector<Cell>& cells() const { return cells_; }

  std::size_t bounded_count() const {
    std::size_t n = 0;
    for (const auto& c : cells_) n += c.is_bounded() ? 1 : 0;
    return n;
  }

  /// Cell-for-cell equality of the classification; grids must match too.
  friend bool operator==(const BasicRasterField& a, const BasicRasterField& b) {
    return a.grid_ == b.grid_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= grid_.px_w() || j < 0 || j >= grid_.px_h())
      throw std::out_of_range("raster index outside grid");
    return static_cast<std::size_t>(j) * grid_.px_w() + i;
  }

  BasicGridSpec<Scalar> grid_;
  std::vector<Cell> cells_;
};

using ComplexPoint = Complex<double>;
using GridSpec = BasicGridSpec<double>;
using OrbitResult = BasicOrbitResult<double>;
using RasterField = BasicRasterField<double>;

}  // namespace fdyn
