#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdyn/complex_core.hpp"
#include "fdyn/parallel.hpp"

namespace fdyn {

template <typename Scalar>
struct BasicIterParams {
  int max_iter = 500;
  Scalar escape_radius = 2;

  void validate() const {
    if (max_iter < 1) throw std::invalid_argument("iter: max_iter must be >= 1");
    if (!std::isfinite(escape_radius) || !(escape_radius > 0))
      throw std::invalid_argument("iter: escape_radius must be a positive finite number");
  }

  /// Escape past the radius is permanent for z^2 + c only when R >= max(2, |c|).
  void validate_for(const Complex<Scalar>& c) const {
    validate();
    if (std::abs(c) <= 2 && escape_radius < 2)
      throw std::invalid_argument("iter: escape_radius must be >= 2 when |c| <= 2");
  }

  friend bool operator==(const BasicIterParams&, const BasicIterParams&) = default;
};

using IterParams = BasicIterParams<double>;

namespace detail {

// Unchecked kernel shared by every engine. Written on components so the hot
// loop avoids the NaN-recovery path of std::complex multiplication.
template <typename Scalar>
BasicOrbitResult<Scalar> iterate_quadratic(Complex<Scalar> z0, Complex<Scalar> c,
                                           const BasicIterParams<Scalar>& p) {
  const Scalar r2 = p.escape_radius * p.escape_radius;
  Scalar x = z0.real();
  Scalar y = z0.imag();
  const Scalar cx = c.real();
  const Scalar cy = c.imag();
  for (int n = 0; n < p.max_iter; ++n) {
    const Scalar xx = x * x;
    const Scalar yy = y * y;
    const Scalar m2 = xx + yy;
    if (!std::isfinite(m2)) {
      // |z|^2 overflowed; |z| itself may still be finite and inside the radius.
      const Scalar m = std::hypot(x, y);
      if (!std::isfinite(m)) return BasicOrbitResult<Scalar>::escaped(n, std::numeric_limits<Scalar>::max());
      if (m > p.escape_radius) return BasicOrbitResult<Scalar>::escaped(n, m);
    } else if (m2 > r2) {
      return BasicOrbitResult<Scalar>::escaped(n, std::sqrt(m2));
    }
    const Scalar xy = x * y;
    x = xx - yy + cx;
    y = xy + xy + cy;
  }
  const Scalar m = std::hypot(x, y);
  return BasicOrbitResult<Scalar>::bounded(std::isfinite(m) ? m : std::numeric_limits<Scalar>::max());
}

template <typename Scalar, typename SeedFn>
BasicRasterField<Scalar> fill_field(const BasicGridSpec<Scalar>& grid, SeedFn&& classify_pixel) {
  BasicRasterField<Scalar> field(grid);
  auto& cells = field.cells();
  const int w = grid.px_w();
  parallel_for(static_cast<std::size_t>(grid.px_h()), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < w; ++i) cells[row * w + i] = classify_pixel(point_of(grid, i, j));
  });
  return field;
}

}  // namespace detail

/// Iterates z <- z^2 + c from z0. Escaped(n) at the first n < max_iter with
/// |z_n| > escape_radius (or a non-finite z_n); otherwise Bounded with |z_max_iter|.
template <typename Scalar>
BasicOrbitResult<Scalar> classify_orbit(const Complex<Scalar>& z0, const Complex<Scalar>& c,
                                        const BasicIterParams<Scalar>& p) {
  if (!is_finite(z0) || !is_finite(c)) throw std::invalid_argument("classify_orbit: non-finite seed");
  p.validate();
  return detail::iterate_quadratic(z0, c, p);
}

/// Filled Julia set K_c: every pixel center is a seed z0.
template <typename Scalar>
BasicRasterField<Scalar> render_julia(const BasicGridSpec<Scalar>& grid, const Complex<Scalar>& c,
                                      const BasicIterParams<Scalar>& p) {
  if (!is_finite(c)) throw std::invalid_argument("render_julia: non-finite c");
  p.validate_for(c);
  return detail::fill_field(grid, [&](const Complex<Scalar>& z) {
    return detail::iterate_quadratic(z, c, p);
  });
}

/// Mandelbrot set: every pixel center is a parameter c, orbit of 0.
template <typename Scalar>
BasicRasterField<Scalar> render_mandelbrot(const BasicGridSpec<Scalar>& grid,
                                           const BasicIterParams<Scalar>& p) {
  p.validate();
  if (p.escape_radius < 2) throw std::invalid_argument("render_mandelbrot: escape_radius must be >= 2");
  return detail::fill_field(grid, [&](const Complex<Scalar>& c) {
    return detail::iterate_quadratic(Complex<Scalar>(0, 0), c, p);
  });
}

/// Raster analogue of J = dK under 4-connectivity. A Bounded cell stays Bounded
/// iff it touches the window edge or has a 4-neighbour that is not Bounded;
/// interior Bounded cells become Escaped(0). Other cells are copied unchanged.
template <typename Scalar>
BasicRasterField<Scalar> extract_boundary(const BasicRasterField<Scalar>& field) {
  BasicRasterField<Scalar> out = field;
  const int w = field.px_w();
  const int h = field.px_h();
  const auto& src = field.cells();
  auto& dst = out.cells();
  auto bounded = [&](int i, int j) {
    return src[static_cast<std::size_t>(j) * w + i].is_bounded();
  };
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      if (!bounded(i, j)) continue;
      const bool edge = i == 0 || j == 0 || i == w - 1 || j == h - 1;
      if (edge) continue;
      const bool open = !bounded(i - 1, j) || !bounded(i + 1, j) || !bounded(i, j - 1) ||
                        !bounded(i, j + 1);
      if (!open) {
        auto& cell = dst[static_cast<std::size_t>(j) * w + i];
        cell = BasicOrbitResult<Scalar>::escaped(0, cell.last_magnitude);
      }
    }
  }
  return out;
}

}  // namespace fdyn
