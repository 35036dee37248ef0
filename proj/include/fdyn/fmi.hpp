#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fdyn/complex_core.hpp"
#include "fdyn/fji.hpp"
#include "fdyn/maps.hpp"
#include "fdyn/parallel.hpp"

namespace fdyn {

enum class FmiMode { JuliaFmi, MandelbrotFmi };

template <typename Scalar>
struct BasicFmiScene {
  BasicGridSpec<Scalar> grid;
  Complex<Scalar> c{0, 0};
  BasicMapSpec<Scalar> map;
  BasicIterParams<Scalar> params;
  FmiMode mode = FmiMode::JuliaFmi;
  /// Optional source domain A: pixels whose pullback falls outside it are Invalid.
  std::optional<BasicGridSpec<Scalar>> domain;
};

using FmiScene = BasicFmiScene<double>;

namespace detail {

template <typename Scalar>
std::optional<Complex<Scalar>> pullback(const BasicFmiScene<Scalar>& scene, const Complex<Scalar>& z) {
  auto w = try_eval_inverse(scene.map, z);
  if (!w) return std::nullopt;
  if (scene.domain && !scene.domain->contains(*w)) return std::nullopt;
  return w;
}

}  // namespace detail

/// Mapped Julia set f(K_c). Each pixel z0 is pulled back to w0 = f^{-1}(z0) and
/// w0 is classified under z^2 + c; with f bi-Lipschitz the orbit z_n = f(w_n)
/// is bounded exactly when w_n is. The escape count of the w-orbit is kept.
template <typename Scalar>
BasicRasterField<Scalar> fmi_julia(const BasicFmiScene<Scalar>& scene) {
  if (scene.mode != FmiMode::JuliaFmi) throw std::invalid_argument("fmi_julia: scene mode is not JuliaFmi");
  if (!is_finite(scene.c)) throw std::invalid_argument("fmi_julia: non-finite c");
  scene.params.validate_for(scene.c);
  validate_map(scene.map);
  return detail::fill_field(scene.grid, [&](const Complex<Scalar>& z) {
    const auto w = detail::pullback(scene, z);
    if (!w) return BasicOrbitResult<Scalar>::invalid();
    return detail::iterate_quadratic(*w, scene.c, scene.params);
  });
}

/// Mapped Mandelbrot set f(M): each pixel c' is classified through the orbit
/// of 0 under z^2 + f^{-1}(c').
template <typename Scalar>
BasicRasterField<Scalar> fmi_mandelbrot(const BasicFmiScene<Scalar>& scene) {
  if (scene.mode != FmiMode::MandelbrotFmi)
    throw std::invalid_argument("fmi_mandelbrot: scene mode is not MandelbrotFmi");
  scene.params.validate();
  if (scene.params.escape_radius < 2) throw std::invalid_argument("fmi_mandelbrot: escape_radius must be >= 2");
  validate_map(scene.map);
  return detail::fill_field(scene.grid, [&](const Complex<Scalar>& z) {
    const auto c = detail::pullback(scene, z);
    if (!c) return BasicOrbitResult<Scalar>::invalid();
    return detail::iterate_quadratic(Complex<Scalar>(0, 0), *c, scene.params);
  });
}

/// Direct image f(F) of the Bounded cells of `src`, splatted onto `dst_grid`.
/// Each Bounded source pixel contributes supersample^2 stratified samples; the
/// destination pixel nearest each image point is marked Bounded. Unmarked
/// cells are Escaped(0). Samples outside the forward domain are skipped.
template <typename Scalar>
BasicRasterField<Scalar> forward_image(const BasicRasterField<Scalar>& src, const BasicMapSpec<Scalar>& map,
                                       const BasicGridSpec<Scalar>& dst_grid, int supersample) {
  if (supersample < 1) throw std::invalid_argument("forward_image: supersample must be >= 1");
  validate_map(map);
  const auto& sg = src.grid();
  const int sw = sg.px_w();
  std::vector<std::uint8_t> marks(dst_grid.size(), 0);
  const Scalar dx = sg.pitch_x();
  const Scalar dy = sg.pitch_y();

  parallel_for(static_cast<std::size_t>(sg.px_h()), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < sw; ++i) {
      if (!src.cells()[row * sw + i].is_bounded()) continue;
      const Complex<Scalar> center = point_of(sg, i, j);
      for (int sy = 0; sy < supersample; ++sy) {
        const Scalar oy = ((Scalar(sy) + Scalar(0.5)) / supersample - Scalar(0.5)) * dy;
        for (int sx = 0; sx < supersample; ++sx) {
          const Scalar ox = ((Scalar(sx) + Scalar(0.5)) / supersample - Scalar(0.5)) * dx;
          const auto image = try_eval_forward(map, Complex<Scalar>(center.real() + ox, center.imag() - oy));
          if (!image) continue;
          const auto px = pixel_of(dst_grid, *image);
          if (!px) continue;
          // Every writer stores the same value.
          std::atomic_ref<std::uint8_t>(marks[static_cast<std::size_t>(px->j) * dst_grid.px_w() + px->i])
              .store(1, std::memory_order_relaxed);
        }
      }
    }
  });

  BasicRasterField<Scalar> out(dst_grid);
  auto& cells = out.cells();
  for (std::size_t k = 0; k < cells.size(); ++k)
    cells[k] = marks[k] ? BasicOrbitResult<Scalar>::bounded(0) : BasicOrbitResult<Scalar>::escaped(0, 0);
  return out;
}

template <typename Scalar>
struct BasicTrajectoryFrames {
  /// Element k: pixels classified through the k-fold inverse f^{-k}.
  std::vector<BasicRasterField<Scalar>> pullback;
  /// Element k: direct image of the k = 0 field under f^k, for cross-checking.
  std::vector<BasicRasterField<Scalar>> pushforward;
};

using TrajectoryFrames = BasicTrajectoryFrames<double>;

/// Discrete fractal trajectory J_0, J_1 = f(J_0), ..., J_{k_max}.
template <typename Scalar>
BasicTrajectoryFrames<Scalar> discrete_trajectory(const Complex<Scalar>& c, const BasicMapSpec<Scalar>& map,
                                                  int k_max, const BasicGridSpec<Scalar>& grid,
                                                  const BasicIterParams<Scalar>& params, int supersample = 3) {
  if (k_max < 0) throw std::invalid_argument("discrete_trajectory: k_max must be >= 0");
  validate_map(map);
  BasicTrajectoryFrames<Scalar> frames;
  frames.pullback.reserve(static_cast<std::size_t>(k_max) + 1);
  frames.pushforward.reserve(static_cast<std::size_t>(k_max) + 1);

  frames.pullback.push_back(render_julia(grid, c, params));
  frames.pushforward.push_back(frames.pullback.front());
  for (int k = 1; k <= k_max; ++k) {
    const BasicMapSpec<Scalar> fk = iterate_map(map, k);
    BasicFmiScene<Scalar> scene{grid, c, fk, params, FmiMode::JuliaFmi, std::nullopt};
    frames.pullback.push_back(fmi_julia(scene));
    frames.pushforward.push_back(forward_image(frames.pullback.front(), fk, grid, supersample));
  }
  return frames;
}

}  // namespace fdyn
