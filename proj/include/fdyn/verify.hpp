#pragma once

#include <optional>

#include "fdyn/analysis.hpp"
#include "fdyn/complex_core.hpp"
#include "fdyn/fji.hpp"
#include "fdyn/maps.hpp"

namespace fdyn {

struct FmtCheck {
  /// K_c over the domain padded by pad_px pixels on every side.
  RasterField source;
  /// Direct image f(K_c) splatted onto the destination grid.
  RasterField direct;
  /// Pullback render on the destination grid, restricted to the domain.
  RasterField pulled;
  MaskComparison comparison;
  /// Empty when too few sample pairs fall inside the map's domain.
  std::optional<BilipschitzEstimate> lipschitz;
};

/// Compares the two sides of f(K_c) = K_c^f on a domain A: the forward image
/// of the rendered K_c and the pullback render whose preimages lie in A.
/// The source is rendered on A widened by pad_px pixels, so destination
/// pixels near the image of A's edge receive samples from both sides.
FmtCheck verify_fmt(const ComplexPoint& c, const MapSpec& map, const GridSpec& domain, const GridSpec& dst_grid,
                    const IterParams& params, int supersample, int pad_px, long n_pairs);

/// Axis-aligned window around f(A), sampled on a 65 x 65 lattice and widened by 5%.
GridSpec image_window(const MapSpec& map, const GridSpec& domain, int px_w, int px_h);

}  // namespace fdyn
