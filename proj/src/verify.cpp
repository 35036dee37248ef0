#include "fdyn/verify.hpp"

#include <algorithm>
#include <limits>

#include "fdyn/fmi.hpp"

namespace fdyn {

FmtCheck verify_fmt(const ComplexPoint& c, const MapSpec& map, const GridSpec& domain, const GridSpec& dst_grid,
                    const IterParams& params, int supersample, int pad_px, long n_pairs) {
  if (pad_px < 0) throw std::invalid_argument("verify_fmt: pad_px must be >= 0");
  const GridSpec padded(domain.center(), domain.width() + 2 * pad_px * domain.pitch_x(),
                        domain.height() + 2 * pad_px * domain.pitch_y(), domain.px_w() + 2 * pad_px,
                        domain.px_h() + 2 * pad_px);
  RasterField source = render_julia(padded, c, params);
  RasterField direct = forward_image(source, map, dst_grid, supersample);
  const FmiScene scene{dst_grid, c, map, params, FmiMode::JuliaFmi, domain};
  RasterField pulled = fmi_julia(scene);
  const MaskComparison cmp = compare_masks(direct, pulled);

  std::optional<BilipschitzEstimate> lip;
  try {
    lip = estimate_bilipschitz(map, domain, n_pairs);
  } catch (const InsufficientSamples&) {
  }
  return {std::move(source), std::move(direct), std::move(pulled), cmp, lip};
}

GridSpec image_window(const MapSpec& map, const GridSpec& domain, int px_w, int px_h) {
  constexpr int kLattice = 65;
  double re_lo = std::numeric_limits<double>::infinity();
  double re_hi = -re_lo;
  double im_lo = re_lo;
  double im_hi = -re_lo;
  for (int j = 0; j < kLattice; ++j) {
    for (int i = 0; i < kLattice; ++i) {
      const ComplexPoint z(domain.re_min() + domain.width() * i / (kLattice - 1),
                           domain.im_min() + domain.height() * j / (kLattice - 1));
      const auto w = try_eval_forward(map, z);
      if (!w) continue;
      re_lo = std::min(re_lo, w->real());
      re_hi = std::max(re_hi, w->real());
      im_lo = std::min(im_lo, w->imag());
      im_hi = std::max(im_hi, w->imag());
    }
  }
  if (!(re_lo <= re_hi)) throw DomainError("image_window: the map is undefined on the whole domain");
  const double w = std::max(re_hi - re_lo, 1e-12) * 1.05;
  const double h = std::max(im_hi - im_lo, 1e-12) * 1.05;
  return GridSpec({(re_lo + re_hi) / 2, (im_lo + im_hi) / 2}, w, h, px_w, px_h);
}

}  // namespace fdyn
