#include "fdyn/cli/image_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace fdyn::cli {

namespace {

// Every channel is non-decreasing along the ramp, so luminance stays monotone after rounding.
constexpr std::array<Rgb, 5> kClassicRamp = {{
    {0, 7, 60},
    {32, 107, 203},
    {120, 170, 220},
    {240, 210, 230},
    {255, 250, 240},
}};

std::uint8_t lerp(std::uint8_t a, std::uint8_t b, double s) {
  return static_cast<std::uint8_t>(std::lround(a + (b - a) * s));
}

Rgb classic(double s) {
  const double x = std::clamp(s, 0.0, 1.0) * (kClassicRamp.size() - 1);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(x), kClassicRamp.size() - 2);
  const double f = x - static_cast<double>(k);
  const Rgb& a = kClassicRamp[k];
  const Rgb& b = kClassicRamp[k + 1];
  return {lerp(a.r, b.r, f), lerp(a.g, b.g, f), lerp(a.b, b.b, f)};
}

void ensure_parent(const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

PaletteRule::PaletteRule(PaletteKind kind, int max_escape) : kind_(kind), max_escape_(max_escape) {
  if (max_escape < 0) throw std::invalid_argument("palette: max_escape must be >= 0");
}

PaletteRule PaletteRule::for_field(PaletteKind kind, const RasterField& field) {
  int max_n = 0;
  for (const auto& cell : field.cells())
    if (cell.is_escaped()) max_n = std::max(max_n, cell.iteration);
  return PaletteRule(kind, max_n);
}

Rgb PaletteRule::color(const OrbitResult& cell) const {
  if (cell.is_bounded()) return kBoundedColor;
  if (cell.is_invalid()) return kInvalidColor;
  const int n = std::clamp(cell.iteration, 0, max_escape_);
  const double s = (n + 1.0) / (max_escape_ + 1.0);
  switch (kind_) {
    case PaletteKind::Grayscale: {
      // Never 0, which is reserved for Bounded.
      const auto v = static_cast<std::uint8_t>(std::max(1L, std::lround(255.0 * s)));
      return {v, v, v};
    }
    case PaletteKind::Classic:
      return classic(std::sqrt(s));
    case PaletteKind::Mono:
      return {255, 255, 255};
  }
  return {255, 255, 255};
}

std::string encode_ppm(const RasterField& field, const PaletteRule& palette) {
  std::string out = "P6\n" + std::to_string(field.px_w()) + " " + std::to_string(field.px_h()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * field.cells().size());
  std::size_t k = header;
  for (const auto& cell : field.cells()) {
    const Rgb c = palette.color(cell);
    out[k++] = static_cast<char>(c.r);
    out[k++] = static_cast<char>(c.g);
    out[k++] = static_cast<char>(c.b);
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
}

void write_image(const RasterField& field, const PaletteRule& palette, const std::filesystem::path& path) {
  write_text(path, encode_ppm(field, palette));
}

}  // namespace fdyn::cli
