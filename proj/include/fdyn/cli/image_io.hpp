#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fdyn/cli/scene_config.hpp"
#include "fdyn/complex_core.hpp"

namespace fdyn::cli {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBoundedColor{0, 0, 0};
inline constexpr Rgb kInvalidColor{255, 0, 255};

/// OrbitResult -> colour. Escape counts are normalised by the largest count
/// observed in the image: s = (n + 1) / (max_n + 1).
class PaletteRule {
 public:
  PaletteRule(PaletteKind kind, int max_escape);

  /// Rule normalised to the field's largest escape count.
  static PaletteRule for_field(PaletteKind kind, const RasterField& field);

  Rgb color(const OrbitResult& cell) const;
  PaletteKind kind() const { return kind_; }
  int max_escape() const { return max_escape_; }

 private:
  PaletteKind kind_;
  int max_escape_;
};

/// Binary P6 pixmap, maxval 255, row 0 first.
std::string encode_ppm(const RasterField& field, const PaletteRule& palette);

void write_image(const RasterField& field, const PaletteRule& palette, const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fdyn::cli
