#pragma once

#include "problife/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace problife {

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Color&) const = default;
};

inline constexpr Color kWhite{255, 255, 255};
inline constexpr Color kBlack{0, 0, 0};

struct RenderSpec {
  int cell_size = 1;
  bool gridlines = false;
  Color gridline_color = kBlack;
  Color background = kWhite;  ///< used for cells whose value is exactly 0
};

/// Row-major RGB raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Color> pixels;

  Color& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  Color at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const Image&) const = default;
};

/// Two linear RGB segments: blue (0) -> green (0.5) -> red (1), channels
/// rounded half-up. Throws std::invalid_argument outside [0,1]. Value 0 maps
/// to blue here; render_grid substitutes the background color for it.
Color value_to_color(double v);

/// Each cell becomes a cell_size square. With gridlines, a 1-pixel line
/// surrounds every cell (including the outer frame), so the image is
/// width*cell_size + width + 1 pixels wide.
Image render_grid(const GridState& s, const RenderSpec& spec);

/// Binary P6. Returns the number of bytes written; throws std::ios_base::failure
/// if the stream goes bad.
std::size_t write_ppm(const Image& img, std::ostream& sink);

/// Reads a binary P6 image with maxval 255.
Image read_ppm(std::istream& source);

/// Substitutes a generation index into a file-name template. `{}` inserts the
/// plain number, `{:0N}` pads it to N digits with zeros.
std::string format_frame_name(std::string_view naming, std::uint64_t generation);

/// Writes one PPM per state, named by the state's generation index.
/// Throws std::invalid_argument for an empty sequence or a template with no
/// placeholder, std::ios_base::failure on I/O errors.
std::vector<std::filesystem::path> render_sequence(std::span<const GridState> states,
                                                   const RenderSpec& spec,
                                                   std::string_view naming);

}  // namespace problife
