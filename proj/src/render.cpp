#include "problife/render.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace problife {

namespace {

std::uint8_t channel(double x) { return static_cast<std::uint8_t>(std::floor(x * 255.0 + 0.5)); }

// Placeholder location within a naming template.
struct Placeholder {
  std::size_t begin;
  std::size_t end;  // one past '}'
  int width;
};

Placeholder find_placeholder(std::string_view naming) {
  const auto open = naming.find('{');
  if (open == std::string_view::npos) {
    throw std::invalid_argument("file-name template needs a {} or {:0N} placeholder");
  }
  const auto close = naming.find('}', open);
  if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder");
  const auto spec = naming.substr(open + 1, close - open - 1);
  int width = 0;
  if (!spec.empty()) {
    if (spec.size() < 3 || spec[0] != ':' || spec[1] != '0') {
      throw std::invalid_argument("unsupported placeholder {" + std::string(spec) + "}");
    }
    const auto digits = spec.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), width);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || width > 32) {
      throw std::invalid_argument("unsupported placeholder {" + std::string(spec) + "}");
    }
  }
  return {open, close + 1, width};
}

}  // namespace

Color value_to_color(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("value_to_color: value outside [0,1]");
  if (v <= 0.5) {
    const double t = v / 0.5;
    return {0, channel(t), channel(1.0 - t)};
  }
  const double t = (v - 0.5) / 0.5;
  return {channel(t), channel(1.0 - t), 0};
}

Image render_grid(const GridState& s, const RenderSpec& spec) {
  if (spec.cell_size < 1) throw std::invalid_argument("render: cell_size must be >= 1");
  const int line = spec.gridlines ? 1 : 0;
  const int pitch = spec.cell_size + line;

  Image img;
  img.width = s.width() * pitch + line;
  img.height = s.height() * pitch + line;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, spec.gridline_color);

  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      const double v = s(x, y);
      const Color c = v == 0.0 ? spec.background : value_to_color(v);
      for (int py = 0; py < spec.cell_size; ++py) {
        for (int px = 0; px < spec.cell_size; ++px) {
          img.at(line + x * pitch + px, line + y * pitch + py) = c;
        }
      }
    }
  }
  return img;
}

std::size_t write_ppm(const Image& img, std::ostream& sink) {
  const std::string header =
      "P6\n" + std::to_string(img.width) + ' ' + std::to_string(img.height) + "\n255\n";
  std::string payload;
  payload.reserve(img.pixels.size() * 3);
  for (const Color c : img.pixels) {
    payload += static_cast<char>(c.r);
    payload += static_cast<char>(c.g);
    payload += static_cast<char>(c.b);
  }
  sink.write(header.data(), static_cast<std::streamsize>(header.size()));
  sink.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!sink) throw std::ios_base::failure("write_ppm: write failed");
  return header.size() + payload.size();
}

Image read_ppm(std::istream& source) {
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  source >> magic >> width >> height >> maxval;
  if (!source || magic != "P6" || width <= 0 || height <= 0 || maxval != 255) {
    throw std::runtime_error("read_ppm: unsupported header");
  }
  source.get();  // single whitespace before the raster

  Image img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  std::vector<char> raw(img.pixels.size() * 3);
  source.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (source.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw std::runtime_error("read_ppm: truncated raster");
  }
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = {static_cast<std::uint8_t>(raw[3 * i]), static_cast<std::uint8_t>(raw[3 * i + 1]),
                     static_cast<std::uint8_t>(raw[3 * i + 2])};
  }
  return img;
}

std::string format_frame_name(std::string_view naming, std::uint64_t generation) {
  const auto ph = find_placeholder(naming);
  std::string number = std::to_string(generation);
  if (number.size() < static_cast<std::size_t>(ph.width)) {
    number.insert(0, ph.width - number.size(), '0');
  }
  std::string out(naming.substr(0, ph.begin));
  out += number;
  out += naming.substr(ph.end);
  return out;
}

std::vector<std::filesystem::path> render_sequence(std::span<const GridState> states,
                                                   const RenderSpec& spec,
                                                   std::string_view naming) {
  if (states.empty()) throw std::invalid_argument("render_sequence: no states");
  find_placeholder(naming);

  std::vector<std::filesystem::path> paths;
  paths.reserve(states.size());
  for (const auto& s : states) {
    std::filesystem::path path = format_frame_name(naming, s.generation());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + path.string());
    write_ppm(render_grid(s, spec), file);
    file.close();
    if (!file) throw std::ios_base::failure("cannot write " + path.string());
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace problife
