#include "problife/grid.hpp"

#include "problife/rules.hpp"

#include <charconv>
#include <cmath>

namespace problife {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    raw = trim(raw);
    if (raw.empty() || raw.front() == '#') continue;
    lines.push_back({number, raw});
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("pattern: line " + std::to_string(line) + ": " + msg, line);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

GridState parse_ascii(const std::vector<Line>& lines) {
  const auto width = lines.front().text.size();
  GridState::Values values(static_cast<Eigen::Index>(lines.size()),
                           static_cast<Eigen::Index>(width));
  for (std::size_t y = 0; y < lines.size(); ++y) {
    const auto& [number, row] = lines[y];
    if (row.size() != width) fail(number, "ragged row (expected " + std::to_string(width) + " cells)");
    for (std::size_t x = 0; x < width; ++x) {
      switch (row[x]) {
        case '.': values(y, x) = 0.0; break;
        case 'O': values(y, x) = 1.0; break;
        default: fail(number, std::string("unexpected character '") + row[x] + "'");
      }
    }
  }
  return GridState(std::move(values));
}

GridState parse_numeric(const std::vector<Line>& lines) {
  const auto header = tokens(lines.front().text);
  long width = 0, height = 0;
  if (header.size() != 3 || header[0] != "P" || !parse_number(header[1], width) ||
      !parse_number(header[2], height)) {
    fail(lines.front().number, "expected header \"P <width> <height>\"");
  }
  if (width <= 0 || height <= 0) fail(lines.front().number, "zero width or height");
  if (lines.size() - 1 != static_cast<std::size_t>(height)) {
    fail(lines.back().number, "expected " + std::to_string(height) + " rows, found " +
                                  std::to_string(lines.size() - 1));
  }

  GridState::Values values(height, width);
  for (long y = 0; y < height; ++y) {
    const auto& [number, row] = lines[static_cast<std::size_t>(y) + 1];
    const auto cells = tokens(row);
    if (cells.size() != static_cast<std::size_t>(width)) {
      fail(number, "expected " + std::to_string(width) + " values, found " +
                       std::to_string(cells.size()));
    }
    for (long x = 0; x < width; ++x) {
      double v = 0.0;
      if (!parse_number(cells[x], v)) fail(number, "malformed number '" + std::string(cells[x]) + "'");
      if (!(v >= 0.0 && v <= 1.0)) fail(number, "value outside [0,1]");
      values(y, x) = v;
    }
  }
  return GridState(std::move(values));
}

}  // namespace

GridState parse_pattern(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("pattern: empty pattern (zero width or height)", 0);
  if (lines.front().text.front() == 'P') return parse_numeric(lines);
  return parse_ascii(lines);
}

std::string format_fixed(double value, int precision) {
  char buf[400];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string format_pattern(const GridState& s, int precision) {
  std::string out;
  if (s.is_binary()) {
    for (int y = 0; y < s.height(); ++y) {
      for (int x = 0; x < s.width(); ++x) out += s(x, y) == 1.0 ? 'O' : '.';
      out += '\n';
    }
    return out;
  }
  out += "P " + std::to_string(s.width()) + ' ' + std::to_string(s.height()) + '\n';
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      if (x) out += ' ';
      out += format_fixed(s(x, y), precision);
    }
    out += '\n';
  }
  return out;
}

}  // namespace problife
