#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace problife {

/// Cell coordinate: x is the column, y the row, origin top-left.
struct Coord {
  int x = 0;
  int y = 0;
  bool operator==(const Coord&) const = default;
};

/// What a neighbor lookup past the grid edge sees.
enum class Boundary {
  dead,      ///< out-of-grid cells read as aliveness 0
  toroidal,  ///< edges wrap around
};

/// Moore-neighborhood offsets in row-major order. Every engine scans
/// neighbors in this order so floating-point sums are reproducible.
inline constexpr std::array<Coord, 8> kMooreOffsets{{
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

/// Resolves the neighbor of `cell` at `offset`, or nothing if it falls off a
/// dead-bordered grid. On a torus narrower than 3 cells the same cell can be
/// returned for several offsets (and may be `cell` itself).
inline std::optional<Coord> neighbor_of(Coord cell, Coord offset, int width, int height,
                                        Boundary boundary) {
  int x = cell.x + offset.x;
  int y = cell.y + offset.y;
  if (boundary == Boundary::toroidal) {
    x = ((x % width) + width) % width;
    y = ((y % height) + height) % height;
    return Coord{x, y};
  }
  if (x < 0 || y < 0 || x >= width || y >= height) return std::nullopt;
  return Coord{x, y};
}

/// Rectangular grid of aliveness probabilities at one generation.
///
/// Values are stored as a row-major Eigen array with `height()` rows and
/// `width()` columns, so `values()(y, x)` is the cell at column x, row y.
/// Every value lies in [0,1]; the constructor enforces it.
template <typename Scalar>
class BasicGridState {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit BasicGridState(Values values, std::uint64_t generation = 0)
      : values_(std::move(values)), generation_(generation) {
    if (values_.rows() == 0 || values_.cols() == 0) {
      throw std::invalid_argument("grid dimensions must be positive");
    }
    // NaN fails both comparisons.
    if (!((values_ >= Scalar(0)).all() && (values_ <= Scalar(1)).all())) {
      throw std::invalid_argument("grid values must lie in [0,1]");
    }
  }

  static BasicGridState zeros(int width, int height, std::uint64_t generation = 0) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
    return BasicGridState(Values::Zero(height, width), generation);
  }

  int width() const noexcept { return static_cast<int>(values_.cols()); }
  int height() const noexcept { return static_cast<int>(values_.rows()); }
  std::size_t cell_count() const noexcept { return static_cast<std::size_t>(values_.size()); }
  std::uint64_t generation() const noexcept { return generation_; }

  Scalar operator()(int x, int y) const { return values_(y, x); }
  Scalar at(Coord c) const { return values_(c.y, c.x); }
  const Values& values() const noexcept { return values_; }

  bool contains(Coord c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width() && c.y < height();
  }

  /// True when every cell is exactly 0 or exactly 1.
  bool is_binary() const {
    return ((values_ == Scalar(0)) || (values_ == Scalar(1))).all();
  }

  BasicGridState with_generation(std::uint64_t generation) const {
    BasicGridState copy = *this;
    copy.generation_ = generation;
    return copy;
  }

  /// Equal values and generation.
  bool operator==(const BasicGridState& other) const {
    return generation_ == other.generation_ && values_.rows() == other.values_.rows() &&
           values_.cols() == other.values_.cols() && (values_ == other.values_).all();
  }

 private:
  Values values_;
  std::uint64_t generation_ = 0;
};

using GridState = BasicGridState<double>;

/// Coordinates of every cell whose value exceeds `threshold`, row-major.
template <typename Scalar>
std::vector<Coord> alive_cells(const BasicGridState<Scalar>& s, Scalar threshold) {
  std::vector<Coord> out;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      if (s(x, y) > threshold) out.push_back({x, y});
    }
  }
  return out;
}

/// Exact-zero test over all cells.
template <typename Scalar>
bool is_extinct(const BasicGridState<Scalar>& s) {
  return (s.values() == Scalar(0)).all();
}

/// Largest per-cell absolute difference. Throws on a dimension mismatch.
template <typename Scalar>
Scalar max_abs_diff(const BasicGridState<Scalar>& a, const BasicGridState<Scalar>& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("max_abs_diff: grid dimensions differ");
  }
  return (a.values() - b.values()).abs().maxCoeff();
}

/// Reads a pattern in either ASCII ('.'/'O' rows) or numeric ("P w h" header)
/// form; '#' lines are comments. Throws ParseError carrying the 1-based line.
GridState parse_pattern(std::string_view text);

/// Emits ASCII when the grid is binary, numeric otherwise, with values at
/// `precision` decimals. parse_pattern accepts the output.
std::string format_pattern(const GridState& s, int precision = 6);

/// Fixed-point decimal with `precision` places, correctly rounded (ties to
/// even), independent of the global locale.
std::string format_fixed(double value, int precision);

}  // namespace problife
