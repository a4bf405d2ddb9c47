#pragma once

#include "problife/grid.hpp"
#include "problife/rules.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace problife {

/// Bit i (row-major cell index y * width + x) is set when that cell is alive.
using WorldId = std::uint64_t;

/// Default ceiling on the grid size accepted by the exact engine.
inline constexpr std::size_t kDefaultCellLimit = 12;

/// Hard ceiling imposed by the 64-bit world identifier.
inline constexpr std::size_t kMaxWorldCells = 64;

/// The grid is too large for exhaustive enumeration.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::size_t cells, std::size_t limit)
      : std::runtime_error("exact engine: grid has " + std::to_string(cells) +
                           " cells, limit is " + std::to_string(limit)),
        cells_(cells),
        limit_(limit) {}

  std::size_t cells() const noexcept { return cells_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t cells_;
  std::size_t limit_;
};

/// Probability mass over binary grids ("possible worlds"). Only worlds with
/// non-zero mass are stored, sorted by ascending WorldId.
class WorldDistribution {
 public:
  using Entry = std::pair<WorldId, double>;

  /// Validates the invariants: ids fit in width*height bits, strictly
  /// ascending, masses positive and summing to 1 within 1e-9.
  WorldDistribution(int width, int height, std::vector<Entry> mass);

  static WorldDistribution point_mass(int width, int height, WorldId world);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  const std::vector<Entry>& entries() const noexcept { return mass_; }
  std::size_t size() const noexcept { return mass_.size(); }

  /// Mass of one world (0 if absent).
  double probability(WorldId world) const;

  /// Sum of all stored masses.
  double total_mass() const;

 private:
  int width_;
  int height_;
  std::vector<Entry> mass_;
};

/// World id of a binary grid. Throws std::invalid_argument if `s` is not binary.
WorldId world_of(const GridState& s);

/// Binary grid for a world id.
GridState grid_of(WorldId world, int width, int height, std::uint64_t generation = 0);

/// Each cell is an independent Bernoulli with its grid value as success
/// probability. Throws LimitExceeded beyond kMaxWorldCells cells.
WorldDistribution initial_distribution(const GridState& s);

/// Exact successor distribution: within a source world every cell fires
/// independently with survive[n] (alive) or birth[n] (dead), n its exact
/// living-neighbor count in that world. Throws LimitExceeded when the grid
/// has more than `cell_limit` cells.
WorldDistribution evolve_distribution(const WorldDistribution& d, const Ruleset& rules,
                                      Boundary boundary = Boundary::dead,
                                      std::size_t cell_limit = kDefaultCellLimit);

/// Per-cell P(alive).
GridState exact_marginals(const WorldDistribution& d, std::uint64_t generation = 0);

/// Marginal grids for generations 0..steps starting from `s`.
std::vector<GridState> exact_run(const GridState& s, const Ruleset& rules, std::size_t steps,
                                 Boundary boundary = Boundary::dead,
                                 std::size_t cell_limit = kDefaultCellLimit);

}  // namespace problife
