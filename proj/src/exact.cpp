#include "problife/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace problife {

namespace {

// Successor sums go to a dense array up to this many cells, to an ordered map
// beyond it.
constexpr std::size_t kDenseCells = 22;

WorldId bit(std::size_t cell) { return WorldId{1} << cell; }

// Expands a fixed world plus independent branching cells into every outcome.
// `worlds[i]` / `masses[i]` enumerate all 2^k combinations of the k branches.
struct Branches {
  std::vector<WorldId> worlds;
  std::vector<double> masses;

  Branches(WorldId fixed, double mass) : worlds{fixed}, masses{mass} {}

  void split(std::size_t cell, double p) {
    const std::size_t half = worlds.size();
    worlds.resize(half * 2);
    masses.resize(half * 2);
    const double q = 1.0 - p;
    for (std::size_t i = 0; i < half; ++i) {
      worlds[half + i] = worlds[i] | bit(cell);
      masses[half + i] = masses[i] * p;
      masses[i] *= q;
    }
  }
};

std::vector<std::vector<std::size_t>> neighbor_table(int width, int height, Boundary boundary) {
  std::vector<std::vector<std::size_t>> table(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto& list = table[static_cast<std::size_t>(y) * width + x];
      for (const Coord off : kMooreOffsets) {
        if (const auto n = neighbor_of({x, y}, off, width, height, boundary)) {
          list.push_back(static_cast<std::size_t>(n->y) * width + n->x);
        }
      }
    }
  }
  return table;
}

}  // namespace

WorldDistribution::WorldDistribution(int width, int height, std::vector<Entry> mass)
    : width_(width), height_(height), mass_(std::move(mass)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("world distribution: empty grid");
  const std::size_t cells = cell_count();
  if (cells > kMaxWorldCells) throw LimitExceeded(cells, kMaxWorldCells);
  const WorldId valid = cells == 64 ? ~WorldId{0} : bit(cells) - 1;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    const auto [world, p] = mass_[i];
    if ((world & ~valid) != 0) throw std::invalid_argument("world distribution: id out of range");
    if (i > 0 && mass_[i - 1].first >= world) {
      throw std::invalid_argument("world distribution: ids must be strictly ascending");
    }
    if (!(p > 0.0)) throw std::invalid_argument("world distribution: masses must be positive");
  }
  if (!(std::abs(total_mass() - 1.0) <= 1e-9)) {
    throw std::invalid_argument("world distribution: total mass must be 1");
  }
}

WorldDistribution WorldDistribution::point_mass(int width, int height, WorldId world) {
  return WorldDistribution(width, height, {{world, 1.0}});
}

double WorldDistribution::probability(WorldId world) const {
  const auto it = std::lower_bound(mass_.begin(), mass_.end(), world,
                                   [](const Entry& e, WorldId w) { return e.first < w; });
  return it != mass_.end() && it->first == world ? it->second : 0.0;
}

double WorldDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& [world, p] : mass_) total += p;
  return total;
}

WorldId world_of(const GridState& s) {
  if (s.cell_count() > kMaxWorldCells) throw LimitExceeded(s.cell_count(), kMaxWorldCells);
  if (!s.is_binary()) throw std::invalid_argument("world_of: grid is not binary");
  WorldId world = 0;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      if (s(x, y) == 1.0) world |= bit(static_cast<std::size_t>(y) * s.width() + x);
    }
  }
  return world;
}

GridState grid_of(WorldId world, int width, int height, std::uint64_t generation) {
  GridState::Values values(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      values(y, x) = (world & bit(static_cast<std::size_t>(y) * width + x)) ? 1.0 : 0.0;
    }
  }
  return GridState(std::move(values), generation);
}

WorldDistribution initial_distribution(const GridState& s) {
  const std::size_t cells = s.cell_count();
  if (cells > kMaxWorldCells) throw LimitExceeded(cells, kMaxWorldCells);

  WorldId fixed = 0;
  std::vector<std::pair<std::size_t, double>> uncertain;
  for (std::size_t c = 0; c < cells; ++c) {
    const double v = s.values()(static_cast<Eigen::Index>(c / s.width()),
                                static_cast<Eigen::Index>(c % s.width()));
    if (v == 1.0) {
      fixed |= bit(c);
    } else if (v > 0.0) {
      uncertain.emplace_back(c, v);
    }
  }

  Branches outcomes(fixed, 1.0);
  for (const auto& [c, p] : uncertain) outcomes.split(c, p);

  std::vector<WorldDistribution::Entry> mass;
  mass.reserve(outcomes.worlds.size());
  for (std::size_t i = 0; i < outcomes.worlds.size(); ++i) {
    if (outcomes.masses[i] > 0.0) mass.emplace_back(outcomes.worlds[i], outcomes.masses[i]);
  }
  std::sort(mass.begin(), mass.end());
  return WorldDistribution(s.width(), s.height(), std::move(mass));
}

WorldDistribution evolve_distribution(const WorldDistribution& d, const Ruleset& rules,
                                      Boundary boundary, std::size_t cell_limit) {
  const std::size_t cells = d.cell_count();
  if (cells > cell_limit) throw LimitExceeded(cells, cell_limit);

  const auto neighbors = neighbor_table(d.width(), d.height(), boundary);
  const bool dense = cells <= kDenseCells;
  std::vector<double> dense_mass(dense ? std::size_t{1} << cells : 0, 0.0);
  std::map<WorldId, double> sparse_mass;

  for (const auto& [source, p_source] : d.entries()) {
    WorldId fixed = 0;
    Branches outcomes(0, p_source);
    for (std::size_t c = 0; c < cells; ++c) {
      int count = 0;
      for (const std::size_t n : neighbors[c]) count += (source & bit(n)) ? 1 : 0;
      const double q = rules.fire_probability((source & bit(c)) != 0, count);
      if (q == 1.0) {
        fixed |= bit(c);
      } else if (q > 0.0) {
        outcomes.split(c, q);
      }
    }
    for (std::size_t i = 0; i < outcomes.worlds.size(); ++i) {
      const double p = outcomes.masses[i];
      if (p == 0.0) continue;
      const WorldId world = outcomes.worlds[i] | fixed;
      if (dense) {
        dense_mass[world] += p;
      } else {
        sparse_mass[world] += p;
      }
    }
  }

  std::vector<WorldDistribution::Entry> mass;
  if (dense) {
    for (std::size_t w = 0; w < dense_mass.size(); ++w) {
      if (dense_mass[w] > 0.0) mass.emplace_back(w, dense_mass[w]);
    }
  } else {
    mass.assign(sparse_mass.begin(), sparse_mass.end());
  }
  return WorldDistribution(d.width(), d.height(), std::move(mass));
}

GridState exact_marginals(const WorldDistribution& d, std::uint64_t generation) {
  // Neumaier summation; plain sums drift by ~1e-14 over 2^16 worlds.
  GridState::Values sum = GridState::Values::Zero(d.height(), d.width());
  GridState::Values carry = GridState::Values::Zero(d.height(), d.width());
  for (const auto& [world, p] : d.entries()) {
    for (WorldId rest = world; rest != 0; rest &= rest - 1) {
      const auto c = static_cast<Eigen::Index>(std::countr_zero(rest));
      double& s = sum(c / d.width(), c % d.width());
      const double t = s + p;
      carry(c / d.width(), c % d.width()) += std::abs(s) >= std::abs(p) ? (s - t) + p : (p - t) + s;
      s = t;
    }
  }
  // Accumulated mass can exceed 1 by rounding.
  GridState::Values values = (sum + carry).min(1.0);
  return GridState(std::move(values), generation);
}

std::vector<GridState> exact_run(const GridState& s, const Ruleset& rules, std::size_t steps,
                                 Boundary boundary, std::size_t cell_limit) {
  if (s.cell_count() > cell_limit) throw LimitExceeded(s.cell_count(), cell_limit);
  std::vector<GridState> out;
  out.reserve(steps + 1);
  auto dist = initial_distribution(s);
  out.push_back(s);
  for (std::size_t k = 1; k <= steps; ++k) {
    dist = evolve_distribution(dist, rules, boundary, cell_limit);
    out.push_back(exact_marginals(dist, s.generation() + k));
  }
  return out;
}

}  // namespace problife
