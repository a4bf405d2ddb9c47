// Independent reference implementations and fixtures shared by the unit and
// acceptance suites. Nothing here calls into the engines under test.
#pragma once

#include "problife/grid.hpp"
#include "problife/rules.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace problife::oracle {

/// P(exactly n successes) by enumerating all 2^8 outcomes.
inline std::array<double, 9> brute_force_pmf(const std::array<double, 8>& p) {
  std::array<double, 9> pmf{};
  for (unsigned mask = 0; mask < 256; ++mask) {
    double prob = 1.0;
    int count = 0;
    for (int i = 0; i < 8; ++i) {
      if (mask & (1u << i)) {
        prob *= p[i];
        ++count;
      } else {
        prob *= 1.0 - p[i];
      }
    }
    pmf[count] += prob;
  }
  return pmf;
}

using BoolGrid = std::vector<std::vector<bool>>;  // [y][x]

/// Plain Conway B3/S23 on a dead-bordered grid.
inline BoolGrid conway_step(const BoolGrid& g) {
  const int h = static_cast<int>(g.size());
  const int w = static_cast<int>(g[0].size());
  BoolGrid out(h, std::vector<bool>(w, false));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx || dy) && y + dy >= 0 && y + dy < h && x + dx >= 0 && x + dx < w &&
              g[y + dy][x + dx]) {
            ++n;
          }
        }
      }
      out[y][x] = g[y][x] ? (n == 2 || n == 3) : n == 3;
    }
  }
  return out;
}

inline BoolGrid to_bool(const GridState& s) {
  BoolGrid g(s.height(), std::vector<bool>(s.width()));
  for (int y = 0; y < s.height(); ++y)
    for (int x = 0; x < s.width(); ++x) g[y][x] = s(x, y) == 1.0;
  return g;
}

inline GridState from_rows(const std::vector<std::vector<double>>& rows, std::uint64_t gen = 0) {
  GridState::Values v(rows.size(), rows[0].size());
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t x = 0; x < rows[y].size(); ++x) v(y, x) = rows[y][x];
  return GridState(v, gen);
}

inline GridState from_ascii(const std::vector<std::string>& rows) {
  std::string text;
  for (const auto& r : rows) text += r + "\n";
  return parse_pattern(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline GridState load_fixture(const std::string& name) {
  return parse_pattern(read_file(std::string(PROBLIFE_PATTERN_DIR) + "/" + name));
}

inline GridState random_binary(std::mt19937_64& rng, int w, int h, double density = 0.4) {
  std::bernoulli_distribution alive(density);
  GridState::Values v(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) v(y, x) = alive(rng) ? 1.0 : 0.0;
  return GridState(v);
}

inline GridState random_float(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GridState::Values v(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) v(y, x) = u(rng);
  return GridState(v);
}

/// Random ruleset; each entry is 0, 1, or uniform in (0,1) with equal odds.
inline Ruleset random_ruleset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RuleTable s{}, b{};
  for (int n = 0; n <= kMaxNeighbors; ++n) {
    for (double* slot : {&s[n], &b[n]}) {
      const int k = kind(rng);
      *slot = k == 0 ? 0.0 : k == 1 ? 1.0 : u(rng);
    }
  }
  return Ruleset(s, b);
}

// Classic Life generations 1 and 2 from fig1.cells.
inline const std::vector<std::string> kFig1State2 = {".....", ".....", "..O..", "..OO.", "..OO."};
inline const std::vector<std::string> kFig1State3 = {".....", ".....", "..OO.", ".O...", "..OO."};

}  // namespace problife::oracle
