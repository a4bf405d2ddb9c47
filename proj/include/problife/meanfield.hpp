#pragma once

#include "problife/grid.hpp"
#include "problife/rules.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace problife {

/// probs[n] = probability of exactly n living neighbors, n = 0..8.
template <typename Scalar>
using NeighborPMF = Eigen::Array<Scalar, kMaxNeighbors + 1, 1>;

/// Poisson-binomial distribution of the number of successes among
/// independent Bernoulli trials, by the usual convolution:
///   new[k] = old[k] * (1 - p) + old[k - 1] * p.
/// Trials are folded in the order given.
template <typename Scalar>
NeighborPMF<Scalar> poisson_binomial(std::span<const Scalar> trials) {
  if (trials.size() > static_cast<std::size_t>(kMaxNeighbors)) {
    throw std::invalid_argument("poisson_binomial: at most 8 trials");
  }
  NeighborPMF<Scalar> pmf = NeighborPMF<Scalar>::Zero();
  pmf(0) = Scalar(1);
  int used = 0;
  for (const Scalar p : trials) {
    ++used;
    const Scalar q = Scalar(1) - p;
    for (int k = used; k >= 1; --k) pmf(k) = pmf(k) * q + pmf(k - 1) * p;
    pmf(0) = pmf(0) * q;
  }
  return pmf;
}

/// Neighbor aliveness values of `cell` in kMooreOffsets order; cells past a
/// dead border contribute 0.
template <typename Scalar>
std::array<Scalar, 8> neighbor_values(const BasicGridState<Scalar>& s, Coord cell,
                                      Boundary boundary) {
  std::array<Scalar, 8> out{};
  for (std::size_t i = 0; i < kMooreOffsets.size(); ++i) {
    const auto n = neighbor_of(cell, kMooreOffsets[i], s.width(), s.height(), boundary);
    out[i] = n ? s.at(*n) : Scalar(0);
  }
  return out;
}

/// Distribution of the living-neighbor count of (x, y), treating the eight
/// neighbor values as independent marginals.
template <typename Scalar>
NeighborPMF<Scalar> neighbor_pmf(const BasicGridState<Scalar>& s, int x, int y, Boundary boundary) {
  if (!s.contains({x, y})) throw std::out_of_range("neighbor_pmf: coordinates outside grid");
  const auto values = neighbor_values(s, {x, y}, boundary);
  return poisson_binomial<Scalar>(std::span<const Scalar>(values));
}

/// Next aliveness of a single cell:
///   sum_n N(n) * (survive[n] * c + birth[n] * (1 - c)).
template <typename Scalar>
Scalar update_cell(const NeighborPMF<Scalar>& pmf, Scalar own, const Ruleset& rules) {
  Scalar total(0);
  for (int n = 0; n <= kMaxNeighbors; ++n) {
    const Scalar survive = static_cast<Scalar>(rules.survive()[n]);
    const Scalar birth = static_cast<Scalar>(rules.birth()[n]);
    total += pmf(n) * (survive * own + birth * (Scalar(1) - own));
  }
  // Rounding can push a convex combination a few ulps past 1.
  return std::clamp(total, Scalar(0), Scalar(1));
}

/// One synchronous mean-field generation. Rows are split across `threads`
/// workers; each cell is written once with a fixed summation order, so the
/// result is bit-identical for every thread count.
template <typename Scalar>
BasicGridState<Scalar> step(const BasicGridState<Scalar>& s, const Ruleset& rules,
                            Boundary boundary = Boundary::dead, unsigned threads = 1) {
  using Values = typename BasicGridState<Scalar>::Values;
  Values next(s.height(), s.width());

  auto rows = [&](int begin, int end) {
    for (int y = begin; y < end; ++y) {
      for (int x = 0; x < s.width(); ++x) {
        next(y, x) = update_cell(neighbor_pmf(s, x, y, boundary), s(x, y), rules);
      }
    }
  };

  const int workers = std::clamp<int>(static_cast<int>(threads), 1, s.height());
  if (workers == 1) {
    rows(0, s.height());
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(rows, s.height() * w / workers, s.height() * (w + 1) / workers);
    }
  }
  return BasicGridState<Scalar>(std::move(next), s.generation() + 1);
}

/// `steps` generations from `s`; the result starts with `s` itself.
template <typename Scalar>
std::vector<BasicGridState<Scalar>> run(const BasicGridState<Scalar>& s, const Ruleset& rules,
                                        std::size_t steps, Boundary boundary = Boundary::dead,
                                        unsigned threads = 1) {
  std::vector<BasicGridState<Scalar>> out;
  out.reserve(steps + 1);
  out.push_back(s);
  for (std::size_t k = 0; k < steps; ++k) out.push_back(step(out.back(), rules, boundary, threads));
  return out;
}

/// Smallest k with max_abs_diff(states[k], states[k + 1]) <= eps.
template <typename Scalar>
std::optional<std::size_t> find_fixed_point(std::span<const BasicGridState<Scalar>> states,
                                            Scalar eps) {
  if (eps < Scalar(0)) throw std::invalid_argument("find_fixed_point: eps must be >= 0");
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    if (max_abs_diff(states[k], states[k + 1]) <= eps) return k;
  }
  return std::nullopt;
}

template <typename Scalar>
std::optional<std::size_t> find_fixed_point(const std::vector<BasicGridState<Scalar>>& states,
                                            Scalar eps) {
  return find_fixed_point(std::span<const BasicGridState<Scalar>>(states), eps);
}

}  // namespace problife
