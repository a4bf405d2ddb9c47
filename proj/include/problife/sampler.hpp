#pragma once

#include "problife/grid.hpp"
#include "problife/rules.hpp"

#include <cstdint>
#include <vector>

namespace problife {

/// SplitMix64 output function: a bijective 64-bit avalanche mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream for one trajectory.
///
/// The stream key is mix64(mix64(seed) + golden * (trajectory + 1)). The draw
/// for cell c (row-major index) at step k is
///   mix64(key + mix64((k << 32) | c)) >> 11, scaled to [0, 1).
/// Step 0 is the Bernoulli draw of the start grid; step k >= 1 produces
/// generation k. Draws depend only on (seed, trajectory, k, c), so any
/// scheduling of trajectories yields the same results.
class TrajectoryStream {
 public:
  TrajectoryStream(std::uint64_t seed, std::uint64_t trajectory) noexcept
      : key_(mix64(mix64(seed) + kGolden * (trajectory + 1))) {}

  std::uint64_t key() const noexcept { return key_; }

  double uniform(std::uint64_t step, std::uint64_t cell) const noexcept {
    const std::uint64_t bits = mix64(key_ + mix64((step << 32) | cell));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

/// Draws a binary grid cell-wise: cell c is alive iff uniform(step, c) < value.
/// Binary inputs are returned unchanged.
GridState sample_bernoulli(const GridState& s, const TrajectoryStream& rng, std::uint64_t step);

/// One sampled generation from a binary grid: each cell fires independently
/// with survive[n] or birth[n] for its exact living-neighbor count n, using
/// draws (step, c). Throws std::invalid_argument if `w` is not binary.
GridState sample_step(const GridState& w, const Ruleset& rules, Boundary boundary,
                      const TrajectoryStream& rng, std::uint64_t step);

/// A sampled run of `steps` generations. Element 0 is the Bernoulli draw of
/// `start` (identical to `start` when it is binary).
std::vector<GridState> sample_trajectory(const GridState& start, const Ruleset& rules,
                                         std::size_t steps, Boundary boundary,
                                         std::uint64_t seed, std::uint64_t trajectory);

/// Monte Carlo estimate of per-cell P(alive) at one generation.
struct SampleEstimate {
  GridState means;
  GridState::Values standard_error;  ///< sqrt(p(1-p)/n) per cell
  std::uint64_t samples = 0;

  std::uint64_t generation() const { return means.generation(); }
};

struct SamplerOptions {
  unsigned threads = 1;
  /// Keep an estimate for every generation instead of only the last one.
  bool all_generations = false;
};

/// Runs `samples` trajectories (indices 0..samples-1) and reports the fraction
/// alive per cell. Aggregation uses integer counts, so the result does not
/// depend on `options.threads`. Returns one estimate for the final
/// generation, or steps+1 estimates when `options.all_generations` is set.
std::vector<SampleEstimate> estimate_marginals(const GridState& start, const Ruleset& rules,
                                               std::size_t steps, std::uint64_t samples,
                                               Boundary boundary, std::uint64_t seed,
                                               SamplerOptions options = {});

}  // namespace problife
