#include "problife/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace problife {

namespace {

using Counts = Eigen::Array<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::uint64_t cell_index(const GridState& s, int x, int y) {
  return static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(s.width()) +
         static_cast<std::uint64_t>(x);
}

}  // namespace

GridState sample_bernoulli(const GridState& s, const TrajectoryStream& rng, std::uint64_t step) {
  GridState::Values out(s.height(), s.width());
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      out(y, x) = rng.uniform(step, cell_index(s, x, y)) < s(x, y) ? 1.0 : 0.0;
    }
  }
  return GridState(std::move(out), s.generation());
}

GridState sample_step(const GridState& w, const Ruleset& rules, Boundary boundary,
                      const TrajectoryStream& rng, std::uint64_t step) {
  if (!w.is_binary()) throw std::invalid_argument("sample_step: grid is not binary");
  GridState::Values out(w.height(), w.width());
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      int count = 0;
      for (const Coord off : kMooreOffsets) {
        if (const auto n = neighbor_of({x, y}, off, w.width(), w.height(), boundary)) {
          count += w.at(*n) == 1.0 ? 1 : 0;
        }
      }
      const double q = rules.fire_probability(w(x, y) == 1.0, count);
      out(y, x) = rng.uniform(step, cell_index(w, x, y)) < q ? 1.0 : 0.0;
    }
  }
  return GridState(std::move(out), w.generation() + 1);
}

std::vector<GridState> sample_trajectory(const GridState& start, const Ruleset& rules,
                                         std::size_t steps, Boundary boundary,
                                         std::uint64_t seed, std::uint64_t trajectory) {
  const TrajectoryStream rng(seed, trajectory);
  std::vector<GridState> out;
  out.reserve(steps + 1);
  out.push_back(sample_bernoulli(start, rng, 0));
  for (std::size_t k = 1; k <= steps; ++k) {
    out.push_back(sample_step(out.back(), rules, boundary, rng, k));
  }
  return out;
}

std::vector<SampleEstimate> estimate_marginals(const GridState& start, const Ruleset& rules,
                                               std::size_t steps, std::uint64_t samples,
                                               Boundary boundary, std::uint64_t seed,
                                               SamplerOptions options) {
  if (samples == 0) throw std::invalid_argument("estimate_marginals: need at least one sample");

  const std::size_t first_kept = options.all_generations ? 0 : steps;
  const std::size_t kept = steps + 1 - first_kept;

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Counts> counts(kept, Counts::Zero(start.height(), start.width()));
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto run = sample_trajectory(start, rules, steps, boundary, seed, t);
      for (std::size_t k = 0; k < kept; ++k) {
        counts[k] += (run[first_kept + k].values() == 1.0).cast<std::uint64_t>();
      }
    }
    return counts;
  };

  const auto workers = static_cast<std::uint64_t>(
      std::clamp<std::uint64_t>(options.threads, 1, samples));
  std::vector<std::vector<Counts>> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = samples * w / workers;
      const std::uint64_t end = samples * (w + 1) / workers;
      if (workers == 1) {
        partial[w] = count_range(begin, end);
      } else {
        pool.emplace_back([&, w, begin, end] { partial[w] = count_range(begin, end); });
      }
    }
  }

  std::vector<SampleEstimate> out;
  out.reserve(kept);
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < kept; ++k) {
    Counts total = Counts::Zero(start.height(), start.width());
    for (const auto& part : partial) total += part[k];
    GridState::Values means = total.cast<double>() / n;
    GridState::Values std_error = (means * (1.0 - means) / n).max(0.0).sqrt();
    out.push_back({GridState(std::move(means), start.generation() + first_kept + k),
                   std::move(std_error), samples});
  }
  return out;
}

}  // namespace problife
