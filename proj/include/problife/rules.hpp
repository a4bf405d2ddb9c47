#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace problife {

/// Largest living-neighbor count in the Moore neighborhood.
inline constexpr int kMaxNeighbors = 8;

/// Probability per exact living-neighbor count, indexed 0..8.
using RuleTable = std::array<double, kMaxNeighbors + 1>;

/// Raised for malformed ruleset or pattern text. `position()` is the 0-based
/// character offset of the offending token (ruleset) or the 1-based line
/// number (pattern files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A probabilistic Life-like ruleset: `survive()[n]` is the probability that a
/// living cell with exactly n living neighbors stays alive, `birth()[n]` the
/// probability that a dead one is born. Immutable once built.
class Ruleset {
 public:
  /// All-zero ruleset ("B/S").
  Ruleset() = default;

  /// Throws std::invalid_argument if any entry lies outside [0,1] or is NaN.
  Ruleset(const RuleTable& survive, const RuleTable& birth);

  const RuleTable& survive() const noexcept { return survive_; }
  const RuleTable& birth() const noexcept { return birth_; }

  /// Firing probability of the rule that applies to a cell in the given state.
  double fire_probability(bool alive, int neighbors) const noexcept {
    return alive ? survive_[neighbors] : birth_[neighbors];
  }

  bool operator==(const Ruleset&) const = default;

 private:
  RuleTable survive_{};
  RuleTable birth_{};
};

/// Parses the extended B/S notation, e.g. "B3/S23" or "B3:0.8/S2:0.9,3:0.9".
/// Counts listed without ":prob" get probability 1, unlisted counts get 0.
/// Throws ParseError with the character offset of the first bad token.
Ruleset parse_ruleset(std::string_view text);

/// Canonical notation: B part first, counts ascending, ":prob" omitted for 1,
/// shortest round-trip decimals. parse_ruleset(format_ruleset(r)) == r.
std::string format_ruleset(const Ruleset& rules);

/// Conway's Life (B3/S23).
Ruleset classic_life();

/// The 90%/80% variant of Life used for the worked examples: B3:0.8/S2:0.9,3:0.9.
Ruleset standard_ruleset();

/// A strobing ruleset repopulates an empty grid: birth[0] > 0.
bool is_strobing(const Ruleset& rules);

}  // namespace problife
