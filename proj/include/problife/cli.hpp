#pragma once

#include "problife/exact.hpp"
#include "problife/grid.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace problife::cli {

/// Process exit statuses.
enum ExitStatus : int {
  kSuccess = 0,
  kUsage = 1,
  kParseError = 2,
  kLimitExceeded = 3,
  kIoError = 4,
};

enum class Engine { meanfield, exact, sample };
enum class OutputFormat { csv, pattern, ppm };

struct RunConfig {
  std::string rules = "B3:0.8/S2:0.9,3:0.9";
  std::string pattern_path;
  std::size_t steps = 1;
  Boundary boundary = Boundary::dead;
  Engine engine = Engine::meanfield;
  /// Set when --engine was given; compare falls back to exact otherwise.
  bool engine_explicit = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  bool trajectory = false;
  bool all_generations = false;
  std::size_t cell_limit = kDefaultCellLimit;
  int precision = 6;
  std::string out;  ///< file (csv/pattern) or file-name template (ppm); empty = stdout
  OutputFormat format = OutputFormat::csv;
  int cell_size = 16;
  bool gridlines = false;
  unsigned threads = 1;
};

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_render(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV dump: '#' header line per generation, one line per row, blank line
/// between generations.
std::string format_csv(const std::vector<GridState>& states, const std::string& label,
                       int precision);

/// Parses `args` (without the program name) and dispatches to a subcommand.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace problife::cli
