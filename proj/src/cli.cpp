#include "problife/cli.hpp"

#include "problife/exact.hpp"
#include "problife/meanfield.hpp"
#include "problife/render.hpp"
#include "problife/rules.hpp"
#include "problife/sampler.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace problife::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kDefaultFrameTemplate = "gen{:03}.ppm";

void validate(const RunConfig& cfg) {
  if (cfg.precision < 1 || cfg.precision > 17) throw UsageError("--precision must be in 1..17");
  if (cfg.engine == Engine::sample && cfg.samples < 1) throw UsageError("--samples must be >= 1");
  if (cfg.cell_size < 1) throw UsageError("--cell-size must be >= 1");
  if (cfg.pattern_path.empty()) throw UsageError("--pattern is required");
}

GridState load_pattern(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read pattern file " + path);
  std::ostringstream text;
  text << file.rdbuf();
  if (file.bad()) throw IoError("cannot read pattern file " + path);
  return parse_pattern(text.str());
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  file << text;
  file.close();
  if (!file) throw IoError("cannot write " + cfg.out);
}

std::string format_patterns(const std::vector<GridState>& states, const std::string& label,
                            int precision) {
  std::string text;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) text += '\n';
    text += "# generation " + std::to_string(states[i].generation()) + ' ' + label + '\n';
    text += format_pattern(states[i], precision);
  }
  return text;
}

std::string format_states(const RunConfig& cfg, const std::vector<GridState>& states,
                          const std::string& label) {
  if (cfg.format == OutputFormat::pattern) return format_patterns(states, label, cfg.precision);
  return format_csv(states, label, cfg.precision);
}

std::string rules_label(const Ruleset& rules) { return "rules " + format_ruleset(rules); }

// Sampled marginals per generation (or a single sampled run with --trajectory).
std::vector<GridState> sampled_states(const RunConfig& cfg, const Ruleset& rules,
                                      const GridState& start) {
  if (cfg.trajectory) {
    return sample_trajectory(start, rules, cfg.steps, cfg.boundary, cfg.seed, 0);
  }
  const auto estimates = estimate_marginals(start, rules, cfg.steps, cfg.samples, cfg.boundary,
                                            cfg.seed, {cfg.threads, true});
  std::vector<GridState> means;
  for (const auto& e : estimates) means.push_back(e.means);
  return means;
}

std::vector<GridState> simulate(const RunConfig& cfg, Engine engine, const Ruleset& rules,
                                const GridState& start) {
  switch (engine) {
    case Engine::meanfield: return run(start, rules, cfg.steps, cfg.boundary, cfg.threads);
    case Engine::exact: return exact_run(start, rules, cfg.steps, cfg.boundary, cfg.cell_limit);
    case Engine::sample: return sampled_states(cfg, rules, start);
  }
  throw UsageError("unknown engine");
}

// Maps the error taxonomy onto exit statuses.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kSuccess;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << " (raise --cell-limit or use the sample engine)\n";
    return kLimitExceeded;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

struct Inputs {
  Ruleset rules;
  GridState start;
};

Inputs load_inputs(const RunConfig& cfg) {
  validate(cfg);
  Ruleset rules = parse_ruleset(cfg.rules);
  return {rules, load_pattern(cfg.pattern_path)};
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::meanfield: return "meanfield";
    case Engine::exact: return "exact";
    case Engine::sample: return "sample";
  }
  return "?";
}

}  // namespace

std::string format_csv(const std::vector<GridState>& states, const std::string& label,
                       int precision) {
  std::string text;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const GridState& s = states[i];
    if (i) text += '\n';
    text += "# generation " + std::to_string(s.generation());
    if (!label.empty()) text += ' ' + label;
    text += '\n';
    for (int y = 0; y < s.height(); ++y) {
      for (int x = 0; x < s.width(); ++x) {
        if (x) text += ',';
        text += format_fixed(s(x, y), precision);
      }
      text += '\n';
    }
  }
  return text;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format == OutputFormat::ppm) return cmd_render(cfg, out, err);
  if (cfg.engine == Engine::exact) return cmd_exact(cfg, out, err);
  if (cfg.engine == Engine::sample) return cmd_sample(cfg, out, err);
  return guarded(err, [&] {
    const auto [rules, start] = load_inputs(cfg);
    const auto states = run(start, rules, cfg.steps, cfg.boundary, cfg.threads);
    emit(cfg, format_states(cfg, states, rules_label(rules)), out);
  });
}

int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto [rules, start] = load_inputs(cfg);
    const auto states = exact_run(start, rules, cfg.steps, cfg.boundary, cfg.cell_limit);
    emit(cfg, format_states(cfg, states, "exact " + rules_label(rules)), out);
  });
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig sampled = cfg;
    sampled.engine = Engine::sample;
    const auto [rules, start] = load_inputs(sampled);
    const std::string seed = " seed " + std::to_string(cfg.seed);

    if (cfg.trajectory) {
      const auto states = sample_trajectory(start, rules, cfg.steps, cfg.boundary, cfg.seed, 0);
      emit(cfg, format_states(cfg, states, "trajectory " + rules_label(rules) + seed), out);
      return;
    }

    const auto estimates = estimate_marginals(start, rules, cfg.steps, cfg.samples, cfg.boundary,
                                              cfg.seed, {cfg.threads, cfg.all_generations});
    const std::string tail =
        ' ' + rules_label(rules) + seed + " samples " + std::to_string(cfg.samples);
    std::string text;
    for (const auto& e : estimates) {
      if (!text.empty()) text += '\n';
      const GridState stderr_grid(e.standard_error, e.generation());
      text += format_states(cfg, {e.means}, "mean" + tail);
      text += '\n';
      text += format_states(cfg, {stderr_grid}, "stderr" + tail);
    }
    emit(cfg, text, out);
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Engine reference = cfg.engine_explicit ? cfg.engine : Engine::exact;
    RunConfig ref_cfg = cfg;
    ref_cfg.engine = reference;
    ref_cfg.trajectory = false;
    const auto [rules, start] = load_inputs(ref_cfg);

    if (reference == Engine::exact && start.cell_count() > cfg.cell_limit) {
      throw LimitExceeded(start.cell_count(), cfg.cell_limit);
    }
    const auto meanfield = run(start, rules, cfg.steps, cfg.boundary, cfg.threads);
    const auto other = simulate(ref_cfg, reference, rules, start);

    std::string text = "# compare meanfield vs " + engine_name(reference) + ' ' +
                       rules_label(rules) + '\n';
    text += "generation,max_abs_diff,mean_abs_diff,meanfield_mass,reference_mass\n";
    const auto fmt = [&](double v) { return format_fixed(v, cfg.precision); };
    for (std::size_t k = 0; k < meanfield.size(); ++k) {
      const auto diff = (meanfield[k].values() - other[k].values()).abs();
      text += std::to_string(meanfield[k].generation()) + ',' + fmt(diff.maxCoeff()) + ',' +
              fmt(diff.mean()) + ',' + fmt(meanfield[k].values().sum()) + ',' +
              fmt(other[k].values().sum()) + '\n';
    }
    emit(cfg, text, out);
  });
}

int cmd_render(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto [rules, start] = load_inputs(cfg);
    const auto states = simulate(cfg, cfg.engine, rules, start);
    RenderSpec spec;
    spec.cell_size = cfg.cell_size;
    spec.gridlines = cfg.gridlines;
    const std::string naming = cfg.out.empty() ? std::string(kDefaultFrameTemplate) : cfg.out;
    const auto paths = render_sequence(states, spec, naming);
    for (const auto& p : paths) out << p.string() << '\n';
  });
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic Game of Life simulator", "problife"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Engine> engines{
      {"meanfield", Engine::meanfield}, {"exact", Engine::exact}, {"sample", Engine::sample}};
  const std::map<std::string, Boundary> boundaries{{"dead", Boundary::dead},
                                                   {"wrap", Boundary::toroidal}};
  const std::map<std::string, OutputFormat> formats{
      {"csv", OutputFormat::csv}, {"pattern", OutputFormat::pattern}, {"ppm", OutputFormat::ppm}};

  app.set_config("--config", "", "Read key=value defaults from a file");
  app.add_option("--rules", cfg.rules, "Ruleset, e.g. B3:0.8/S2:0.9,3:0.9")->capture_default_str();
  app.add_option("--pattern", cfg.pattern_path, "Start pattern file");
  app.add_option("--steps", cfg.steps, "Generations to simulate")->capture_default_str();
  auto* engine_opt = app.add_option("--engine", cfg.engine, "meanfield | exact | sample")
                         ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case))
                         ->option_text("ENGINE");
  app.add_option("--samples", cfg.samples, "Trajectories for the sample engine")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_flag("--trajectory", cfg.trajectory, "Emit a single sampled run");
  app.add_flag("--all-generations", cfg.all_generations,
               "Report sampled estimates for every generation");
  app.add_option("--boundary", cfg.boundary, "dead | wrap")
      ->transform(CLI::CheckedTransformer(boundaries, CLI::ignore_case))
      ->option_text("BOUNDARY");
  app.add_option("--cell-limit", cfg.cell_limit, "Largest grid for the exact engine")
      ->envname("PROBLIFE_CELL_LIMIT")
      ->capture_default_str();
  app.add_option("--precision", cfg.precision, "Decimal places in text output")
      ->capture_default_str()
      ->check(CLI::Range(1, 17));
  app.add_option("--out", cfg.out, "Output file, or file-name template for PPM frames");
  app.add_option("--format", cfg.format, "csv | pattern | ppm")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("FORMAT");
  app.add_option("--cell-size", cfg.cell_size, "Pixels per cell")
      ->capture_default_str()
      ->check(CLI::Range(1, 4096));
  app.add_flag("--gridlines", cfg.gridlines, "Draw 1-pixel gridlines");
  app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));

  int (*command)(const RunConfig&, std::ostream&, std::ostream&) = nullptr;
  const std::pair<const char*, const char*> subcommands[] = {
      {"run", "Mean-field evolution"},
      {"exact", "Exact marginals by enumerating possible worlds"},
      {"sample", "Monte Carlo trajectories and marginal estimates"},
      {"compare", "Mean-field versus exact or sampled marginals"},
      {"render", "Write one PPM image per generation"},
  };
  int (*handlers[])(const RunConfig&, std::ostream&, std::ostream&) = {
      cmd_run, cmd_exact, cmd_sample, cmd_compare, cmd_render};
  for (std::size_t i = 0; i < std::size(subcommands); ++i) {
    auto* sub = app.add_subcommand(subcommands[i].first, subcommands[i].second);
    sub->fallthrough();
    sub->callback([&command, handler = handlers[i]] { command = handler; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  cfg.engine_explicit = engine_opt->count() > 0;
  return command(cfg, out, err);
}

}  // namespace problife::cli
