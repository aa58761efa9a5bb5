#include "optoweak/app/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "optoweak/app/commands.hpp"
#include "optoweak/parallel.hpp"

namespace optoweak::app {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  f << content;
  f.close();
  if (!f) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

// Extras sit next to the primary output: out.csv + "_nw.svg" -> out_nw.svg.
std::filesystem::path extra_path(const std::filesystem::path& primary, const std::string& suffix) {
  auto stem = primary;
  stem.replace_extension();
  return stem.string() + suffix;
}

int emit(const Artifact& a, const std::optional<std::filesystem::path>& out_path, std::ostream& out,
         std::ostream& err) {
  for (const auto& w : a.warnings) err << "warning: " << w << '\n';
  if (out_path) {
    write_file(*out_path, a.primary);
    for (const auto& [suffix, content] : a.extras) write_file(extra_path(*out_path, suffix), content);
    for (const auto& line : a.summary) out << line << '\n';
  } else {
    out << a.primary;
    for (const auto& line : a.summary) err << line << '\n';
    if (!a.extras.empty()) err << "note: plots are only written together with --out\n";
  }
  out.flush();
  return static_cast<int>(a.status);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-value amplification of a mirror displacement: reproduction and validation tool", "optoweak"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string scenario_text;
  const char* names[] = {"table1", "sweep", "wigner", "validate", "evolve"};
  const char* help[] = {"weak values and post-selection probabilities at the tabulated splitter settings",
                        "weak value, probability and mirror shift over a delta grid",
                        "Wigner function of the meter state on a phase-space grid",
                        "invariants and closed forms against numerical references",
                        "branch amplitudes of the evolved joint state"};
  for (int k = 0; k < 5; ++k) {
    auto* sub = app.add_subcommand(names[k], help[k]);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_path, "output path; stdout when omitted");
    if (k == 2) sub->add_option("--scenario", scenario_text, "fig5 or fig6; overrides [wigner] scenario");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    err << "error: " << e.what() << '\n';
    err << "usage: optoweak <table1|sweep|wigner|validate|evolve> --config <path> [--out <path>] [--scenario fig5|fig6]\n";
    return static_cast<int>(ExitCode::config_error);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const std::optional<std::filesystem::path> target =
      out_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_path);

  try {
    std::optional<Scenario> scenario;
    if (!scenario_text.empty()) {
      scenario = parse_scenario(scenario_text);
      if (!scenario || *scenario == Scenario::custom) {
        throw ConfigError({fmt::format("--scenario: expected fig5 or fig6, got '{}'", scenario_text)});
      }
    }
    const RunConfig cfg = load_config(config_path);
    const unsigned threads = worker_count();
    Artifact a;
    if (command == "table1") a = cmd_table1(cfg);
    else if (command == "sweep") a = cmd_sweep(cfg, threads);
    else if (command == "wigner") a = cmd_wigner(cfg, scenario, threads);
    else if (command == "validate") a = cmd_validate(cfg);
    else a = cmd_evolve(cfg);
    return emit(a, target, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error:\n";
    for (const auto& p : e.problems()) err << "  " << p << '\n';
    return static_cast<int>(ExitCode::config_error);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::io_error);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::validation_failure);
  }
}

}  // namespace optoweak::app
