#pragma once

// Reproduction subcommands. Each returns its artifacts in memory; writing
// files and choosing streams is left to the CLI front end.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optoweak/app/config.hpp"
#include "optoweak/phase_space.hpp"
#include "optoweak/weak_measure.hpp"

namespace optoweak::app {

enum class ExitCode : int { ok = 0, validation_failure = 1, config_error = 2, io_error = 3 };

struct Artifact {
  std::string primary;                // CSV, or the report text for validate
  std::vector<std::string> summary;   // one line each
  std::vector<std::string> warnings;  // regime and other advisories
  // (suffix, content) pairs written next to the primary output, e.g. plots.
  std::vector<std::pair<std::string, std::string>> extras;
  ExitCode status = ExitCode::ok;
};

// ---------------------------------------------------------------------------
// table1

inline constexpr std::array kTable1Deltas = {0.5, 0.4, 0.3, 0.2, 0.1, 0.09};

struct Table1Row {
  double abs_delta;
  double nw_closed_form;     // |N_w| from the closed form
  double nw_matrix_element;  // |<f|N|i>/<f|i>| with i from the exchange propagator
  double p_formula;          // delta^2 + phi^2/4
  double p_exact;            // dark-port projection of the evolved state
};

// phi and the timing come from `params`; delta is overridden per row.
std::vector<Table1Row> table1_rows(const SystemParams& params);
// |N_w| to one decimal.
std::string display_weak_value(double abs_nw);
// P in percent to two significant digits.
std::string display_percent(double probability);
Artifact cmd_table1(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double delta;
  double phi;
  double n_w;             // nan at delta = 0
  double p_formula;
  double p_exact;
  double f;               // nan when delta = phi = 0
  double mean_q_over_x0;  // 2 phi f
  double mean_q_exact;    // <c + c^+> of the projected meter state; nan on failure
  std::string regime;     // weak, strong or failed
};

// Rows ordered phi-major, then by the configured delta order. `threads` = 0
// uses worker_count().
std::vector<SweepRow> sweep_rows(const RunConfig& cfg, unsigned threads = 0);
Artifact cmd_sweep(const RunConfig& cfg, unsigned threads = 0);

// ---------------------------------------------------------------------------
// wigner

struct WignerRun {
  Scenario scenario;
  std::string description;
  GridSpec spec;
  WignerGrid grid;
};

// Meter state reached by the full pipeline: numeric propagation, dark-port
// projection. Throws Error on failed post-selection.
StateVector pipeline_meter_state(const SystemParams& p);
// Parameters of a scenario: fig5 (phi = 1e-3, delta = 5e-2), fig6
// (phi = 1e-3, delta = phi/2); custom uses [params] as given.
SystemParams scenario_params(Scenario s, const SystemParams& base);
// The state a [wigner] section asks for.
StateVector wigner_state(const RunConfig& cfg, Scenario scenario);
// Explicit ranges are used verbatim (ConfigError when they miss the support
// guard); missing ones start at +-5 and widen in steps of 0.5.
GridSpec wigner_grid_spec(const WignerSpec& spec, const StateVector& state);
WignerRun wigner_run(const RunConfig& cfg, std::optional<Scenario> override = std::nullopt, unsigned threads = 0);
Artifact cmd_wigner(const RunConfig& cfg, std::optional<Scenario> override = std::nullopt, unsigned threads = 0);

// ---------------------------------------------------------------------------
// validate

enum class CheckStatus { pass, warn, fail };
std::string_view to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

std::vector<CheckResult> validation_checks(const RunConfig& cfg);
Artifact cmd_validate(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// evolve

// Branch amplitudes from the direct exponential next to the closed form.
Artifact cmd_evolve(const RunConfig& cfg);

}  // namespace optoweak::app
