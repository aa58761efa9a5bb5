#include "optoweak/app/commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "optoweak/app/csv.hpp"
#include "optoweak/app/svg.hpp"
#include "optoweak/parallel.hpp"

namespace optoweak::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return format_number(v); }

StateVector evolve_numeric(const SystemParams& p) { return propagator_numeric(p) * initial_state(p); }

void add_regime_warnings(const SystemParams& p, Artifact& out) {
  for (const auto& w : p.regime_warnings()) out.warnings.push_back("regime: " + w);
}

double mean_x(const StateVector& s) {
  return expectation(quadrature_x(MechMode(static_cast<int>(s.dim()) - 1)), s).real();
}
double mean_y(const StateVector& s) {
  return expectation(quadrature_y(MechMode(static_cast<int>(s.dim()) - 1)), s).real();
}

}  // namespace

// ---------------------------------------------------------------------------
// table1

std::vector<Table1Row> table1_rows(const SystemParams& params) {
  params.validate();
  const double phi = params.g0 / params.omega_m;
  const auto state = evolve_numeric(params);
  const auto i = preselected_state(params);
  const auto n_op = photon_difference();

  std::vector<Table1Row> rows;
  for (double d : kTable1Deltas) {
    auto p = params;
    p.delta = d;
    const auto f = dark_port_state(d);
    const auto outcome = postselect(state, f, p);
    const double p_exact = std::holds_alternative<PostSelectionResult>(outcome)
                               ? std::get<PostSelectionResult>(outcome).probability_exact
                               : std::get<PostSelectionFailure>(outcome).probability_exact;
    rows.push_back({d, std::abs(weak_value_closed_form(d)), std::abs(weak_value(n_op, i, f).real()),
                    post_selection_probability_formula(d, phi), p_exact});
  }
  return rows;
}

std::string display_weak_value(double abs_nw) { return fmt::format("{:.1f}", abs_nw); }

std::string display_percent(double probability) { return fmt::format("{:.2g}", 100.0 * probability); }

Artifact cmd_table1(const RunConfig& cfg) {
  Artifact out;
  add_regime_warnings(cfg.params, out);
  const double phi = cfg.params.g0 / cfg.params.omega_m;
  CsvTable table({"abs_delta", "nw_closed_form", "nw_matrix_element", "p_percent_formula", "p_percent_exact",
                  "nw_display", "p_percent_display"});
  double worst_gap = 0.0;
  for (const auto& r : table1_rows(cfg.params)) {
    table.add_row({num(r.abs_delta), num(r.nw_closed_form), num(r.nw_matrix_element), num(100.0 * r.p_formula),
                   num(100.0 * r.p_exact), display_weak_value(r.nw_matrix_element), display_percent(r.p_exact)});
    worst_gap = std::max(worst_gap, std::abs(r.p_exact - r.p_formula) / r.p_exact);
  }
  out.primary = table.str();
  out.summary.push_back(fmt::format("table1: phi = {}, max relative gap |P_exact - P_formula|/P_exact = {}", num(phi),
                                    num(worst_gap)));
  if (!cfg.params.timing_holds()) {
    out.warnings.push_back("timing: cos(xi tau) = -1 and omega_m tau = pi do not both hold");
  }
  return out;
}

// ---------------------------------------------------------------------------
// sweep

std::vector<SweepRow> sweep_rows(const RunConfig& cfg, unsigned threads) {
  const auto& deltas = cfg.sweep.deltas;
  const auto& phis = cfg.sweep.phis;
  std::vector<SystemParams> params(phis.size(), cfg.params);
  std::vector<std::optional<StateVector>> states(phis.size());
  parallel_for(phis.size(), threads, [&](std::size_t k) {
    params[k].g0 = phis[k] * cfg.params.omega_m;
    params[k].validate();
    states[k] = evolve_numeric(params[k]);
  });

  std::vector<SweepRow> rows(deltas.size() * phis.size());
  const auto mech = cfg.params.mech();
  const auto position = position_operator(mech);
  parallel_for(rows.size(), threads, [&](std::size_t idx) {
    const std::size_t k = idx / deltas.size();
    const double phi = phis[k];
    const double d = deltas[idx % deltas.size()];
    auto p = params[k];
    p.delta = d;

    SweepRow row{d, phi, kNaN, post_selection_probability_formula(d, phi), 0.0, kNaN, kNaN, kNaN, ""};
    if (d != 0.0) row.n_w = weak_value_closed_form(d);
    if (row.p_formula > 0.0) {
      const auto amp = amplification_and_position(d, phi);
      row.f = amp.f;
      row.mean_q_over_x0 = amp.mean_q_over_x0;
    }
    const auto outcome = postselect(*states[k], dark_port_state(d), p);
    if (const auto* r = std::get_if<PostSelectionResult>(&outcome)) {
      row.p_exact = r->probability_exact;
      row.mean_q_exact = r->mean_position_x0;
      row.regime = std::string(to_string(classify_regime(d, phi)));
    } else {
      row.p_exact = std::get<PostSelectionFailure>(outcome).probability_exact;
      row.regime = "failed";
    }
    rows[idx] = std::move(row);
  });
  return rows;
}

Artifact cmd_sweep(const RunConfig& cfg, unsigned threads) {
  Artifact out;
  add_regime_warnings(cfg.params, out);
  const auto rows = sweep_rows(cfg, threads);
  CsvTable table(
      {"delta", "phi", "n_w", "p_formula", "p_exact", "f", "mean_q_over_x0", "mean_q_exact", "regime"});
  std::size_t failed = 0;
  for (const auto& r : rows) {
    table.add_row({num(r.delta), num(r.phi), num(r.n_w), num(r.p_formula), num(r.p_exact), num(r.f),
                   num(r.mean_q_over_x0), num(r.mean_q_exact), r.regime});
    if (r.regime == "failed") ++failed;
  }
  out.primary = table.str();
  out.summary.push_back(fmt::format("sweep: {} rows ({} deltas x {} phis), {} failed post-selections", rows.size(),
                                    cfg.sweep.deltas.size(), cfg.sweep.phis.size(), failed));

  if (cfg.sweep.svg) {
    std::vector<Series> nw, prob, shift;
    for (double phi : cfg.sweep.phis) {
      Series a{fmt::format("phi = {}", num(phi)), {}, {}};
      Series b = a;
      Series c = a;
      for (const auto& r : rows) {
        if (r.phi != phi || r.delta <= 0.0) continue;
        a.x.push_back(r.delta);
        a.y.push_back(std::abs(r.n_w));
        b.x.push_back(r.delta);
        b.y.push_back(r.p_exact);
        c.x.push_back(r.delta);
        c.y.push_back(std::abs(r.mean_q_exact));
      }
      nw.push_back(std::move(a));
      prob.push_back(std::move(b));
      shift.push_back(std::move(c));
    }
    out.extras.emplace_back("_nw.svg", render_svg({"weak value", "delta", "|N_w|", true, true}, nw));
    out.extras.emplace_back("_p.svg", render_svg({"post-selection probability", "delta", "P", true, true}, prob));
    out.extras.emplace_back("_q.svg", render_svg({"mean mirror displacement", "delta", "|<q>|/x0", true, true}, shift));
  }
  return out;
}

// ---------------------------------------------------------------------------
// wigner

StateVector pipeline_meter_state(const SystemParams& p) {
  const auto outcome = postselect(evolve_numeric(p), dark_port_state(p.delta), p);
  if (const auto* r = std::get_if<PostSelectionResult>(&outcome)) return r->meter_state;
  throw Error(fmt::format("post-selection failed: probability {} is below {}",
                          std::get<PostSelectionFailure>(outcome).probability_exact, kMinPostSelectionProbability));
}

SystemParams scenario_params(Scenario s, const SystemParams& base) {
  constexpr double phi = 1e-3;
  switch (s) {
    case Scenario::fig5: return SystemParams::with_sideband(50, phi * base.omega_m, 5e-2, base.omega_m, base.n_max);
    case Scenario::fig6: return SystemParams::with_sideband(50, phi * base.omega_m, phi / 2, base.omega_m, base.n_max);
    case Scenario::custom: return base;
  }
  return base;
}

StateVector wigner_state(const RunConfig& cfg, Scenario scenario) {
  const auto mech = cfg.params.mech();
  if (scenario != Scenario::custom) return pipeline_meter_state(scenario_params(scenario, cfg.params));
  switch (cfg.wigner.state) {
    case WignerState::ground: return fock_state(0, mech);
    case WignerState::fock1: return fock_state(1, mech);
    case WignerState::equal_superposition:
      return cplx(1.0 / std::numbers::sqrt2) * (fock_state(0, mech) - fock_state(1, mech));
    case WignerState::meter: return pipeline_meter_state(cfg.params);
    case WignerState::coherent:
      if (!within_truncation_guard(cfg.wigner.alpha, mech)) {
        throw ConfigError({"[wigner] coherent amplitude exceeds the truncation guard |alpha|^2 <= n_max/4"});
      }
      return coherent_state(cfg.wigner.alpha, mech);
  }
  return fock_state(0, mech);
}

GridSpec wigner_grid_spec(const WignerSpec& spec, const StateVector& state) {
  const double need_x = 2.0 * std::abs(mean_x(state)) + 4.0;
  const double need_y = 2.0 * std::abs(mean_y(state)) + 4.0;
  auto widen = [](double need) {
    double half = 5.0;
    while (half < need) half += 0.5;
    return half;
  };
  const double hx = widen(need_x);
  const double hy = widen(need_y);
  GridSpec g{spec.x_min.value_or(-hx), spec.x_max.value_or(hx), spec.y_min.value_or(-hy), spec.y_max.value_or(hy),
             spec.resolution};
  std::vector<std::string> problems;
  if (g.x_min > -need_x || g.x_max < need_x) {
    problems.push_back(fmt::format("[wigner] x range [{}, {}] must cover +-{} for this state", num(g.x_min),
                                   num(g.x_max), num(need_x)));
  }
  if (g.y_min > -need_y || g.y_max < need_y) {
    problems.push_back(fmt::format("[wigner] y range [{}, {}] must cover +-{} for this state", num(g.y_min),
                                   num(g.y_max), num(need_y)));
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return g;
}

WignerRun wigner_run(const RunConfig& cfg, std::optional<Scenario> override, unsigned threads) {
  const Scenario scenario = override.value_or(cfg.wigner.scenario);
  const auto state = wigner_state(cfg, scenario);
  std::string description;
  if (scenario == Scenario::custom) {
    static constexpr std::array names = {"ground", "fock1", "equal_superposition", "meter", "coherent"};
    description = names[static_cast<std::size_t>(cfg.wigner.state)];
  } else {
    const auto p = scenario_params(scenario, cfg.params);
    description = fmt::format("meter phi={} delta={}", num(p.g0 / p.omega_m), num(p.delta));
  }
  const auto spec = wigner_grid_spec(cfg.wigner, state);
  return {scenario, description, spec, wigner_grid(state, spec, threads)};
}

Artifact cmd_wigner(const RunConfig& cfg, std::optional<Scenario> override, unsigned threads) {
  Artifact out;
  const Scenario scenario = override.value_or(cfg.wigner.scenario);
  if (scenario == Scenario::custom) add_regime_warnings(cfg.params, out);
  const auto run = wigner_run(cfg, override, threads);
  const auto& g = run.grid;

  std::string csv = "X,Y,W\n";
  csv.reserve(g.values.size() * 48);
  for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
      csv += num(g.xs[ix]);
      csv += ',';
      csv += num(g.ys[iy]);
      csv += ',';
      csv += num(g.at(ix, iy));
      csv += '\n';
    }
  }
  out.primary = std::move(csv);
  out.summary.push_back(fmt::format(
      "wigner: scenario={} state=\"{}\" grid=[{}, {}]x[{}, {}] resolution={} min(W)={} max(W)={} "
      "normalization_residual={} purity={}",
      to_string(run.scenario), run.description, num(run.spec.x_min), num(run.spec.x_max), num(run.spec.y_min),
      num(run.spec.y_max), run.spec.resolution, num(g.min()), num(g.max()), num(g.normalization_residual),
      num(g.purity())));
  if (g.normalization_residual > 1e-3) {
    out.warnings.push_back("wigner: normalization residual exceeds 1e-3; the grid may be too coarse");
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::warn: return "WARN";
    case CheckStatus::fail: return "FAIL";
  }
  return "?";
}

namespace {

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

SystemParams reference(double g0, double xi) {
  SystemParams p;
  p.g0 = g0;
  p.xi = xi;
  p.tau = std::numbers::pi;
  return p;
}

// Relative gap between the exact and leading-order post-selection
// probabilities, from the full pipeline.
double probability_gap(double delta, double phi) {
  const auto p = SystemParams::with_sideband(50, phi, delta);
  const auto outcome = postselect(evolve_numeric(p), dark_port_state(delta), p);
  const auto& r = std::get<PostSelectionResult>(outcome);
  return std::abs(r.probability_exact - r.probability_formula) / r.probability_exact;
}

}  // namespace

std::vector<CheckResult> validation_checks(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto psi0 = initial_state(p);
  std::vector<CheckResult> out;

  {
    const double ua = unitarity_residual(propagator_analytic(p));
    const double un = unitarity_residual(propagator_numeric(p));
    out.push_back({"unitarity", pass_if(ua <= 1e-10 && un <= 1e-10),
                   fmt::format("max|U^+U - I|: disentangled {}, direct {} (limit 1e-10)", num(ua), num(un))});
  }
  {
    const double fid = fidelity(propagator_analytic(p) * psi0, propagator_numeric(p) * psi0);
    out.push_back({"propagator agreement", pass_if(fid >= 1.0 - 1e-9),
                   fmt::format("fidelity disentangled vs direct exponential {} (limit 1 - 1e-9)", num(fid))});
  }
  {
    const double err = approximation_error(p, psi0);
    const double limit = p.xi > 0.0 ? std::max(p.g0 / p.xi, 1e-10) : std::numeric_limits<double>::infinity();
    const auto warnings = p.regime_warnings();
    CheckStatus status = pass_if(err <= limit);
    std::string detail = fmt::format("Bures distance full vs reduced Hamiltonian {} (limit g0/xi = {})", num(err),
                                     num(limit));
    if (!warnings.empty()) {
      status = CheckStatus::warn;
      for (const auto& w : warnings) detail += "; regime: " + w;
    }
    out.push_back({"approximation error", status, detail});
  }
  {
    std::vector<double> errs;
    for (double xi : {21.0, 41.0, 81.0}) {
      const auto q = reference(1e-3, xi);
      errs.push_back(approximation_error(q, initial_state(q)));
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    const bool ok = r1 >= 1.4 && r1 <= 2.8 && r2 >= 1.4 && r2 <= 2.8;
    out.push_back({"approximation scaling", pass_if(ok),
                   fmt::format("g0 = 1e-3, xi = 21, 41, 81: errors {}, {}, {}; ratios {}, {} (range [1.4, 2.8])",
                               num(errs[0]), num(errs[1]), num(errs[2]), num(r1), num(r2))});
  }
  if (p.xi > 0.0 && std::abs(2.0 * p.xi - p.omega_m) >= 1e-6 * p.omega_m) {
    double worst = 0.0;
    double printed_gbar = 0.0;
    for (double tau : {0.3, 1.0, p.tau}) {
      for (auto which : {DysonCoefficient::Abar, DysonCoefficient::Bbar, DysonCoefficient::fbar,
                         DysonCoefficient::gbar}) {
        const cplx quad = dyson_coefficient_quadrature(which, p, tau);
        worst = std::max(worst, std::abs(dyson_coefficient(which, p, tau, ClosedForm::corrected) - quad));
        if (which == DysonCoefficient::gbar) {
          printed_gbar = std::max(printed_gbar, std::abs(dyson_coefficient(which, p, tau) - quad));
        }
      }
    }
    out.push_back({"dyson closed forms", pass_if(worst <= 1e-9),
                   fmt::format("max |closed form - quadrature| {} at tau = 0.3, 1, {} (limit 1e-9); gbar with "
                               "sin^2(2 xi tau) deviates by {}",
                               num(worst), num(p.tau), num(printed_gbar))});
    const double norm = first_order_dyson_norm(p, p.tau);
    out.push_back({"dyson norm", norm <= 0.05 ? CheckStatus::pass : CheckStatus::warn,
                   fmt::format("||U^(1)|| = {} at tau = {} (advisory limit 0.05)", num(norm), num(p.tau))});
  } else {
    out.push_back({"dyson closed forms", CheckStatus::warn, "not applicable: needs xi > 0 and 2 xi != omega_m"});
  }
  {
    double worst_fid = 1.0;
    double worst_gap_ratio = 0.0;
    for (auto [d, phi] : {std::pair{5e-2, 1e-3}, std::pair{0.3, 1e-3}, std::pair{5e-4, 1e-3}}) {
      const auto q = SystemParams::with_sideband(50, phi, d);
      const auto r = std::get<PostSelectionResult>(postselect(evolve_numeric(q), dark_port_state(d), q));
      worst_fid = std::min(worst_fid, r.fidelity_vs_closed_form.value_or(0.0));
      worst_gap_ratio = std::max(worst_gap_ratio,
                                 std::abs(r.probability_exact - r.probability_formula) / r.probability_exact /
                                     (5.0 * phi * phi));
    }
    out.push_back({"meter state", pass_if(worst_fid >= 1.0 - 1e-8 && worst_gap_ratio <= 1.0),
                   fmt::format("worst fidelity vs closed form {} (limit 1 - 1e-8); worst probability gap {} x 5 phi^2",
                               num(worst_fid), num(worst_gap_ratio))});
  }
  {
    const double g1 = probability_gap(0.05, 1e-2);
    const double g2 = probability_gap(0.05, 5e-3);
    const double ratio = g1 / g2;
    out.push_back({"probability gap scaling", pass_if(ratio >= 3.0 && ratio <= 5.0),
                   fmt::format("delta = 0.05, phi = 1e-2 -> 5e-3: gaps {}, {}; ratio {} (range [3, 5])", num(g1),
                               num(g2), num(ratio))});
  }
  {
    const HermitianSpectrum full(hamiltonian_full_interaction(p));
    const HermitianSpectrum approx(hamiltonian_approx(p));
    const auto n_joint = tensor_embed(photon_difference(), joint_space(p.mech()), kPhotonLabel);
    const double n0 = expectation(n_joint, psi0).real();
    double worst_pop = 0.0;
    double worst_n = 0.0;
    for (double frac : {0.25, 0.5, 1.0}) {
      const double t = frac * p.tau;
      for (const auto* s : {&full, &approx}) {
        double total = 0.0;
        for (double v : factor_populations(s->evolve(psi0, t), kPhotonLabel)) total += v;
        worst_pop = std::max(worst_pop, std::abs(total - 1.0));
      }
      worst_n = std::max(worst_n, std::abs(expectation(n_joint, approx.evolve(psi0, t)).real() - n0));
    }
    out.push_back({"photon number conservation", pass_if(worst_pop <= 1e-10),
                   fmt::format("max |sum of photonic populations - 1| {} (limit 1e-10)", num(worst_pop))});
    out.push_back({"N constancy", pass_if(worst_n <= 1e-10),
                   fmt::format("max |<N>(t) - <N>(0)| under the reduced Hamiltonian {} (limit 1e-10)", num(worst_n))});
  }
  return out;
}

Artifact cmd_validate(const RunConfig& cfg) {
  Artifact out;
  add_regime_warnings(cfg.params, out);
  const auto checks = validation_checks(cfg);
  std::size_t failed = 0;
  std::size_t warned = 0;
  for (const auto& c : checks) {
    out.primary += fmt::format("{} {}: {}\n", to_string(c.status), c.name, c.detail);
    if (c.status == CheckStatus::fail) ++failed;
    if (c.status == CheckStatus::warn) ++warned;
  }
  out.summary.push_back(
      fmt::format("validate: {} checks, {} failed, {} warnings", checks.size(), failed, warned));
  if (failed > 0) out.status = ExitCode::validation_failure;
  return out;
}

// ---------------------------------------------------------------------------
// evolve

Artifact cmd_evolve(const RunConfig& cfg) {
  const auto& p = cfg.params;
  Artifact out;
  add_regime_warnings(p, out);
  const auto numeric = evolve_numeric(p);
  const auto analytic = evolved_state(p, EvolutionMethod::analytic_closed_form);
  const auto mech_dim = p.mech().dim();

  CsvTable table({"mode", "n", "numeric_re", "numeric_im", "analytic_re", "analytic_im", "abs_diff"});
  double max_diff = 0.0;
  double cavity = 0.0;
  for (std::size_t m = 0; m < kPhotonicDim; ++m) {
    for (std::size_t n = 0; n < mech_dim; ++n) {
      const std::size_t idx = m * mech_dim + n;
      const cplx a = numeric[idx];
      const cplx b = analytic[idx];
      const double diff = std::abs(a - b);
      max_diff = std::max(max_diff, diff);
      if (m >= 4) cavity += std::norm(a);
      table.add_row({std::string(to_string(kTravellingOrder[m])), std::to_string(n), num(a.real()), num(a.imag()),
                     num(b.real()), num(b.imag()), num(diff)});
    }
  }
  const double norm_sq = numeric.amplitudes().squaredNorm();
  out.primary = table.str();
  out.summary.push_back(fmt::format("evolve: total weight {}, cavity weight {}, max |numeric - closed form| {}",
                                    num(norm_sq), num(cavity), num(max_diff)));
  if (max_diff > 1e-9 || std::abs(norm_sq - 1.0) > 1e-10) {
    out.summary.push_back("evolve: closed form and propagator disagree beyond 1e-9");
    out.status = ExitCode::validation_failure;
  }
  return out;
}

}  // namespace optoweak::app
