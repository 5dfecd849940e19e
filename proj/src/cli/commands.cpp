#include "ucp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>

#include "ucp/carleman.hpp"
#include "ucp/cli/report.hpp"
#include "ucp/error.hpp"
#include "ucp/kernel.hpp"
#include "ucp/lift.hpp"
#include "ucp/parallel.hpp"
#include "ucp/quadrature.hpp"
#include "ucp/stability.hpp"

namespace ucp::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string path_in(const Scenario& sc, const std::string& file) {
  return (std::filesystem::path(sc.output_dir) / file).string();
}

Json columns_json(const CsvTable& t) {
  Json a = Json::array();
  for (const auto& c : t.columns()) a.push_back(c);
  return a;
}

// Collects the tables and the JSON summary of one command and writes them.
class Emitter {
 public:
  Emitter(const Scenario& sc, std::string command) : sc_(sc), result_{std::move(command), {}, {}} {
    summary_ = Json::object();
  }

  Json& summary() { return summary_; }

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    result_.assertions.push_back({name, pass, detail});
  }

  void table(const std::string& suffix, const CsvTable& t) { tables_.emplace_back(suffix, t); }

  CommandResult finish() {
    ensure_directory(sc_.output_dir);
    Json report;
    report["command"] = result_.command;
    report["status"] = result_.ok() ? "pass" : "fail";
    Json files = Json::object();
    for (const auto& [suffix, t] : tables_) {
      const std::string file = result_.command + suffix + ".csv";
      write_file(path_in(sc_, file), t.str());
      result_.files.push_back(path_in(sc_, file));
      files[file] = {{"rows", t.rows()}, {"columns", columns_json(t)}};
    }
    report["tables"] = files;
    Json checks = Json::array();
    for (const auto& a : result_.assertions) checks.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    report["assertions"] = checks;
    report["summary"] = summary_;
    report["config"] = to_json(sc_);
    const std::string file = result_.command + ".json";
    write_file(path_in(sc_, file), dump_json(report));
    result_.files.push_back(path_in(sc_, file));
    return result_;
  }

 private:
  const Scenario& sc_;
  CommandResult result_;
  Json summary_;
  std::vector<std::pair<std::string, CsvTable>> tables_;
};

std::string fmt(double x) { return format_double(x); }

Json point_json(const Point& p, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(p[i]);
  return a;
}

// Solution normalised to rho0 = T = 1 with its coefficients.
struct Normalized {
  CoefficientSet cs;
  WaveSolution ws;
};

Normalized normalized_solution(const Scenario& sc) {
  const auto cs = make_coefficients(sc.coefficients);
  const auto rc = rescale_to_time(cs, 0.0);
  auto ws = generate_solution(cs, sc.solution);
  if (!ws.grid.normalized()) ws = rescale_solution(ws, rc.scale);
  return {rc.coefficients, std::move(ws)};
}

CarlemanWeight weight_for(const Scenario& sc, const CoefficientSet& cs) {
  return CarlemanWeight(sc.carleman.C_star, cs.lambda, cs.A(Point{}), cs.dim);
}

std::vector<double> tau_values(const CarlemanSection& c) {
  std::vector<double> taus;
  const double hi = c.tau_factor * c.tau0;
  for (int i = 0; i < c.tau_points; ++i)
    taus.push_back(c.tau_points == 1 ? c.tau0 : c.tau0 + (hi - c.tau0) * i / (c.tau_points - 1));
  return taus;
}

// ---------------------------------------------------------------------------

CommandResult validate_fields(const Scenario& sc) {
  Emitter em(sc, "validate-fields");
  const auto cs = make_coefficients(sc.coefficients);
  const auto v = validate(cs, sc.validation_samples, sc.seed);
  CsvTable t({"check", "pass", "measured", "allowed", "witness_x1", "witness_x2"});
  const std::pair<const char*, const HypothesisCheck*> checks[] = {{"ellipticity_lower", &v.ellipticity_lower},
                                                                   {"ellipticity_upper", &v.ellipticity_upper},
                                                                   {"lipschitz", &v.lipschitz},
                                                                   {"lower_order", &v.lower_order}};
  for (const auto& [name, c] : checks) {
    t.add({std::string(name), c->pass, c->measured, c->allowed, c->witness[0], c->witness[1]});
    em.check(name, c->pass, "measured " + fmt(c->measured) + ", allowed " + fmt(c->allowed));
  }
  em.table("", t);
  em.summary() = {{"description", cs.description},
                  {"dim", cs.dim},
                  {"samples", v.samples},
                  {"lambda_hat", v.lambda_hat},
                  {"Lambda_hat", v.Lambda_hat},
                  {"Lambda1_hat", v.Lambda1_hat},
                  {"lipschitz_witness", point_json(v.lipschitz.witness, cs.dim)},
                  {"lipschitz_witness_pair", point_json(v.lipschitz.witness_pair, cs.dim)}};
  return em.finish();
}

// ---------------------------------------------------------------------------

struct KernelRow {
  int k = 0;
  double mu = 0.0, log_mu = 0.0, integral_error = 0.0, boundary_error = 0.0, asymptotic = 0.0;
  SupCheck sup;
};

KernelRow kernel_row(int k, int sup_grid) {
  KernelRow r;
  r.k = k;
  const auto s = KernelSpec::make(k);
  r.mu = s.mu;
  r.log_mu = s.log_mu;
  const GaussRule rule = gauss_legendre(k + 1);
  r.integral_error = std::abs(integrate(rule, -1.0, 1.0, [&](double t) { return phi(s, t).real(); }) - 1.0);
  for (double y : {-1.0, -0.5, 0.1, 1.0})
    for (double side : {-1.0, 1.0}) {
      const double d0 = std::abs(phi(s, cd(side, y)));
      const double d1 = std::abs(phi_d1(s, cd(side, y)));
      r.boundary_error = std::max(r.boundary_error, std::abs(boundary_magnitude(s, y, 0) - d0) / d0);
      r.boundary_error = std::max(r.boundary_error, std::abs(boundary_magnitude(s, y, 1) - d1) / d1);
    }
  r.asymptotic = s.mu * std::sqrt(std::numbers::pi / k);
  r.sup = sup_on_square(s, sup_grid);
  return r;
}

CommandResult kernel_table(const Scenario& sc, int jobs) {
  Emitter em(sc, "kernel-table");
  std::vector<int> ks = sc.kernel.k;
  std::sort(ks.begin(), ks.end());
  std::vector<KernelRow> rows(ks.size());
  parallel_for(ks.size(), jobs, [&](std::size_t i) { rows[i] = kernel_row(ks[i], sc.kernel.sup_grid); });

  CsvTable t({"k", "mu", "log_mu", "mu_sqrt_pi_over_k", "integral_error", "boundary_rel_error", "sup", "sup_t",
              "sup_y", "bound_2k", "within_2k", "bound_corner", "within_corner"});
  double worst_integral = 0.0, worst_boundary = 0.0;
  bool corner = true;
  int violations_2k = 0;
  for (const auto& r : rows) {
    t.add({std::int64_t{r.k}, r.mu, r.log_mu, r.asymptotic, r.integral_error, r.boundary_error, r.sup.sup, r.sup.t,
           r.sup.y, r.sup.bound_2k, r.sup.within_2k, r.sup.bound_corner, r.sup.within_corner});
    worst_integral = std::max(worst_integral, r.integral_error);
    worst_boundary = std::max(worst_boundary, r.boundary_error);
    corner = corner && r.sup.within_corner;
    violations_2k += r.sup.within_2k ? 0 : 1;
  }
  em.table("", t);
  em.check("integral_error <= 1e-12", worst_integral <= 1e-12, "max " + fmt(worst_integral));
  em.check("boundary_rel_error <= 1e-10", worst_boundary <= 1e-10, "max " + fmt(worst_boundary));
  em.check("sup <= corner value", corner);
  em.summary() = {{"rows", rows.size()},
                  {"max_integral_error", worst_integral},
                  {"max_boundary_rel_error", worst_boundary},
                  {"rows_exceeding_2k_bound", violations_2k},
                  {"note", "the 2^k mu_k column is reported only; the supremum sits at the corners (+-1, +-1)"}};
  return em.finish();
}

// ---------------------------------------------------------------------------

CommandResult lift_report(const Scenario& sc, int jobs) {
  Emitter em(sc, "lift-report");
  const auto [cs, ws] = normalized_solution(sc);
  const double H = h_bound_of(ws);
  const double eps = epsilon_of(ws, sc.lift.r0);
  const auto y = uniform_y_grid(sc.lift.ny);
  std::vector<int> ks = sc.lift.k;
  std::sort(ks.begin(), ks.end());

  CsvTable t({"k", "defect", "rate", "defect_envelope", "gamma_flag", "sup_full", "envelope_full", "full_holds",
              "sup_small", "envelope_small", "ratio_small", "caccioppoli", "caccioppoli_envelope",
              "caccioppoli_ratio", "residual", "forcing_ratio", "ibp_first_ratio", "ibp_second_ratio", "richardson",
              "warning"});
  bool full = true, ibp = true;
  std::vector<std::string> warnings;
  for (int k : ks) {
    const auto spec = KernelSpec::make(k);
    const auto el = lift(ws, spec, y, sc.lift.tolerance, jobs);
    const auto ff = forcing(ws, cs, spec, y);
    const double residual = elliptic_residual(el, ff, cs);
    const auto norms = forcing_norms(ff);
    double forcing_ratio = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0.0 && H > 0.0) forcing_ratio = std::max(forcing_ratio, norms[j] / forcing_envelope(spec, H, y[j]));
    Lemma1Defect d;
    d.k = k;
    d.defect = d.rate = d.envelope = kNaN;
    if (k >= 2) d = lemma1_defect(ws, spec, H);
    const auto b = lift_bounds_check(el, ws, spec, sc.lift.r0, eps, H);
    double r1 = kNaN, r2 = kNaN;
    if (!ws.utt.empty()) {
      const auto rep = ibp_identity_check(ws, spec, {0.0, 0.5, -0.5});
      r1 = rep.first_ratio;
      r2 = rep.second_ratio;
      ibp = ibp && r1 <= 10.0 && r2 <= 10.0;
    }
    full = full && b.full_holds;
    if (!el.warning.empty()) warnings.push_back("k=" + std::to_string(k) + ": " + el.warning);
    t.add({std::int64_t{k}, d.defect, d.rate, d.envelope, d.gamma_flag, b.sup_full, b.envelope_full, b.full_holds,
           b.sup_small, b.envelope_small, b.ratio_small, b.caccioppoli, b.caccioppoli_envelope, b.caccioppoli_ratio,
           residual, forcing_ratio, r1, r2, el.richardson, el.warning});
  }
  em.table("", t);
  em.check("sup_full <= 2^k mu_k H", full);
  if (!ws.utt.empty()) em.check("integration by parts within 10x budget", ibp);
  Json w = Json::array();
  for (const auto& s : warnings) w.push_back(s);
  em.summary() = {{"H", H},
                  {"eps", eps},
                  {"r0", sc.lift.r0},
                  {"space_nodes_per_axis", ws.grid.nx()},
                  {"time_nodes", ws.grid.nt},
                  {"ibp_checked", !ws.utt.empty()},
                  {"warnings", w}};
  return em.finish();
}

// ---------------------------------------------------------------------------

struct ProbeRow {
  BumpFamily family = BumpFamily::Radial;
  int grid = 0;
  double tau = 0.0;
  CarlemanProbe probe;
  double invariance = 0.0;
};

CommandResult carleman_probe(const Scenario& sc, int jobs) {
  Emitter em(sc, "carleman-probe");
  const auto cs = rescale_to_time(make_coefficients(sc.coefficients), 0.0).coefficients;
  const auto w = weight_for(sc, cs);
  const auto& c = sc.carleman;
  const auto cut = cutoff_build(w, c.r0);
  const auto taus = tau_values(c);

  std::vector<ProbeRow> rows;
  for (auto fam : c.families)
    for (int n : c.grids)
      for (double tau : taus) rows.push_back({fam, n, tau, {}, 0.0});
  std::map<int, TensorGrid> grids;
  for (int n : c.grids) grids.emplace(n, xy_grid(cs.dim, 1.1 * w.probe_radius(), n));
  std::map<std::pair<int, int>, XYField> bumps;
  for (auto fam : c.families)
    for (int n : c.grids) bumps.emplace(std::pair{static_cast<int>(fam), n}, bump(w, grids.at(n), fam, c.inner, c.outer));

  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    auto& r = rows[i];
    const auto& b = bumps.at({static_cast<int>(r.family), r.grid});
    r.probe = carleman_ratio(cs, w, b, r.tau);
    XYField scaled = b;
    for (auto& v : scaled.values) v *= cd(2.0, -3.0);
    const double other = carleman_ratio(cs, w, scaled, r.tau).ratio;
    r.invariance = std::abs(other - r.probe.ratio) / std::abs(r.probe.ratio);
  });

  CsvTable t({"family", "grid", "tau", "log_lhs", "log_rhs", "ratio", "scale_invariance"});
  bool finite = true;
  double worst_invariance = 0.0;
  for (const auto& r : rows) {
    t.add({std::string(to_string(r.family)), std::int64_t{r.grid}, r.tau, r.probe.log_lhs, r.probe.log_rhs,
           r.probe.ratio, r.invariance});
    finite = finite && std::isfinite(r.probe.ratio) && r.probe.ratio > 0.0;
    worst_invariance = std::max(worst_invariance, r.invariance);
  }
  em.table("", t);

  // max over tau per family and grid, compared between the two finest grids
  std::vector<int> sorted = c.grids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Json families = Json::object();
  double worst_variation = 0.0;
  for (auto fam : c.families) {
    Json per_grid = Json::object();
    std::map<int, double> max_ratio;
    for (const auto& r : rows)
      if (r.family == fam) max_ratio[r.grid] = std::max(max_ratio[r.grid], r.probe.ratio);
    for (const auto& [n, m] : max_ratio) per_grid[std::to_string(n)] = m;
    double variation = kNaN;
    if (sorted.size() >= 2) {
      const double fine = max_ratio[sorted.back()], coarse = max_ratio[sorted[sorted.size() - 2]];
      variation = std::abs(fine - coarse) / fine;
      worst_variation = std::max(worst_variation, variation);
    }
    families[to_string(fam)] = {{"max_ratio_by_grid", per_grid}, {"variation", variation}};
  }
  em.check("ratio finite and positive", finite);
  em.check("scale invariance <= 1e-12", worst_invariance <= 1e-12, "max " + fmt(worst_invariance));
  if (sorted.size() >= 2)
    em.check("max ratio varies < 25% between the two finest grids", worst_variation < 0.25,
             "max " + fmt(worst_variation));

  const double psi_small = w.profile()(1e-6) / 1e-6;
  em.summary() = {
      {"C_star", w.c_star()},
      {"lambda", w.lambda()},
      {"probe_radius", w.probe_radius()},
      {"families", families},
      {"psi",
       {{"lower_constant", psi_lower_constant(w.profile())},
        {"psi_1e-6_over_1e-6", psi_small},
        {"table_error_bound", w.profile().error_bound()},
        {"comparability_C2", weight_comparability(w, 4096, sc.seed)}}},
      {"cutoff",
       {{"r0", c.r0},
        {"r1", cut.r1},
        {"R", cut.R},
        {"inner_ramp_bound", cut.inner_ramp_bound()},
        {"outer_ramp_bound", cut.outer_ramp_bound()}}}};
  return em.finish();
}

// ---------------------------------------------------------------------------

Json report_json(const StabilityReport& r) {
  Json table = Json::array();
  for (const auto& row : r.table)
    table.push_back({{"k", row.k},
                     {"tau", row.tau},
                     {"log_sigma", row.log_sigma},
                     {"log_omega", row.log_omega},
                     {"tau_admissible", row.tau_admissible}});
  return {{"eps", r.eps},
          {"H", r.H},
          {"H_measured", r.H_measured},
          {"eps1", r.eps1},
          {"H1", r.H1},
          {"shrink", r.shrink},
          {"s", r.s},
          {"lambda0", r.lambda0},
          {"Lambda0", r.Lambda0},
          {"r1", r.r1},
          {"R", r.R},
          {"s_tilde", r.s_tilde},
          {"C1", r.C1},
          {"C2", r.C2},
          {"theta0", r.theta0},
          {"theta_prop", r.theta_prop},
          {"theta_internal", r.theta_internal},
          {"k_star", r.k_star},
          {"regime", to_string(r.regime)},
          {"lhs", r.lhs},
          {"lhs_rescaled", r.lhs_rescaled},
          {"lhs_tolerance", r.lhs_tolerance},
          {"lhs_consistent", r.lhs_consistent},
          {"rhs", r.rhs},
          {"log_rhs", r.log_rhs},
          {"margin", r.margin},
          {"prop_lhs", r.prop_lhs},
          {"prop_rhs", r.prop_rhs},
          {"prop_margin", r.prop_margin},
          {"internal_lhs", r.internal_lhs},
          {"main_branch_rhs", r.main_branch_rhs},
          {"fallback_rhs", r.fallback_rhs},
          {"eps_rescaled", r.eps_rescaled},
          {"H_rescaled", r.H_rescaled},
          {"eps_rescaled_bound", r.eps_rescaled_bound},
          {"H_rescaled_bound", r.H_rescaled_bound},
          {"residual", r.residual},
          {"residual_rescaled", r.residual_rescaled},
          {"table", table}};
}

CommandResult stability_run(const Scenario& sc, int jobs) {
  Emitter em(sc, "stability-run");
  const auto& st = sc.stability;
  const ExperimentSpec spec = experiment_spec(sc);
  const auto main = run_experiment(spec);

  CsvTable table({"k", "tau", "log_sigma", "log_omega", "tau_admissible"});
  for (const auto& row : main.table)
    table.add({std::int64_t{row.k}, row.tau, row.log_sigma, row.log_omega, row.tau_admissible});
  table.sort_by("k");

  const auto sweep = delta_sweep(spec, st.deltas, jobs);
  CsvTable sw({"delta", "eps", "H", "lhs", "rhs", "margin", "prop_lhs", "prop_rhs", "prop_margin", "theta0",
               "k_star", "regime", "failed_stage", "failure"});
  bool margins = true;
  double eps_lo = INFINITY, eps_hi = 0.0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto& r = sweep[i];
    sw.add({st.deltas[i], r.eps, r.H, r.lhs, r.rhs, r.margin, r.prop_lhs, r.prop_rhs, r.prop_margin, r.theta0,
            std::int64_t{r.k_star}, std::string(to_string(r.regime)), r.failed_stage, r.failure});
    margins = margins && r.failed_stage.empty() && r.margin >= 0.0;
    if (r.eps > 0.0) {
      eps_lo = std::min(eps_lo, r.eps);
      eps_hi = std::max(eps_hi, r.eps);
    }
  }
  const double decades = eps_hi > 0.0 ? std::log10(eps_hi / eps_lo) : 0.0;

  CsvTable rs({"t0", "shrink", "lambda0", "Lambda0", "lhs", "lhs_rescaled", "lhs_tolerance", "lhs_consistent",
               "eps_rescaled", "eps_rescaled_bound", "H_rescaled", "H_rescaled_bound"});
  std::vector<StabilityReport> at_t0(st.t0_list.size());
  parallel_for(st.t0_list.size(), jobs, [&](std::size_t i) {
    ExperimentSpec e = spec;
    e.t0 = st.t0_list[i];
    at_t0[i] = run_experiment(e);
  });
  bool consistent = true;
  for (std::size_t i = 0; i < at_t0.size(); ++i) {
    const auto& r = at_t0[i];
    rs.add({st.t0_list[i], r.shrink, r.lambda0, r.Lambda0, r.lhs, r.lhs_rescaled, r.lhs_tolerance, r.lhs_consistent,
            r.eps_rescaled, r.eps_rescaled_bound, r.H_rescaled, r.H_rescaled_bound});
    consistent = consistent && r.lhs_consistent;
  }

  CsvTable su({"alpha", "N", "envelope", "exponent", "target", "verdict"});
  Json fits = Json::array();
  bool recovered = true;
  const auto cs = make_coefficients(sc.coefficients);
  for (double alpha : st.sucp.alphas) {
    const auto series = synthetic_sucp_series(st.sucp.N, st.sucp.r0, cs.rho0, st.rho, st.C, alpha);
    const auto fit = sucp_extrapolate(series, alpha);
    for (std::size_t i = 0; i < fit.N.size(); ++i)
      su.add({alpha, std::int64_t{fit.N[i]}, fit.envelope[i], fit.exponent, fit.target,
              std::string(to_string(fit.verdict))});
    const double rel = std::abs(fit.exponent - fit.target) / fit.target;
    recovered = recovered && fit.verdict == SucpVerdict::Consistent && rel <= 0.1;
    fits.push_back({{"alpha", alpha},
                    {"exponent", fit.exponent},
                    {"target", fit.target},
                    {"relative_error", rel},
                    {"verdict", to_string(fit.verdict)}});
  }

  em.table("", sw);
  em.table("_table", table);
  em.table("_rescaling", rs);
  em.table("_sucp", su);
  em.check("lhs agrees with the rescaled evaluation", consistent);
  if (st.assert_margin) {
    em.check("margin >= 0 over the delta sweep", margins);
    em.check("sucp exponent within 10% of alpha/2", recovered);
  }
  em.summary() = {{"experiment", report_json(main)},
                  {"sweep_margins_nonnegative", margins},
                  {"sweep_eps_decades", decades},
                  {"sucp", fits}};
  return em.finish();
}

}  // namespace

bool CommandResult::ok() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

void preflight(const Scenario& sc, const std::vector<std::string>& commands) {
  const auto cs = make_coefficients(sc.coefficients);
  const auto has = [&](const char* c) { return std::find(commands.begin(), commands.end(), c) != commands.end(); };
  if (sc.solution.source == SolutionSource::Analytic && sc.solution.family == SolutionFamily::StandingWave &&
      (has("lift-report") || has("stability-run")))
    standing_wave_function(cs, sc.solution.mode, sc.solution.amplitude);
  if (has("lift-report") && sc.lift.r0 > 1.0)
    throw Error(ErrorKind::Domain, "lift", "r0 must lie in (0, 1] on the normalised ball");
  if (has("carleman-probe")) {
    const auto rc = rescale_to_time(cs, 0.0).coefficients;
    const auto w = weight_for(sc, rc);
    cutoff_build(w, sc.carleman.r0);
    if (!(sc.carleman.inner < sc.carleman.outer && sc.carleman.outer <= 1.0))
      throw Error(ErrorKind::Domain, "carleman", "bump annulus needs 0 <= inner < outer <= 1");
  }
  if (has("stability-run") && sc.stability.enabled) {
    const auto& st = sc.stability;
    if (!(st.alpha > 0.0 && st.alpha < 0.5))
      throw Error(ErrorKind::Domain, "stability", "alpha must lie in (0, 1/2)");
    if (!(st.r0 <= st.rho && st.rho <= st.s0 * cs.rho0))
      throw Error(ErrorKind::Domain, "stability", "need 0 < r0 <= rho <= s0 rho0");
    for (double t0 : st.t0_list)
      if (!(std::abs(t0) < cs.T)) throw Error(ErrorKind::Domain, "stability", "t0_list entries need |t0| < T");
    if (!(std::abs(st.t0) < cs.T)) throw Error(ErrorKind::Domain, "stability", "t0 needs |t0| < T");
    if (st.r0 < 2.0 * cs.rho0 / (sc.solution.nx - 1))
      throw Error(ErrorKind::Resolution, "stability", "r0 is smaller than one grid cell of the solution grid");
  }
}

CommandResult run_command(const std::string& command, const Scenario& sc, int jobs) {
  if (command == "validate-fields") return validate_fields(sc);
  if (command == "kernel-table") return kernel_table(sc, jobs);
  if (command == "lift-report") return lift_report(sc, jobs);
  if (command == "carleman-probe") return carleman_probe(sc, jobs);
  if (command == "stability-run") return stability_run(sc, jobs);
  throw Error(ErrorKind::Configuration, "cli", "unknown command '" + command + "'");
}

std::vector<CommandResult> run_all(const Scenario& sc, int jobs) {
  std::vector<std::string> todo;
  for (const auto& c : sc.commands)
    if (c != "stability-run" || sc.stability.enabled) todo.push_back(c);
  preflight(sc, todo);
  std::vector<CommandResult> results;
  for (const auto& c : todo) results.push_back(run_command(c, sc, jobs));

  Json summary;
  summary["command"] = "run-all";
  bool ok = true;
  Json list = Json::array();
  for (const auto& r : results) {
    ok = ok && r.ok();
    Json failed = Json::array();
    for (const auto& a : r.assertions)
      if (!a.pass) failed.push_back(a.name);
    Json files = Json::array();
    for (const auto& f : r.files) files.push_back(std::filesystem::path(f).filename().string());
    list.push_back({{"command", r.command}, {"status", r.ok() ? "pass" : "fail"}, {"failed", failed}, {"files", files}});
  }
  summary["status"] = ok ? "pass" : "fail";
  summary["commands"] = list;
  summary["config"] = to_json(sc);
  ensure_directory(sc.output_dir);
  write_file(path_in(sc, "run-all.json"), dump_json(summary));
  return results;
}

}  // namespace ucp::cli
