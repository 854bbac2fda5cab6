#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qclone/b92.hpp"
#include "qclone/machine_io.hpp"
#include "qclone/optimizer.hpp"
#include "table.hpp"

namespace qclone::cli {
namespace {

enum class Format { Auto, Csv, Text };

struct GlobalOptions {
  std::string out_path;
  Format format = Format::Auto;
  bool degrees = false;
};

// Raised for bad flag values detected after parsing; maps to the usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a subcommand ran but its verdict is negative (e.g. validate).
class VerdictFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double angle(double value, const GlobalOptions& g) { return g.degrees ? value * kPi / 180.0 : value; }

CloningSpec resolve_machine(const std::string& name_or_path) {
  if (auto b = builtin_machine(name_or_path)) return *b;
  return load_machine_spec(name_or_path);
}

std::string short_name(const std::string& name) {
  static const std::map<std::string, std::string> abbrev{
      {"meridional", "mer"}, {"equatorial", "eq"}, {"universal", "uni"}, {"wootters-zurek", "wz"}, {"ideal", "ideal"}};
  const auto it = abbrev.find(name);
  return it == abbrev.end() ? name : it->second;
}

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string render(const Table& t, Format f, Format fallback) {
  return (f == Format::Auto ? fallback : f) == Format::Csv ? to_csv(t) : to_text(t);
}

std::string render(const Record& r, Format f, Format fallback) {
  return (f == Format::Auto ? fallback : f) == Format::Csv ? to_csv(r) : to_text(r);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return xs;
}

std::string variant_name(const CloningSpec& s) { return s.is_explicit() ? "explicit" : "channel"; }

// --- subcommands ---------------------------------------------------------

std::string cmd_validate(const std::string& path, const GlobalOptions& g) {
  const auto spec = load_machine_spec(path);
  Record r{{"name", spec.name()}, {"variant", variant_name(spec)}};
  bool ok = true;
  if (spec.is_explicit()) {
    const auto report = validate_unitarity(spec);
    r.emplace_back("apparatus_dim", static_cast<std::int64_t>(spec.explicit_machine().apparatus_dim));
    for (const auto& res : report.residuals) r.emplace_back(res.name, res.value);
    r.emplace_back("max_residual", report.max_abs());
    ok = report.passed();
  } else {
    r.emplace_back("fidelity", spec.channel().clone_fidelity);
  }
  r.emplace_back("valid", std::string(ok ? "true" : "false"));
  auto body = render(r, g.format, Format::Text);
  if (!ok) throw VerdictFailure(body);
  return body;
}

std::string cmd_fidelity(const std::string& machine, int points, std::optional<double> phi, const GlobalOptions& g) {
  if (points < 2) throw UsageError("--points must be at least 2");
  const double east_phi = phi ? angle(*phi, g) : 0.0;
  if (!std::isfinite(east_phi) || east_phi < 0.0 || east_phi >= 2.0 * kPi)
    throw UsageError("--phi must lie in [0, 2pi)");
  const double west_phi = std::fmod(east_phi + kPi, 2.0 * kPi);
  const auto spec = resolve_machine(machine);

  Table t{{"theta", "F_east", "F_west"}, {}};
  for (double theta : linspace(0.0, kPi, points)) {
    theta = std::min(theta, kPi);
    const PureQubit e(theta, east_phi), w(theta, west_phi);
    t.rows.push_back({theta, fidelity(e, clone_marginal(spec, e)), fidelity(w, clone_marginal(spec, w))});
  }
  return render(t, g.format, Format::Csv);
}

Record constraint_fields(const ConstraintFlags& c) {
  std::string active;
  auto add = [&](bool on, const char* name) {
    if (on) active += (active.empty() ? "" : "+") + std::string(name);
  };
  add(c.zeta_lower, "zeta_lower");
  add(c.zeta_upper, "zeta_upper");
  add(c.eta_lower, "eta_lower");
  add(c.kappa_lower, "kappa_lower");
  add(c.gram, "gram");
  return {{"active_constraints", active.empty() ? std::string("none") : active}};
}

std::string cmd_optimize(const std::string& mode, double grid_step, const GlobalOptions& g) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) throw UsageError("--grid-step must lie in (0, 0.1]");
  OptimizerOptions opts;
  opts.grid_step = grid_step;
  const auto res = mode == "average" ? optimize_average(opts) : optimize_equal_fidelity(opts);
  Record r{{"mode", mode},
           {"zeta", res.params.zeta},
           {"eta", res.params.eta},
           {"kappa", res.params.kappa},
           {"fidelity", res.objective},
           {"average_fidelity", average_fidelity(res.params)},
           {"grid_step", res.grid_step},
           {"grid_objective", res.grid_objective},
           {"reference_objective", res.reference_objective},
           {"exceeds_reference", std::string(res.exceeds_reference ? "true" : "false")}};
  for (auto& f : constraint_fields(res.boundary_active)) r.push_back(std::move(f));
  if (!res.note.empty()) r.emplace_back("note", res.note);
  return render(r, g.format, Format::Text);
}

std::string cmd_scan(int grid_steps, const GlobalOptions& g) {
  if (grid_steps < 1 || grid_steps > 400) throw UsageError("--grid-steps must lie in [1, 400]");
  Table t{{"zeta", "eta", "kappa", "feasible", "average_fidelity"}, {}};
  for (const auto& row : scan_feasible_region(grid_steps)) {
    t.rows.push_back({row.zeta, row.eta, row.kappa, static_cast<std::int64_t>(row.feasible),
                      row.feasible ? Cell{row.average_fidelity} : Cell{}});
  }
  return render(t, g.format, Format::Csv);
}

std::string cmd_curve(const std::string& machines, double omin, double omax, int points, const GlobalOptions& g) {
  if (points < 1) throw UsageError("--points must be positive");
  if (!(omin > 0.0 && omax < 1.0 && omin <= omax)) throw UsageError("overlaps must satisfy 0 < min <= max < 1");
  if (points == 1 && omin != omax) throw UsageError("--points 1 requires --overlap-min == --overlap-max");

  const auto requested = split_list(machines);
  if (requested.empty()) throw UsageError("--machines is empty");
  // Built-ins come first in canonical order, then files in the order given.
  std::vector<CloningSpec> specs;
  for (const auto& b : builtin_machine_names())
    if (std::find(requested.begin(), requested.end(), b) != requested.end()) specs.push_back(*builtin_machine(b));
  for (const auto& m : requested)
    if (!builtin_machine(m)) specs.push_back(load_machine_spec(m));

  const auto grid = linspace(omin, omax, points);
  std::vector<std::vector<b92::CurvePoint>> curves;
  Table t{{"O"}, {}};
  for (const auto& s : specs) {
    curves.push_back(b92::info_curve(s, grid));
    t.header.push_back("I_" + short_name(s.name()));
  }
  for (const auto& s : specs) t.header.push_back("D_" + short_name(s.name()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i]};
    for (const auto& c : curves) row.emplace_back(c[i].mutual_information);
    for (const auto& c : curves) row.emplace_back(c[i].discrepancy);
    t.rows.push_back(std::move(row));
  }
  return render(t, g.format, Format::Csv);
}

double checked_vartheta(double raw, const GlobalOptions& g) {
  const double v = angle(raw, g);
  if (!std::isfinite(v) || v <= 0.0 || v > 0.5 * kPi) throw UsageError("--vartheta must lie in (0, pi/2]");
  return v;
}

std::string cmd_analyze(const std::string& machine, double vartheta_raw, const GlobalOptions& g) {
  const double vartheta = checked_vartheta(vartheta_raw, g);
  const auto a = b92::attack_analysis(resolve_machine(machine), vartheta);
  Record r{{"machine", a.machine_name},
           {"vartheta", a.vartheta},
           {"overlap", a.overlap},
           {"mutual_information", a.mutual_information},
           {"discrepancy", a.discrepancy},
           {"discrepancy_u", a.discrepancy_u},
           {"discrepancy_v", a.discrepancy_v}};
  for (std::size_t mu = 0; mu < 3; ++mu) {
    const auto k = std::to_string(mu + 1);
    r.emplace_back("p" + k + "_u", a.outcome_probs[mu][0]);
    r.emplace_back("p" + k + "_v", a.outcome_probs[mu][1]);
  }
  return render(r, g.format, Format::Text);
}

std::string cmd_simulate(const std::string& machine, double vartheta_raw, std::int64_t n, std::uint64_t seed,
                         double check_fraction, unsigned threads, const GlobalOptions& g) {
  const double vartheta = checked_vartheta(vartheta_raw, g);
  if (n < 1) throw UsageError("--n must be positive");
  if (!(check_fraction >= 0.0 && check_fraction < 1.0)) throw UsageError("--check-fraction must lie in [0, 1)");
  std::optional<CloningSpec> attack;
  if (machine != "none") attack = resolve_machine(machine);
  b92::SimulationOptions opts;
  opts.check_fraction = check_fraction;
  opts.threads = threads;
  const auto run = b92::simulate_protocol(attack ? &*attack : nullptr, vartheta, static_cast<std::uint64_t>(n), seed, opts);
  const auto expect = b92::expected_rates(attack ? &*attack : nullptr, vartheta);
  auto u = [](std::uint64_t v) { return Cell{static_cast<std::int64_t>(v)}; };
  Record r{{"machine", machine},
           {"vartheta", vartheta},
           {"seed", std::to_string(run.seed)},
           {"n_trials", u(run.n_trials)},
           {"conclusive_correct", u(run.conclusive_correct)},
           {"conclusive_error", u(run.conclusive_error)},
           {"inconclusive", u(run.inconclusive)},
           {"check_trials", u(run.check_trials)},
           {"check_failures", u(run.check_failures)},
           {"conclusive_rate", run.empirical_conclusive_rate()},
           {"error_rate", run.empirical_error_rate()},
           {"discrepancy_rate", run.empirical_discrepancy_rate()},
           {"expected_conclusive_rate", expect.conclusive_rate},
           {"expected_error_rate", expect.error_rate},
           {"expected_discrepancy_rate", expect.discrepancy_rate}};
  return render(r, g.format, Format::Text);
}

std::string cmd_synthesize(const BHParams& p, const std::string& name) {
  if (!feasible(p)) throw InfeasibleParams("parameters violate kappa^2 + eta^2 <= 4 zeta (1 - 2 zeta)");
  return format_machine_spec(synthesize(p, name));
}

void emit(const std::string& body, const GlobalOptions& g, std::ostream& out) {
  if (g.out_path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw SpecIoError("cannot open output file '" + g.out_path + "'");
  f << body;
  if (!f) throw SpecIoError("failed writing '" + g.out_path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric 1->2 qubit cloning machines and B92 eavesdropping analysis", "qclone"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  const std::map<std::string, Format> formats{{"auto", Format::Auto}, {"csv", Format::Csv}, {"text", Format::Text}};
  app.add_option("--out", g.out_path, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_flag("--degrees", g.degrees, "Angle flags are given in degrees");

  std::string spec_path, machine, machines, mode = "equal-fidelity";
  int points = 181, grid_steps = 0, curve_points = 0;
  double phi = 0.0, grid_step = 1e-3, omin = 0.0, omax = 0.0, vartheta = 0.0, check_fraction = 0.1;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  BHParams params;
  std::string synth_name = "synthesized";

  auto* validate = app.add_subcommand("validate", "Check a machine-spec file against the unitarity conditions");
  validate->add_option("--spec", spec_path, "Machine-spec file")->required();

  auto* fid = app.add_subcommand("fidelity", "Clone fidelity along a meridian pair");
  fid->add_option("--machine", machine, "Built-in name or spec file")->required();
  fid->add_option("--points", points, "Number of theta samples over [0, pi]");
  auto* phi_opt = fid->add_option("--phi", phi, "Azimuth of the first meridian");

  auto* opt = app.add_subcommand("optimize", "Optimize the cloning parameters");
  opt->add_option("--mode", mode, "Objective")->check(CLI::IsMember({"equal-fidelity", "average"}));
  opt->add_option("--grid-step", grid_step, "Grid spacing of the global stage");

  auto* scan = app.add_subcommand("scan", "Tabulate feasibility and average fidelity on a grid");
  scan->add_option("--grid-steps", grid_steps, "Intervals per axis")->required();

  auto* b92cmd = app.add_subcommand("b92", "B92 eavesdropping analysis");
  b92cmd->require_subcommand(1);
  auto* curve = b92cmd->add_subcommand("curve", "Information and discrepancy versus overlap");
  curve->add_option("--machines", machines, "Comma-separated machine names or files")->required();
  curve->add_option("--overlap-min", omin)->required();
  curve->add_option("--overlap-max", omax)->required();
  curve->add_option("--points", curve_points)->required();

  auto* analyze = b92cmd->add_subcommand("analyze", "Single-angle attack analysis");
  analyze->add_option("--machine", machine)->required();
  analyze->add_option("--vartheta", vartheta)->required();

  auto* simulate = b92cmd->add_subcommand("simulate", "Monte Carlo protocol run");
  simulate->add_option("--machine", machine, "Built-in name, spec file or 'none'")->required();
  simulate->add_option("--vartheta", vartheta)->required();
  simulate->add_option("--n", n)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--check-fraction", check_fraction);
  simulate->add_option("--threads", threads)->check(CLI::Range(1u, 256u));

  auto* exp = app.add_subcommand("export", "Write a machine as a spec file");
  exp->add_option("--machine", machine)->required();

  auto* synth = app.add_subcommand("synthesize", "Build an explicit machine from (zeta, eta, kappa)");
  synth->add_option("--zeta", params.zeta)->required();
  synth->add_option("--eta", params.eta)->required();
  synth->add_option("--kappa", params.kappa)->required();
  synth->add_option("--name", synth_name);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::string body;
    if (*validate) body = cmd_validate(spec_path, g);
    else if (*fid) body = cmd_fidelity(machine, points, phi_opt->count() ? std::optional(phi) : std::nullopt, g);
    else if (*opt) body = cmd_optimize(mode, grid_step, g);
    else if (*scan) body = cmd_scan(grid_steps, g);
    else if (*curve) body = cmd_curve(machines, omin, omax, curve_points, g);
    else if (*analyze) body = cmd_analyze(machine, vartheta, g);
    else if (*simulate) body = cmd_simulate(machine, vartheta, n, seed, check_fraction, threads, g);
    else if (*exp) body = format_machine_spec(resolve_machine(machine));
    else if (*synth) body = cmd_synthesize(params, synth_name);
    emit(body, g, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerdictFailure& e) {
    emit(e.what(), g, out);
    err << "error: machine violates unitarity\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace qclone::cli
