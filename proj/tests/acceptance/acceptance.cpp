// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "gram_oracle.hpp"
#include "qclone/b92.hpp"
#include "qclone/optimizer.hpp"

using namespace qclone;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

std::map<std::string, std::string> parse_record(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

Verdict meridional_parameters() {
  int code = 0;
  auto kv = parse_record(run_cli({"optimize", "--mode", "equal-fidelity"}, &code));
  const auto r = optimize_equal_fidelity();
  const double dz = std::abs(r.params.zeta - 0.1), de = std::abs(r.params.eta - 0.4), dk = std::abs(r.params.kappa - 0.4);
  const double df = std::abs(r.objective - 0.9);
  const bool cli_ok = code == 0 && kv["zeta"] == "0.1" && kv["eta"] == "0.4" && kv["kappa"] == "0.4" && kv["fidelity"] == "0.9";
  return {cli_ok && dz <= 1e-6 && de <= 1e-6 && dk <= 1e-6 && df <= 1e-9,
          fmt("max param error %.2e, fidelity error %.2e", std::max({dz, de, dk}), df)};
}

Verdict average_fidelity_check() {
  const double closed = average_fidelity(kMeridionalParams);
  const double expected = (3.0 - 0.2 + 0.4 + 1.6 / kPi) / 4.0;
  const bool rounds = std::round(closed * 1000.0) / 1000.0 == 0.927;
  qtest::Gen g(2024);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto p = g.feasible_params();
    worst = std::max(worst, std::abs(average_fidelity(p) - average_fidelity_quadrature(p, 100000)));
  }
  return {std::abs(closed - expected) <= 1e-15 && rounds && worst <= 1e-8,
          fmt("F_avg = %.12f, worst quadrature gap %.2e", closed, worst)};
}

Verdict fidelity_curve() {
  const auto spec = meridional_spec();
  constexpr int n = 181;
  const double step = kPi / (n - 1);
  std::vector<double> east(n);
  for (int i = 0; i < n; ++i) {
    const auto s = main_circle_state(std::min(kPi, i * step), Meridian::East);
    east[i] = fidelity(s, clone_marginal(spec, s));
  }
  const double lo = *std::min_element(east.begin(), east.end());
  const double hi = *std::max_element(east.begin(), east.end());
  bool placement = true;
  for (int i = 0; i < n; ++i) {
    const double th = i * step;
    if (east[i] <= lo + 1e-9) {
      const double d = std::min({th, std::abs(th - kPi / 2), std::abs(th - kPi)});
      placement = placement && d <= step + 1e-12;
    }
    if (east[i] >= hi - 1e-9) placement = placement && std::abs(std::sin(th) - 0.5) <= step;
  }
  const auto w = main_circle_state(kPi / 2, Meridian::West);
  const double west = fidelity(w, clone_marginal(spec, w));
  return {std::abs(lo - 0.9) <= 1e-9 && std::abs(hi - 0.95) <= 1e-9 && placement && std::abs(west - 0.5) <= 1e-12,
          fmt("east min %.12f max %.12f, west(pi/2) %.15f", lo, hi, west)};
}

Verdict simulation_equivalence() {
  qtest::Gen g(4242);
  double worst_rho = 0.0, worst_f = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto p = g.feasible_params();
    const double theta = g.theta();
    const auto side = g.side();
    const auto sim = clone(synthesize(p), main_circle_state(theta, side)).rho_a;
    const auto ref = reduced_output_closed_form(p, theta, side);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) worst_rho = std::max(worst_rho, std::abs(sim(i, j) - ref(i, j)));
  }
  const auto mer = meridional_spec();
  for (int t = 0; t < 200; ++t) {
    const PureQubit s(g.theta(), g.phi());
    const double sn = std::sin(s.theta());
    const double formula = 0.9 - 0.2 * sn * (sn - std::cos(s.phi()));
    worst_f = std::max(worst_f, std::abs(fidelity(s, clone_marginal(mer, s)) - formula));
  }
  return {worst_rho <= 1e-10 && worst_f <= 1e-10, fmt("worst entry gap %.2e, worst fidelity gap %.2e", worst_rho, worst_f)};
}

Verdict feasibility_oracle() {
  const double residual = validate_unitarity(meridional_spec()).max_abs();
  qtest::Gen g(77);
  long disagreements = 0, skipped = 0;
  constexpr long n = 1000000;
  for (long t = 0; t < n; ++t) {
    // Every fifth sample sits just off the boundary.
    const auto p = t % 5 == 0 ? g.near_boundary_params() : g.box_params();
    if (std::abs(gram_margin(p)) <= 1e-9) {
      ++skipped;
      continue;
    }
    if (feasible(p) != qtest::oracle_feasible(p)) ++disagreements;
  }
  return {residual <= 1e-12 && disagreements == 0,
          fmt("residual %.2e, %.0f disagreements, %.0f boundary samples skipped", residual,
              static_cast<double>(disagreements), static_cast<double>(skipped))};
}

Verdict discrepancies() {
  double uni = 0.0, eq = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double vt = i * (kPi / 2) / 200;
    uni = std::max(uni, std::abs(b92::attack_analysis(universal_spec(), vt).discrepancy - 1.0 / 6.0));
    eq = std::max(eq, std::abs(b92::attack_analysis(equatorial_spec(), vt).discrepancy - (0.5 - std::sqrt(0.125))));
  }
  // Grid contains π/6, where the minimum sits, and π/2, where the maximum is attained.
  const auto mer = meridional_spec();
  double lo = 1.0, hi = 0.0;
  constexpr int n = 3000;
  for (int i = 1; i <= n; ++i) {
    const double d = b92::attack_analysis(mer, i * (kPi / 2) / n).discrepancy;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {uni <= 1e-12 && eq <= 1e-12 && std::abs(lo - 0.05) <= 1e-9 && std::abs(hi - 0.10) <= 1e-9,
          fmt("universal gap %.2e, equatorial gap %.2e, meridional D in [%.12f, ", uni, eq, lo) +
              fmt("%.12f]", hi)};
}

Verdict curve_ordering() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  const auto mer = b92::info_curve(meridional_spec(), grid);
  const auto eq = b92::info_curve(equatorial_spec(), grid);
  const auto uni = b92::info_curve(universal_spec(), grid);
  bool ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ok = ok && mer[i].mutual_information > eq[i].mutual_information &&
         eq[i].mutual_information > uni[i].mutual_information;
    for (const auto* c : {&mer, &eq, &uni})
      ok = ok && (*c)[i].mutual_information >= 0.0 && (*c)[i].mutual_information <= 1.0;
  }
  for (const auto* c : {&mer, &eq, &uni}) ok = ok && c->back().mutual_information < c->front().mutual_information;
  const double pin = std::max({std::abs(mer[9].mutual_information - 0.14853254600910315),
                               std::abs(eq[9].mutual_information - 0.0863645448324315),
                               std::abs(uni[9].mutual_information - 0.0737004767835685)});
  return {ok && pin <= 1e-10, std::string(ok ? "ordering and range hold" : "ordering or range violated") +
                                 fmt(" at 19 points, pinned gap %.2e", pin)};
}

Verdict povm_suite() {
  double worst = 0.0;
  constexpr int n = 500;
  for (int i = 0; i < n; ++i) {
    // Open interval (0, π/2): the pair is degenerate at π/2.
    const double vt = (i + 0.5) * (kPi / 2) / n;
    const auto pair = b92::b92_pair(vt);
    const auto m = b92::povm(pair);
    const auto sum = m.g[0] + m.g[1] + m.g[2];
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) worst = std::max(worst, std::abs(sum(r, c) - Complex(r == c, 0.0)));
    for (const auto& e : m.g)
      for (double ev : hermitian_eigenvalues(e)) worst = std::max(worst, -ev);
    const auto pu = b92::outcome_probs(m, DensityMatrix::from_pure(pair.u));
    const auto pv = b92::outcome_probs(m, DensityMatrix::from_pure(pair.v));
    worst = std::max({worst, std::abs(pu[0]), std::abs(pv[1])});
    worst = std::max({worst, std::abs(pu[1] - (1.0 - std::sin(vt))), std::abs(pv[0] - (1.0 - std::sin(vt)))});
  }
  return {worst <= 1e-12, fmt("worst violation %.2e over 500 angles", worst)};
}

Verdict monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  const auto spec = meridional_spec();
  const double vt = kPi / 4;
  constexpr std::uint64_t n = 100000;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto run = b92::simulate_protocol(&spec, vt, n, seed);
    const auto e = b92::expected_rates(&spec, vt);
    const double k = static_cast<double>(run.key_trials()), c = static_cast<double>(run.conclusive());
    const double se_c = std::sqrt(e.conclusive_rate * (1 - e.conclusive_rate) / k);
    const double se_e = std::sqrt(e.error_rate * (1 - e.error_rate) / c);
    if (std::abs(run.empirical_conclusive_rate() - e.conclusive_rate) <= 3 * se_c &&
        std::abs(run.empirical_error_rate() - e.error_rate) <= 3 * se_e)
      ++good;
  }
  const std::vector<std::string> argv{"b92", "simulate", "--machine", "meridional", "--vartheta", "0.785398163397448",
                                      "--n", "100000", "--seed", "31337"};
  const bool identical = run_cli(argv) == run_cli(argv);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {good >= 99 && identical && secs <= 60.0,
          fmt("%.0f/100 seeds within 3 SE, %.2f s", good, secs) + (identical ? ", serialization stable" : ", serialization differs")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict goldens() {
  const std::filesystem::path dir = QCLONE_GOLDEN_DIR;
  int matched = 0;
  matched += run_cli({"fidelity", "--machine", "meridional", "--points", "181"}) == slurp(dir / "fidelity_meridional.csv");
  matched += run_cli({"optimize", "--mode", "equal-fidelity"}) == slurp(dir / "optimize_equal_fidelity.txt");
  matched += run_cli({"b92", "curve", "--machines", "meridional,universal,equatorial", "--overlap-min", "0.05",
                      "--overlap-max", "0.95", "--points", "19"}) == slurp(dir / "b92_curve.csv");
  return {matched == 3, fmt("%.0f/3 outputs byte-identical", matched)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"meridional parameters", meridional_parameters},
      {"average fidelity", average_fidelity_check},
      {"fidelity curve extremes", fidelity_curve},
      {"closed form vs simulation", simulation_equivalence},
      {"unitarity and feasibility oracle", feasibility_oracle},
      {"B92 discrepancies", discrepancies},
      {"information curve ordering", curve_ordering},
      {"POVM suite", povm_suite},
      {"Monte Carlo rates", monte_carlo},
      {"CLI goldens", goldens},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
