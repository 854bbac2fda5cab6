#include "qclone/machines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace qclone {
namespace {

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void check_theta(double theta, const char* who) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi)
    throw std::domain_error(std::string(who) + ": theta must lie in [0, pi]");
}

void require_feasible(const BHParams& p, const char* who) {
  if (!feasible(p))
    throw InfeasibleParams(std::string(who) + ": parameters (" + std::to_string(p.zeta) + ", " +
                           std::to_string(p.eta) + ", " + std::to_string(p.kappa) + ") are not realizable");
}

DensityMatrix channel_output(double f, const PureQubit& s) {
  // F|s><s| + (1-F)|s⊥><s⊥| = (2F-1)|s><s| + (1-F) I
  ComplexMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = (2.0 * f - 1.0) * s[i] * std::conj(s[j]);
  m(0, 0) += 1.0 - f;
  m(1, 1) += 1.0 - f;
  return DensityMatrix({2}, std::move(m));
}

StateVector joint_output(const ExplicitMachine& m, const PureQubit& s) {
  const std::size_t d = m.apparatus_dim;
  const Complex alpha = s[0];
  const Complex beta = s[1];
  std::vector<Complex> amps(4 * d);
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> Complex& { return amps[(2 * a + b) * d + c]; };
  for (std::size_t c = 0; c < d; ++c) {
    at(0, 0, c) = alpha * m.q0[c];
    at(1, 1, c) = beta * m.q1[c];
    const Complex y = alpha * m.y0[c] + beta * m.y1[c];
    at(0, 1, c) = y;
    at(1, 0, c) = y;
  }
  // Specs are accepted with isometry residuals up to kUnitarityTolerance;
  // remove that slack so the joint state is normalized to machine precision.
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return StateVector({2, 2, d}, std::move(amps));
}

const ExplicitMachine& checked_explicit(const CloningSpec& spec) {
  const auto& m = spec.explicit_machine();
  const auto report = validate_unitarity(spec);
  if (!report.passed())
    throw std::invalid_argument("clone: machine '" + spec.name() + "' violates unitarity (max residual " +
                                std::to_string(report.max_abs()) + ")");
  return m;
}

}  // namespace

double ExplicitMachine::q_overlap() const { return inner(q0, q1).real(); }

CloningSpec CloningSpec::make_explicit(std::string name, std::vector<Complex> q0, std::vector<Complex> q1,
                                       std::vector<Complex> y0, std::vector<Complex> y1) {
  const std::size_t d = q0.size();
  if (d < 2 || d > 4) throw std::invalid_argument("explicit machine: apparatus dimension must be 2, 3 or 4");
  for (const auto* v : {&q0, &q1, &y0, &y1}) {
    if (v->size() != d) throw std::invalid_argument("explicit machine: apparatus vectors differ in length");
    for (const auto& x : *v)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::invalid_argument("explicit machine: non-finite amplitude");
  }
  ExplicitMachine m{d, std::move(q0), std::move(q1), std::move(y0), std::move(y1)};
  return CloningSpec(std::move(name), std::move(m));
}

CloningSpec CloningSpec::make_channel(std::string name, double clone_fidelity) {
  if (!std::isfinite(clone_fidelity) || clone_fidelity < 0.5 || clone_fidelity > 1.0)
    throw std::domain_error("channel machine: fidelity must lie in [1/2, 1]");
  return CloningSpec(std::move(name), ChannelMachine{clone_fidelity});
}

const ExplicitMachine& CloningSpec::explicit_machine() const {
  if (const auto* m = std::get_if<ExplicitMachine>(&body_)) return *m;
  throw UnsupportedVariant("machine '" + name_ + "' is a channel model, not an explicit machine");
}

const ChannelMachine& CloningSpec::channel() const {
  if (const auto* m = std::get_if<ChannelMachine>(&body_)) return *m;
  throw UnsupportedVariant("machine '" + name_ + "' is an explicit machine, not a channel model");
}

double ValidationReport::max_abs() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, std::abs(r.value));
  return m;
}

const Residual& ValidationReport::at(std::string_view name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r;
  throw std::out_of_range("no residual named " + std::string(name));
}

ValidationReport validate_unitarity(const CloningSpec& spec) {
  const auto& m = spec.explicit_machine();
  // Q00 = Q0, Q01 = Q10 = Y0, Q11 = 0;  Q~00 = 0, Q~01 = Q~10 = Y1, Q~11 = Q1.
  const double n0 = inner(m.q0, m.q0).real() + 2.0 * inner(m.y0, m.y0).real();
  const double n1 = inner(m.q1, m.q1).real() + 2.0 * inner(m.y1, m.y1).real();
  const Complex y01 = inner(m.y0, m.y1);
  ValidationReport r;
  r.residuals = {
      {"norm_0", n0 - 1.0},
      {"norm_1", n1 - 1.0},
      {"cross", std::abs(2.0 * y01)},
      {"y_orthogonality", std::abs(y01)},
      {"y_norm_balance", inner(m.y0, m.y0).real() - inner(m.y1, m.y1).real()},
  };
  return r;
}

double gram_margin(const BHParams& p) {
  return p.kappa * p.kappa + p.eta * p.eta - 4.0 * p.zeta * (1.0 - 2.0 * p.zeta);
}

bool feasible(const BHParams& p) {
  constexpr double tol = kFeasibilityTolerance;
  if (!std::isfinite(p.zeta) || !std::isfinite(p.eta) || !std::isfinite(p.kappa)) return false;
  if (p.zeta < -tol || p.zeta > 0.5 + tol) return false;
  if (p.eta < -tol || p.kappa < -tol) return false;
  return gram_margin(p) <= tol;
}

RealMatrix apparatus_gram(const BHParams& p, double q) {
  const double a = 1.0 - 2.0 * p.zeta;
  const double k = p.kappa / 2.0;
  const double e = p.eta / 2.0;
  return RealMatrix{
      {a, q, k, e},
      {q, a, e, k},
      {k, e, p.zeta, 0.0},
      {e, k, 0.0, p.zeta},
  };
}

std::pair<double, double> overlap_interval(const BHParams& p) {
  require_feasible(p, "overlap_interval");
  const double a = std::max(0.0, 1.0 - 2.0 * p.zeta);
  if (p.zeta <= 0.0) return {-1.0, 1.0};
  // Schur complement of the Y block: |q - κη/(2ζ)| <= (1-2ζ) - (κ²+η²)/(4ζ).
  const double half = std::max(0.0, a - (p.kappa * p.kappa + p.eta * p.eta) / (4.0 * p.zeta));
  const double mid = std::clamp(p.kappa * p.eta / (2.0 * p.zeta), -a, a);
  return {std::max(-a, mid - half), std::min(a, mid + half)};
}

CloningSpec synthesize(const BHParams& p, std::string name) {
  require_feasible(p, "synthesize");
  double q = 0.0;
  if (p.zeta > 0.0) {
    const auto [lo, hi] = overlap_interval(p);
    q = 0.5 * (lo + hi);
  }
  const auto eig = symmetric_eigen(apparatus_gram(p, q));

  constexpr double kRankCutoff = 1e-12;
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > kRankCutoff) kept.push_back(k);
  if (kept.size() < 2) throw InfeasibleParams("synthesize: apparatus Gram matrix has rank < 2");

  // Row i of V sqrt(Λ), restricted to the nonzero spectrum.
  std::array<std::vector<Complex>, 4> rows;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k : kept) rows[i].emplace_back(eig.vectors(i, k) * std::sqrt(eig.values[k]), 0.0);

  return CloningSpec::make_explicit(std::move(name), std::move(rows[0]), std::move(rows[1]), std::move(rows[2]),
                                    std::move(rows[3]));
}

BHParams extract_params(const ExplicitMachine& m) {
  return {inner(m.y0, m.y0).real(), 2.0 * inner(m.y0, m.q1).real(), 2.0 * inner(m.q0, m.y0).real()};
}

CloningSpec meridional_spec() {
  const double a = std::sqrt(2.0 / 5.0);
  const double y = 1.0 / std::sqrt(10.0);
  return CloningSpec::make_explicit("meridional", {a, a}, {a, a}, {y, 0.0}, {0.0, y});
}

CloningSpec wz_spec() {
  return CloningSpec::make_explicit("wootters-zurek", {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
}

CloningSpec channel_spec(double clone_fidelity, std::string name) {
  return CloningSpec::make_channel(std::move(name), clone_fidelity);
}

CloningSpec universal_spec() { return channel_spec(kUniversalFidelity, "universal"); }
CloningSpec equatorial_spec() { return channel_spec(kEquatorialFidelity, "equatorial"); }
CloningSpec ideal_spec() { return channel_spec(1.0, "ideal"); }

const std::vector<std::string>& builtin_machine_names() {
  static const std::vector<std::string> names{"meridional", "equatorial", "universal", "wootters-zurek", "ideal"};
  return names;
}

std::optional<CloningSpec> builtin_machine(std::string_view name) {
  if (name == "meridional") return meridional_spec();
  if (name == "wootters-zurek") return wz_spec();
  if (name == "universal") return universal_spec();
  if (name == "equatorial") return equatorial_spec();
  if (name == "ideal") return ideal_spec();
  return std::nullopt;
}

CloneOutput clone(const CloningSpec& spec, const PureQubit& s) {
  if (!spec.is_explicit()) {
    auto rho = channel_output(spec.channel().clone_fidelity, s);
    return CloneOutput{std::nullopt, rho, rho, std::nullopt};
  }
  const auto& m = checked_explicit(spec);
  auto joint = joint_output(m, s);
  constexpr std::array<std::size_t, 1> a{0};
  constexpr std::array<std::size_t, 1> b{1};
  constexpr std::array<std::size_t, 2> ab{0, 1};
  auto rho_a = reduced_state(joint, a);
  auto rho_b = reduced_state(joint, b);
  auto rho_ab = reduced_state(joint, ab);
  return CloneOutput{std::move(joint), std::move(rho_a), std::move(rho_b), std::move(rho_ab)};
}

DensityMatrix clone_marginal(const CloningSpec& spec, const PureQubit& s) {
  if (!spec.is_explicit()) return channel_output(spec.channel().clone_fidelity, s);
  constexpr std::array<std::size_t, 1> a{0};
  return reduced_state(joint_output(checked_explicit(spec), s), a);
}

DensityMatrix reduced_output_closed_form(const BHParams& p, double theta, Meridian side) {
  require_feasible(p, "reduced_output_closed_form");
  check_theta(theta, "reduced_output_closed_form");
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double sign = side == Meridian::East ? 1.0 : -1.0;
  const double off = 0.5 * (p.kappa + sign * p.eta * std::sin(theta));
  ComplexMatrix m{
      {c * c - p.zeta * std::cos(theta), off},
      {off, s * s + p.zeta * std::cos(theta)},
  };
  return DensityMatrix({2}, std::move(m));
}

double fidelity_closed_form(const BHParams& p, double theta, Meridian side) {
  require_feasible(p, "fidelity_closed_form");
  check_theta(theta, "fidelity_closed_form");
  const double s = std::sin(theta);
  const double sign = side == Meridian::East ? 1.0 : -1.0;
  return (1.0 - p.zeta) - 0.5 * (1.0 - p.eta - 2.0 * p.zeta) * s * s + sign * 0.5 * p.kappa * s;
}

double meridional_fidelity_general(double theta, double phi) {
  check_theta(theta, "meridional_fidelity_general");
  if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * kPi)
    throw std::domain_error("meridional_fidelity_general: phi must lie in [0, 2pi)");
  const double s = std::sin(theta);
  return 0.9 - 0.2 * s * (s - std::cos(phi));
}

}  // namespace qclone
