#include "qclone/b92.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "qclone/rng.hpp"

namespace qclone::b92 {
namespace {

ComplexMatrix projector(const PureQubit& s) {
  ComplexMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = s[i] * std::conj(s[j]);
  return m;
}

// Valid for <u|v> = 1 as well, where G1 = G2 = (1 - P)/2 and G3 = P.
POVMTriple build_povm(const B92Pair& pair) {
  const auto id = ComplexMatrix::identity(2);
  const Complex scale{1.0 / (1.0 + pair.inner()), 0.0};
  POVMTriple out;
  out.g[0] = (id - projector(pair.u)) * scale;
  out.g[1] = (id - projector(pair.v)) * scale;
  out.g[2] = id - out.g[0] - out.g[1];
  return out;
}

DensityMatrix received_state(const CloningSpec* attack, const PureQubit& s) {
  return attack ? clone_marginal(*attack, s) : DensityMatrix::from_pure(s);
}

// Per-bit outcome distribution and check-failure probability.
struct BitModel {
  std::array<double, 3> outcomes;
  double check_failure;
};

std::array<BitModel, 2> bit_models(const CloningSpec* attack, const B92Pair& pair) {
  const auto g = build_povm(pair);
  std::array<BitModel, 2> out;
  const std::array<const PureQubit*, 2> sent{&pair.u, &pair.v};
  for (std::size_t bit = 0; bit < 2; ++bit) {
    const auto rho = received_state(attack, *sent[bit]);
    out[bit] = {outcome_probs(g, rho), 1.0 - fidelity(*sent[bit], rho)};
  }
  return out;
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double B92Pair::inner() const { return std::sin(vartheta); }
double B92Pair::overlap() const { return std::sin(vartheta) * std::sin(vartheta); }

B92Pair b92_pair(double vartheta) {
  if (!std::isfinite(vartheta) || vartheta <= 0.0 || vartheta > 0.5 * kPi)
    throw std::domain_error("b92_pair: vartheta must lie in (0, pi/2]");
  return B92Pair{vartheta, PureQubit(vartheta, 0.0), PureQubit(kPi - vartheta, 0.0)};
}

POVMTriple povm(const B92Pair& pair) {
  if (pair.inner() >= 1.0) throw DegeneratePair("povm: |u> and |v> coincide; no conclusive outcome exists");
  return build_povm(pair);
}

std::array<double, 3> outcome_probs(const POVMTriple& povm, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("outcome_probs: expected a single-qubit density matrix");
  std::array<double, 3> p{};
  for (std::size_t mu = 0; mu < 3; ++mu) {
    const Complex t = trace(povm.g[mu] * rho.matrix());
    if (std::abs(t.imag()) > 1e-12) throw std::invalid_argument("outcome_probs: non-real probability");
    p[mu] = t.real();
  }
  return p;
}

AttackAnalysis attack_analysis(const CloningSpec& spec, double vartheta) {
  const auto pair = b92_pair(vartheta);
  const auto g = build_povm(pair);
  const auto rho_u = clone_marginal(spec, pair.u);
  const auto rho_v = clone_marginal(spec, pair.v);
  const auto pu = outcome_probs(g, rho_u);
  const auto pv = outcome_probs(g, rho_v);

  AttackAnalysis a;
  a.machine_name = spec.name();
  a.vartheta = vartheta;
  a.overlap = pair.overlap();

  constexpr double prior = 0.5;
  double info = 1.0;  // H = -log2(1/2)
  for (std::size_t mu = 0; mu < 3; ++mu) {
    a.outcome_probs[mu] = {pu[mu], pv[mu]};
    const double q = prior * pu[mu] + prior * pv[mu];
    if (q <= 0.0) continue;
    const double h = entropy_term(prior * pu[mu] / q) + entropy_term(prior * pv[mu] / q);
    info -= q * h;
  }
  a.mutual_information = std::clamp(info, 0.0, 1.0);
  a.discrepancy_u = 1.0 - fidelity(pair.u, rho_u);
  a.discrepancy_v = 1.0 - fidelity(pair.v, rho_v);
  a.discrepancy = std::max(a.discrepancy_u, a.discrepancy_v);
  return a;
}

std::vector<CurvePoint> info_curve(const CloningSpec& spec, const std::vector<double>& overlap_grid) {
  std::vector<CurvePoint> rows;
  rows.reserve(overlap_grid.size());
  for (double o : overlap_grid) {
    if (!std::isfinite(o) || o <= 0.0 || o >= 1.0) throw std::domain_error("info_curve: overlap must lie in (0, 1)");
    const auto a = attack_analysis(spec, std::asin(std::sqrt(o)));
    rows.push_back({o, a.mutual_information, a.discrepancy});
  }
  return rows;
}

double ProtocolRun::empirical_conclusive_rate() const {
  const auto k = key_trials();
  return k ? static_cast<double>(conclusive()) / static_cast<double>(k) : 0.0;
}

double ProtocolRun::empirical_error_rate() const {
  const auto c = conclusive();
  return c ? static_cast<double>(conclusive_error) / static_cast<double>(c) : 0.0;
}

double ProtocolRun::empirical_discrepancy_rate() const {
  return check_trials ? static_cast<double>(check_failures) / static_cast<double>(check_trials) : 0.0;
}

ProtocolRun simulate_protocol(const CloningSpec* attack, double vartheta, std::uint64_t n, std::uint64_t seed,
                              const SimulationOptions& opts) {
  if (n < 1) throw std::invalid_argument("simulate_protocol: need at least one trial");
  if (!(opts.check_fraction >= 0.0 && opts.check_fraction < 1.0))
    throw std::invalid_argument("simulate_protocol: check_fraction must lie in [0, 1)");
  const auto models = bit_models(attack, b92_pair(vartheta));

  auto run_range = [&](std::size_t, std::size_t begin, std::size_t end) {
    ProtocolRun r;
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      const double check_draw = rng.next_unit();
      const std::size_t bit = rng.next_unit() < 0.5 ? 0 : 1;
      const double x = rng.next_unit();
      const auto& m = models[bit];
      if (check_draw < opts.check_fraction) {
        ++r.check_trials;
        if (x < m.check_failure) ++r.check_failures;
        continue;
      }
      // Inverse CDF over (G1, G2, G3). G1 rules out u, so Bob reads bit 1.
      if (x < m.outcomes[0]) {
        bit == 1 ? ++r.conclusive_correct : ++r.conclusive_error;
      } else if (x < m.outcomes[0] + m.outcomes[1]) {
        bit == 0 ? ++r.conclusive_correct : ++r.conclusive_error;
      } else {
        ++r.inconclusive;
      }
    }
    return r;
  };

  ProtocolRun total;
  for (const auto& part : detail::run_chunked(n, opts.threads, run_range)) {
    total.conclusive_correct += part.conclusive_correct;
    total.conclusive_error += part.conclusive_error;
    total.inconclusive += part.inconclusive;
    total.check_trials += part.check_trials;
    total.check_failures += part.check_failures;
  }
  total.seed = seed;
  total.n_trials = n;
  return total;
}

ProtocolExpectation expected_rates(const CloningSpec* attack, double vartheta) {
  const auto m = bit_models(attack, b92_pair(vartheta));
  ProtocolExpectation e;
  const double c0 = m[0].outcomes[0] + m[0].outcomes[1];
  const double c1 = m[1].outcomes[0] + m[1].outcomes[1];
  e.conclusive_rate = 0.5 * (c0 + c1);
  const double wrong = 0.5 * (m[0].outcomes[0] + m[1].outcomes[1]);
  e.error_rate = e.conclusive_rate > 0.0 ? wrong / e.conclusive_rate : 0.0;
  e.discrepancy_rate = 0.5 * (m[0].check_failure + m[1].check_failure);
  return e;
}

}  // namespace qclone::b92
