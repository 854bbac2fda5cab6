// B92 key distribution under an incoherent cloning attack.
//
// Alice sends |u> = cos(ϑ/2)|0> + sin(ϑ/2)|1> for bit 0 and
// |v> = sin(ϑ/2)|0> + cos(ϑ/2)|1> for bit 1, each with probability 1/2.
// Eve clones every qubit, forwards one clone's marginal to Bob and measures
// the other with the same three-outcome POVM Bob uses:
//
//   G1 = (1 - |u><u|) / (1 + <u|v>)   conclusive: the state was v
//   G2 = (1 - |v><v|) / (1 + <u|v>)   conclusive: the state was u
//   G3 = 1 - G1 - G2                  inconclusive
//
// Information is measured in bits.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qclone/machines.hpp"

namespace qclone::b92 {

class DegeneratePair : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct B92Pair {
  double vartheta;
  PureQubit u;
  PureQubit v;

  /// <u|v> = sin ϑ
  double inner() const;
  /// |<u|v>|² = sin² ϑ
  double overlap() const;
};

struct POVMTriple {
  std::array<ComplexMatrix, 3> g;
};

/// Requires ϑ ∈ (0, π/2]; throws std::domain_error otherwise.
B92Pair b92_pair(double vartheta);

/// Throws DegeneratePair when <u|v> = 1 (ϑ = π/2).
POVMTriple povm(const B92Pair& pair);

/// (Tr G1ρ, Tr G2ρ, Tr G3ρ).
std::array<double, 3> outcome_probs(const POVMTriple& povm, const DensityMatrix& rho);

struct AttackAnalysis {
  std::string machine_name;
  double vartheta = 0.0;
  double overlap = 0.0;
  double mutual_information = 0.0;  // bits
  double discrepancy = 0.0;         // max of the per-state values
  double discrepancy_u = 0.0;
  double discrepancy_v = 0.0;
  // outcome_probs[μ] = (P_{μ,u}, P_{μ,v})
  std::array<std::array<double, 2>, 3> outcome_probs{};
};

/// Mutual information between Alice and Eve, and Bob's discrepancy.
/// At ϑ = π/2 the POVM is taken in its formal limit and I = 0.
AttackAnalysis attack_analysis(const CloningSpec& spec, double vartheta);

struct CurvePoint {
  double overlap = 0.0;
  double mutual_information = 0.0;
  double discrepancy = 0.0;
};

/// One row per overlap O ∈ (0, 1), with ϑ = arcsin(sqrt(O)), in grid order.
std::vector<CurvePoint> info_curve(const CloningSpec& spec, const std::vector<double>& overlap_grid);

struct SimulationOptions {
  // Fraction of trials Alice announces for a known-state check: Bob then
  // measures {|s><s|, 1 - |s><s|} and a failure is a discrepancy event.
  double check_fraction = 0.1;
  unsigned threads = 1;
};

struct ProtocolRun {
  std::uint64_t seed = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t conclusive_correct = 0;
  std::uint64_t conclusive_error = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t check_trials = 0;
  std::uint64_t check_failures = 0;

  std::uint64_t key_trials() const { return conclusive_correct + conclusive_error + inconclusive; }
  std::uint64_t conclusive() const { return conclusive_correct + conclusive_error; }
  /// Conclusive outcomes per key trial.
  double empirical_conclusive_rate() const;
  /// Wrong bits per conclusive outcome.
  double empirical_error_rate() const;
  /// Failed checks per check trial.
  double empirical_discrepancy_rate() const;
};

struct ProtocolExpectation {
  double conclusive_rate = 0.0;
  double error_rate = 0.0;
  double discrepancy_rate = 0.0;
};

/// Per trial: Alice draws a bit, the optional attack replaces the qubit by
/// a clone marginal, and Bob either runs a check or samples a POVM outcome
/// by inverse CDF. `attack` may be null (no eavesdropper). Deterministic in
/// `seed` regardless of opts.threads.
ProtocolRun simulate_protocol(const CloningSpec* attack, double vartheta, std::uint64_t n, std::uint64_t seed,
                              const SimulationOptions& opts = {});

ProtocolExpectation expected_rates(const CloningSpec* attack, double vartheta);

}  // namespace qclone::b92
