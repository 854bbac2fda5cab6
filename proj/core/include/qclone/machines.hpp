// Symmetric 1 -> 2 cloning machines.
//
// An explicit machine is fixed by four apparatus vectors in C^d:
//
//   |0>|0>|Q>  ->  |00>|Q0> + (|01> + |10>)|Y0>
//   |1>|0>|Q>  ->  |11>|Q1> + (|01> + |10>)|Y1>
//
// and is extended to α|0> + β|1> by linearity. Within the real, equal-norm
// family the single-clone output only depends on
//
//   ζ = <Y0|Y0> = <Y1|Y1>,   η = 2<Y0|Q1> = 2<Y1|Q0>,   κ = 2<Q0|Y0> = 2<Q1|Y1>.
//
// A channel machine only models the single-clone marginal
// ρ = F|s><s| + (1 - F)|s⊥><s⊥|; it has no joint state.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qclone/qcore.hpp"

namespace qclone {

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kFeasibilityTolerance = 1e-12;

inline constexpr double kUniversalFidelity = 5.0 / 6.0;
// 1/2 + sqrt(1/8)
inline constexpr double kEquatorialFidelity = 0.5 + 0.35355339059327376220;

class InfeasibleParams : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedVariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BHParams {
  double zeta = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
};

struct ExplicitMachine {
  std::size_t apparatus_dim = 0;
  std::vector<Complex> q0, q1, y0, y1;

  /// Re <Q0|Q1>. Does not enter single-clone observables.
  double q_overlap() const;
};

struct ChannelMachine {
  double clone_fidelity = 1.0;
};

class CloningSpec {
 public:
  using Body = std::variant<ExplicitMachine, ChannelMachine>;

  /// Requires d ∈ {2, 3, 4}, four vectors of length d and finite entries.
  /// Unitarity is not enforced here; see validate_unitarity().
  static CloningSpec make_explicit(std::string name, std::vector<Complex> q0, std::vector<Complex> q1,
                                   std::vector<Complex> y0, std::vector<Complex> y1);
  /// Requires F ∈ [1/2, 1]; throws std::domain_error otherwise.
  static CloningSpec make_channel(std::string name, double clone_fidelity);

  const std::string& name() const { return name_; }
  const Body& body() const { return body_; }
  bool is_explicit() const { return std::holds_alternative<ExplicitMachine>(body_); }
  const ExplicitMachine& explicit_machine() const;
  const ChannelMachine& channel() const;

 private:
  CloningSpec(std::string name, Body body) : name_(std::move(name)), body_(std::move(body)) {}

  std::string name_;
  Body body_;
};

struct Residual {
  std::string name;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<Residual> residuals;

  double max_abs() const;
  bool passed(double tol = kUnitarityTolerance) const { return max_abs() <= tol; }
  const Residual& at(std::string_view name) const;
};

struct CloneOutput {
  std::optional<StateVector> joint;  // dims (2, 2, d); explicit machines only
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  std::optional<DensityMatrix> rho_ab;
};

/// Residuals of the isometry conditions on the apparatus vectors
/// (norm_0, norm_1, cross) plus y_orthogonality = |<Y0|Y1>| and
/// y_norm_balance = <Y0|Y0> - <Y1|Y1>. Throws UnsupportedVariant for
/// channel machines.
ValidationReport validate_unitarity(const CloningSpec& spec);

/// ζ ∈ [0, 1/2], η, κ ≥ 0 and κ² + η² <= 4ζ(1 - 2ζ), i.e. the Gram matrix
/// of {Q0, Q1, Y0, Y1} is PSD for some overlap <Q0|Q1>.
bool feasible(const BHParams& p);

/// κ² + η² - 4ζ(1 - 2ζ); non-positive on the realizable set.
double gram_margin(const BHParams& p);

/// Gram matrix of (Q0, Q1, Y0, Y1) for the given overlap q = <Q0|Q1>.
RealMatrix apparatus_gram(const BHParams& p, double q_overlap);

/// Range of q = <Q0|Q1> for which apparatus_gram is PSD. For ζ = 0 the
/// whole [-1, 1] is returned. Throws InfeasibleParams.
std::pair<double, double> overlap_interval(const BHParams& p);

/// Apparatus vectors realizing `p`, taken as rows of the spectral square
/// root of the Gram matrix at the midpoint overlap (q = 0 when ζ = 0).
/// apparatus_dim equals the Gram rank. Throws InfeasibleParams.
CloningSpec synthesize(const BHParams& p, std::string name = "synthesized");

/// (ζ, η, κ) read back from the apparatus vectors (real parts).
BHParams extract_params(const ExplicitMachine& m);

CloningSpec meridional_spec();
CloningSpec wz_spec();
CloningSpec channel_spec(double clone_fidelity, std::string name = "channel");
CloningSpec universal_spec();
CloningSpec equatorial_spec();
CloningSpec ideal_spec();

/// Built-in names: meridional, wootters-zurek, universal, equatorial, ideal.
std::optional<CloningSpec> builtin_machine(std::string_view name);
const std::vector<std::string>& builtin_machine_names();

/// Throws std::invalid_argument if an explicit spec fails validate_unitarity.
CloneOutput clone(const CloningSpec& spec, const PureQubit& s);

/// Single-clone marginal only; cheaper than clone() for explicit machines
/// since it never builds ρ_ab.
DensityMatrix clone_marginal(const CloningSpec& spec, const PureQubit& s);

/// Closed-form single-clone output for an input on the main circle.
DensityMatrix reduced_output_closed_form(const BHParams& p, double theta, Meridian side);

/// (1 - ζ) - (1 - η - 2ζ) sin²θ / 2 ± (κ/2) sinθ.
double fidelity_closed_form(const BHParams& p, double theta, Meridian side);

/// 9/10 - (1/5) sinθ (sinθ - cosφ) for the meridional machine.
double meridional_fidelity_general(double theta, double phi);

inline constexpr BHParams kMeridionalParams{0.1, 0.4, 0.4};

}  // namespace qclone
