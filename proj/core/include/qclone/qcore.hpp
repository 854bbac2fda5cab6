// Qubit states, density matrices, tensor products and partial traces.
//
// Subsystem order is always (qubit a, qubit b, apparatus); amplitude
// indices are row-major over `dims`, first subsystem most significant.
// All types are immutable once constructed and validate their invariants
// in the constructor.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qclone/linalg.hpp"

namespace qclone {

inline constexpr double kPi = 3.14159265358979323846;

// Validation tolerances for constructed states.
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

using Dims = std::vector<std::size_t>;

enum class Meridian { East, West };

/// A normalized single-qubit pure state cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
/// The |0⟩ amplitude is real and non-negative; φ is stored as 0 at the poles.
class PureQubit {
 public:
  /// Throws std::domain_error unless θ ∈ [0, π] and φ ∈ [0, 2π).
  PureQubit(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  const std::array<Complex, 2>& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_.at(i); }

 private:
  double theta_;
  double phi_;
  std::array<Complex, 2> amps_;
};

class StateVector {
 public:
  /// Throws std::invalid_argument on size mismatch, non-finite entries or
  /// a norm that differs from 1 by more than kNormTolerance.
  StateVector(Dims dims, std::vector<Complex> amps);
  explicit StateVector(const PureQubit& q);

  const Dims& dims() const { return dims_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

 private:
  Dims dims_;
  std::vector<Complex> amps_;
};

class DensityMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is Hermitian, has unit
  /// trace and no eigenvalue below -kPsdTolerance.
  DensityMatrix(Dims dims, ComplexMatrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix from_pure(const PureQubit& q);
  static DensityMatrix maximally_mixed(const Dims& dims);

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  std::vector<double> eigenvalues() const { return hermitian_eigenvalues(m_); }

 private:
  Dims dims_;
  ComplexMatrix m_;
};

PureQubit bloch_state(double theta, double phi);

/// cos(θ/2)|0⟩ ± sin(θ/2)|1⟩; East is '+' (φ = 0), West is '−' (φ = π).
PureQubit main_circle_state(double theta, Meridian side);

/// ⟨s|ρ|s⟩ for a single-qubit ρ. Throws std::invalid_argument for other
/// dimensions or if the imaginary part exceeds 1e-12.
double fidelity(const PureQubit& s, const DensityMatrix& rho);

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the subsystems listed in `keep` (kept in ascending
/// order). `keep` must be a nonempty strict subset of valid indices.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Same as partial_trace(from_pure(psi), keep) without forming |ψ⟩⟨ψ|.
DensityMatrix reduced_state(const StateVector& psi, std::span<const std::size_t> keep);

}  // namespace qclone
