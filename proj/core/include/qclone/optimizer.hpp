// Average fidelity over the Eastern meridian and the two parameter
// optimizations built on it.
//
// Both optimizers are deterministic: a dense grid over the parameter box
// picks a starting point, then a compass search with step halving refines
// it. Ties are broken by the larger realizability slack and then by the
// lowest grid index, so results do not depend on the thread count.

#pragma once

#include <string>
#include <vector>

#include "qclone/machines.hpp"

namespace qclone {

enum class OptimizationMode { Average, EqualFidelity };

struct ConstraintFlags {
  bool zeta_lower = false;  // ζ = 0
  bool zeta_upper = false;  // ζ = 1/2
  bool eta_lower = false;   // η = 0
  bool kappa_lower = false; // κ = 0
  bool gram = false;        // κ² + η² = 4ζ(1 - 2ζ)
};

struct OptimizationResult {
  BHParams params;
  double objective = 0.0;  // F̄ (average mode) or the common F(0) = F(π/2)
  OptimizationMode mode = OptimizationMode::Average;
  ConstraintFlags boundary_active;

  double grid_step = 0.0;
  double grid_objective = 0.0;  // best value of the grid stage alone
  // Objective of the same mode at (ζ, η, κ) = (1/10, 2/5, 2/5).
  double reference_objective = 0.0;
  bool exceeds_reference = false;
  std::string note;
};

struct OptimizerOptions {
  double grid_step = 1e-3;
  double refine_tolerance = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// (3 - 2ζ + η + 4κ/π) / 4. Throws InfeasibleParams.
double average_fidelity(const BHParams& p);

/// Trapezoid mean of fidelity_closed_form(p, θ, East) over `nodes` uniform
/// points on [0, π]. Requires nodes >= 16.
double average_fidelity_quadrature(const BHParams& p, int nodes);

/// Maximize F(0) subject to F(0) = F(π) = F(π/2) on the Eastern branch,
/// i.e. κ = 1 - η - 2ζ, over the realizable set.
OptimizationResult optimize_equal_fidelity(const OptimizerOptions& opts = {});

/// Maximize the average fidelity over the realizable set (Gram-PSD, not the
/// per-parameter Schwarz bounds, on which F̄ is unbounded above 1).
OptimizationResult optimize_average(const OptimizerOptions& opts = {});

ConstraintFlags active_constraints(const BHParams& p, double tol = 1e-9);

struct ScanRow {
  double zeta = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  bool feasible = false;
  double average_fidelity = 0.0;  // NaN when infeasible
};

/// Uniform grid with `grid_steps` intervals per axis over
/// [0, 1/2] x [0, 1] x [0, 1], rows ordered ζ-major, then η, then κ.
std::vector<ScanRow> scan_feasible_region(int grid_steps, unsigned threads = 0);

}  // namespace qclone
