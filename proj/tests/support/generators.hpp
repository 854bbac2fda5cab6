// Hand-rolled generators for property tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "qclone/machines.hpp"

namespace qtest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  std::uint64_t u64() { return eng_(); }
  bool coin() { return (eng_() & 1u) != 0; }

  double theta() { return uniform(0.0, qclone::kPi); }
  double phi() { return uniform(0.0, 2.0 * qclone::kPi); }
  qclone::Meridian side() { return coin() ? qclone::Meridian::East : qclone::Meridian::West; }

  /// Uniform over the realizable set in (ζ, disc) coordinates, with a
  /// share of points pushed onto the boundary and the ζ edges.
  qclone::BHParams feasible_params() {
    double zeta = uniform(0.0, 0.5);
    const double pick = uniform(0.0, 1.0);
    if (pick < 0.05) zeta = uniform(0.0, 1e-6);
    else if (pick < 0.1) zeta = 0.5 - uniform(0.0, 1e-6);
    const double bound = 2.0 * std::sqrt(std::max(0.0, zeta * (1.0 - 2.0 * zeta)));
    double r = std::sqrt(uniform(0.0, 1.0));
    if (uniform(0.0, 1.0) < 0.15) r = 1.0 - 1e-13;
    const double psi = uniform(0.0, 0.5 * qclone::kPi);
    return {zeta, r * bound * std::cos(psi), r * bound * std::sin(psi)};
  }

  /// Radius scaled by 1 ± δ off the Gram boundary, δ ∈ [1e-7, 1e-3].
  qclone::BHParams near_boundary_params() {
    const double zeta = uniform(1e-3, 0.5 - 1e-3);
    const double bound = 2.0 * std::sqrt(zeta * (1.0 - 2.0 * zeta));
    const double delta = std::pow(10.0, uniform(-7.0, -3.0));
    const double r = coin() ? 1.0 + delta : 1.0 - delta;
    const double psi = uniform(0.0, 0.5 * qclone::kPi);
    return {zeta, r * bound * std::cos(psi), r * bound * std::sin(psi)};
  }

  /// Box that strictly contains the realizable set.
  qclone::BHParams box_params() { return {uniform(0.0, 0.5), uniform(0.0, 0.75), uniform(0.0, 0.75)}; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qtest
