#include "qclone/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qclone {
namespace {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (auto d : dims)
    if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
}

// Validated, sorted copy of `keep` plus the complementary index set.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_subsystems(
    const Dims& dims, std::span<const std::size_t> keep) {
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate subsystem index");
  if (kept.back() >= dims.size()) throw std::invalid_argument("partial_trace: subsystem index out of range");
  if (kept.size() == dims.size()) throw std::invalid_argument("partial_trace: keep set must be a strict subset");
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  return {kept, traced};
}

// Row-major flat index of the multi-index formed by interleaving `kept`
// digits and `traced` digits back into subsystem order.
struct IndexMap {
  Dims dims;
  std::vector<std::size_t> kept, traced;
  std::vector<std::size_t> strides;

  IndexMap(const Dims& d, std::vector<std::size_t> k, std::vector<std::size_t> t)
      : dims(d), kept(std::move(k)), traced(std::move(t)), strides(d.size()) {
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
      strides[i] = s;
      s *= dims[i];
    }
  }

  // Flat offset contributed by a flat index over a subset of subsystems.
  std::size_t offset(const std::vector<std::size_t>& subset, std::size_t flat) const {
    std::size_t off = 0;
    for (std::size_t i = subset.size(); i-- > 0;) {
      const std::size_t d = dims[subset[i]];
      off += (flat % d) * strides[subset[i]];
      flat /= d;
    }
    return off;
  }

  Dims kept_dims() const {
    Dims out;
    for (auto i : kept) out.push_back(dims[i]);
    return out;
  }
  std::size_t kept_size() const { return product(kept_dims()); }
  std::size_t traced_size() const {
    std::size_t n = 1;
    for (auto i : traced) n *= dims[i];
    return n;
  }
};

}  // namespace

PureQubit::PureQubit(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi)
    throw std::domain_error("PureQubit: theta must lie in [0, pi], got " + std::to_string(theta));
  if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * kPi)
    throw std::domain_error("PureQubit: phi must lie in [0, 2pi), got " + std::to_string(phi));
  if (theta == 0.0 || theta == kPi) phi_ = 0.0;
  amps_ = {Complex{std::cos(theta_ / 2.0), 0.0}, std::polar(std::sin(theta_ / 2.0), phi_)};
}

StateVector::StateVector(Dims dims, std::vector<Complex> amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
  check_dims(dims_);
  if (amps_.size() != product(dims_)) throw std::invalid_argument("StateVector: amplitude count != product of dims");
  double norm = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("StateVector: non-finite amplitude");
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::invalid_argument("StateVector: norm deviates from 1 by " + std::to_string(norm - 1.0));
}

StateVector::StateVector(const PureQubit& q) : StateVector({2}, {q[0], q[1]}) {}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix entries) : dims_(std::move(dims)), m_(std::move(entries)) {
  check_dims(dims_);
  if (!m_.square() || m_.rows() != product(dims_))
    throw std::invalid_argument("DensityMatrix: shape does not match dims");
  for (const auto& x : m_.data())
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (hermiticity_error(m_) > kHermitianTolerance) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(trace(m_) - Complex{1.0, 0.0}) > kTraceTolerance)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1");
  const auto ev = hermitian_eigenvalues(m_);
  if (ev.front() < -kPsdTolerance)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(ev.front()));
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const std::size_t n = psi.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(psi.dims(), std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureQubit& q) { return from_pure(StateVector(q)); }

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
  check_dims(dims);
  const std::size_t n = product(dims);
  return DensityMatrix(dims, ComplexMatrix::identity(n) * Complex{1.0 / static_cast<double>(n), 0.0});
}

PureQubit bloch_state(double theta, double phi) { return PureQubit(theta, phi); }

PureQubit main_circle_state(double theta, Meridian side) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi)
    throw std::domain_error("main_circle_state: theta must lie in [0, pi]");
  return PureQubit(theta, side == Meridian::East ? 0.0 : kPi);
}

double fidelity(const PureQubit& s, const DensityMatrix& rho) {
  if (rho.dim() != 2 || rho.dims().size() != 1) throw std::invalid_argument("fidelity: expected a single-qubit density matrix");
  Complex f{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f += std::conj(s[i]) * rho(i, j) * s[j];
  if (std::abs(f.imag()) > 1e-12) throw std::invalid_argument("fidelity: non-real expectation value");
  return f.real();
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Complex> amps;
  amps.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) amps.push_back(a[i] * b[j]);
  return StateVector(concat(a.dims(), b.dims()), std::move(amps));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(concat(a.dims(), b.dims()), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  auto [kept, traced] = split_subsystems(rho.dims(), keep);
  const IndexMap map(rho.dims(), std::move(kept), std::move(traced));
  const std::size_t nk = map.kept_size();
  const std::size_t nt = map.traced_size();
  ComplexMatrix out(nk, nk);
  for (std::size_t i = 0; i < nk; ++i) {
    const std::size_t oi = map.offset(map.kept, i);
    for (std::size_t j = 0; j < nk; ++j) {
      const std::size_t oj = map.offset(map.kept, j);
      Complex sum{};
      for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t ot = map.offset(map.traced, t);
        sum += rho(oi + ot, oj + ot);
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(map.kept_dims(), std::move(out));
}

DensityMatrix reduced_state(const StateVector& psi, std::span<const std::size_t> keep) {
  auto [kept, traced] = split_subsystems(psi.dims(), keep);
  const IndexMap map(psi.dims(), std::move(kept), std::move(traced));
  const std::size_t nk = map.kept_size();
  const std::size_t nt = map.traced_size();
  ComplexMatrix out(nk, nk);
  for (std::size_t i = 0; i < nk; ++i) {
    const std::size_t oi = map.offset(map.kept, i);
    for (std::size_t j = 0; j < nk; ++j) {
      const std::size_t oj = map.offset(map.kept, j);
      Complex sum{};
      for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t ot = map.offset(map.traced, t);
        sum += psi[oi + ot] * std::conj(psi[oj + ot]);
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(map.kept_dims(), std::move(out));
}

}  // namespace qclone
