#include <array>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "qclone/qcore.hpp"

using namespace qclone;

namespace {

StateVector random_state(qtest::Gen& g, const Dims& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::vector<Complex> a(n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return StateVector(dims, std::move(a));
}

double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace

TEST_CASE("PureQubit amplitudes and domain") {
  const PureQubit s(kPi / 3, kPi / 2);
  CHECK(s[0].real() == doctest::Approx(std::cos(kPi / 6)));
  CHECK(s[0].imag() == 0.0);
  CHECK(std::abs(s[1] - Complex(0.0, std::sin(kPi / 6))) < 1e-15);

  CHECK(PureQubit(0.0, 1.0).phi() == 0.0);
  CHECK(PureQubit(kPi, 1.0).phi() == 0.0);

  CHECK_THROWS_AS(PureQubit(-0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(PureQubit(kPi + 1e-9, 0.0), std::domain_error);
  CHECK_THROWS_AS(PureQubit(1.0, 2.0 * kPi), std::domain_error);
  CHECK_THROWS_AS(PureQubit(std::nan(""), 0.0), std::domain_error);
}

TEST_CASE("main_circle_state meridians") {
  const auto e = main_circle_state(kPi / 2, Meridian::East);
  const auto w = main_circle_state(kPi / 2, Meridian::West);
  CHECK(e[1].real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(w[1].real() == doctest::Approx(-std::sqrt(0.5)));
  CHECK_THROWS_AS(main_circle_state(4.0, Meridian::East), std::domain_error);
}

TEST_CASE("StateVector validation") {
  CHECK_THROWS_AS(StateVector({2}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector({2, 2}, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector({2}, {Complex(std::nan(""), 0.0), 0.0}), std::invalid_argument);
  CHECK_NOTHROW(StateVector({2}, {0.6, Complex(0.0, 0.8)}));
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix({2}, ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix({2}, ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix({2}, ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix({3}, ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}), std::invalid_argument);
  const auto mm = DensityMatrix::maximally_mixed({2, 2});
  CHECK(mm.dim() == 4);
  CHECK(mm(3, 3).real() == doctest::Approx(0.25));
}

TEST_CASE("fidelity of pure and mixed states") {
  const PureQubit s(1.1, 2.3);
  CHECK(fidelity(s, DensityMatrix::from_pure(s)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(s, DensityMatrix::maximally_mixed({2})) == doctest::Approx(0.5));
  CHECK(fidelity(PureQubit(0, 0), DensityMatrix::from_pure(PureQubit(kPi, 0))) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(s, DensityMatrix::maximally_mixed({2, 2})), std::invalid_argument);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const double r = std::sqrt(0.5);
  const StateVector bell({2, 2}, {r, 0.0, 0.0, r});
  const std::array<std::size_t, 1> a{0}, b{1};
  const auto ra = reduced_state(bell, a);
  const auto rb = partial_trace(DensityMatrix::from_pure(bell), b);
  CHECK(max_entry_diff(ra, DensityMatrix::maximally_mixed({2})) < 1e-15);
  CHECK(max_entry_diff(rb, DensityMatrix::maximally_mixed({2})) < 1e-15);
}

TEST_CASE("partial trace inverts tensor for product states") {
  qtest::Gen g(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = DensityMatrix::from_pure(random_state(g, {2}));
    const auto b = DensityMatrix::from_pure(random_state(g, {3}));
    const auto ab = tensor(a, b);
    CHECK(ab.dims() == Dims{2, 3});
    const std::array<std::size_t, 1> k0{0}, k1{1};
    CHECK(max_entry_diff(partial_trace(ab, k0), a) < 1e-14);
    CHECK(max_entry_diff(partial_trace(ab, k1), b) < 1e-14);
  }
}

TEST_CASE("reduced_state agrees with partial_trace on random three-party states") {
  qtest::Gen g(5);
  const std::vector<std::vector<std::size_t>> keeps{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  for (int t = 0; t < 40; ++t) {
    const auto psi = random_state(g, {2, 2, 3});
    const auto rho = DensityMatrix::from_pure(psi);
    for (const auto& k : keeps) {
      const auto r1 = reduced_state(psi, k);
      const auto r2 = partial_trace(rho, k);
      CHECK(max_entry_diff(r1, r2) < 1e-14);
      CHECK(std::abs(trace(r1.matrix()) - Complex(1.0, 0.0)) < 1e-13);
      for (double ev : r1.eigenvalues()) CHECK(ev > -1e-12);
    }
  }
}

TEST_CASE("partial_trace rejects bad subsystem lists") {
  const auto rho = DensityMatrix::maximally_mixed({2, 2});
  const std::vector<std::size_t> all{0, 1}, none{}, bad{5}, dup{0, 0};
  CHECK_THROWS_AS(partial_trace(rho, all), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, none), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, bad), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, dup), std::invalid_argument);
}
