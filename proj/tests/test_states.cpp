#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mzi/detection.hpp"
#include "mzi/linalg.hpp"
#include "mzi/states.hpp"
#include "test_util.hpp"

using namespace mzi;
using su2::Complex;
using su2::JState;

TEST_CASE("yurke state amplitudes") {
  const JState s = states::yurke_state(2);
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::abs(s.amps[0]) <= 1e-15);               // m = -1
  CHECK(s.amps[1].real() == doctest::Approx(r));     // m = 0
  CHECK(s.amps[2].real() == doctest::Approx(r));     // m = 1
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(states::yurke_state(1), std::invalid_argument);
  CHECK_THROWS_AS(states::yurke_state(3), std::invalid_argument);
}

TEST_CASE("dual-Fock state") {
  const JState s = states::dual_fock_state(4);
  for (int p = 0; p < s.dim(); ++p)
    CHECK(std::abs(s.amps[static_cast<size_t>(p)] - (p == 2 ? 1.0 : 0.0)) <= 1e-15);
  const auto [mean, variance] = detection::jz_expectation_and_variance(s, 0.0);
  CHECK(mean == 0.0);
  CHECK(variance >= 0.0);
  CHECK_THROWS_AS(states::dual_fock_state(3), std::invalid_argument);
}

TEST_CASE("noon equivalent input reproduces the NOON interference pattern") {
  for (int n : {1, 2, 3, 4, 5, 6}) {
    const JState s = states::noon_equivalent_input(n);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 0; k < 20; ++k) {
      const double phi = test_util::uniform(0.05, 3.1);
      const double expected = (n % 2 == 0) ? std::cos(n * phi) : std::sin(n * phi);
      CHECK(std::abs(std::abs(detection::parity_expectation(s, phi)) -
                     std::abs(expected)) <= 1e-12);
    }
  }
  // one photon: delta phi = 1 everywhere
  const auto sample =
      detection::minimize_sensitivity(states::noon_equivalent_input(1),
                                      detection::Scheme::parity);
  CHECK(std::abs(sample.delta_phi - 1.0) <= 1e-9);
}

TEST_CASE("single port Fock state") {
  const JState s = states::single_port_fock(2);
  CHECK(std::abs(s.amps[2] - 1.0) <= 1e-15);  // m = +j
  CHECK(s.norm() == doctest::Approx(1.0));
  const auto [mean, variance] = detection::jz_expectation_and_variance(s, 0.0);
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-14));  // <J_z> = j
  CHECK(variance <= 1e-14);
}

TEST_CASE("intelligent state satisfies its defining eigenproblem") {
  for (const auto& [two_j, m0, eta] : std::vector<std::tuple<int, int, double>>{
           {8, 0, 10.0}, {8, 2, 3.0}, {4, 0, 1000.0}, {12, -3, 7.5}}) {
    const JState s = states::intelligent_state({two_j, m0, eta});
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const Complex beta{0.0, m0 * std::sqrt(eta * eta - 1.0)};
    const int dim = two_j + 1;
    linalg::CMatrix t(dim);
    for (int p = 0; p < dim; ++p) {
      t(p, p) = Complex{0.0, eta * (p - 0.5 * two_j)};
      if (p + 1 < dim) {
        const double up = su2::ladder_up(two_j, 2 * p - two_j);
        t(p + 1, p) = Complex{0.0, -0.5 * up};
        t(p, p + 1) = Complex{0.0, 0.5 * up};
      }
    }
    double res_sq = 0.0;
    const auto tv = linalg::apply(t, s.amps);
    for (int p = 0; p < dim; ++p) res_sq += std::norm(tv[static_cast<size_t>(p)] -
                                                      beta * s.amps[static_cast<size_t>(p)]);
    CHECK(std::sqrt(res_sq) <= 1e-10 * linalg::frobenius_norm(t));
  }
}

TEST_CASE("intelligent state agrees with shifted inverse iteration") {
  const int two_j = 8;
  const double eta = 10.0;
  const JState s = states::intelligent_state({two_j, 0, eta});

  const int dim = two_j + 1;
  linalg::CMatrix m(dim);
  for (int p = 0; p < dim; ++p) {
    m(p, p) = Complex{0.0, eta * (p - 0.5 * two_j)};  // beta = 0 at m0 = 0
    if (p + 1 < dim) {
      const double up = su2::ladder_up(two_j, 2 * p - two_j);
      m(p + 1, p) = Complex{0.0, -0.5 * up};
      m(p, p + 1) = Complex{0.0, 0.5 * up};
    }
  }
  // tiny diagonal shift keeps the factorization comfortably nonsingular
  for (int p = 0; p < dim; ++p) m(p, p) += Complex{1e-9, 0.0};

  std::vector<Complex> v(static_cast<size_t>(dim), Complex{1.0, 0.3});
  for (int it = 0; it < 4; ++it) {
    v = linalg::lu_solve(m, v);
    double n = 0.0;
    for (const Complex& c : v) n += std::norm(c);
    n = std::sqrt(n);
    for (Complex& c : v) c /= n;
  }
  // align the global phase to the constructed state
  Complex overlap = 0.0;
  for (int p = 0; p < dim; ++p)
    overlap += std::conj(v[static_cast<size_t>(p)]) * s.amps[static_cast<size_t>(p)];
  const Complex phase = overlap / std::abs(overlap);
  double worst = 0.0;
  for (int p = 0; p < dim; ++p)
    worst = std::max(worst, std::abs(v[static_cast<size_t>(p)] * phase -
                                     s.amps[static_cast<size_t>(p)]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("intelligent limits at N=4") {
  // eta -> infinity: 1/sqrt(2(j^2+j)); the minimum sits close to, but a
  // (1/eta)-sized step away from, the limiting value.
  const auto large = detection::minimize_sensitivity(
      states::intelligent_state({4, 0, 1000.0}), detection::Scheme::parity);
  CHECK(std::abs(large.delta_phi - 1 / std::sqrt(12.0)) <=
        1.1e-3 / std::sqrt(12.0));
  // eta -> 1: shot noise 1/sqrt(2j) = 1/sqrt(N)
  const auto shot = detection::minimize_sensitivity(
      states::intelligent_state({4, 0, 1.001}), detection::Scheme::parity);
  CHECK(std::abs(shot.delta_phi - 0.5) <= 0.01 * 0.5);
}

TEST_CASE("intelligent sensitivity improves with eta") {
  double previous = std::numeric_limits<double>::infinity();
  for (const double eta : {1.5, 3.0, 10.0, 100.0}) {
    const auto sample = detection::minimize_sensitivity(
        states::intelligent_state({6, 0, eta}), detection::Scheme::parity);
    CHECK(sample.delta_phi <= previous + 1e-12);
    previous = sample.delta_phi;
  }
}

TEST_CASE("intelligent state rejects invalid parameters") {
  CHECK_THROWS_AS(states::intelligent_state({4, 3, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(states::intelligent_state({4, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(states::intelligent_state({4, 0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(states::intelligent_state({3, 0, 10.0}), std::invalid_argument);
}

TEST_CASE("generators fix the global phase deterministically") {
  for (int n : {2, 4, 6}) {
    for (const JState& s : {states::yurke_state(n), states::dual_fock_state(n),
                            states::noon_equivalent_input(n),
                            states::intelligent_state({n, 0, 5.0})}) {
      for (const Complex& a : s.amps) {
        if (std::abs(a) > 1e-9) {
          CHECK(a.imag() == doctest::Approx(0.0).epsilon(1e-12));
          CHECK(a.real() > 0.0);
          break;
        }
      }
    }
  }
}
