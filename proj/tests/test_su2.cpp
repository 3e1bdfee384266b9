#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mzi/linalg.hpp"
#include "mzi/su2.hpp"
#include "test_util.hpp"

using namespace mzi;
using su2::Complex;
using su2::JState;

namespace {

double max_state_diff(const JState& a, const JState& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.amps.size(); ++i)
    worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  return worst;
}

}  // namespace

TEST_CASE("wigner_d closed forms") {
  for (double theta : {0.0, 0.3, 1.2, M_PI - 0.01, 2.8}) {
    CHECK(su2::wigner_d(2, 0, 0, theta) == doctest::Approx(std::cos(theta)).epsilon(1e-13));
    for (int two_j : {1, 2, 5, 8})
      CHECK(su2::wigner_d(two_j, two_j, two_j, theta) ==
            doctest::Approx(std::pow(std::cos(theta / 2), two_j)).epsilon(1e-13));
  }
  // identity rotation is exactly the Kronecker delta
  for (int two_j : {1, 4, 9}) {
    for (int pm = 0; pm <= two_j; ++pm)
      for (int pn = 0; pn <= two_j; ++pn) {
        const double d = su2::wigner_d(two_j, 2 * pm - two_j, 2 * pn - two_j, 0.0);
        CHECK(std::abs(d - (pm == pn ? 1.0 : 0.0)) <= 1e-14);
      }
  }
  CHECK_THROWS_AS(su2::wigner_d(2, 4, 0, 0.5), std::out_of_range);
  CHECK_THROWS_AS(su2::wigner_d(2, 1, 0, 0.5), std::out_of_range);  // off-lattice
}

TEST_CASE("wigner_d equals the J_y matrix exponential") {
  for (int two_j : {1, 2, 3, 7, 12}) {
    for (double theta : {0.37, 1.9, 3.05}) {
      const linalg::CMatrix u =
          linalg::hermitian_exp(su2::jy_matrix(two_j), Complex{0.0, -theta});
      for (int pm = 0; pm <= two_j; ++pm)
        for (int pn = 0; pn <= two_j; ++pn)
          CHECK(std::abs(u(pm, pn) -
                         su2::wigner_d(two_j, 2 * pm - two_j, 2 * pn - two_j, theta)) <=
                1e-10);
    }
  }
}

TEST_CASE("WignerBlock orthogonality, composition, symmetries") {
  for (int two_j : {2, 5, 10}) {
    const double t1 = test_util::uniform(0.1, 2.9);
    const double t2 = test_util::uniform(0.1, 2.9);
    const su2::WignerBlock w1(two_j, t1), w2(two_j, t2), w12(two_j, t1 + t2);
    const int dim = two_j + 1;

    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) {
        double gram = 0.0, comp = 0.0;
        for (int l = 0; l < dim; ++l) {
          gram += w1(l, i) * w1(l, k);
          comp += w1(i, l) * w2(l, k);
        }
        CHECK(std::abs(gram - (i == k ? 1.0 : 0.0)) <= 1e-11);
        CHECK(std::abs(comp - w12(i, k)) <= 1e-10);
      }

    // d_{mn} = (-1)^{m-n} d_{nm} = d_{-n,-m}
    for (int pm = 0; pm < dim; ++pm)
      for (int pn = 0; pn < dim; ++pn) {
        const int sign = ((pm - pn) % 2 == 0) ? 1 : -1;
        CHECK(std::abs(w1(pm, pn) - sign * w1(pn, pm)) <= 1e-12);
        CHECK(std::abs(w1(pm, pn) - w1(two_j - pn, two_j - pm)) <= 1e-12);
      }
  }
}

TEST_CASE("rotations preserve the norm") {
  for (int two_j : {1, 6, 19, 40}) {
    const JState s = test_util::random_state(two_j);
    for (double theta : {0.0, 0.9, 2.7}) {
      CHECK(std::abs(su2::rotate_y(s, theta).norm() - 1.0) <= 1e-12);
      CHECK(std::abs(su2::rotate_z(s, theta).norm() - 1.0) <= 1e-12);
      CHECK(std::abs(su2::rotate_x(s, theta).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("rotate_y against the eigendecomposition oracle") {
  for (int two_j : {1, 2, 5, 12}) {
    const JState s = test_util::random_state(two_j);
    const double theta = test_util::uniform(0.1, 3.0);
    const linalg::CMatrix u =
        linalg::hermitian_exp(su2::jy_matrix(two_j), Complex{0.0, -theta});
    const std::vector<Complex> expected = linalg::apply(u, s.amps);
    const JState rotated = su2::rotate_y(s, theta);
    for (size_t i = 0; i < expected.size(); ++i)
      CHECK(std::abs(rotated.amps[i] - expected[i]) <= 1e-10);
  }
}

TEST_CASE("rotate_y composition and |j,0> quarter turn") {
  JState s = JState::basis(2, 1);  // |j=1, m=0>
  const JState r = su2::rotate_y(s, M_PI / 2);
  CHECK(r.amps[0].real() == doctest::Approx(1 / std::sqrt(2.0)));   // m = -1
  CHECK(std::abs(r.amps[1]) <= 1e-15);                              // m = 0
  CHECK(r.amps[2].real() == doctest::Approx(-1 / std::sqrt(2.0)));  // m = +1

  const JState a = test_util::random_state(7);
  const double t1 = 0.83, t2 = 1.91;
  CHECK(max_state_diff(su2::rotate_y(su2::rotate_y(a, t1), t2),
                       su2::rotate_y(a, t1 + t2)) <= 1e-12);
  CHECK(max_state_diff(su2::rotate_y(a, 0.0), a) == 0.0);
}

TEST_CASE("rotate_z diagonal action") {
  const JState s = test_util::random_state(5);
  CHECK(max_state_diff(su2::rotate_z(s, 0.0), s) == 0.0);

  const double theta = 1.234;
  const JState r = su2::rotate_z(s, theta);
  for (int p = 0; p < s.dim(); ++p) {
    const Complex expected =
        s.amps[static_cast<size_t>(p)] * std::polar(1.0, -theta * s.m_value(p));
    CHECK(std::abs(r.amps[static_cast<size_t>(p)] - expected) <= 1e-15);
  }

  // 2 pi is the identity on integer j
  const JState even = test_util::random_state(6);
  CHECK(max_state_diff(su2::rotate_z(even, 2 * M_PI), even) <= 1e-15);
}

TEST_CASE("rotate_x inverse pair and spin-1/2 beam-splitter matrix") {
  const JState s = test_util::random_state(9);
  CHECK(max_state_diff(su2::rotate_x(su2::rotate_x(s, M_PI / 2), -M_PI / 2), s) <= 1e-14);

  // columns of rotate_x(pi/2) on j = 1/2: the 50/50 splitter (1/sqrt2)[[1,-i],[-i,1]]
  const double r = 1 / std::sqrt(2.0);
  for (int col = 0; col < 2; ++col) {
    const JState e = su2::rotate_x(JState::basis(1, col), M_PI / 2);
    for (int row = 0; row < 2; ++row) {
      const Complex expected = (row == col) ? Complex{r, 0.0} : Complex{0.0, -r};
      CHECK(std::abs(e.amps[static_cast<size_t>(row)] - expected) <= 1e-14);
    }
  }
}

TEST_CASE("interferometer composition: BS- phase BS+ equals e^{-i phi J_y}") {
  for (int two_j : {1, 2, 5, 8}) {
    const JState s = test_util::random_state(two_j);
    for (double phi : {0.2, 1.3, 2.9}) {
      const JState pipeline =
          su2::rotate_x(su2::rotate_z(su2::rotate_x(s, M_PI / 2), phi), -M_PI / 2);
      CHECK(max_state_diff(pipeline, su2::rotate_y(s, phi)) <= 1e-12);
    }
  }
}

TEST_CASE("rotate_euler composes z-y-z") {
  const JState s = test_util::random_state(4);
  const double a = 0.4, b = 1.1, g = 2.2;
  CHECK(max_state_diff(su2::rotate_euler(s, a, b, g),
                       su2::rotate_z(su2::rotate_y(su2::rotate_z(s, g), b), a)) == 0.0);
}

TEST_CASE("angular momentum matrices") {
  for (int two_j : {1, 3, 8}) {
    const auto jx = su2::jx_matrix(two_j);
    const auto jy = su2::jy_matrix(two_j);
    const auto jz = su2::jz_matrix(two_j);
    const int dim = two_j + 1;
    const double j = 0.5 * two_j;

    // J_z eigenvalues
    for (int p = 0; p < dim; ++p)
      CHECK(jz(p, p).real() == doctest::Approx(p - j).epsilon(1e-15));

    // [J_x, J_y] = i J_z and the Casimir j(j+1)
    const auto xy = linalg::multiply(jx, jy);
    const auto yx = linalg::multiply(jy, jx);
    const auto xx = linalg::multiply(jx, jx);
    const auto yy = linalg::multiply(jy, jy);
    const auto zz = linalg::multiply(jz, jz);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const Complex comm = xy(r, c) - yx(r, c);
        CHECK(std::abs(comm - Complex{0.0, 1.0} * jz(r, c)) <= 1e-12);
        const Complex casimir = xx(r, c) + yy(r, c) + zz(r, c);
        const Complex expected = (r == c) ? Complex{j * (j + 1), 0.0} : Complex{};
        CHECK(std::abs(casimir - expected) <= 1e-12);
      }
  }
}

TEST_CASE("full-size blocks stay orthogonal at N = 40") {
  const int two_j = 40;
  const su2::WignerBlock w(two_j, 1.234);
  const int dim = two_j + 1;
  for (int i = 0; i < dim; ++i)
    for (int k = i; k < dim; ++k) {
      double gram = 0.0;
      for (int l = 0; l < dim; ++l) gram += w(l, i) * w(l, k);
      CHECK(std::abs(gram - (i == k ? 1.0 : 0.0)) <= 1e-11);
    }
}

TEST_CASE("JState validation") {
  JState bad;
  bad.two_j = 2;
  bad.amps = {1.0, 0.0};  // wrong length
  CHECK_THROWS_AS(su2::check_state(bad), std::invalid_argument);
  bad.amps = {0.5, 0.0, 0.0};  // not normalized
  CHECK_THROWS_AS(su2::check_state(bad), std::invalid_argument);
}
