#include "mzi/su2.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mzi/specialfn.hpp"

namespace mzi::su2 {

namespace {

using specialfn::jacobi_poly;
using specialfn::log_factorial;

int ipow_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

// d^j_{mn} for the region m >= |n|, where the series parameters m-n and
// m+n are non-negative. (1 -+ cos)^... prefactors enter as half-angle
// powers sin^{m-n}(t/2) cos^{m+n}(t/2).
double wigner_d_canonical(int two_j, int two_m, int two_n, double theta) {
  const int jm = (two_j - two_m) / 2;   // j - m
  const int jpm = (two_j + two_m) / 2;  // j + m
  const int jn = (two_j - two_n) / 2;   // j - n
  const int jpn = (two_j + two_n) / 2;  // j + n
  const int mn = (two_m - two_n) / 2;   // m - n >= 0
  const int pn = (two_m + two_n) / 2;   // m + n >= 0

  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const double pref = std::exp(
      0.5 * (log_factorial(jm) + log_factorial(jpm) - log_factorial(jn) - log_factorial(jpn)));
  return ipow_sign(mn) * pref * std::pow(s, mn) * std::pow(c, pn) *
         jacobi_poly(jm, mn, pn, std::cos(theta));
}

void validate_indices(int two_j, int two_m, int two_n) {
  if (two_j < 0) throw std::out_of_range("wigner_d: two_j < 0");
  if (std::abs(two_m) > two_j || std::abs(two_n) > two_j)
    throw std::out_of_range("wigner_d: |m| or |n| exceeds j");
  if ((two_j - two_m) % 2 != 0 || (two_j - two_n) % 2 != 0)
    throw std::out_of_range("wigner_d: m, n not on the j lattice");
}

}  // namespace

double JState::norm() const {
  double acc = 0.0;
  for (const Complex& a : amps) acc += std::norm(a);
  return std::sqrt(acc);
}

JState JState::basis(int two_j, int p) {
  if (two_j < 0 || p < 0 || p > two_j)
    throw std::invalid_argument("JState::basis: index out of range");
  JState s;
  s.two_j = two_j;
  s.amps.assign(static_cast<size_t>(two_j) + 1, Complex{0.0, 0.0});
  s.amps[static_cast<size_t>(p)] = 1.0;
  return s;
}

void check_state(const JState& state, double tol) {
  if (state.two_j < 0) throw std::invalid_argument("JState: two_j < 0");
  if (static_cast<int>(state.amps.size()) != state.two_j + 1)
    throw std::invalid_argument("JState: amplitude length != 2j+1");
  if (std::abs(state.norm() - 1.0) > tol)
    throw std::invalid_argument("JState: not normalized");
}

double ladder_up(int two_j, int two_m) {
  if (two_m >= two_j) return 0.0;
  // j(j+1) - m(m+1), all in quarters
  return std::sqrt((static_cast<double>(two_j) * (two_j + 2) -
                    static_cast<double>(two_m) * (two_m + 2)) / 4.0);
}

double ladder_down(int two_j, int two_m) {
  if (two_m <= -two_j) return 0.0;
  return std::sqrt((static_cast<double>(two_j) * (two_j + 2) -
                    static_cast<double>(two_m) * (two_m - 2)) / 4.0);
}

double wigner_d(int two_j, int two_m, int two_n, double theta) {
  validate_indices(two_j, two_m, two_n);
  const int mn_half = (two_m - two_n) / 2;
  if (two_m >= std::abs(two_n)) return wigner_d_canonical(two_j, two_m, two_n, theta);
  if (two_n >= std::abs(two_m))
    return ipow_sign(mn_half) * wigner_d_canonical(two_j, two_n, two_m, theta);
  if (-two_n >= std::abs(two_m)) return wigner_d_canonical(two_j, -two_n, -two_m, theta);
  return ipow_sign(mn_half) * wigner_d_canonical(two_j, -two_m, -two_n, theta);
}

WignerBlock::WignerBlock(int two_j_in, double theta_in) : two_j(two_j_in), theta(theta_in) {
  if (two_j < 0) throw std::out_of_range("WignerBlock: two_j < 0");
  const int dim = two_j + 1;
  d.resize(static_cast<size_t>(dim) * dim);
  for (int pm = 0; pm < dim; ++pm)
    for (int pn = 0; pn < dim; ++pn)
      d[static_cast<size_t>(pm) * dim + pn] =
          wigner_d(two_j, 2 * pm - two_j, 2 * pn - two_j, theta);
}

JState rotate_y(const JState& state, double theta) {
  const WignerBlock w(state.two_j, theta);
  JState out;
  out.two_j = state.two_j;
  out.amps.assign(state.amps.size(), Complex{});
  const int dim = state.dim();
  for (int pm = 0; pm < dim; ++pm) {
    Complex acc = 0.0;
    for (int pn = 0; pn < dim; ++pn) acc += w(pm, pn) * state.amps[static_cast<size_t>(pn)];
    out.amps[static_cast<size_t>(pm)] = acc;
  }
  return out;
}

JState rotate_z(const JState& state, double theta) {
  JState out = state;
  for (int p = 0; p < state.dim(); ++p) {
    const double m = state.m_value(p);
    out.amps[static_cast<size_t>(p)] *= std::polar(1.0, -theta * m);
  }
  return out;
}

JState rotate_x(const JState& state, double theta) {
  // e^{-i t J_x} = e^{+i(pi/2) J_z} e^{-i t J_y} e^{-i(pi/2) J_z}
  return rotate_z(rotate_y(rotate_z(state, M_PI / 2), theta), -M_PI / 2);
}

JState rotate_euler(const JState& state, double alpha, double beta, double gamma) {
  return rotate_z(rotate_y(rotate_z(state, gamma), beta), alpha);
}

linalg::CMatrix jz_matrix(int two_j) {
  linalg::CMatrix m(two_j + 1);
  for (int p = 0; p <= two_j; ++p) m(p, p) = p - 0.5 * two_j;
  return m;
}

linalg::CMatrix jx_matrix(int two_j) {
  linalg::CMatrix m(two_j + 1);
  for (int p = 0; p < two_j; ++p) {
    const double up = ladder_up(two_j, 2 * p - two_j);  // |m_p+1><m_p| weight
    m(p + 1, p) += 0.5 * up;
    m(p, p + 1) += 0.5 * up;
  }
  return m;
}

linalg::CMatrix jy_matrix(int two_j) {
  linalg::CMatrix m(two_j + 1);
  const Complex half_over_i{0.0, -0.5};
  for (int p = 0; p < two_j; ++p) {
    const double up = ladder_up(two_j, 2 * p - two_j);
    m(p + 1, p) += half_over_i * up;
    m(p, p + 1) -= half_over_i * up;
  }
  return m;
}

}  // namespace mzi::su2
