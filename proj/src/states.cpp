#include "mzi/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mzi::states {

using su2::Complex;
using su2::JState;

namespace {

// Deterministic output: rotate the global phase so the first amplitude
// above the noise floor is real positive.
void fix_global_phase(JState& state) {
  for (const Complex& a : state.amps) {
    if (std::abs(a) > 1e-9) {
      const Complex phase = std::conj(a) / std::abs(a);
      for (Complex& b : state.amps) b *= phase;
      return;
    }
  }
}

void normalize(JState& state) {
  const double n = state.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::runtime_error("states: non-normalizable amplitudes");
  for (Complex& a : state.amps) a /= n;
}

int require_even(int two_j, const char* who) {
  if (two_j < 2 || two_j % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": requires an even photon number N >= 2 (integer j)");
  return two_j;
}

}  // namespace

JState yurke_state(int two_j) {
  require_even(two_j, "yurke_state");
  JState s = JState::basis(two_j, two_j / 2);  // m = 0
  const double r = 1.0 / std::sqrt(2.0);
  s.amps[static_cast<size_t>(two_j / 2)] = r;
  s.amps[static_cast<size_t>(two_j / 2 + 1)] = r;  // m = 1
  return s;
}

JState dual_fock_state(int two_j) {
  require_even(two_j, "dual_fock_state");
  return JState::basis(two_j, two_j / 2);
}

JState noon_equivalent_input(int two_j) {
  if (two_j < 1) throw std::invalid_argument("noon_equivalent_input: N >= 1 required");
  JState noon;
  noon.two_j = two_j;
  noon.amps.assign(static_cast<size_t>(two_j) + 1, Complex{});
  const double r = 1.0 / std::sqrt(2.0);
  noon.amps.front() = r;  // m = -j
  noon.amps.back() = r;   // m = +j
  JState s = su2::rotate_x(noon, -M_PI / 2);  // e^{+i(pi/2)J_x}|NOON>
  fix_global_phase(s);
  return s;
}

JState intelligent_state(const IntelligentSpec& spec) {
  const int two_j = spec.two_j;
  if (two_j < 2 || two_j % 2 != 0)
    throw std::invalid_argument(
        "intelligent_state: requires an even photon number (integer m0 lattice)");
  if (std::abs(spec.m0) * 2 > two_j)
    throw std::invalid_argument("intelligent_state: |m0| exceeds j");
  if (!(spec.eta > 1.0))
    throw std::invalid_argument("intelligent_state: eta must exceed 1 (use 1+eps for the limit)");

  const int dim = two_j + 1;
  const double eta = spec.eta;
  const Complex beta{0.0, spec.m0 * std::sqrt(eta * eta - 1.0)};

  // Row p of (J_y + i eta J_z - beta) C = 0 links C_{p-1}, C_p, C_{p+1}:
  //   -(i/2) a_down(m) C_{p-1} + (i eta m - beta) C_p + (i/2) a_up(m) C_{p+1} = 0
  std::vector<Complex> c(static_cast<size_t>(dim), Complex{});
  c[0] = 1.0;
  for (int p = 0; p < dim - 1; ++p) {
    const int two_m = 2 * p - two_j;
    const double m = 0.5 * two_m;
    const Complex diag = Complex{0.0, eta * m} - beta;
    const Complex lower{0.0, -0.5 * su2::ladder_down(two_j, two_m)};
    const Complex upper{0.0, 0.5 * su2::ladder_up(two_j, two_m)};
    Complex rhs = -diag * c[static_cast<size_t>(p)];
    if (p > 0) rhs -= lower * c[static_cast<size_t>(p - 1)];
    c[static_cast<size_t>(p + 1)] = rhs / upper;
    if (!std::isfinite(c[static_cast<size_t>(p + 1)].real()) ||
        !std::isfinite(c[static_cast<size_t>(p + 1)].imag()))
      throw std::runtime_error("intelligent_state: recurrence overflow at m = " +
                               std::to_string(m) + " (N beyond supported range?)");
  }

  JState out;
  out.two_j = two_j;
  out.amps = std::move(c);
  normalize(out);
  fix_global_phase(out);

  // residual of the defining equation, scaled by ||J_y + i eta J_z||_F
  double op_norm_sq = 0.0, res_sq = 0.0;
  for (int p = 0; p < dim; ++p) {
    const int two_m = 2 * p - two_j;
    const double m = 0.5 * two_m;
    const Complex diag{0.0, eta * m};
    const Complex lower{0.0, -0.5 * su2::ladder_down(two_j, two_m)};
    const Complex upper{0.0, 0.5 * su2::ladder_up(two_j, two_m)};
    op_norm_sq += std::norm(diag) + std::norm(lower) + std::norm(upper);
    Complex row = (diag - beta) * out.amps[static_cast<size_t>(p)];
    if (p > 0) row += lower * out.amps[static_cast<size_t>(p - 1)];
    if (p < dim - 1) row += upper * out.amps[static_cast<size_t>(p + 1)];
    res_sq += std::norm(row);
  }
  const double op_norm = std::sqrt(op_norm_sq);
  if (std::sqrt(res_sq) > 1e-10 * op_norm)
    throw std::runtime_error("intelligent_state: eigen-residual " +
                             std::to_string(std::sqrt(res_sq) / op_norm) +
                             " exceeds tolerance");
  return out;
}

JState single_port_fock(int two_j) {
  if (two_j < 1) throw std::invalid_argument("single_port_fock: N >= 1 required");
  return JState::basis(two_j, two_j);  // m = +j
}

}  // namespace mzi::states
