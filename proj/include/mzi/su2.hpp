#pragma once

#include <complex>
#include <vector>

#include "mzi/linalg.hpp"

namespace mzi::su2 {

using Complex = std::complex<double>;

// N-photon two-mode state in the |j,m> basis, j = N/2. Amplitudes are
// stored at index p = m + j (p = 0 .. 2j), so two_j doubles as both the
// photon number and the canonical size parameter; half-integer j never
// appears as a float.
struct JState {
  int two_j = 0;
  std::vector<Complex> amps;

  int dim() const { return two_j + 1; }
  int two_m(int p) const { return 2 * p - two_j; }
  double m_value(int p) const { return p - 0.5 * two_j; }
  double norm() const;

  static JState basis(int two_j, int p);
};

// Throws std::invalid_argument unless amps has length 2j+1 and unit norm.
void check_state(const JState& state, double tol = 1e-12);

// Ladder factors sqrt(j(j+1) - m(m+-1)); zero outside the multiplet.
double ladder_up(int two_j, int two_m);
double ladder_down(int two_j, int two_m);

// Rotation matrix element d^j_{mn}(theta) = <j,m| e^{-i theta J_y} |j,n>,
// evaluated from the Jacobi-polynomial closed form with half-angle
// prefactors, stable at theta near 0 and pi. Indices are passed doubled.
double wigner_d(int two_j, int two_m, int two_n, double theta);

// Full (2j+1)^2 block of d^j_{mn}(theta), row index m, column index n.
struct WignerBlock {
  int two_j = 0;
  double theta = 0.0;
  std::vector<double> d;

  WignerBlock(int two_j, double theta);
  double operator()(int pm, int pn) const {
    return d[static_cast<size_t>(pm) * (two_j + 1) + pn];
  }
};

// e^{-i theta J_y}, e^{-i theta J_z}, e^{-i theta J_x} acting on a state.
JState rotate_y(const JState& state, double theta);
JState rotate_z(const JState& state, double theta);
JState rotate_x(const JState& state, double theta);

// General beam splitter e^{-i alpha J_z} e^{-i beta J_y} e^{-i gamma J_z}.
JState rotate_euler(const JState& state, double alpha, double beta, double gamma);

// Angular-momentum matrices on the 2j+1 multiplet.
linalg::CMatrix jx_matrix(int two_j);
linalg::CMatrix jy_matrix(int two_j);
linalg::CMatrix jz_matrix(int two_j);

}  // namespace mzi::su2
