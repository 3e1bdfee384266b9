#pragma once

#include "mzi/su2.hpp"

namespace mzi::states {

// Eigenstate parameters for (J_y + i eta J_z)|j,m0,eta> = beta |j,m0,eta>,
// beta = i m0 sqrt(eta^2 - 1). eta = 1 exactly is excluded (beta
// degenerates); callers wanting the eta -> 1 limit pass 1 + epsilon.
struct IntelligentSpec {
  int two_j = 0;
  int m0 = 0;
  double eta = 10.0;
};

// Input of the first beam splitter: (|j,0> + |j,1>)/sqrt(2). N must be even.
su2::JState yurke_state(int two_j);

// |j>_a |j>_b = |j,0>. N must be even.
su2::JState dual_fock_state(int two_j);

// The input state whose image after the first beam splitter is the NOON
// state (|j,j> + |j,-j>)/sqrt(2); i.e. e^{+i(pi/2)J_x}|NOON>.
su2::JState noon_equivalent_input(int two_j);

// Solves the defining eigenproblem by the three-term recurrence of the
// tridiagonal J_y + i eta J_z, seeded at m = -j, then normalizes.
su2::JState intelligent_state(const IntelligentSpec& spec);

// Uncorrelated reference |N>_a |0>_b = |j,j>.
su2::JState single_port_fock(int two_j);

}  // namespace mzi::states
