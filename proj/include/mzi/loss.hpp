#pragma once

#include <utility>
#include <vector>

#include "mzi/detection.hpp"
#include "mzi/linalg.hpp"
#include "mzi/su2.hpp"

namespace mzi::loss {

// Single-arm transmission: arm b is attenuated by the amplitude factor
// lambda = e^{-K_b L_b}, arm a is lossless.
struct LossChannel {
  double lambda = 1.0;
};

void check_channel(const LossChannel& channel);

// Matrix of the first beam splitter e^{-i(pi/2)J_x} on the 2j+1 multiplet.
linalg::CMatrix beam_splitter_matrix(int two_j);

// Q_mn(lambda) = <j,m| Y_2 |j,n> with Y_2 = e^{+i(pi/2)J_x} Lambda^2
// e^{-i(pi/2)J_x}, Lambda = diag(lambda^{j-m}). q holds the production
// direct-sum evaluation; sym = (q + q^dagger)/2 is what expectations use.
struct QMatrix {
  int two_j = 0;
  double lambda = 1.0;
  linalg::CMatrix q;
  linalg::CMatrix sym;

  QMatrix(int two_j, double lambda);
};

// Closed form of Q_mn (Pochhammer/factorial prefactor, ((x^2-1)/4)^j,
// ((1+x)/(1-x))^{j+n-m}, Jacobi P_{j+n}^{(-2j-1,m-n)} at 1 - 8x/(1+x)^2,
// x = lambda^2). lambda = 1 returns the identity branch, lambda = 0 the
// diagonal-limit branch. The closed form has removable singularities at
// both ends, so expectations consume the direct sum and this stays as the
// cross-checked analytic route.
su2::Complex q_element(int two_j, int two_m, int two_n, double lambda);

// (<P_N>, <P_N^2>) for the lossy interferometer: mean = lambda^N times the
// lossless parity expectation; the second moment is phi-independent.
std::pair<double, double> lossy_parity_moments(const su2::JState& in, double phi,
                                               const LossChannel& channel);

detection::SensitivitySample lossy_sensitivity(const su2::JState& in, double phi,
                                               const LossChannel& channel);

// Minimum of delta phi over phi in (0, pi) at fixed lambda (parity scheme).
detection::SensitivitySample minimize_lossy_sensitivity(const su2::JState& in,
                                                        const LossChannel& channel);

// Attenuated shot-noise reference 1/sqrt(lambda N).
double baseline_shot_noise(int two_j, const LossChannel& channel);

// Minimized sensitivity per lambda, in grid order. Divergent points are
// flagged in place, never aborting the sweep. The jz scheme has no lossy
// observable in this model and is accepted only on an all-ones grid.
std::vector<detection::SensitivitySample> sweep_lambda(const su2::JState& in,
                                                       const std::vector<double>& lambdas,
                                                       detection::Scheme scheme);

}  // namespace mzi::loss
