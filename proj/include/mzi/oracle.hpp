#pragma once

#include <utility>
#include <vector>

#include "mzi/linalg.hpp"
#include "mzi/su2.hpp"

namespace mzi::oracle {

// Brute-force occupation-basis simulation of the full interferometer with
// one environment mode collecting the leaked photons. Test/verification
// support only; everything is dense and O(dim^3), dim = (N+1)(N+2)/2.
inline constexpr int kMaxOraclePhotons = 10;

// Occupation tuples (n_a, n_b, n_e) with n_a + n_b + n_e = N, enumerated
// lexicographically: n_a ascending, then n_b ascending (n_e implied).
struct FockOracleState {
  int n_total = 0;
  std::vector<su2::Complex> amps;

  static int dim(int n_total) { return (n_total + 1) * (n_total + 2) / 2; }
  static int index(int n_total, int n_a, int n_b);

  double norm() const;
};

enum class ModePair { ab, be };

// exp(-i theta J_x^{(pair)}) on the truncated simplex, built from ladder
// matrices and exponentiated through the Hermitian eigensolver.
linalg::CMatrix beam_splitter_unitary(int n_total, ModePair pair, double theta);

// The full lossy interferometer at fixed lambda: BS+, phase, loss beam
// splitter on (b, e) with transmission lambda, BS-. Stage matrices are
// cached; only the phase diagonal depends on phi.
class Pipeline {
 public:
  Pipeline(int n_total, double lambda);

  FockOracleState run(const su2::JState& in, double phi) const;

  // (<P_N>, <P_N^2>): parity of mode b and the N-photon projection
  // (n_e = 0) of the output state.
  std::pair<double, double> parity_moments(const su2::JState& in, double phi) const;

  int n_total() const { return n_total_; }

 private:
  int n_total_ = 0;
  double lambda_ = 1.0;
  linalg::CMatrix before_;  // BS+
  linalg::CMatrix after_;   // BS- * loss
};

// Convenience wrapper building a one-shot pipeline.
std::pair<double, double> simulate_pipeline(const su2::JState& in, double phi, double lambda);

}  // namespace mzi::oracle
