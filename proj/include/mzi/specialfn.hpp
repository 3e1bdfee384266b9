#pragma once

#include <vector>

namespace mzi::specialfn {

// Largest supported photon number N = 2j. Everything runs in log-domain
// doubles, which stays well conditioned up to this size; beyond it the
// Wigner-d and Q_mn factorial ratios start losing digits.
inline constexpr int kMaxPhotons = 40;

// Table of ln(k!). Covers every factorial appearing in the d^j_{mn} and
// Q_mn formulas for N <= kMaxPhotons (arguments reach 4N + 4).
class LogFactorialTable {
 public:
  explicit LogFactorialTable(int k_max);

  double operator()(int k) const;
  int k_max() const { return static_cast<int>(values_.size()) - 1; }

  static const LogFactorialTable& shared();

 private:
  std::vector<double> values_;
};

// ln(k!) from the shared table. Throws std::out_of_range outside [0, K_max].
double log_factorial(int k);

// Rising factorial p(p+1)...(p+q-1); q = 0 gives 1.
double pochhammer(double p, int q);

// Generalized binomial coefficient C(r, k) for real r, integer k >= 0.
double binomial_general(double r, int k);

// Jacobi polynomial P_n^{(alpha,beta)}(x) by its finite series in (x-1)/2.
// Valid for any real alpha, beta, including negative integers, where the
// usual recurrence normalization breaks down.
double jacobi_poly(int n, double alpha, double beta, double x);

}  // namespace mzi::specialfn
