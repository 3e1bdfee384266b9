#include "mzi/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mzi::specialfn {

LogFactorialTable::LogFactorialTable(int k_max) {
  if (k_max < 0) throw std::invalid_argument("LogFactorialTable: negative k_max");
  values_.resize(static_cast<size_t>(k_max) + 1);
  values_[0] = 0.0;
  // compensated summation keeps the whole table within a couple of ulp
  double sum = 0.0, carry = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double term = std::log(static_cast<double>(k)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    values_[static_cast<size_t>(k)] = sum;
  }
}

double LogFactorialTable::operator()(int k) const {
  if (k < 0 || k > k_max())
    throw std::out_of_range("log_factorial: k = " + std::to_string(k) +
                            " outside [0, " + std::to_string(k_max()) + "]");
  return values_[static_cast<size_t>(k)];
}

const LogFactorialTable& LogFactorialTable::shared() {
  static const LogFactorialTable table(4 * kMaxPhotons + 4);
  return table;
}

double log_factorial(int k) { return LogFactorialTable::shared()(k); }

double pochhammer(double p, int q) {
  if (q < 0) throw std::invalid_argument("pochhammer: negative q");
  double acc = 1.0;
  for (int i = 0; i < q; ++i) acc *= p + i;
  return acc;
}

double binomial_general(double r, int k) {
  if (k < 0) throw std::invalid_argument("binomial_general: negative k");
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc *= (r - k + i) / i;
  return acc;
}

double jacobi_poly(int n, double alpha, double beta, double x) {
  if (n < 0) throw std::invalid_argument("jacobi_poly: negative degree");
  const double u = 0.5 * (x - 1.0);
  const double v = 0.5 * (x + 1.0);
  // P_n^{(a,b)} = sum_s C(n+a, n-s) C(n+b, s) u^s v^{n-s}
  double acc = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double coeff =
        binomial_general(n + alpha, n - s) * binomial_general(n + beta, s);
    if (coeff == 0.0) continue;
    acc += coeff * std::pow(u, s) * std::pow(v, n - s);
  }
  return acc;
}

}  // namespace mzi::specialfn
