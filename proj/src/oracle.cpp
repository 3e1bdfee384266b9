#include "mzi/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mzi::oracle {

using linalg::CMatrix;
using su2::Complex;
using su2::JState;

int FockOracleState::index(int n_total, int n_a, int n_b) {
  if (n_a < 0 || n_b < 0 || n_a + n_b > n_total)
    throw std::out_of_range("FockOracleState::index: occupation off the simplex");
  // offset of the n_a block: sum_{k<n_a} (n_total - k + 1)
  return n_a * (n_total + 1) - n_a * (n_a - 1) / 2 + n_b;
}

double FockOracleState::norm() const {
  double acc = 0.0;
  for (const Complex& a : amps) acc += std::norm(a);
  return std::sqrt(acc);
}

namespace {

void check_n(int n_total) {
  if (n_total < 1 || n_total > kMaxOraclePhotons)
    throw std::invalid_argument("oracle: photon number outside [1, 10]");
}

// J_x generator (u v^dag + u^dag v)/2 for the chosen mode pair, real
// symmetric on the simplex.
CMatrix pair_jx(int n_total, ModePair pair) {
  const int dim = FockOracleState::dim(n_total);
  CMatrix m(dim);
  for (int n_a = 0; n_a <= n_total; ++n_a) {
    for (int n_b = 0; n_b + n_a <= n_total; ++n_b) {
      const int n_e = n_total - n_a - n_b;
      const int col = FockOracleState::index(n_total, n_a, n_b);
      if (pair == ModePair::ab) {
        if (n_b > 0) {  // a^dag b : (n_a, n_b) -> (n_a+1, n_b-1)
          const double w = 0.5 * std::sqrt(static_cast<double>(n_a + 1) * n_b);
          const int row = FockOracleState::index(n_total, n_a + 1, n_b - 1);
          m(row, col) += w;
          m(col, row) += w;
        }
      } else {
        if (n_e > 0) {  // b^dag e : (n_b, n_e) -> (n_b+1, n_e-1)
          const double w = 0.5 * std::sqrt(static_cast<double>(n_b + 1) * n_e);
          const int row = FockOracleState::index(n_total, n_a, n_b + 1);
          m(row, col) += w;
          m(col, row) += w;
        }
      }
    }
  }
  return m;
}

}  // namespace

CMatrix beam_splitter_unitary(int n_total, ModePair pair, double theta) {
  check_n(n_total);
  return linalg::hermitian_exp(pair_jx(n_total, pair), Complex{0.0, -theta});
}

Pipeline::Pipeline(int n_total, double lambda) : n_total_(n_total), lambda_(lambda) {
  check_n(n_total);
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("oracle::Pipeline: lambda outside [0, 1]");
  before_ = beam_splitter_unitary(n_total, ModePair::ab, M_PI / 2);
  // transmission amplitude per photon cos(theta/2) = lambda
  const double theta_loss = 2.0 * std::acos(lambda);
  const CMatrix loss = beam_splitter_unitary(n_total, ModePair::be, theta_loss);
  const CMatrix bs_minus = beam_splitter_unitary(n_total, ModePair::ab, -M_PI / 2);
  after_ = linalg::multiply(bs_minus, loss);
}

FockOracleState Pipeline::run(const JState& in, double phi) const {
  su2::check_state(in);
  if (in.two_j != n_total_)
    throw std::invalid_argument("oracle::Pipeline: photon-number mismatch");

  const int dim = FockOracleState::dim(n_total_);
  std::vector<Complex> psi(static_cast<size_t>(dim), Complex{});
  for (int p = 0; p <= in.two_j; ++p)  // |j,m> = |j+m>_a |j-m>_b, n_e = 0
    psi[static_cast<size_t>(FockOracleState::index(n_total_, p, in.two_j - p))] =
        in.amps[static_cast<size_t>(p)];

  psi = linalg::apply(before_, psi);

  // phase shifter e^{-i phi (n_a - n_b)/2}, matching the su2 rotate_z sign
  for (int n_a = 0; n_a <= n_total_; ++n_a)
    for (int n_b = 0; n_b + n_a <= n_total_; ++n_b)
      psi[static_cast<size_t>(FockOracleState::index(n_total_, n_a, n_b))] *=
          std::polar(1.0, -phi * 0.5 * (n_a - n_b));

  psi = linalg::apply(after_, psi);

  FockOracleState out;
  out.n_total = n_total_;
  out.amps = std::move(psi);
  return out;
}

std::pair<double, double> Pipeline::parity_moments(const JState& in, double phi) const {
  const FockOracleState out = run(in, phi);
  double mean = 0.0, second = 0.0;
  for (int n_a = 0; n_a <= n_total_; ++n_a) {
    const int n_b = n_total_ - n_a;  // n_e = 0 slice
    const double p2 = std::norm(
        out.amps[static_cast<size_t>(FockOracleState::index(n_total_, n_a, n_b))]);
    second += p2;
    mean += (n_b % 2 == 0 ? p2 : -p2);
  }
  return {mean, second};
}

std::pair<double, double> simulate_pipeline(const JState& in, double phi, double lambda) {
  const Pipeline pipeline(in.two_j, lambda);
  return pipeline.parity_moments(in, phi);
}

}  // namespace mzi::oracle
