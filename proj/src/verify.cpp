#include "mzi/verify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mzi/detection.hpp"
#include "mzi/loss.hpp"
#include "mzi/oracle.hpp"
#include "mzi/states.hpp"
#include "mzi/su2.hpp"

namespace mzi::verify {

using linalg::CMatrix;
using su2::Complex;
using su2::JState;

namespace {

// Y_2 entries recovered from the oracle by polarization: diagonal from
// basis states, Re/Im of the off-diagonal from (e_m + e_n)/sqrt(2) and
// (e_m + i e_n)/sqrt(2).
CMatrix oracle_q_matrix(int two_j, double lambda) {
  const oracle::Pipeline pipe(two_j, lambda);
  const int dim = two_j + 1;

  std::vector<double> diag(static_cast<size_t>(dim));
  for (int p = 0; p < dim; ++p)
    diag[static_cast<size_t>(p)] =
        pipe.parity_moments(JState::basis(two_j, p), 0.0).second;

  CMatrix q(dim);
  for (int p = 0; p < dim; ++p) q(p, p) = diag[static_cast<size_t>(p)];
  const double r = 1.0 / std::sqrt(2.0);
  for (int pm = 0; pm < dim; ++pm) {
    for (int pn = pm + 1; pn < dim; ++pn) {
      JState plus = JState::basis(two_j, pm);
      plus.amps[static_cast<size_t>(pn)] = r;
      plus.amps[static_cast<size_t>(pm)] = r;
      const double s_plus = pipe.parity_moments(plus, 0.0).second;

      JState imag = plus;
      imag.amps[static_cast<size_t>(pn)] = Complex{0.0, r};
      const double s_imag = pipe.parity_moments(imag, 0.0).second;

      const double avg = 0.5 * (diag[static_cast<size_t>(pm)] + diag[static_cast<size_t>(pn)]);
      const double re = s_plus - avg;
      const double im = -(s_imag - avg);
      q(pm, pn) = Complex{re, im};
      q(pn, pm) = Complex{re, -im};
    }
  }
  return q;
}

std::vector<std::pair<std::string, JState>> state_families(int n) {
  std::vector<std::pair<std::string, JState>> out;
  out.emplace_back("noon", states::noon_equivalent_input(n));
  out.emplace_back("single-port", states::single_port_fock(n));
  if (n % 2 == 0) {
    out.emplace_back("yurke", states::yurke_state(n));
    out.emplace_back("dual-fock", states::dual_fock_state(n));
    out.emplace_back("intelligent", states::intelligent_state({n, 0, 10.0}));
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_all(int max_n) {
  if (max_n < 1 || max_n > oracle::kMaxOraclePhotons)
    throw std::invalid_argument("verify: max_n must lie in [1, 10]");

  std::vector<CheckResult> results;
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> phi_dist(1e-3, M_PI - 1e-3);

  // Q closed form vs direct sum
  for (int n = 1; n <= max_n; ++n) {
    double worst = 0.0;
    for (const double lam : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      const loss::QMatrix qm(n, lam);
      for (int pm = 0; pm <= n; ++pm)
        for (int pn = 0; pn <= n; ++pn)
          worst = std::max(worst, std::abs(loss::q_element(n, 2 * pm - n, 2 * pn - n, lam) -
                                           qm.q(pm, pn)));
    }
    results.push_back({"q_closed_vs_direct", n, 0.0, worst, 1e-10, worst < 1e-10});
  }

  // Q direct sum vs Fock oracle, entry by entry
  for (int n = 1; n <= max_n; ++n) {
    double worst = 0.0;
    for (const double lam : {0.1, 0.5, 0.9}) {
      const loss::QMatrix qm(n, lam);
      worst = std::max(worst, linalg::max_abs_diff(oracle_q_matrix(n, lam), qm.q));
    }
    results.push_back({"q_direct_vs_oracle", n, 0.0, worst, 1e-10, worst < 1e-10});
  }

  // lossless parity expectation vs oracle
  for (int n = 1; n <= max_n; ++n) {
    const oracle::Pipeline pipe(n, 1.0);
    double worst = 0.0;
    for (const auto& [label, state] : state_families(n)) {
      (void)label;
      for (int k = 0; k < 10; ++k) {
        const double phi = phi_dist(rng);
        worst = std::max(worst, std::abs(pipe.parity_moments(state, phi).first -
                                         detection::parity_expectation(state, phi)));
      }
    }
    results.push_back({"lossless_parity_vs_oracle", n, 1.0, worst, 1e-10, worst < 1e-10});
  }

  // lambda^N factorization of the lossy mean, against the oracle
  for (int n = 1; n <= max_n; ++n) {
    double worst = 0.0;
    for (const double lam : {0.5, 0.8}) {
      const oracle::Pipeline pipe(n, lam);
      const double att = std::pow(lam, n);
      for (const auto& [label, state] : state_families(n)) {
        (void)label;
        for (int k = 0; k < 5; ++k) {
          const double phi = phi_dist(rng);
          const double expected = att * detection::parity_expectation(state, phi);
          worst = std::max(worst, std::abs(pipe.parity_moments(state, phi).first - expected));
        }
      }
    }
    results.push_back({"lossy_mean_factorization", n, 0.0, worst, 1e-10, worst < 1e-10});
  }

  // second moment: Q quadratic form vs oracle n_e = 0 probability
  for (int n = 1; n <= max_n; ++n) {
    double worst = 0.0;
    for (const double lam : {0.3, 0.7, 0.95}) {
      const oracle::Pipeline pipe(n, lam);
      for (const auto& [label, state] : state_families(n)) {
        (void)label;
        const double phi = phi_dist(rng);
        const double from_q = loss::lossy_parity_moments(state, phi, {lam}).second;
        worst = std::max(worst, std::abs(pipe.parity_moments(state, phi).second - from_q));
      }
    }
    results.push_back({"second_moment_vs_oracle", n, 0.0, worst, 1e-10, worst < 1e-10});
  }

  // oracle unitarity and norm conservation
  for (int n = 1; n <= max_n; ++n) {
    const CMatrix u = oracle::beam_splitter_unitary(n, oracle::ModePair::ab, M_PI / 2);
    const CMatrix gram = linalg::multiply(linalg::adjoint(u), u);
    double worst = linalg::max_abs_diff(gram, CMatrix::identity(u.size()));
    const oracle::Pipeline unit_pipe(n, 1.0);
    for (const auto& [label, state] : state_families(n)) {
      (void)label;
      worst = std::max(worst, std::abs(unit_pipe.run(state, phi_dist(rng)).norm() - 1.0));
    }
    results.push_back({"oracle_unitarity", n, 1.0, worst, 1e-11, worst < 1e-11});
  }

  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace mzi::verify
