#include "mzi/loss.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mzi/specialfn.hpp"

namespace mzi::loss {

using detection::Scheme;
using detection::SensitivitySample;
using linalg::CMatrix;
using su2::Complex;
using su2::JState;

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Complex i_pow(int k) { return kIPow[((k % 4) + 4) % 4]; }

double lambda_pow_n(double lambda, int n) { return std::pow(lambda, n); }

}  // namespace

void check_channel(const LossChannel& channel) {
  if (!(channel.lambda >= 0.0 && channel.lambda <= 1.0))
    throw std::invalid_argument("LossChannel: lambda must lie in [0, 1]");
}

CMatrix beam_splitter_matrix(int two_j) {
  const su2::WignerBlock w(two_j, M_PI / 2);
  const int dim = two_j + 1;
  CMatrix r(dim);
  for (int pm = 0; pm < dim; ++pm)
    for (int pn = 0; pn < dim; ++pn) r(pm, pn) = i_pow(pm - pn) * w(pm, pn);
  return r;
}

QMatrix::QMatrix(int two_j_in, double lambda_in) : two_j(two_j_in), lambda(lambda_in) {
  check_channel({lambda});
  const int dim = two_j + 1;
  const CMatrix r = beam_splitter_matrix(two_j);
  const double x = lambda * lambda;

  std::vector<double> att(static_cast<size_t>(dim));  // x^{n_b(k)}, n_b = 2j - k
  for (int k = 0; k < dim; ++k) att[static_cast<size_t>(k)] = std::pow(x, two_j - k);

  q = CMatrix(dim);
  for (int pm = 0; pm < dim; ++pm)
    for (int pn = 0; pn < dim; ++pn) {
      Complex acc = 0.0;
      for (int k = 0; k < dim; ++k)
        acc += std::conj(r(k, pm)) * att[static_cast<size_t>(k)] * r(k, pn);
      q(pm, pn) = acc;
    }

  sym = CMatrix(dim);
  for (int pm = 0; pm < dim; ++pm)
    for (int pn = 0; pn < dim; ++pn)
      sym(pm, pn) = 0.5 * (q(pm, pn) + std::conj(q(pn, pm)));
}

Complex q_element(int two_j, int two_m, int two_n, double lambda) {
  if (std::abs(two_m) > two_j || std::abs(two_n) > two_j ||
      (two_j - two_m) % 2 != 0 || (two_j - two_n) % 2 != 0)
    throw std::out_of_range("q_element: indices off the j lattice");
  check_channel({lambda});

  const int pm = (two_j + two_m) / 2;
  const int pn = (two_j + two_n) / 2;
  if (lambda == 1.0) return pm == pn ? 1.0 : 0.0;  // Lambda = identity
  if (lambda == 0.0) {
    // Lambda^2 -> |j,j><j,j|; only the top row of the beam splitter survives
    const CMatrix r = beam_splitter_matrix(two_j);
    return std::conj(r(two_j, pm)) * r(two_j, pn);
  }

  using specialfn::jacobi_poly;
  using specialfn::log_factorial;
  const int jm = (two_j - two_m) / 2, jpm = (two_j + two_m) / 2;
  const int jn = (two_j - two_n) / 2, jpn = (two_j + two_n) / 2;
  const double x = lambda * lambda;

  // i^{-m-n} ((x^2-1)/4)^j with the branch fixed so that Q is Hermitian
  // positive: phase i^{-(2j + m + n)} times the real magnitude below.
  const Complex phase = i_pow(-(two_j + (two_m + two_n) / 2));
  const double pref =
      std::exp(0.5 * (log_factorial(jn) + log_factorial(jpn) - log_factorial(jm) -
                      log_factorial(jpm)));
  const double body =
      std::pow(0.25 * (1.0 - x * x), 0.5 * two_j) *
      std::pow((1.0 + x) / (1.0 - x), 0.5 * (two_j + two_n - two_m)) *
      jacobi_poly(jpn, -two_j - 1, 0.5 * (two_m - two_n), 1.0 - 8.0 * x / ((1.0 + x) * (1.0 + x)));
  return phase * pref * body;
}

std::pair<double, double> lossy_parity_moments(const JState& in, double phi,
                                               const LossChannel& channel) {
  su2::check_state(in);
  check_channel(channel);
  const double mean =
      lambda_pow_n(channel.lambda, in.two_j) * detection::parity_expectation(in, phi);

  double second;
  if (channel.lambda == 1.0) {
    second = 1.0;  // Y_2 = identity
  } else {
    const QMatrix qm(in.two_j, channel.lambda);
    Complex acc = 0.0;
    for (int pm = 0; pm < in.dim(); ++pm) {
      Complex row = 0.0;
      for (int pn = 0; pn < in.dim(); ++pn)
        row += qm.sym(pm, pn) * in.amps[static_cast<size_t>(pn)];
      acc += std::conj(in.amps[static_cast<size_t>(pm)]) * row;
    }
    if (std::abs(acc.imag()) > 1e-11)
      throw std::runtime_error("lossy_parity_moments: imaginary second moment");
    second = acc.real();
  }
  if (second < mean * mean - 1e-10)
    throw std::runtime_error("lossy_parity_moments: second moment below mean^2");
  return {mean, second};
}

SensitivitySample lossy_sensitivity(const JState& in, double phi, const LossChannel& channel) {
  su2::check_state(in);
  check_channel(channel);

  const auto [mean, second] = lossy_parity_moments(in, phi, channel);
  const double attenuation = lambda_pow_n(channel.lambda, in.two_j);
  const double lossless_fd = detection::internal::five_point_derivative(
      [&](double x) { return detection::parity_expectation(in, x); }, phi);
  const double analytic = detection::parity_derivative_analytic(in, phi);
  if (std::abs(lossless_fd - analytic) > 1e-7 * std::abs(lossless_fd) + 1e-10)
    throw std::runtime_error("lossy_sensitivity: derivative cross-check failed");
  const double derivative = attenuation * lossless_fd;

  SensitivitySample out;
  out.phi = phi;
  out.scheme = Scheme::parity;
  out.two_j = in.two_j;
  out.lambda = channel.lambda;
  if (std::abs(derivative) < detection::internal::kDerivativeFloor) {
    out.divergent = true;
    out.delta_phi = std::numeric_limits<double>::infinity();
    return out;
  }
  out.delta_phi = std::sqrt(std::max(0.0, second - mean * mean)) / std::abs(derivative);
  return out;
}

namespace {

// Lossless parity mean and analytic derivative sampled on the shared phi
// grid; one Wigner block per point serves both, so lambda sweeps reuse it.
struct ParityProfile {
  std::vector<double> phis, means, derivs;
};

ParityProfile make_parity_profile(const JState& in) {
  ParityProfile prof;
  prof.phis = detection::internal::phi_grid();
  prof.means.reserve(prof.phis.size());
  prof.derivs.reserve(prof.phis.size());
  for (const double phi : prof.phis) {
    prof.means.push_back(detection::parity_expectation(in, phi));
    prof.derivs.push_back(detection::parity_derivative_analytic(in, phi));
  }
  return prof;
}

// Masked objective matching detection::minimize_sensitivity: divergent or
// far-below-scale derivative, or cancellation-floor variance, means the
// point is skipped.
double masked_lossy_delta(double att, double mean_lossless, double deriv_lossless,
                          double second, double deriv_floor) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double deriv = att * deriv_lossless;
  if (std::abs(deriv) < deriv_floor) return inf;
  const double mean = att * mean_lossless;
  const double spread_sq = second - mean * mean;
  if (spread_sq < detection::internal::kVarianceTrustFloor * second) return inf;
  return std::sqrt(std::max(0.0, spread_sq)) / std::abs(deriv);
}

SensitivitySample minimize_with_profile(const JState& in, const LossChannel& channel,
                                        const ParityProfile& prof) {
  const double att = lambda_pow_n(channel.lambda, in.two_j);
  const double second =
      channel.lambda == 1.0
          ? 1.0
          : lossy_parity_moments(in, prof.phis.front(), channel).second;

  double deriv_scale = 0.0;
  for (const double d : prof.derivs) deriv_scale = std::max(deriv_scale, att * std::abs(d));
  const double deriv_floor = std::max(detection::internal::kDerivativeFloor,
                                      detection::internal::kDerivativeScaleFloor * deriv_scale);

  std::vector<double> values(prof.phis.size());
  for (size_t k = 0; k < prof.phis.size(); ++k)
    values[k] = masked_lossy_delta(att, prof.means[k], prof.derivs[k], second, deriv_floor);

  const int best = detection::internal::first_branch_min(values);
  if (best < 0) {
    SensitivitySample out;
    out.phi = std::numeric_limits<double>::quiet_NaN();
    out.delta_phi = std::numeric_limits<double>::infinity();
    out.scheme = Scheme::parity;
    out.two_j = in.two_j;
    out.lambda = channel.lambda;
    out.divergent = true;
    return out;
  }

  const auto masked_eval = [&](double x) {
    return masked_lossy_delta(att, detection::parity_expectation(in, x),
                              detection::parity_derivative_analytic(in, x), second,
                              deriv_floor);
  };
  const double lo = best > 0 ? prof.phis[static_cast<size_t>(best - 1)] : prof.phis[0];
  const double hi = best + 1 < static_cast<int>(prof.phis.size())
                        ? prof.phis[static_cast<size_t>(best + 1)]
                        : M_PI - 1e-9;
  const double phi_star = detection::internal::golden_section(masked_eval, lo, hi);

  const double chosen = masked_eval(phi_star) <= values[static_cast<size_t>(best)]
                            ? phi_star
                            : prof.phis[static_cast<size_t>(best)];
  return lossy_sensitivity(in, chosen, channel);
}

}  // namespace

SensitivitySample minimize_lossy_sensitivity(const JState& in, const LossChannel& channel) {
  su2::check_state(in);
  check_channel(channel);
  return minimize_with_profile(in, channel, make_parity_profile(in));
}

double baseline_shot_noise(int two_j, const LossChannel& channel) {
  if (two_j < 1) throw std::invalid_argument("baseline_shot_noise: N >= 1 required");
  check_channel(channel);
  if (channel.lambda == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(channel.lambda * two_j);
}

std::vector<SensitivitySample> sweep_lambda(const JState& in, const std::vector<double>& lambdas,
                                            Scheme scheme) {
  su2::check_state(in);
  for (const double lam : lambdas)
    if (!(lam > 0.0 && lam <= 1.0))
      throw std::invalid_argument("sweep_lambda: grid values must lie in (0, 1]");

  std::vector<SensitivitySample> out;
  out.reserve(lambdas.size());

  if (scheme == Scheme::jz) {
    // The N-photon projected observables of the loss model are parity
    // moments; photon-number difference has no lossy counterpart here.
    for (const double lam : lambdas)
      if (lam != 1.0)
        throw std::invalid_argument("sweep_lambda: jz scheme is only defined at lambda = 1");
    for (const double lam : lambdas) {
      try {
        SensitivitySample s = detection::minimize_sensitivity(in, Scheme::jz);
        s.lambda = lam;
        out.push_back(s);
      } catch (const detection::NoSignalError&) {
        SensitivitySample s;
        s.phi = std::numeric_limits<double>::quiet_NaN();
        s.delta_phi = std::numeric_limits<double>::infinity();
        s.scheme = Scheme::jz;
        s.two_j = in.two_j;
        s.lambda = lam;
        s.divergent = true;
        out.push_back(s);
      }
    }
    return out;
  }

  const ParityProfile prof = make_parity_profile(in);
  for (const double lam : lambdas) out.push_back(minimize_with_profile(in, {lam}, prof));
  return out;
}

}  // namespace mzi::loss
