#include "mzi/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mzi::detection {

using su2::Complex;
using su2::JState;
using su2::WignerBlock;

const char* scheme_name(Scheme s) { return s == Scheme::parity ? "parity" : "jz"; }

Scheme scheme_from_name(const std::string& name) {
  if (name == "parity") return Scheme::parity;
  if (name == "jz") return Scheme::jz;
  throw std::invalid_argument("unknown detection scheme: " + name);
}

namespace {

constexpr double kImagTol = 1e-11;

int parity_sign(int two_j, int p) {  // (-1)^{j-m} = (-1)^{n_b}
  return ((two_j - p) % 2 == 0) ? 1 : -1;
}

double real_checked(Complex acc, const char* who) {
  if (std::abs(acc.imag()) > kImagTol)
    throw std::runtime_error(std::string(who) + ": imaginary residual " +
                             std::to_string(acc.imag()) + " exceeds tolerance");
  return acc.real();
}

// (J_x c) and (J_z c) as vectors; the J_z,out observable is built from them.
std::vector<Complex> apply_jx(const JState& s) {
  const int dim = s.dim();
  std::vector<Complex> out(static_cast<size_t>(dim), Complex{});
  for (int p = 0; p < dim; ++p) {
    const double up = su2::ladder_up(s.two_j, s.two_m(p));
    if (p + 1 < dim) {
      out[static_cast<size_t>(p + 1)] += 0.5 * up * s.amps[static_cast<size_t>(p)];
      out[static_cast<size_t>(p)] += 0.5 * up * s.amps[static_cast<size_t>(p + 1)];
    }
  }
  return out;
}

std::vector<Complex> jz_observable_applied(const JState& s, double phi) {
  const std::vector<Complex> jx = apply_jx(s);
  std::vector<Complex> out(jx.size());
  const double sn = std::sin(phi), cs = std::cos(phi);
  for (int p = 0; p < s.dim(); ++p)
    out[static_cast<size_t>(p)] = -sn * jx[static_cast<size_t>(p)] +
                                  cs * s.m_value(p) * s.amps[static_cast<size_t>(p)];
  return out;
}

}  // namespace

double parity_expectation(const JState& in, double phi) {
  su2::check_state(in);
  const WignerBlock w(in.two_j, 2.0 * phi);
  Complex acc = 0.0;
  for (int pm = 0; pm < in.dim(); ++pm) {
    Complex row = 0.0;
    for (int pn = 0; pn < in.dim(); ++pn) row += w(pm, pn) * in.amps[static_cast<size_t>(pn)];
    acc += std::conj(in.amps[static_cast<size_t>(pm)]) *
           static_cast<double>(parity_sign(in.two_j, pm)) * row;
  }
  return real_checked(acc, "parity_expectation");
}

double parity_expectation_direct(const JState& in, double phi) {
  su2::check_state(in);
  const JState rotated = su2::rotate_y(in, phi);
  double acc = 0.0;
  for (int p = 0; p < rotated.dim(); ++p)
    acc += parity_sign(in.two_j, p) * std::norm(rotated.amps[static_cast<size_t>(p)]);
  return acc;
}

double parity_derivative_analytic(const JState& in, double phi) {
  su2::check_state(in);
  const WignerBlock w(in.two_j, 2.0 * phi);
  const int dim = in.dim();
  // d/dphi <P> = sum_{mn} c*_m c_n (-1)^{j-m} [a_up(m) d_{m+1,n} - a_down(m) d_{m-1,n}](2phi)
  Complex acc = 0.0;
  for (int pm = 0; pm < dim; ++pm) {
    const double up = su2::ladder_up(in.two_j, in.two_m(pm));
    const double down = su2::ladder_down(in.two_j, in.two_m(pm));
    Complex row = 0.0;
    for (int pn = 0; pn < dim; ++pn) {
      double dprime = 0.0;
      if (pm + 1 < dim) dprime += up * w(pm + 1, pn);
      if (pm - 1 >= 0) dprime -= down * w(pm - 1, pn);
      row += dprime * in.amps[static_cast<size_t>(pn)];
    }
    acc += std::conj(in.amps[static_cast<size_t>(pm)]) *
           static_cast<double>(parity_sign(in.two_j, pm)) * row;
  }
  return real_checked(acc, "parity_derivative_analytic");
}

std::pair<double, double> jz_expectation_and_variance(const JState& in, double phi) {
  su2::check_state(in);
  const std::vector<Complex> oc = jz_observable_applied(in, phi);
  Complex mean_acc = 0.0;
  double second = 0.0;
  for (int p = 0; p < in.dim(); ++p) {
    mean_acc += std::conj(in.amps[static_cast<size_t>(p)]) * oc[static_cast<size_t>(p)];
    second += std::norm(oc[static_cast<size_t>(p)]);
  }
  const double mean = real_checked(mean_acc, "jz_expectation");
  double variance = second - mean * mean;
  if (variance < -1e-12)
    throw std::runtime_error("jz_expectation_and_variance: negative variance");
  return {mean, std::max(variance, 0.0)};
}

double jz_mean(const JState& in, double phi) {
  return jz_expectation_and_variance(in, phi).first;
}

double jz_derivative_analytic(const JState& in, double phi) {
  su2::check_state(in);
  // d/dphi <-sin Jx + cos Jz> = <-cos Jx - sin Jz>
  const std::vector<Complex> jx = apply_jx(in);
  Complex acc = 0.0;
  const double sn = std::sin(phi), cs = std::cos(phi);
  for (int p = 0; p < in.dim(); ++p)
    acc += std::conj(in.amps[static_cast<size_t>(p)]) *
           (-cs * jx[static_cast<size_t>(p)] -
            sn * in.m_value(p) * in.amps[static_cast<size_t>(p)]);
  return real_checked(acc, "jz_derivative_analytic");
}

namespace internal {

std::vector<double> phi_grid() {
  std::vector<double> grid;
  grid.reserve(2002);
  grid.push_back(1e-6);
  for (int k = 1; k <= 2001; ++k) grid.push_back(k * M_PI / 2002.0);
  return grid;
}

double five_point_derivative(const std::function<double(double)>& f, double phi) {
  const double h = kFdStep;
  return (-f(phi + 2 * h) + 8 * f(phi + h) - 8 * f(phi - h) + f(phi - 2 * h)) / (12 * h);
}

int first_branch_min(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  int k = 0;
  while (k < n && !std::isfinite(values[static_cast<size_t>(k)])) ++k;
  if (k == n) return -1;
  while (k + 1 < n && std::isfinite(values[static_cast<size_t>(k + 1)]) &&
         values[static_cast<size_t>(k + 1)] <= values[static_cast<size_t>(k)])
    ++k;
  return k;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double ratio = 0.6180339887498949;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kGoldenTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace internal

SensitivitySample sensitivity(const JState& in, double phi, Scheme scheme) {
  su2::check_state(in);
  SensitivitySample out;
  out.phi = phi;
  out.scheme = scheme;
  out.two_j = in.two_j;
  out.lambda = 1.0;

  double spread, derivative, analytic;
  if (scheme == Scheme::parity) {
    const double mean = parity_expectation(in, phi);
    spread = std::sqrt(std::max(0.0, 1.0 - mean * mean));  // <P^2> = 1
    derivative = internal::five_point_derivative(
        [&](double x) { return parity_expectation(in, x); }, phi);
    analytic = parity_derivative_analytic(in, phi);
  } else {
    const auto [mean, variance] = jz_expectation_and_variance(in, phi);
    (void)mean;
    spread = std::sqrt(variance);
    derivative = internal::five_point_derivative([&](double x) { return jz_mean(in, x); }, phi);
    analytic = jz_derivative_analytic(in, phi);
  }

  // 1e-10 absolute cushion: five-point truncation noise at h = 1e-5 sits
  // near 1e-11 and would trip a purely relative bound where the signal
  // derivative itself is ~1e-5 (the phi -> 0 grid point).
  if (std::abs(derivative - analytic) > 1e-7 * std::abs(derivative) + 1e-10)
    throw std::runtime_error("sensitivity: finite-difference and analytic derivatives disagree");

  if (std::abs(derivative) < internal::kDerivativeFloor) {
    out.divergent = true;
    out.delta_phi = std::numeric_limits<double>::infinity();
    return out;
  }
  out.delta_phi = spread / std::abs(derivative);
  return out;
}

namespace {

struct EvalParts {
  double spread_sq = 0.0;
  double scale = 1.0;  // second-moment scale of the cancellation in spread_sq
  double derivative = 0.0;
};

EvalParts eval_parts(const JState& in, double phi, Scheme scheme) {
  EvalParts p;
  if (scheme == Scheme::parity) {
    const double mean = parity_expectation(in, phi);
    p.spread_sq = 1.0 - mean * mean;
    p.scale = 1.0;
    p.derivative = parity_derivative_analytic(in, phi);
  } else {
    const auto [mean, variance] = jz_expectation_and_variance(in, phi);
    p.spread_sq = variance;
    p.scale = variance + mean * mean;  // <O^2>
    p.derivative = jz_derivative_analytic(in, phi);
  }
  return p;
}

// Masked objective for the minimizers, +inf where the point is unusable:
// divergent derivative, derivative far below the curve's own slope scale
// (the estimator amplifies noise without bound there and the curve owns
// spurious micro-dips where the mean crawls along a pedestal), or the
// variance at its cancellation floor. Where mean and derivative vanish
// together the true delta phi is a finite 0/0 limit approached smoothly
// by the surviving neighbors, so skipping costs nothing; the floors keep
// the kept points accurate to ~1e-10 absolute.
double masked_value(const EvalParts& p, double deriv_floor) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (std::abs(p.derivative) < deriv_floor) return inf;
  if (p.spread_sq < internal::kVarianceTrustFloor * p.scale) return inf;
  return std::sqrt(std::max(0.0, p.spread_sq)) / std::abs(p.derivative);
}

}  // namespace

SensitivitySample minimize_sensitivity(const JState& in, Scheme scheme) {
  su2::check_state(in);
  const std::vector<double> grid = internal::phi_grid();

  std::vector<EvalParts> parts(grid.size());
  double deriv_scale = 0.0;
  for (size_t k = 0; k < grid.size(); ++k) {
    parts[k] = eval_parts(in, grid[k], scheme);
    deriv_scale = std::max(deriv_scale, std::abs(parts[k].derivative));
  }
  const double deriv_floor =
      std::max(internal::kDerivativeFloor, internal::kDerivativeScaleFloor * deriv_scale);

  std::vector<double> values(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) values[k] = masked_value(parts[k], deriv_floor);

  const int best = internal::first_branch_min(values);
  if (best < 0)
    throw NoSignalError("minimize_sensitivity: observable carries no phase signal");

  const double lo = best > 0 ? grid[static_cast<size_t>(best - 1)] : grid[0];
  const double hi = best + 1 < static_cast<int>(grid.size())
                        ? grid[static_cast<size_t>(best + 1)]
                        : M_PI - 1e-9;
  const auto masked = [&](double x) {
    return masked_value(eval_parts(in, x, scheme), deriv_floor);
  };
  const double phi_star = internal::golden_section(masked, lo, hi);

  const double chosen = masked(phi_star) <= values[static_cast<size_t>(best)]
                            ? phi_star
                            : grid[static_cast<size_t>(best)];
  return sensitivity(in, chosen, scheme);
}

}  // namespace mzi::detection
