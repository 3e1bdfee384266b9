#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mzi/su2.hpp"

namespace mzi::detection {

enum class Scheme { parity, jz };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// One evaluated working point. delta_phi is finite and positive, or the
// sample is flagged divergent (the observable carries no phase signal
// there) with delta_phi = +inf.
struct SensitivitySample {
  double phi = 0.0;
  double delta_phi = 0.0;
  Scheme scheme = Scheme::parity;
  std::string state_label;
  int two_j = 0;
  double lambda = 1.0;
  bool divergent = false;
};

// Raised by the minimizers when every grid point is divergent.
class NoSignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// <P>_out = <in| e^{i phi J_y} (-1)^{j - J_z} e^{-i phi J_y} |in>, through
// the quadratic form in d^j(2 phi).
double parity_expectation(const su2::JState& in, double phi);

// Same value built the long way: rotate, weight by (-1)^{n_b}, contract.
// Kept as an internal redundancy check for tests.
double parity_expectation_direct(const su2::JState& in, double phi);

// d<P>/d phi from the ladder identity for d' (no finite differences).
double parity_derivative_analytic(const su2::JState& in, double phi);

// (mean, variance) of J_z,out = -sin(phi) J_x + cos(phi) J_z.
std::pair<double, double> jz_expectation_and_variance(const su2::JState& in, double phi);

double jz_mean(const su2::JState& in, double phi);
double jz_derivative_analytic(const su2::JState& in, double phi);

// delta phi = Delta O / |d<O>/d phi| at the given phi. The derivative is a
// five-point central difference (h = 1e-5), cross-checked against the
// analytic derivative; parity uses <P^2> = 1.
SensitivitySample sensitivity(const su2::JState& in, double phi, Scheme scheme);

// Minimum of delta phi on the small-phi operating branch: a 2001-point
// coarse grid over (0, pi) plus phi = 1e-6 for the open left end, scanned
// upward to the first local minimum, then golden-section refinement.
// Degenerate points (divergent derivative, or variance at its cancellation
// floor) are skipped. The branch restriction matters: some delta phi(phi)
// curves own deeper dips at large phi that no closed-form limit describes,
// and the operating point of interest is the one reached from phi -> 0.
SensitivitySample minimize_sensitivity(const su2::JState& in, Scheme scheme);

// Shared sweep grid and refinement internals, reused by the loss module.
namespace internal {

std::vector<double> phi_grid();

inline constexpr double kFdStep = 1e-5;
inline constexpr double kGoldenTol = 1e-10;
inline constexpr double kDerivativeFloor = 1e-300;
inline constexpr double kVarianceTrustFloor = 1e-5;
inline constexpr double kDerivativeScaleFloor = 1e-3;

double five_point_derivative(const std::function<double(double)>& f, double phi);

// Index of the first local minimum among the finite entries, or -1 when
// every entry is masked (+inf).
int first_branch_min(const std::vector<double>& values);

// Golden-section minimum of f over [lo, hi] to kGoldenTol in phi.
double golden_section(const std::function<double(double)>& f, double lo, double hi);

}  // namespace internal

}  // namespace mzi::detection
