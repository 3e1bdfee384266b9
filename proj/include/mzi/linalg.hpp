#pragma once

#include <complex>
#include <vector>

namespace mzi::linalg {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Sized for interferometer work:
// nothing here is expected to exceed a few hundred rows.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  static CMatrix identity(int n);

  int size() const { return n_; }
  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  const Complex& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * n_ + c];
  }

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

CMatrix multiply(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
std::vector<Complex> apply(const CMatrix& a, const std::vector<Complex>& x);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& a);

// Eigendecomposition H = V diag(w) V^dagger of a Hermitian matrix by cyclic
// Jacobi rotations. Eigenvalues ascending, eigenvectors in the columns of V.
struct HermitianEig {
  std::vector<double> values;
  CMatrix vectors;
};

HermitianEig hermitian_eig(CMatrix h, int max_sweeps = 64);

// exp(scale * H) for Hermitian H, through the eigendecomposition above.
CMatrix hermitian_exp(const CMatrix& h, Complex scale);

// Solves a x = b by LU with partial pivoting. a must be nonsingular.
std::vector<Complex> lu_solve(CMatrix a, std::vector<Complex> b);

}  // namespace mzi::linalg
