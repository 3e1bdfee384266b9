#include "mzi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mzi::linalg {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  const int n = a.size();
  if (b.size() != n) throw std::invalid_argument("multiply: size mismatch");
  CMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  const int n = a.size();
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

std::vector<Complex> apply(const CMatrix& a, const std::vector<Complex>& x) {
  const int n = a.size();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("apply: size mismatch");
  std::vector<Complex> y(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  const int n = a.size();
  if (b.size() != n) throw std::invalid_argument("max_abs_diff: size mismatch");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

double frobenius_norm(const CMatrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

HermitianEig hermitian_eig(CMatrix h, int max_sweeps) {
  const int n = h.size();
  CMatrix v = CMatrix::identity(n);
  const double scale = frobenius_norm(h);
  const double stop = 1e-15 * std::max(scale, 1.0);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(h) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex hpq = h(p, q);
        const double b = std::abs(hpq);
        if (b <= 1e-300) continue;
        const Complex phase = hpq / b;  // e^{i psi}
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double delta = aqq - app;
        // smaller root of b t^2 - delta t - b = 0, for a rotation <= pi/4
        double t;
        if (delta >= 0.0)
          t = -2.0 * b / (delta + std::hypot(delta, 2.0 * b));
        else
          t = 2.0 * b / (-delta + std::hypot(delta, 2.0 * b));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sp = s * phase;         // s e^{i psi}
        const Complex spc = s * std::conj(phase);
        // columns: col_p <- c col_p + s e^{-i psi} col_q ; col_q <- -s e^{i psi} col_p + c col_q
        for (int k = 0; k < n; ++k) {
          const Complex akp = h(k, p), akq = h(k, q);
          h(k, p) = c * akp + spc * akq;
          h(k, q) = -sp * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = h(p, k), aqk = h(q, k);
          h(p, k) = c * apk + sp * aqk;
          h(q, k) = -spc * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + spc * vkq;
          v(k, q) = -sp * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return h(i, i).real() < h(j, j).real(); });

  HermitianEig out;
  out.values.resize(n);
  out.vectors = CMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = h(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

CMatrix hermitian_exp(const CMatrix& h, Complex scale) {
  const int n = h.size();
  const HermitianEig eig = hermitian_eig(h);
  std::vector<Complex> ew(n);
  for (int k = 0; k < n; ++k) ew[k] = std::exp(scale * eig.values[k]);
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * ew[k] * std::conj(eig.vectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

std::vector<Complex> lu_solve(CMatrix a, std::vector<Complex> b) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("lu_solve: size mismatch");
  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);

  for (int col = 0; col < n; ++col) {
    int best = col;
    double best_mag = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
      std::swap(b[col], b[best]);
    }
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      if (f == Complex{}) continue;
      a(r, col) = f;
      for (int c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }

  for (int r = n - 1; r >= 0; --r) {
    Complex acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * b[c];
    b[r] = acc / a(r, r);
  }
  return b;
}

}  // namespace mzi::linalg
