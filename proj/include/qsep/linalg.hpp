// Fixed-size complex matrices and a Hermitian Jacobi eigensolver.
//
// Everything here works on small value types (2x2, 4x4, 8x8). The eigensolver is
// the numeric oracle the rest of the library relies on, so it has no external
// dependencies and is deterministic.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <ostream>

#include "qsep/error.hpp"

namespace qsep {

using complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-9;

/// Dense N x N complex matrix stored row-major.
template <std::size_t N>
struct Matrix {
  std::array<complex, N * N> data{};

  static constexpr std::size_t size = N;

  constexpr complex& operator()(std::size_t i, std::size_t j) { return data[i * N + j]; }
  constexpr const complex& operator()(std::size_t i, std::size_t j) const { return data[i * N + j]; }

  static Matrix zero() { return Matrix{}; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using ComplexMatrix4 = Matrix<4>;
using ComplexMatrix2 = Matrix<2>;

template <std::size_t N>
Matrix<N> operator+(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.data[k] = a.data[k] + b.data[k];
  return r;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.data[k] = a.data[k] - b.data[k];
  return r;
}

template <std::size_t N>
Matrix<N> operator*(complex s, const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.data[k] = s * a.data[k];
  return r;
}

template <std::size_t N>
Matrix<N> multiply(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  return multiply(a, b);
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = a(j, i);
  return r;
}

/// Entrywise complex conjugate (not the adjoint).
template <std::size_t N>
Matrix<N> conj(const Matrix<N>& a) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.data[k] = std::conj(a.data[k]);
  return r;
}

template <std::size_t N>
complex trace(const Matrix<N>& a) {
  complex t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (const auto& z : a.data) s += std::norm(z);
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) m = std::max(m, std::abs(a.data[k] - b.data[k]));
  return m;
}

template <std::size_t N>
bool is_finite(const Matrix<N>& a) {
  return std::all_of(a.data.begin(), a.data.end(),
                     [](const complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

/// max |h_ij - conj(h_ji)|
template <std::size_t N>
double hermiticity_deviation(const Matrix<N>& h) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& h, double tol = kHermitianTol) {
  return is_finite(h) && hermiticity_deviation(h) <= tol;
}

inline Matrix<4> kron(const Matrix<2>& a, const Matrix<2>& b) {
  Matrix<4> r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

/// sigma_y (x) sigma_y, the real anti-diagonal matrix used by the spin flip.
inline ComplexMatrix4 sigma_yy() {
  ComplexMatrix4 m;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

template <std::size_t N>
std::ostream& operator<<(std::ostream& os, const Matrix<N>& m) {
  for (std::size_t i = 0; i < N; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < N; ++j) os << m(i, j) << (j + 1 < N ? ", " : "");
    os << (i + 1 < N ? "\n" : "]");
  }
  return os;
}

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values{};  // descending
  Matrix<N> vectors;               // column k belongs to values[k]
};

namespace detail {

inline constexpr int kMaxSweeps = 64;
inline constexpr double kOffDiagTol = 1e-13;

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi with complex Givens rotations. The rotation on (p, q) first
// removes the phase of a_pq and then applies the real symmetric Jacobi step.
template <std::size_t N>
EigenSystem<N> jacobi(const Matrix<N>& h) {
  Matrix<N> a;
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < N; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  Matrix<N> v = Matrix<N>::identity();
  const double threshold = kOffDiagTol * std::max(1.0, frobenius_norm(a));

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const complex phase = a(p, q) / r;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const complex sp = s * phase;             // s e^{i theta}
        const complex sm = s * std::conj(phase);  // s e^{-i theta}

        // columns: A <- A G with G_pp = c, G_pq = s, G_qp = -s e^{-i theta}, G_qq = c e^{-i theta}
        for (std::size_t k = 0; k < N; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = c * akp - sm * akq;
          a(k, q) = s * akp + c * std::conj(phase) * akq;
        }
        // rows: A <- G^dag A
        for (std::size_t k = 0; k < N; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t k = 0; k < N; ++k) {
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = c * vkp - sm * vkq;
          v(k, q) = s * vkp + c * std::conj(phase) * vkq;
        }
      }
    }
  }
  if (!converged) throw not_converged("Jacobi eigensolver did not converge in 64 sweeps");

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <std::size_t N>
void require_hermitian(const Matrix<N>& h) {
  if (!is_finite(h)) throw not_hermitian("matrix has non-finite entries", std::numeric_limits<double>::infinity());
  const double dev = hermiticity_deviation(h);
  if (dev > kHermitianTol) throw not_hermitian("matrix is not Hermitian", dev);
}

}  // namespace detail

/// Eigenvalues and eigenvectors of a Hermitian matrix, values descending.
template <std::size_t N>
EigenSystem<N> eigh(const Matrix<N>& h) {
  detail::require_hermitian(h);
  return detail::jacobi(h);
}

/// Eigenvalues of a Hermitian matrix, descending; ties keep their diagonal order.
template <std::size_t N>
std::array<double, N> eigvalsh(const Matrix<N>& h) {
  return eigh(h).values;
}

/// Coefficients (a1, a2, a3, a4) of  l^4 + a1 l^3 + a2 l^2 + a3 l + a4  for a
/// Hermitian 4x4 matrix, from Newton's identities on traces of powers.
inline std::array<double, 4> char_poly_coeffs(const ComplexMatrix4& h) {
  detail::require_hermitian(h);
  const ComplexMatrix4 h2 = h * h;
  const ComplexMatrix4 h3 = h2 * h;
  const ComplexMatrix4 h4 = h3 * h;
  const double p1 = trace(h).real();
  const double p2 = trace(h2).real();
  const double p3 = trace(h3).real();
  const double p4 = trace(h4).real();
  const double e1 = p1;
  const double e2 = (e1 * p1 - p2) / 2.0;
  const double e3 = (e2 * p1 - e1 * p2 + p3) / 3.0;
  const double e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0;
  return {-e1, e2, -e3, e4};
}

inline double eval_char_poly(const std::array<double, 4>& a, double x) {
  return (((x + a[0]) * x + a[1]) * x + a[2]) * x + a[3];
}

/// Apply f to the eigenvalues of a Hermitian matrix: V f(D) V^dag.
template <std::size_t N, class F>
Matrix<N> hermitian_function(const Matrix<N>& h, F&& f) {
  const EigenSystem<N> es = eigh(h);
  Matrix<N> r;
  for (std::size_t k = 0; k < N; ++k) {
    const double fk = f(es.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) += fk * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return r;
}

}  // namespace qsep
