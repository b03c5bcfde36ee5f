// Independent reference computations built on Eigen, used only by tests.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <complex>
#include <random>

#include "qsep/linalg.hpp"

namespace oracle {

using CMat = Eigen::Matrix<std::complex<double>, 4, 4>;

inline CMat to_eigen(const qsep::ComplexMatrix4& m) {
  CMat e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  return e;
}

inline qsep::ComplexMatrix4 from_eigen(const CMat& e) {
  qsep::ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = e(i, j);
  return m;
}

// Descending.
inline std::array<double, 4> eigvalsh(const qsep::ComplexMatrix4& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(to_eigen(m), Eigen::EigenvaluesOnly);
  const auto v = es.eigenvalues();
  return {v(3), v(2), v(1), v(0)};
}

// sum_{k,l} (I x |k><l|) rho (I x |k><l|)
inline qsep::ComplexMatrix4 partial_transpose(const qsep::ComplexMatrix4& rho) {
  const CMat r = to_eigen(rho);
  CMat out = CMat::Zero();
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
      e(k, l) = 1.0;
      Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
      CMat op;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) op(2 * a + c, 2 * b + d) = id(a, b) * e(c, d);
      out += op * r * op;
    }
  return from_eigen(out);
}

// Wootters: sqrt of the eigenvalues of rho (sy x sy) rho* (sy x sy), non-Hermitian route.
inline double concurrence(const qsep::ComplexMatrix4& rho) {
  const CMat r = to_eigen(rho);
  CMat yy = CMat::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMat rt = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMat> es(r * rt);
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(s.begin(), s.end(), std::greater<>());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

// Haar-distributed unitary from QR of a complex Ginibre matrix.
inline qsep::ComplexMatrix4 haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat z;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return from_eigen(q);
}

// Random Hermitian with Gaussian entries scaled by `scale`.
inline qsep::ComplexMatrix4 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  CMat z;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z(i, j) = {g(rng), g(rng)};
  return from_eigen(scale * 0.5 * (z + z.adjoint()));
}

// Random density matrix G G^dag / tr with Ginibre G (full rank almost surely).
inline qsep::ComplexMatrix4 random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat z;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z(i, j) = {g(rng), g(rng)};
  CMat r = z * z.adjoint();
  r /= r.trace();
  return from_eigen(r);
}

}  // namespace oracle
