#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qsep/linalg.hpp"

using namespace qsep;

TEST(Linalg, DiagonalEigenvaluesSortedDescending) {
  const auto v = eigvalsh(ComplexMatrix4::diagonal({0.1, 0.4, 0.2, 0.3}));
  EXPECT_DOUBLE_EQ(v[0], 0.4);
  EXPECT_DOUBLE_EQ(v[1], 0.3);
  EXPECT_DOUBLE_EQ(v[2], 0.2);
  EXPECT_DOUBLE_EQ(v[3], 0.1);
}

TEST(Linalg, PauliYEmbedding) {
  ComplexMatrix4 m;
  m(0, 1) = complex(0, -1);
  m(1, 0) = complex(0, 1);
  const auto v = eigvalsh(m);
  EXPECT_NEAR(v[0], 1.0, 1e-14);
  EXPECT_NEAR(v[1], 0.0, 1e-14);
  EXPECT_NEAR(v[2], 0.0, 1e-14);
  EXPECT_NEAR(v[3], -1.0, 1e-14);
}

TEST(Linalg, DegenerateEigenvaluesKeepOrder) {
  const auto v = eigvalsh(ComplexMatrix4::identity());
  for (double x : v) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(Linalg, RejectsNonHermitian) {
  ComplexMatrix4 m;
  m(0, 1) = 1.0;
  try {
    eigvalsh(m);
    FAIL();
  } catch (const not_hermitian& e) {
    EXPECT_NEAR(e.deviation(), 1.0, 1e-15);
  }
}

TEST(Linalg, RejectsNonFinite) {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  m(2, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eigvalsh(m), not_hermitian);
}

TEST(Linalg, EigenvaluesMatchEigenOnRandomHermitian) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    const double scale = std::pow(10.0, (n % 7) - 3);
    const auto h = oracle::random_hermitian(rng, scale);
    const auto a = eigvalsh(h);
    const auto b = oracle::eigvalsh(h);
    for (int i = 0; i < 4; ++i) ASSERT_NEAR(a[i], b[i], 1e-12 * std::max(1.0, scale)) << n;
  }
}

TEST(Linalg, EigenvectorsDiagonalize) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const auto h = oracle::random_hermitian(rng);
    const auto es = eigh(h);
    EXPECT_LT(max_abs_diff(adjoint(es.vectors) * es.vectors, ComplexMatrix4::identity()), 1e-12);
    const auto d = adjoint(es.vectors) * h * es.vectors;
    EXPECT_LT(max_abs_diff(d, ComplexMatrix4::diagonal(es.values)), 1e-12);
  }
}

TEST(Linalg, TraceEqualsEigenvalueSum) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const auto h = oracle::random_hermitian(rng);
    const auto v = eigvalsh(h);
    EXPECT_NEAR(v[0] + v[1] + v[2] + v[3], trace(h).real(), 1e-12);
  }
}

TEST(Linalg, CharPolyVanishesAtEigenvalues) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 1000; ++n) {
    const auto h = oracle::random_hermitian(rng);
    const auto a = char_poly_coeffs(h);
    for (double x : eigvalsh(h)) EXPECT_NEAR(eval_char_poly(a, x), 0.0, 1e-10);
  }
}

TEST(Linalg, CharPolyOfDiagonal) {
  const auto a = char_poly_coeffs(ComplexMatrix4::diagonal({1, 2, 3, 4}));
  EXPECT_NEAR(a[0], -10, 1e-12);
  EXPECT_NEAR(a[1], 35, 1e-12);
  EXPECT_NEAR(a[2], -50, 1e-12);
  EXPECT_NEAR(a[3], 24, 1e-12);
}

TEST(Linalg, EightByEightSolver) {
  Matrix<8> m;
  for (std::size_t i = 0; i < 8; ++i) m(i, 7 - i) = 1.0;
  const auto v = eigvalsh(m);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(v[i], 1.0, 1e-14);
  for (std::size_t i = 4; i < 8; ++i) EXPECT_NEAR(v[i], -1.0, 1e-14);
}

TEST(Linalg, KronAndSigmaYY) {
  ComplexMatrix2 sy;
  sy(0, 1) = complex(0, -1);
  sy(1, 0) = complex(0, 1);
  EXPECT_LT(max_abs_diff(kron(sy, sy), sigma_yy()), 1e-15);
}

TEST(Linalg, HermitianFunctionSquareRoot) {
  std::mt19937_64 rng(13);
  const auto rho = oracle::random_density(rng);
  const auto s = hermitian_function(rho, [](double x) { return std::sqrt(std::max(0.0, x)); });
  EXPECT_LT(max_abs_diff(s * s, rho), 1e-13);
}
