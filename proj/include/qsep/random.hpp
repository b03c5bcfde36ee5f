// Random states and rotations for property tests and random-sampling scans.
//
// random_unitary4 composes Givens rotations and phases; it covers U(4) but is
// NOT Haar distributed.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qsep/linalg.hpp"
#include "qsep/measures.hpp"
#include "qsep/states.hpp"
#include "qsep/unitaries.hpp"

namespace qsep {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double random_angle(Rng& rng) { return uniform(rng, -std::numbers::pi, std::numbers::pi); }

/// Uniform on the probability simplex (sorted exponentials).
inline Spectrum4 random_spectrum(Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> x{e(rng), e(rng), e(rng), e(rng)};
  const double s = x[0] + x[1] + x[2] + x[3];
  for (double& v : x) v /= s;
  x[3] = 1.0 - x[0] - x[1] - x[2];
  if (x[3] < 0.0) x[3] = 0.0;
  return Spectrum4(x);
}

inline ComplexMatrix2 random_unitary2(Rng& rng) {
  return unitary2(uniform(rng, 0.0, std::numbers::pi / 2.0), random_angle(rng), random_angle(rng), random_angle(rng));
}

inline Unitary4 random_unitary4(Rng& rng) {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  for (int layer = 0; layer < 2; ++layer) {
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) {
        const ComplexMatrix2 g = random_unitary2(rng);
        ComplexMatrix4 e = ComplexMatrix4::identity();
        e(p, p) = g(0, 0);
        e(p, q) = g(0, 1);
        e(q, p) = g(1, 0);
        e(q, q) = g(1, 1);
        m = e * m;
      }
  }
  return Unitary4::validate(m);
}

inline Unitary4 random_structured(StructuredKind kind, Rng& rng) {
  return structured(kind, random_unitary2(rng), random_unitary2(rng));
}

/// W diag(s) W^dag with random spectrum and rotation.
inline DensityMatrix4 random_state(Rng& rng) {
  return conjugate(from_spectrum(random_spectrum(rng)), random_unitary4(rng));
}

/// Random valid X-state: random diagonal, coherences with modulus uniform
/// below the positivity bound and uniform phase.
inline XState random_x_state(Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> d{e(rng), e(rng), e(rng), e(rng)};
  const double s = d[0] + d[1] + d[2] + d[3];
  XState x;
  x.r11 = d[0] / s;
  x.r22 = d[1] / s;
  x.r33 = d[2] / s;
  x.r44 = 1.0 - x.r11 - x.r22 - x.r33;
  x.r14 = std::polar(uniform(rng) * std::sqrt(x.r11 * x.r44), random_angle(rng));
  x.r23 = std::polar(uniform(rng) * std::sqrt(x.r22 * x.r33), random_angle(rng));
  return x;
}

inline UnitaryParams random_params(Rng& rng) {
  UnitaryParams p;
  p.a = uniform(rng);
  p.b = uniform(rng);
  p.c = uniform(rng);
  p.d = uniform(rng);
  p.f = uniform(rng);
  p.h = uniform(rng);
  for (double* ph : {&p.phi.phi11, &p.phi.phi12, &p.phi.phi13, &p.phi.phi14, &p.phi.phi21, &p.phi.phi22, &p.phi.phi23,
                     &p.phi.phi31, &p.phi.phi32, &p.phi.phi41})
    *ph = random_angle(rng);
  return p;
}

}  // namespace qsep
