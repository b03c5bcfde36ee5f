// Density matrices of a four-level system (two qubits or a single spin-3/2),
// diagonal construction from a spectrum, unitary conjugation, partial
// transpose, reductions and the X-state closed forms.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"
#include "qsep/unitaries.hpp"

namespace qsep {

inline constexpr double kSpectrumSumTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kXOffMassTol = 1e-10;

/// Four nonnegative probabilities summing to one (the eigenvalues l1..l4).
class Spectrum4 {
 public:
  Spectrum4(double l1, double l2, double l3, double l4) : l_{l1, l2, l3, l4} {
    for (double x : l_)
      if (!(x >= 0.0)) throw invalid_spectrum("spectrum entries must be nonnegative");
    const double s = l1 + l2 + l3 + l4;
    if (!(std::abs(s - 1.0) <= kSpectrumSumTol)) throw invalid_spectrum("spectrum must sum to 1");
  }
  explicit Spectrum4(const std::array<double, 4>& l) : Spectrum4(l[0], l[1], l[2], l[3]) {}

  double operator[](std::size_t i) const { return l_[i]; }
  const std::array<double, 4>& values() const noexcept { return l_; }

  std::array<double, 4> sorted_descending() const {
    auto s = l_;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
  }

  static Spectrum4 pure() { return {1.0, 0.0, 0.0, 0.0}; }
  static Spectrum4 maximally_mixed() { return {0.25, 0.25, 0.25, 0.25}; }

 private:
  std::array<double, 4> l_;
};

/// Index labelling of the four basis states. Metadata only: both readings
/// share the same matrix and every measure ignores the tag.
enum class Labeling { TwoQubit, SpinThreeHalves };

inline std::string_view to_string(Labeling l) { return l == Labeling::TwoQubit ? "two_qubit" : "spin_3_2"; }

inline Labeling parse_labeling(std::string_view s) {
  if (s == "two_qubit") return Labeling::TwoQubit;
  if (s == "spin_3_2") return Labeling::SpinThreeHalves;
  throw error("unknown labeling '" + std::string(s) + "'");
}

/// Basis labels of index 0..3 under a labelling: (m_A, m_B) pairs for two
/// qubits, m for the spin-3/2 reading.
inline std::array<std::string_view, 4> basis_labels(Labeling l) {
  if (l == Labeling::TwoQubit) return {"(1/2,1/2)", "(1/2,-1/2)", "(-1/2,1/2)", "(-1/2,-1/2)"};
  return {"3/2", "1/2", "-1/2", "-3/2"};
}

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix4 {
 public:
  /// Validates and wraps; throws invalid_state naming the broken invariant.
  static DensityMatrix4 from_matrix(const ComplexMatrix4& m, Labeling labeling = Labeling::TwoQubit) {
    if (!is_finite(m)) throw invalid_state(StateViolation::non_finite, 0.0);
    const double herm = hermiticity_deviation(m);
    if (herm > kHermitianTol) throw invalid_state(StateViolation::hermiticity, herm);
    const double tr = std::abs(trace(m) - 1.0);
    if (tr > kTraceTol) throw invalid_state(StateViolation::trace, tr);
    const double min_eig = eigvalsh(m)[3];
    if (min_eig < -kPsdTol) throw invalid_state(StateViolation::positivity, -min_eig);
    return DensityMatrix4(m, labeling);
  }

  const ComplexMatrix4& matrix() const noexcept { return m_; }
  Labeling labeling() const noexcept { return labeling_; }
  complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  DensityMatrix4 with_labeling(Labeling l) const { return DensityMatrix4(m_, l); }

 private:
  DensityMatrix4(const ComplexMatrix4& m, Labeling l) : m_(m), labeling_(l) {}
  ComplexMatrix4 m_;
  Labeling labeling_;
};

/// The diagonal state diag(l1, l2, l3, l4).
inline DensityMatrix4 from_spectrum(const Spectrum4& s, Labeling labeling = Labeling::TwoQubit) {
  return DensityMatrix4::from_matrix(ComplexMatrix4::diagonal(s.values()), labeling);
}

/// W rho W^dag. Spectrum and trace are preserved.
inline DensityMatrix4 conjugate(const DensityMatrix4& rho, const Unitary4& w) {
  ComplexMatrix4 r = w.matrix() * rho.matrix() * adjoint(w.matrix());
  // restore exact Hermiticity lost to rounding
  for (std::size_t i = 0; i < 4; ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) {
      const complex avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix4::from_matrix(r, rho.labeling());
}

/// Partial transpose on the second party: entry ((i,j),(k,l)) <- ((i,l),(k,j))
/// with index = 2*first + second.
inline ComplexMatrix4 partial_transpose(const ComplexMatrix4& m) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + j, 2 * k + l) = m(2 * i + l, 2 * k + j);
  return r;
}

inline ComplexMatrix4 partial_transpose(const DensityMatrix4& rho) { return partial_transpose(rho.matrix()); }

/// Same matrix, other labelling.
inline DensityMatrix4 relabel(const DensityMatrix4& rho, Labeling target) { return rho.with_labeling(target); }

/// Single-party reductions and their purity parameters mu = 1 - Tr(rho_k^2).
struct ReducedState {
  ComplexMatrix2 rhoA;
  ComplexMatrix2 rhoB;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

inline ReducedState reduce(const DensityMatrix4& rho) {
  const ComplexMatrix4& m = rho.matrix();
  ReducedState out;
  out.rhoA(0, 0) = m(0, 0) + m(1, 1);
  out.rhoA(0, 1) = m(0, 2) + m(1, 3);
  out.rhoA(1, 0) = m(2, 0) + m(3, 1);
  out.rhoA(1, 1) = m(2, 2) + m(3, 3);
  out.rhoB(0, 0) = m(0, 0) + m(2, 2);
  out.rhoB(0, 1) = m(0, 1) + m(2, 3);
  out.rhoB(1, 0) = m(1, 0) + m(3, 2);
  out.rhoB(1, 1) = m(1, 1) + m(3, 3);
  out.mu1 = 1.0 - trace(out.rhoA * out.rhoA).real();
  out.mu2 = 1.0 - trace(out.rhoB * out.rhoB).real();
  return out;
}

/// Entries of a matrix supported on the diagonal and anti-diagonal.
struct XState {
  double r11 = 0, r22 = 0, r33 = 0, r44 = 0;
  complex r14{}, r23{};

  ComplexMatrix4 to_matrix() const {
    ComplexMatrix4 m;
    m(0, 0) = r11;
    m(1, 1) = r22;
    m(2, 2) = r33;
    m(3, 3) = r44;
    m(0, 3) = r14;
    m(3, 0) = std::conj(r14);
    m(1, 2) = r23;
    m(2, 1) = std::conj(r23);
    return m;
  }

  /// r22 r33 >= |r23|^2 and r11 r44 >= |r14|^2 (diagonal entries nonnegative).
  bool is_psd(double tol = 0.0) const {
    return r11 >= -tol && r22 >= -tol && r33 >= -tol && r44 >= -tol && r22 * r33 - std::norm(r23) >= -tol &&
           r11 * r44 - std::norm(r14) >= -tol;
  }
};

inline double x_off_mass(const ComplexMatrix4& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j && i + j != 3) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

/// Reads the X entries; throws not_x_state when any other entry exceeds 1e-10.
inline XState extract_x(const ComplexMatrix4& m) {
  const double off = x_off_mass(m);
  if (off > kXOffMassTol) throw not_x_state("matrix has weight " + std::to_string(off) + " outside the X pattern");
  XState x;
  x.r11 = m(0, 0).real();
  x.r22 = m(1, 1).real();
  x.r33 = m(2, 2).real();
  x.r44 = m(3, 3).real();
  x.r14 = m(0, 3);
  x.r23 = m(1, 2);
  return x;
}

inline XState extract_x(const DensityMatrix4& rho) { return extract_x(rho.matrix()); }

/// Half-sums e1, e2, half-root terms e3, e4 and the partial-transpose
/// eigenvalues l1 = e1 - e3, l2 = e1 + e3, l3 = e2 - e4, l4 = e2 + e4.
struct XClosedForms {
  double e1, e2, e3, e4;
  std::array<double, 4> ppt_eigs;
};

inline XClosedForms x_closed_forms(const XState& x) {
  XClosedForms out{};
  out.e1 = (x.r11 + x.r44) / 2.0;
  out.e2 = (x.r22 + x.r33) / 2.0;
  out.e3 = std::sqrt((x.r11 - x.r44) * (x.r11 - x.r44) + 4.0 * std::norm(x.r23)) / 2.0;
  out.e4 = std::sqrt((x.r22 - x.r33) * (x.r22 - x.r33) + 4.0 * std::norm(x.r14)) / 2.0;
  out.ppt_eigs = {out.e1 - out.e3, out.e1 + out.e3, out.e2 - out.e4, out.e2 + out.e4};
  return out;
}

/// Werner state: diag((1+p)/4, (1-p)/4, (1-p)/4, (1+p)/4) with corners p/2,
/// valid for -1/3 <= p <= 1.
inline DensityMatrix4 werner(double p) {
  if (!(p >= -1.0 / 3.0 && p <= 1.0)) throw parameter_out_of_range("Werner parameter p must lie in [-1/3, 1]");
  XState x;
  x.r11 = x.r44 = (1.0 + p) / 4.0;
  x.r22 = x.r33 = (1.0 - p) / 4.0;
  x.r14 = p / 2.0;
  return DensityMatrix4::from_matrix(x.to_matrix());
}

}  // namespace qsep
