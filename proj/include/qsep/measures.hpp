// Entanglement detection and quantification: partial-transpose verdict,
// negativity, concurrence (general and X-state closed form), pure-state
// criteria and the structured-rotation inequalities.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"
#include "qsep/states.hpp"
#include "qsep/unitaries.hpp"

namespace qsep {

inline constexpr double kSeparableTol = 1e-9;

struct EntanglementReport {
  std::array<double, 4> ppt_spectrum{};  // descending
  double negativity = 0.0;               // sum |lambda_ppt| - 1, clipped at 0
  double concurrence = 0.0;
  double min_ppt_eig = 0.0;
  bool separable = true;
  bool boundary = false;  // |min_ppt_eig| <= kSeparableTol
};

/// Negativity in the sum-of-moduli form: sum |lambda| - 1, clipped at 0.
/// Twice the (||rho^T_B||_1 - 1)/2 convention.
inline double negativity_from_ppt(const std::array<double, 4>& ppt) {
  double s = 0.0;
  for (double x : ppt) s += std::abs(x);
  return std::max(0.0, s - 1.0);
}

inline double min_ppt_eigenvalue(const DensityMatrix4& rho) { return eigvalsh(partial_transpose(rho))[3]; }

/// Spin-flipped state (sY x sY) rho^* (sY x sY).
inline ComplexMatrix4 spin_flip(const ComplexMatrix4& rho) {
  const ComplexMatrix4 y = sigma_yy();
  return y * conj(rho) * y;
}

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
///
/// rho rho~ is not Hermitian; its eigenvalues equal the squared singular
/// values of M = sqrt(rho) (sY x sY) sqrt(rho)^*, which are read off the
/// Hermitian embedding [[0, M], [M^dag, 0]] without squaring.
inline std::array<double, 4> concurrence_roots(const ComplexMatrix4& rho) {
  const EigenSystem<4> es = eigh(rho);
  const double cutoff = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(es.values[0]));
  for (double l : es.values)
    if (l < -1e-6) throw non_physical_input("state has a negative eigenvalue " + std::to_string(l));

  ComplexMatrix4 sq;
  for (std::size_t k = 0; k < 4; ++k) {
    if (es.values[k] <= cutoff) continue;
    const double s = std::sqrt(es.values[k]);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) sq(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  const ComplexMatrix4 m = sq * sigma_yy() * conj(sq);

  Matrix<8> emb;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      emb(i, 4 + j) = m(i, j);
      emb(4 + j, i) = std::conj(m(i, j));
    }
  const auto ev = eigvalsh(emb);
  return {std::max(0.0, ev[0]), std::max(0.0, ev[1]), std::max(0.0, ev[2]), std::max(0.0, ev[3])};
}

/// Eigenvalues of rho * spin_flip(rho), descending (squares of concurrence_roots).
inline std::array<double, 4> concurrence_eigenvalues(const ComplexMatrix4& rho) {
  auto r = concurrence_roots(rho);
  for (double& x : r) x *= x;
  return r;
}

/// C = max(0, s1 - s2 - s3 - s4) with s_i the square roots of the
/// eigenvalues of rho rho~ in decreasing order.
inline double concurrence_general(const DensityMatrix4& rho) {
  const auto s = concurrence_roots(rho.matrix());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

/// max{0, 2|r23| - 2 sqrt(r11 r44), 2|r14| - 2 sqrt(r22 r33)}
inline double concurrence_x(const XState& x) {
  const double c1 = 2.0 * std::abs(x.r23) - 2.0 * std::sqrt(std::max(0.0, x.r11 * x.r44));
  const double c2 = 2.0 * std::abs(x.r14) - 2.0 * std::sqrt(std::max(0.0, x.r22 * x.r33));
  return std::max({0.0, c1, c2});
}

enum class XCondition { None, OuterCoherence, InnerCoherence };

struct XVerdict {
  bool entangled = false;
  // OuterCoherence: r22 r33 < |r14|^2;  InnerCoherence: r11 r44 < |r23|^2
  XCondition fired = XCondition::None;
};

inline XVerdict x_entangled(const XState& x) {
  if (x.r22 * x.r33 < std::norm(x.r14)) return {true, XCondition::OuterCoherence};
  if (x.r11 * x.r44 < std::norm(x.r23)) return {true, XCondition::InnerCoherence};
  return {};
}

inline EntanglementReport analyze(const DensityMatrix4& rho) {
  EntanglementReport r;
  r.ppt_spectrum = eigvalsh(partial_transpose(rho));
  r.min_ppt_eig = r.ppt_spectrum[3];
  r.negativity = negativity_from_ppt(r.ppt_spectrum);
  r.concurrence = concurrence_general(rho);
  r.separable = r.min_ppt_eig >= -kSeparableTol;
  r.boundary = std::abs(r.min_ppt_eig) <= kSeparableTol;
  return r;
}

// ---------------------------------------------------------------------------
// pure states

using Column4 = std::array<complex, 4>;

inline void require_normalized(const Column4& col) {
  double n = 0.0;
  for (const auto& z : col) n += std::norm(z);
  if (!(std::abs(n - 1.0) <= kUnitaryTol)) throw not_normalized("column norm^2 = " + std::to_string(n));
}

/// The projector u u^dag built from the first column of the rotation
/// applied to diag(1, 0, 0, 0).
inline DensityMatrix4 pure_transform(const Column4& col) {
  require_normalized(col);
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = col[i] * std::conj(col[j]);
  return DensityMatrix4::from_matrix(m);
}

/// u11 u41 - u21 u31: the determinant of the 2x2 coefficient matrix of the
/// pure state; zero exactly for product states.
inline complex schmidt_determinant(const Column4& col) { return col[0] * col[3] - col[1] * col[2]; }

inline bool pure_separable(const Column4& col) {
  return eigvalsh(partial_transpose(pure_transform(col)))[3] >= -kSeparableTol;
}

/// The printed pure-state partial-transpose values: the +- pair
/// +-u11* u41* -+ u21* u31* sqrt(u11 u41 - u21 u31) and
/// 1/2 -+ 1/2 sqrt(1 - 4 |u11 u41 - u21 u31|^2). Used only for errata.
inline std::array<complex, 4> pure_ppt_eigs_as_printed(const Column4& u) {
  const complex det = schmidt_determinant(u);
  const complex t = std::conj(u[0]) * std::conj(u[3]);
  const complex s = std::conj(u[1]) * std::conj(u[2]) * std::sqrt(det);
  const double r = std::sqrt(std::max(0.0, 1.0 - 4.0 * std::norm(det)));
  return {t - s, -t + s, 0.5 - 0.5 * r, 0.5 + 0.5 * r};
}

/// Parameter families listed as separable for the pure-state rotation.
enum class PureSeparableFamily { AEqualsOne, DEqualsOne, AZeroDZero, AZeroFZero, FOneDZero };

inline constexpr std::array<PureSeparableFamily, 5> kPureSeparableFamilies = {
    PureSeparableFamily::AEqualsOne, PureSeparableFamily::DEqualsOne, PureSeparableFamily::AZeroDZero,
    PureSeparableFamily::AZeroFZero, PureSeparableFamily::FOneDZero};

inline const char* to_string(PureSeparableFamily f) {
  switch (f) {
    case PureSeparableFamily::AEqualsOne: return "a=1";
    case PureSeparableFamily::DEqualsOne: return "d=1";
    case PureSeparableFamily::AZeroDZero: return "a=0,d=0";
    case PureSeparableFamily::AZeroFZero: return "a=0,f=0";
    case PureSeparableFamily::FOneDZero: return "f=1,d=0";
  }
  return "?";
}

/// Pins the moduli that define the family; the rest of p is left untouched.
inline UnitaryParams pin_family(UnitaryParams p, PureSeparableFamily fam) {
  switch (fam) {
    case PureSeparableFamily::AEqualsOne: p.a = 1.0; break;
    case PureSeparableFamily::DEqualsOne: p.d = 1.0; break;
    case PureSeparableFamily::AZeroDZero: p.a = 0.0; p.d = 0.0; break;
    case PureSeparableFamily::AZeroFZero: p.a = 0.0; p.f = 0.0; break;
    case PureSeparableFamily::FOneDZero: p.f = 1.0; p.d = 0.0; break;
  }
  return p;
}

/// The printed expression d = a sqrt(1-f^2) e^{i(phi11+phi41)} / (f sqrt(1-a^2) e^{i(phi21+phi31)})
/// evaluated with a = 0 (as the list states); always returns 0.
inline complex listed_d_at_a_zero(const UnitaryParams& p) {
  const double a = 0.0;
  return a * std::sqrt(1.0 - p.f * p.f) * std::polar(1.0, p.phi.phi11 + p.phi.phi41) /
         (p.f * std::sqrt(1.0 - a * a) * std::polar(1.0, p.phi.phi21 + p.phi.phi31));
}

// ---------------------------------------------------------------------------
// structured-rotation inequalities

struct InequalitySide {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double imag_residual = 0.0;  // nonzero where the printed form is complex-valued
  bool holds = false;
};

struct InequalityReport {
  StructuredKind form;
  std::vector<InequalitySide> checks;  // checks[0] is the form's primary inequality
  bool printed_verdict = false;          // checks[0].holds
  bool oracle_separable = false;
  double oracle_min_ppt_eig = 0.0;
  bool agrees() const { return printed_verdict == oracle_separable; }
};

namespace detail {
inline double mod2(complex z) { return std::norm(z); }
}  // namespace detail

/// Evaluates the structured-rotation separability inequality for the form
/// exactly as written and pairs it with the oracle verdict on W rho_d W^dag.
/// Throws wrong_sparsity if w does not fit the form's pattern.
inline InequalityReport paper_inequality(StructuredKind form, const Unitary4& w, const Spectrum4& s) {
  using detail::mod2;
  const double off = off_pattern_mass(w.matrix(), form);
  if (off >= kXOffMassTol)
    throw wrong_sparsity(std::string("unitary does not have the ") + to_string(form) + " pattern", off);

  auto u = [&](std::size_t i, std::size_t j) { return w(i - 1, j - 1); };
  const double l1 = s[0], l2 = s[1], l3 = s[2], l4 = s[3];

  InequalityReport rep;
  rep.form = form;
  switch (form) {
    case StructuredKind::Cellular: {
      const complex t1 = l1 * l1 + l3 * l3 +
                         2.0 * l1 * l3 *
                             (-std::pow(2.0 * mod2(u(1, 1)) - 1.0, 2) + 4.0 * u(1, 1) * u(3, 3) * (1.0 - mod2(u(3, 3))));
      const complex t2 = l2 * l2 + l4 * l4 +
                         2.0 * l2 * l4 *
                             (-std::pow(2.0 * mod2(u(2, 2)) - 1.0, 2) + 4.0 * u(2, 2) * u(4, 4) * (1.0 - mod2(u(4, 4))));
      const complex lhs = std::sqrt(t1) + std::sqrt(t2);
      rep.checks.push_back({"cellular extra condition", lhs.real(), 1.0, std::abs(lhs.imag()), lhs.real() <= 1.0});
      break;
    }
    case StructuredKind::Block: {
      const double t1 = std::pow((2.0 * mod2(u(1, 1)) - 1.0) * (l1 - l2), 2) +
                        4.0 * (1.0 - mod2(u(1, 1))) * mod2(l1 * u(1, 1) + l2 * u(2, 2));
      const double t2 = std::pow((2.0 * mod2(u(3, 3)) - 1.0) * (l3 - l4), 2) +
                        4.0 * (1.0 - mod2(u(3, 3))) * mod2(l3 * u(3, 3) + l4 * u(4, 4));
      const double lhs = std::sqrt(t1) + std::sqrt(t2);
      rep.checks.push_back({"block condition", lhs, 1.0, 0.0, lhs <= 1.0});
      break;
    }
    case StructuredKind::XType: {
      const complex a23 = l2 * u(2, 2) + l3 * u(3, 3);
      const complex a14 = l1 * u(1, 1) + l4 * u(4, 4);
      const complex t1 =
          std::pow((2.0 * mod2(u(1, 1)) - 1.0) * (l1 - l4), 2) + 4.0 * (1.0 - mod2(u(2, 2))) * a23 * a23;
      const complex t2 =
          std::pow((2.0 * mod2(u(2, 2)) - 1.0) * (l2 - l3), 2) + 4.0 * (1.0 - mod2(u(1, 1))) * a14 * a14;
      const complex lhs = std::sqrt(t1) + std::sqrt(t2);
      rep.checks.push_back({"X-type sum condition", lhs.real(), 1.0, std::abs(lhs.imag()), lhs.real() <= 1.0});

      // Partial-transpose positivity written through the rotation entries.
      const double r1 = std::sqrt(std::pow((l1 - l4) * (2.0 * mod2(u(1, 1)) - 1.0), 2) +
                                  4.0 * mod2(l2 * u(2, 2) * std::conj(u(3, 2)) + l3 * u(2, 3) * std::conj(u(3, 3)))) /
                        2.0;
      const double r2 = std::sqrt(std::pow((l2 - l3) * (2.0 * mod2(u(2, 2)) - 1.0), 2) +
                                  4.0 * mod2(l1 * u(1, 1) * std::conj(u(4, 1)) + l4 * u(1, 4) * std::conj(u(4, 4)))) /
                        2.0;
      rep.checks.push_back({"X-type PPT outer", r1, (l1 + l4) / 2.0, 0.0, (l1 + l4) / 2.0 >= r1});
      rep.checks.push_back({"X-type PPT inner", r2, (l2 + l3) / 2.0, 0.0, (l2 + l3) / 2.0 >= r2});
      break;
    }
  }
  rep.printed_verdict = rep.checks.front().holds;
  rep.oracle_min_ppt_eig = min_ppt_eigenvalue(conjugate(from_spectrum(s), w));
  rep.oracle_separable = rep.oracle_min_ppt_eig >= -kSeparableTol;
  return rep;
}

}  // namespace qsep
