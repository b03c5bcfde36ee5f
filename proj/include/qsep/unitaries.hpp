// 4x4 unitaries: validation, the first-column / full parametrization, the
// one-angle 1-4 rotation and the structured (cellular, block, X) families.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"

namespace qsep {

inline constexpr double kUnitaryTol = 1e-9;

/// max over entries of |U U^dag - I| and |U^dag U - I|.
inline double unitarity_violation(const ComplexMatrix4& m) {
  if (!is_finite(m)) return std::numeric_limits<double>::infinity();
  const ComplexMatrix4 id = ComplexMatrix4::identity();
  return std::max(max_abs_diff(m * adjoint(m), id), max_abs_diff(adjoint(m) * m, id));
}

inline double unitarity_violation(const ComplexMatrix2& m) {
  if (!is_finite(m)) return std::numeric_limits<double>::infinity();
  const ComplexMatrix2 id = ComplexMatrix2::identity();
  return std::max(max_abs_diff(m * adjoint(m), id), max_abs_diff(adjoint(m) * m, id));
}

/// One scalar unitarity condition on the entries u_ij, written out as a sum:
/// unit norm of a row or column, or orthogonality of two rows or columns.
struct UnitarityCondition {
  std::string label;  // e.g. "col 1 norm", "row 2.row 4"
  double residual;    // |sum - target|
};

/// The row/column conditions spelled out entry by entry (4+4 norms and
/// 6+6 orthogonality relations).
inline std::vector<UnitarityCondition> unitarity_conditions(const ComplexMatrix4& u) {
  std::vector<UnitarityCondition> out;
  out.reserve(20);
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += std::norm(u(i, j));
    out.push_back({"col " + std::to_string(j + 1) + " norm", std::abs(s - 1.0)});
  }
  for (std::size_t i = 0; i < 4; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) s += std::norm(u(i, j));
    out.push_back({"row " + std::to_string(i + 1) + " norm", std::abs(s - 1.0)});
  }
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = j + 1; k < 4; ++k) {
      complex s{};
      for (std::size_t i = 0; i < 4; ++i) s += std::conj(u(i, j)) * u(i, k);
      out.push_back({"col " + std::to_string(j + 1) + ".col " + std::to_string(k + 1), std::abs(s)});
    }
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = j + 1; k < 4; ++k) {
      complex s{};
      for (std::size_t i = 0; i < 4; ++i) s += std::conj(u(j, i)) * u(k, i);
      out.push_back({"row " + std::to_string(j + 1) + ".row " + std::to_string(k + 1), std::abs(s)});
    }
  return out;
}

/// A 4x4 matrix known to be unitary within kUnitaryTol.
class Unitary4 {
 public:
  /// Throws not_unitary carrying the violation magnitude.
  static Unitary4 validate(const ComplexMatrix4& m) {
    const double v = unitarity_violation(m);
    if (!(v <= kUnitaryTol)) throw not_unitary(v);
    return Unitary4(m, v);
  }

  static Unitary4 identity() { return Unitary4(ComplexMatrix4::identity(), 0.0); }

  const ComplexMatrix4& matrix() const noexcept { return m_; }
  complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double violation() const noexcept { return violation_; }

  friend Unitary4 operator*(const Unitary4& a, const Unitary4& b) { return validate(a.m_ * b.m_); }
  Unitary4 adjoint() const { return Unitary4(qsep::adjoint(m_), violation_); }

 private:
  Unitary4(const ComplexMatrix4& m, double v) : m_(m), violation_(v) {}
  ComplexMatrix4 m_;
  double violation_;
};

inline ComplexMatrix2 validate_unitary2(const ComplexMatrix2& m) {
  const double v = unitarity_violation(m);
  if (!(v <= kUnitaryTol)) throw not_unitary(v);
  return m;
}

/// Phases of the full parametrization. phi42, phi43, phi44 never occur.
struct Phases {
  double phi11 = 0, phi12 = 0, phi13 = 0, phi14 = 0;
  double phi21 = 0, phi22 = 0, phi23 = 0;
  double phi31 = 0, phi32 = 0;
  double phi41 = 0;
};

/// Moduli a, b, c, d, f, h in [0, 1] and the ten phases (radians).
struct UnitaryParams {
  double a = 0, b = 0, c = 0, d = 0, f = 0, h = 0;
  Phases phi;

  /// (f^2 + d^2 - f^2 d^2)^{-1/2}; infinite at f = d = 0.
  double alpha() const { return 1.0 / std::sqrt(f * f + d * d - f * f * d * d); }
  /// (b^2 + c^2 - b^2 c^2)^{-1/2}; infinite at b = c = 0.
  double beta() const { return 1.0 / std::sqrt(b * b + c * c - b * b * c * c); }
};

inline void check_moduli(const UnitaryParams& p) {
  for (double x : {p.a, p.b, p.c, p.d, p.f, p.h})
    if (!(x >= 0.0 && x <= 1.0)) throw parameter_out_of_range("parametrization moduli must lie in [0, 1]");
}

namespace detail {
inline complex expi(double x) { return std::polar(1.0, x); }
inline double sq1m(double x) { return std::sqrt(1.0 - x * x); }  // sqrt(1 - x^2)
}  // namespace detail

/// First column of the rotation in terms of (a, d, f) and phi_{i1}.
inline std::array<complex, 4> first_column(const UnitaryParams& p) {
  using detail::expi;
  for (double x : {p.a, p.d, p.f})
    if (!(x >= 0.0 && x <= 1.0)) throw parameter_out_of_range("moduli a, d, f must lie in [0, 1]");
  const double ra = 1.0 - p.a * p.a;
  const double rd = 1.0 - p.d * p.d;
  const double rf = 1.0 - p.f * p.f;
  return {p.a * expi(p.phi.phi11), p.d * std::sqrt(ra) * expi(p.phi.phi21), p.f * std::sqrt(ra * rd) * expi(p.phi.phi31),
          std::sqrt(ra * rd * rf) * expi(p.phi.phi41)};
}

/// Result of building the full parametrized matrix: the construction always
/// succeeds; unitarity is a reported verdict.
struct ParamsBuild {
  ComplexMatrix4 matrix;
  double violation = 0.0;
  bool unitary = false;
};

/// Builds the sixteen entries from the full parametrization exactly as
/// written (including the phase and square-root forms that make the result
/// non-unitary for most parameters). Throws degenerate_params when alpha or
/// beta is undefined.
inline ParamsBuild build_from_params(const UnitaryParams& p) {
  using detail::expi;
  using detail::sq1m;
  check_moduli(p);
  if (p.f == 0.0 && p.d == 0.0) throw degenerate_params("alpha undefined: f = d = 0");
  if (p.b == 0.0 && p.c == 0.0) throw degenerate_params("beta undefined: b = c = 0");

  const double a = p.a, b = p.b, c = p.c, d = p.d, f = p.f, h = p.h;
  const Phases& q = p.phi;
  const double al = p.alpha();
  const double be = p.beta();
  const double na = 1 - a * a, nb = 1 - b * b, nc = 1 - c * c, nd = 1 - d * d, nf = 1 - f * f, nh = 1 - h * h;

  ComplexMatrix4 u;
  const auto col = first_column(p);
  for (std::size_t i = 0; i < 4; ++i) u(i, 0) = col[i];

  u(0, 1) = b * std::sqrt(na) * expi(q.phi22);
  u(0, 2) = c * std::sqrt(na * nb) * expi(q.phi13);
  u(0, 3) = std::sqrt(na * nb * nc) * expi(q.phi14);

  const complex e3222 = expi(q.phi32 - q.phi22);
  const complex e2322 = expi(q.phi23 - q.phi22);

  u(1, 1) = -a * b * d * expi(q.phi12 + q.phi21 - q.phi11) +
            al * be * std::sqrt(nb * nd) *
                (std::sqrt(c * f * h * expi(q.phi22) + c * d * nf * nh) * expi(q.phi32) +
                 b * sq1m(c) * expi(q.phi23) * (f * sq1m(h) - d * h * sq1m(f) * e3222));

  u(1, 2) = -a * c * d * std::sqrt(nb) * expi(q.phi21 + q.phi13 - q.phi11) -
            al * be * std::sqrt(nd) * expi(q.phi13 - q.phi12) *
                (b * (f * h * expi(q.phi22) + d * std::sqrt(nf * nh) * expi(q.phi32)) -
                 c * nb * sq1m(c) * expi(q.phi23) * (f * sq1m(h) - d * h * sq1m(f) * e3222));

  u(1, 3) = -a * d * std::sqrt(nb * nc) * expi(q.phi21 + q.phi41 - q.phi11) -
            (al / be) * std::sqrt(nd) * expi(q.phi14 + q.phi23 - q.phi12) * (f * sq1m(h) - d * h * nf * e3222);

  u(2, 1) = -a * b * f * std::sqrt(nd) * expi(q.phi12 + q.phi31 - q.phi11) +
            al * be * std::sqrt(nb) * expi(-q.phi21) *
                (c * (-d * h * expi(q.phi22 + q.phi31) + f * nd * std::sqrt(nf * nh) * expi(q.phi31 + q.phi32)) -
                 b * sq1m(c) * expi(q.phi23 + q.phi31) * (d * sq1m(h) + h * f * nd * sq1m(f) * e3222));

  u(2, 2) = -a * c * f * std::sqrt(nb * nd) * expi(q.phi13 + q.phi31 - q.phi11) -
            al * be * expi(q.phi13 - q.phi12 - q.phi21) *
                (-b * d * h * expi(q.phi31 + q.phi22) + b * f * nd * std::sqrt(nf * nh) * expi(q.phi31 + q.phi32) +
                 c * std::sqrt(nb * nc) * expi(q.phi23 + q.phi31) * (d * sq1m(h) + h * f * nd * sq1m(f) * e3222));

  u(2, 3) = -a * f * std::sqrt(nb * nc * nd) * expi(q.phi31 + q.phi14 - q.phi11) +
            (be / al) * expi(q.phi14 + q.phi31 + q.phi23 - q.phi12 - q.phi21) *
                (d * sq1m(h) + h * f * nd * sq1m(f) * e3222);

  u(3, 1) = -a * b * std::sqrt(nd * nf) * expi(q.phi12 + q.phi41 - q.phi11) -
            (al / be) * std::sqrt(nb) * expi(q.phi32 + q.phi41 - q.phi21) * (c * sq1m(h) - b * h * sq1m(c) * e2322);

  u(3, 2) = -a * c * std::sqrt(nb * nd * nf) * expi(q.phi13 + q.phi41 - q.phi11) +
            (al / be) * expi(q.phi32 + q.phi13 + q.phi41 - q.phi12 - q.phi21) *
                (b * sq1m(h) + c * h * nb * sq1m(c) * e2322);

  u(3, 3) = -a * std::sqrt(nb * nc * nd * nf) * expi(q.phi14 + q.phi41 - q.phi11) -
            al * be * h * expi(q.phi14 + q.phi41 + q.phi23 + q.phi32 - q.phi12 - q.phi21 - q.phi22);

  ParamsBuild out;
  out.matrix = u;
  out.violation = unitarity_violation(u);
  out.unitary = out.violation <= kUnitaryTol;
  return out;
}

/// Validated version of build_from_params; throws not_unitary when the
/// formulas do not produce a unitary matrix at these parameters.
inline Unitary4 from_params(const UnitaryParams& p) { return Unitary4::validate(build_from_params(p).matrix); }

/// Identity except the (1,4) plane: [[cos, sin], [-sin, cos]].
inline Unitary4 rotation_1_4(double phi) {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  m(0, 0) = c;
  m(0, 3) = s;
  m(3, 0) = -s;
  m(3, 3) = c;
  return Unitary4::validate(m);
}

/// General SU(2) x U(1) element
///   e^{i gamma} [[e^{i alpha} cos t, e^{i beta} sin t], [-e^{-i beta} sin t, e^{-i alpha} cos t]].
inline ComplexMatrix2 unitary2(double theta, double alpha = 0.0, double beta = 0.0, double gamma = 0.0) {
  using detail::expi;
  const complex g = expi(gamma);
  ComplexMatrix2 m;
  m(0, 0) = g * expi(alpha) * std::cos(theta);
  m(0, 1) = g * expi(beta) * std::sin(theta);
  m(1, 0) = -g * expi(-beta) * std::sin(theta);
  m(1, 1) = g * expi(-alpha) * std::cos(theta);
  return m;
}

enum class StructuredKind { Cellular, Block, XType };

inline const char* to_string(StructuredKind k) {
  switch (k) {
    case StructuredKind::Cellular: return "cellular";
    case StructuredKind::Block: return "block";
    case StructuredKind::XType: return "xtype";
  }
  return "?";
}

/// Index pairs (0-based) that each 2x2 block occupies.
inline std::array<std::array<std::size_t, 2>, 2> structured_indices(StructuredKind k) {
  switch (k) {
    case StructuredKind::Cellular: return {{{0, 2}, {1, 3}}};
    case StructuredKind::Block: return {{{0, 1}, {2, 3}}};
    case StructuredKind::XType: return {{{0, 3}, {1, 2}}};
  }
  return {};
}

/// true where the structured family may hold a nonzero entry.
inline std::array<bool, 16> sparsity_pattern(StructuredKind k) {
  std::array<bool, 16> mask{};
  for (const auto& idx : structured_indices(k))
    for (std::size_t i : idx)
      for (std::size_t j : idx) mask[i * 4 + j] = true;
  return mask;
}

inline double off_pattern_mass(const ComplexMatrix4& m, StructuredKind k) {
  const auto mask = sparsity_pattern(k);
  double worst = 0.0;
  for (std::size_t e = 0; e < 16; ++e)
    if (!mask[e]) worst = std::max(worst, std::abs(m.data[e]));
  return worst;
}

/// Embeds two 2x2 unitaries into the sparsity pattern of the chosen family.
inline Unitary4 structured(StructuredKind kind, const ComplexMatrix2& first, const ComplexMatrix2& second) {
  validate_unitary2(first);
  validate_unitary2(second);
  const auto idx = structured_indices(kind);
  ComplexMatrix4 m;
  const ComplexMatrix2* blocks[2] = {&first, &second};
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(idx[b][r], idx[b][c]) = (*blocks[b])(r, c);
  return Unitary4::validate(m);
}

/// Largest residual of the modulus identities that unitarity forces on each
/// structured family, e.g. |u13|^2 = |u31|^2 and |u11|^2 = |u33|^2 for the
/// cellular pattern.
inline double modulus_constraint_residual(StructuredKind kind, const ComplexMatrix4& u) {
  auto n = [&](std::size_t i, std::size_t j) { return std::norm(u(i - 1, j - 1)); };
  std::array<double, 4> r{};
  switch (kind) {
    case StructuredKind::Cellular:
      r = {n(1, 3) - n(3, 1), n(2, 4) - n(4, 2), n(2, 2) - n(4, 4), n(1, 1) - n(3, 3)};
      break;
    case StructuredKind::Block:
      r = {n(2, 1) - n(1, 2), n(3, 4) - n(4, 3), n(1, 1) - n(2, 2), n(3, 3) - n(4, 4)};
      break;
    case StructuredKind::XType:
      r = {n(2, 3) - n(3, 2), n(1, 4) - n(4, 1), n(1, 1) - n(4, 4), n(2, 2) - n(3, 3)};
      break;
  }
  double worst = 0.0;
  for (double x : r) worst = std::max(worst, std::abs(x));
  return worst;
}

/// A unitary whose first column is `col` (unit norm), completed with a
/// Householder reflector so the remaining columns are deterministic.
inline Unitary4 complete_column(const std::array<complex, 4>& col) {
  double norm2 = 0.0;
  for (const auto& z : col) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kUnitaryTol) throw not_normalized("column is not unit norm");

  const complex ph = std::abs(col[0]) > 0.0 ? col[0] / std::abs(col[0]) : complex{1.0};
  // H maps x = ph e1 onto col; then W = H diag(ph, 1, 1, 1) sends e1 to col.
  std::array<complex, 4> w{ph - col[0], -col[1], -col[2], -col[3]};
  double wn = 0.0;
  for (const auto& z : w) wn += std::norm(z);
  ComplexMatrix4 hh = ComplexMatrix4::identity();
  if (wn > 1e-30)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) hh(i, j) -= 2.0 * w[i] * std::conj(w[j]) / wn;
  ComplexMatrix4 d = ComplexMatrix4::identity();
  d(0, 0) = ph;
  ComplexMatrix4 m = hh * d;
  for (std::size_t i = 0; i < 4; ++i) m(i, 0) = col[i];  // exact first column
  return Unitary4::validate(m);
}

}  // namespace qsep
