// Werner-state generation from a diagonal state and the rotated-Werner family.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"
#include "qsep/states.hpp"
#include "qsep/unitaries.hpp"

namespace qsep {

enum class Branch { Plus, Minus };

inline const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

inline void require_werner_range(double p) {
  if (!(p >= -1.0 / 3.0 && p <= 1.0)) throw parameter_out_of_range("Werner parameter p must lie in [-1/3, 1]");
}

/// The literal X-type generator with u41 = -u11, u14 = u44 and zeros elsewhere,
/// together with its measured unitarity violation.
struct PaperWernerGenerator {
  Branch branch;
  double p;
  std::array<double, 4> spectrum;  // l1 = l4 = (p + 1 +- sqrt(2) p)/4, l2 = l3 = (1 - p)/4
  ComplexMatrix4 matrix;
  double violation;  // +inf when entries are non-finite (p = 1)
  bool unitary;
};

/// Never throws; the +- branch applies to every +- in the construction.
inline PaperWernerGenerator werner_generator_paper(double p, Branch branch) {
  const double sg = branch == Branch::Plus ? 1.0 : -1.0;
  const double l14 = (p + 1.0 + sg * std::numbers::sqrt2 * p) / 4.0;
  const double l23 = (1.0 - p) / 4.0;

  const double u11 = (p + sg * std::sqrt(p * p + 8.0 * l14 * (p + 1.0))) / (2.0 * (p + 1.0));
  const double u22 = sg * 2.0 * std::sqrt(l23) / std::sqrt(1.0 - p);
  const double u33 = sg * 2.0 * std::sqrt(l23) / std::sqrt(1.0 - p);
  const double u44 = (-p + sg * std::sqrt(p * p + 8.0 * l14 * (p + 1.0))) / (2.0 * (p + 1.0));

  ComplexMatrix4 m;
  m(0, 0) = u11;
  m(1, 1) = u22;
  m(2, 2) = u33;
  m(3, 3) = u44;
  m(3, 0) = -u11;
  m(0, 3) = u44;

  PaperWernerGenerator g{branch, p, {l14, l23, l23, l14}, m, unitarity_violation(m), false};
  g.unitary = g.violation <= kUnitaryTol;
  return g;
}

/// A rotation and spectrum whose conjugation gives werner(p) exactly:
/// spectrum ((1+3p)/4, (1-p)/4, (1-p)/4, (1-p)/4), rotation by -pi/4 in the
/// (1,4) plane (corner (l1 - l4)/2 = p/2).
inline std::pair<Unitary4, Spectrum4> werner_generator_corrected(double p) {
  require_werner_range(p);
  const double big = (1.0 + 3.0 * p) / 4.0;
  const double small = (1.0 - p) / 4.0;
  return {rotation_1_4(-std::numbers::pi / 4.0), Spectrum4(big, small, small, small)};
}

/// Closed-form smallest partial-transpose eigenvalue of the Werner state
/// rotated by rotation_1_4(phi):
/// min{(1-p)/4 - (|p|/2)|cos 2phi|, (1+p)/4 - (|p|/2)|sin 2phi|}.
inline double rotated_werner_min_ppt(double p, double phi) {
  const double h = 0.5 * std::abs(p);
  return std::min((1.0 - p) / 4.0 - h * std::abs(std::cos(2.0 * phi)),
                  (1.0 + p) / 4.0 - h * std::abs(std::sin(2.0 * phi)));
}

/// Analytic separable window in [0, pi/2] for the rotated Werner state:
/// |cos 2phi| <= (1-p)/(2p). Empty optional when separable for every phi.
struct AngleWindow {
  double lower;
  double upper;
};

inline std::optional<AngleWindow> rotated_werner_window(double p) {
  require_werner_range(p);
  if (p <= 1.0 / 3.0) return std::nullopt;
  const double x = (1.0 - p) / (2.0 * p);
  return AngleWindow{0.5 * std::acos(x), 0.5 * (std::numbers::pi - std::acos(x))};
}

/// The window pi/2 - acos((p-1)/p)/2 < phi < acos((p-1)/p)/2 as printed;
/// only defined for p >= 1/2.
inline std::optional<AngleWindow> printed_rotated_werner_window(double p) {
  const double x = (p - 1.0) / p;
  if (!(x >= -1.0 && x <= 1.0)) return std::nullopt;
  const double half = 0.5 * std::acos(x);
  return AngleWindow{std::numbers::pi / 2.0 - half, half};
}

/// The printed partial-transpose matrix of the rotated Werner state:
/// (1/2) [[p+1+p cos2phi, 0, 0, 0], [0, 1-p, p cos2phi, 0],
///        [0, p cos2phi, 1-p, 0], [0, 0, 0, p+1-p cos2phi]].
inline ComplexMatrix4 printed_rotated_werner_ppt(double p, double phi) {
  const double c = std::cos(2.0 * phi);
  ComplexMatrix4 m;
  m(0, 0) = 0.5 * (p + 1.0 + p * c);
  m(1, 1) = 0.5 * (1.0 - p);
  m(1, 2) = 0.5 * p * c;
  m(2, 1) = 0.5 * p * c;
  m(2, 2) = 0.5 * (1.0 - p);
  m(3, 3) = 0.5 * (p + 1.0 - p * c);
  return m;
}

/// The printed eigenvalue pairs (1 - p +- p cos2phi)/2 and (1 + p +- p sin2phi)/2.
inline std::array<double, 4> printed_rotated_werner_eigs(double p, double phi) {
  const double c = std::cos(2.0 * phi);
  const double s = std::sin(2.0 * phi);
  return {0.5 * (1.0 - p + p * c), 0.5 * (1.0 - p - p * c), 0.5 * (1.0 + p + p * s), 0.5 * (1.0 + p - p * s)};
}

}  // namespace qsep
