// Entry-by-entry expressions for rotated diagonal states, used as an
// independent route against conjugate() and partial_transpose().

#pragma once

#include <complex>

#include "qsep/linalg.hpp"
#include "qsep/states.hpp"
#include "qsep/unitaries.hpp"

namespace qsep::elements {

namespace detail {
// sum_k l_k u_{ik} conj(u_{jk}), 1-based, optionally dropping the conjugate on the l4 term.
inline complex term(const ComplexMatrix4& u, const Spectrum4& s, int i, int j, bool conj_last = true) {
  complex acc{};
  for (int k = 1; k <= 4; ++k) {
    const complex rhs = (k == 4 && !conj_last) ? u(j - 1, k - 1) : std::conj(u(j - 1, k - 1));
    acc += s[k - 1] * u(i - 1, k - 1) * rhs;
  }
  return acc;
}

inline ComplexMatrix4 hermitian_fill(ComplexMatrix4 m) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m;
}
}  // namespace detail

/// Partial transpose of W diag(l) W^dag from the generic element list:
/// rho12 = sum l_k u2k u1k*, rho13 = sum l_k u1k u3k*, rho14 = sum l_k u2k u3k*,
/// rho23 = sum l_k u1k u4k*, rho24 = sum l_k u2k u4k*, rho34 = sum l_k u4k u3k*,
/// rho_ii = sum l_k |u_ik|^2. `conj_last = false` reproduces the printed
/// list, whose l4 terms carry no conjugate.
inline ComplexMatrix4 generic_ppt(const Unitary4& w, const Spectrum4& s, bool conj_last = true) {
  using detail::term;
  const ComplexMatrix4& u = w.matrix();
  ComplexMatrix4 m;
  m(0, 1) = term(u, s, 2, 1, conj_last);
  m(0, 2) = term(u, s, 1, 3, conj_last);
  m(0, 3) = term(u, s, 2, 3, conj_last);
  m(1, 2) = term(u, s, 1, 4, conj_last);
  m(1, 3) = term(u, s, 2, 4, conj_last);
  m(2, 3) = term(u, s, 4, 3, conj_last);
  for (int i = 1; i <= 4; ++i) m(i - 1, i - 1) = term(u, s, i, i).real();
  return detail::hermitian_fill(m);
}

/// W rho_d W^dag for a cellular W: nonzero only at (1,3), (2,4) off the diagonal.
inline ComplexMatrix4 cellular(const Unitary4& w, const Spectrum4& s) {
  auto u = [&](int i, int j) { return w(i - 1, j - 1); };
  const double l1 = s[0], l2 = s[1], l3 = s[2], l4 = s[3];
  ComplexMatrix4 m;
  m(0, 0) = l1 * std::norm(u(1, 1)) + l3 * std::norm(u(1, 3));
  m(0, 2) = l1 * u(1, 1) * std::conj(u(3, 1)) + l3 * u(1, 3) * std::conj(u(3, 3));
  m(1, 1) = l4 * std::norm(u(2, 4)) + l2 * std::norm(u(2, 2));
  m(1, 3) = l2 * u(2, 2) * std::conj(u(4, 2)) + l4 * u(2, 4) * std::conj(u(4, 4));
  m(2, 0) = l1 * std::conj(u(1, 1)) * u(3, 1) + l3 * std::conj(u(1, 3)) * u(3, 3);
  m(2, 2) = l3 * std::norm(u(3, 3)) + l1 * std::norm(u(3, 1));
  m(3, 1) = l2 * std::conj(u(2, 2)) * u(4, 2) + l4 * std::conj(u(2, 4)) * u(4, 4);
  m(3, 3) = l2 * std::norm(u(4, 2)) + l4 * std::norm(u(4, 4));
  return m;
}

/// W rho_d W^dag for a block-diagonal W.
inline ComplexMatrix4 block(const Unitary4& w, const Spectrum4& s) {
  auto u = [&](int i, int j) { return w(i - 1, j - 1); };
  const double l1 = s[0], l2 = s[1], l3 = s[2], l4 = s[3];
  ComplexMatrix4 m;
  m(0, 0) = l1 * std::norm(u(1, 1)) + l2 * std::norm(u(1, 2));
  m(0, 1) = l1 * u(1, 1) * std::conj(u(2, 1)) + l2 * u(1, 2) * std::conj(u(2, 2));
  m(1, 0) = l1 * u(2, 1) * std::conj(u(1, 1)) + l2 * u(2, 2) * std::conj(u(1, 2));
  m(1, 1) = l1 * std::norm(u(2, 1)) + l2 * std::norm(u(2, 2));
  m(2, 2) = l3 * std::norm(u(3, 3)) + l4 * std::norm(u(3, 4));
  m(2, 3) = l3 * u(3, 3) * std::conj(u(4, 3)) + l4 * u(3, 4) * std::conj(u(4, 4));
  m(3, 2) = l4 * u(4, 4) * std::conj(u(3, 4)) + l3 * std::conj(u(3, 3)) * u(4, 3);
  m(3, 3) = l3 * std::norm(u(4, 3)) + l4 * std::norm(u(4, 4));
  return m;
}

/// W rho_d W^dag for an X-type W; the result is an X-state.
inline ComplexMatrix4 xtype(const Unitary4& w, const Spectrum4& s) {
  auto u = [&](int i, int j) { return w(i - 1, j - 1); };
  const double l1 = s[0], l2 = s[1], l3 = s[2], l4 = s[3];
  ComplexMatrix4 m;
  m(0, 0) = l1 * std::norm(u(1, 1)) + l4 * std::norm(u(1, 4));
  m(0, 3) = l1 * u(1, 1) * std::conj(u(4, 1)) + l4 * u(1, 4) * std::conj(u(4, 4));
  m(1, 1) = l3 * std::norm(u(2, 3)) + l2 * std::norm(u(2, 2));
  m(1, 2) = l2 * u(2, 2) * std::conj(u(3, 2)) + l3 * u(2, 3) * std::conj(u(3, 3));
  m(2, 1) = l2 * std::conj(u(2, 2)) * u(3, 2) + l3 * std::conj(u(2, 3)) * u(3, 3);
  m(2, 2) = l3 * std::norm(u(3, 3)) + l2 * std::norm(u(3, 2));
  m(3, 0) = l1 * std::conj(u(1, 1)) * u(4, 1) + l4 * std::conj(u(1, 4)) * u(4, 4);
  m(3, 3) = l1 * std::norm(u(4, 1)) + l4 * std::norm(u(4, 4));
  return m;
}

}  // namespace qsep::elements
