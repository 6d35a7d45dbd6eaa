#pragma once

/**
 * @file geodesic.hpp
 * @brief Translation length of a hyperbolic element from its trace data.
 *
 * A hyperbolic element has trace t = u + 1/u with |u| > 1. With P a polynomial
 * satisfied by u, the displacement is 2 log M(P) for PSL(2, R) and log M(P)
 * for PSL(2, C) (curvature -1). The polynomial of u is obtained from the
 * minimal polynomial q of the trace as res_y(q(y), x^2 - y x + 1), which has
 * degree 2 deg(q) and is self-reciprocal. That lift may be reducible; M is
 * multiplicative so the full lift is used as is.
 */

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/polynomial.hpp"

namespace lehmer {

struct DisplacementResult {
  IntPolynomial u_polynomial;
  std::optional<IntPolynomial> trace_polynomial;
  MeasureResult measure;
  double length_dim2 = 0.0;
  double length_dim3 = 0.0;
};

namespace detail {

/// Fraction-free (Bareiss) determinant over Z[x].
inline IntPolynomial bareiss_determinant(std::vector<std::vector<IntPolynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return IntPolynomial::constant(1);
  IntPolynomial prev = IntPolynomial::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = IntPolynomial{};
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

inline std::string trace_kind(const IntPolynomial& q) {
  if (sign_at(q, Rational(2)) == 0 || sign_at(q, Rational(-2)) == 0) return "parabolic";
  return "elliptic";
}

}  // namespace detail

/// res_y(q(y), x^2 - y x + 1) for monic q: the monic polynomial of degree
/// 2 deg(q) whose roots are all u with u + 1/u a root of q.
inline IntPolynomial u_minpoly_from_trace_minpoly(const IntPolynomial& q) {
  if (q.degree() < 1 || !q.is_monic()) throw DomainError("trace polynomial must be monic of degree >= 1");
  const std::size_t s = static_cast<std::size_t>(q.degree());
  const std::size_t n = s + 1;  // Sylvester size for degrees s and 1
  std::vector<std::vector<IntPolynomial>> syl(n, std::vector<IntPolynomial>(n));
  // row 0: q's coefficients, highest first
  for (std::size_t j = 0; j <= s; ++j) syl[0][j] = IntPolynomial::constant(q[s - j]);
  // rows 1..s: (-x) y + (x^2 + 1), shifted
  const IntPolynomial minus_x{0, -1};
  const IntPolynomial x2_plus_1{1, 0, 1};
  for (std::size_t i = 1; i < n; ++i) {
    syl[i][i - 1] = minus_x;
    syl[i][i] = x2_plus_1;
  }
  IntPolynomial res = detail::bareiss_determinant(std::move(syl));
  return res.leading() < 0 ? -res : res;
}

/// Lengths 2 log M(p) and log M(p); p must not be a cyclotomic product.
inline DisplacementResult displacement_from_u_polynomial(const IntPolynomial& p, double tol = kDefaultTolerance) {
  if (p.degree() < 1 || !p.is_monic()) throw DomainError("u-polynomial must be monic of degree >= 1");
  if (is_cyclotomic_product(p)) throw DomainError("element is not hyperbolic: measure is 1");
  DisplacementResult out;
  out.u_polynomial = p;
  out.measure = mahler_measure(p, tol);
  out.length_dim3 = std::log(out.measure.value);
  out.length_dim2 = 2.0 * out.length_dim3;
  return out;
}

inline DisplacementResult displacement_from_trace(const IntPolynomial& q, double tol = kDefaultTolerance) {
  IntPolynomial lifted = u_minpoly_from_trace_minpoly(q);
  if (is_cyclotomic_product(lifted))
    throw DomainError("element is not hyperbolic: trace polynomial " + to_display_string(q) + " is " +
                      detail::trace_kind(q) + " (lift " + to_display_string(lifted) + " has measure 1)");
  DisplacementResult out = displacement_from_u_polynomial(lifted, tol);
  out.trace_polynomial = q;
  return out;
}

}  // namespace lehmer
