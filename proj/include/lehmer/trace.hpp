#pragma once

/**
 * @file trace.hpp
 * @brief Trace transform of self-reciprocal polynomials and exact Sturm counting.
 *
 * A self-reciprocal P of degree 2s can be written P(x) = x^s q(x + 1/x) with
 * deg q = s. A root u of P lies on the unit circle iff t = u + 1/u is real and
 * in [-2, 2], so circle roots become real roots of q in an interval, which a
 * Sturm chain counts exactly.
 */

#include <optional>
#include <stdexcept>
#include <vector>

#include "lehmer/polynomial.hpp"

namespace lehmer {

struct TracePolynomial {
  IntPolynomial q;
  int half_degree = 0;
};

namespace detail {

// Trace transform without the monic requirement; p must satisfy P* = P and
// have even degree 2s. Uses x^k + x^-k = V_k(t), V_0 = 2, V_1 = t,
// V_k = t V_{k-1} - V_{k-2}.
inline TracePolynomial trace_transform(const IntPolynomial& p) {
  const int s = p.degree() / 2;
  const IntPolynomial t = IntPolynomial::monomial(1, 1);
  IntPolynomial prev = IntPolynomial::constant(2);
  IntPolynomial cur = t;
  IntPolynomial q = IntPolynomial::constant(p[static_cast<std::size_t>(s)]);
  for (int k = 1; k <= s; ++k) {
    q = q + p[static_cast<std::size_t>(s + k)] * cur;
    IntPolynomial next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {std::move(q), s};
}

}  // namespace detail

/// q with p(x) = x^s q(x + 1/x); p monic, P* = P, degree 2s.
inline TracePolynomial to_trace_polynomial(const IntPolynomial& p) {
  if (p.is_zero() || !p.is_monic()) throw DomainError("trace transform requires a monic polynomial");
  const int sign = reciprocal_sign(p);
  if (sign == -1)
    throw DomainError("anti-reciprocal polynomial (P* = -P): factor out (x - 1) before the trace transform");
  if (sign == 0) throw DomainError("trace transform requires a self-reciprocal polynomial");
  if (p.degree() % 2 != 0)
    throw DomainError("odd-degree reciprocal polynomial: factor out (x + 1) before the trace transform");
  return detail::trace_transform(p);
}

/// x^s q(x + 1/x) = sum_j q_j x^(s-j) (x^2 + 1)^j.
inline IntPolynomial expand_trace_polynomial(const TracePolynomial& tp) {
  const IntPolynomial x2p1{1, 0, 1};
  IntPolynomial power = IntPolynomial::constant(1);
  IntPolynomial out;
  for (int j = 0; j <= tp.q.degree(); ++j) {
    out = out + IntPolynomial::monomial(tp.q[static_cast<std::size_t>(j)], static_cast<std::size_t>(tp.half_degree - j)) * power;
    power = power * x2p1;
  }
  return out;
}

/// Sturm chain of the squarefree part of q, built over Z with sign-corrected
/// primitive pseudo-remainders.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& q) {
    if (q.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
    chain_.push_back(squarefree_part(q));
    if (chain_[0].degree() < 1) return;
    chain_.push_back(derivative(chain_[0]));
    while (chain_.back().degree() > 0) {
      const auto& a = chain_[chain_.size() - 2];
      const auto& b = chain_.back();
      auto [r, sign] = pseudo_remainder(a, b);
      if (r.is_zero()) break;
      // remainder(a, b) is a positive multiple of sign * r
      Integer g = content(r);
      IntPolynomial next = Integer(-sign) * r;
      std::vector<Integer> v(next.coefficients().begin(), next.coefficients().end());
      for (auto& c : v) c /= g;
      chain_.push_back(IntPolynomial(std::move(v)));
    }
  }

  std::span<const IntPolynomial> chain() const noexcept { return chain_; }

  /// Sign variations at x. side = +1 / -1 evaluates the one-sided limit at
  /// x+ / x-, which is well defined even when x is a root of q.
  int variations(const Rational& x, int side) const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (std::size_t k = 0; k < chain_.size(); ++k) {
      int s = sign_at(chain_[k], x);
      if (k == 0 && s == 0 && chain_.size() > 1) s = side * sign_at(chain_[1], x);
      signs.push_back(s);
    }
    return count_variations(signs);
  }

  /// Sign variations at +infinity (direction = +1) or -infinity (-1).
  int variations_at_infinity(int direction) const {
    std::vector<int> signs;
    for (const auto& p : chain_) {
      int s = p.leading().sign();
      if (direction < 0 && p.degree() % 2 == 1) s = -s;
      signs.push_back(s);
    }
    return count_variations(signs);
  }

  /// Distinct real roots in the open interval (lo, hi); nullopt means infinite.
  int count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
    int vlo = lo ? variations(*lo, +1) : variations_at_infinity(-1);
    int vhi = hi ? variations(*hi, -1) : variations_at_infinity(+1);
    return vlo - vhi;
  }

 private:
  static int count_variations(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  std::vector<IntPolynomial> chain_;
};

/// Number of distinct real roots of q in the open interval (lo, hi).
inline int sturm_count(const IntPolynomial& q, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw DomainError("Sturm count requires lo < hi");
  return SturmSequence(q).count(lo, hi);
}

inline int real_root_count(const IntPolynomial& q) { return SturmSequence(q).count(std::nullopt, std::nullopt); }

/// Exact number of roots of p on the unit circle, with multiplicity.
/// Circle roots u satisfy 1/u = conj(u), so they are roots of gcd(p, p*);
/// after removing x -+ 1 the squarefree pieces of that gcd are reciprocal of
/// even degree and their circle roots are counted on the trace side.
inline int unit_circle_root_count(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("unit-circle count of the zero polynomial");
  IntPolynomial r = split_x_power(p).rest;
  if (r.degree() < 1) return 0;
  IntPolynomial g = primitive_part(gcd(r, reciprocal_transform(r)));
  int count = 0;
  for (const IntPolynomial& linear : {IntPolynomial{-1, 1}, IntPolynomial{1, 1}}) {
    while (g.degree() > 0) {
      auto [quot, rem] = divide_by_unit_lead(g, linear);
      if (!rem.is_zero()) break;
      g = std::move(quot);
      ++count;
    }
  }
  for (const auto& [h, mult] : squarefree_decomposition(g)) {
    if (reciprocal_sign(h) != 1 || h.degree() % 2 != 0)
      throw std::logic_error("reciprocal factor expected in unit-circle count");
    TracePolynomial tp = detail::trace_transform(h);
    count += 2 * mult * SturmSequence(tp.q).count(Rational(-2), Rational(2));
  }
  return count;
}

}  // namespace lehmer
