#pragma once

/**
 * @file polynomial.hpp
 * @brief Exact univariate polynomials over the integers.
 *
 * Coefficients are stored in ascending order (index i holds the coefficient
 * of x^i) as arbitrary-precision integers. The zero polynomial is the single
 * coefficient 0 and has degree -1. Every operation here is exact.
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lehmer/errors.hpp"

namespace lehmer {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class IntPolynomial {
 public:
  IntPolynomial() : coeffs_{Integer{0}} {}

  explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
  }

  IntPolynomial(std::initializer_list<long long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long long c : coeffs) coeffs_.emplace_back(c);
    normalize();
  }

  static IntPolynomial constant(Integer c) { return IntPolynomial(std::vector<Integer>{std::move(c)}); }

  /// c * x^k
  static IntPolynomial monomial(Integer c, std::size_t k) {
    std::vector<Integer> v(k + 1);
    v[k] = std::move(c);
    return IntPolynomial(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0; }
  bool is_monic() const { return coeffs_.back() == 1; }

  const Integer& leading() const noexcept { return coeffs_.back(); }
  const Integer& constant_term() const noexcept { return coeffs_.front(); }

  const Integer& operator[](std::size_t i) const {
    static const Integer zero{0};
    return i < coeffs_.size() ? coeffs_[i] : zero;
  }

  std::span<const Integer> coefficients() const noexcept { return coeffs_; }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  IntPolynomial operator-() const {
    auto v = coeffs_;
    for (auto& c : v) c = -c;
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator*(const Integer& s, const IntPolynomial& p) {
    auto v = p.coeffs_;
    for (auto& c : v) c *= s;
    return IntPolynomial(std::move(v));
  }

 private:
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.emplace_back(0);
  }

  std::vector<Integer> coeffs_;
};

// ---------------------------------------------------------------------------
// Wire format: comma-separated integers, constant term first.

inline IntPolynomial parse(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  if (compact.empty()) throw ParseError("empty coefficient list");

  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t end = compact.find(',', start);
    std::string token = compact.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t digits = (!token.empty() && token[0] == '-') ? 1 : 0;
    bool ok = token.size() > digits &&
              std::all_of(token.begin() + static_cast<std::ptrdiff_t>(digits), token.end(),
                          [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!ok)
      throw ParseError("malformed coefficient '" + token + "' at position " + std::to_string(coeffs.size()));
    coeffs.emplace_back(token);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

inline std::string to_wire(const IntPolynomial& p) {
  std::string out;
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) out.push_back(',');
    out += p.coefficients()[i].str();
  }
  return out;
}

/// Human-readable form, highest degree first: "x^2 - 3*x + 1".
inline std::string to_display_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Integer& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Integer mag = c < 0 ? Integer(-c) : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    bool unit = mag == 1 && i > 0;
    if (!unit) out += mag.str();
    if (i > 0) {
      if (!unit) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic helpers

inline IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) { return a * b; }

inline IntPolynomial derivative(const IntPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Integer> v(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coefficients().size(); ++i) v[i - 1] = p[i] * static_cast<long long>(i);
  return IntPolynomial(std::move(v));
}

inline Integer evaluate(const IntPolynomial& p, const Integer& x) {
  Integer acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p[static_cast<std::size_t>(i)];
  return acc;
}

/// Sign of p at a rational point, computed on the homogenized numerator.
inline int sign_at(const IntPolynomial& p, const Rational& x) {
  if (p.is_zero()) return 0;
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  Integer acc = p.leading();
  Integer dpow = 1;
  for (int i = p.degree() - 1; i >= 0; --i) {
    dpow *= den;
    acc = acc * num + p[static_cast<std::size_t>(i)] * dpow;
  }
  return acc.sign();
}

/// Non-negative gcd of the coefficients; 0 for the zero polynomial.
inline Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g < 0 ? Integer(-g) : g;
}

/// Content removed and sign fixed so the leading coefficient is positive.
inline IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> v(p.coefficients().begin(), p.coefficients().end());
  for (auto& c : v) c /= g;
  return IntPolynomial(std::move(v));
}

struct PseudoRemainder {
  IntPolynomial remainder;
  int multiplier_sign;  ///< sign of lc(b)^k, the factor applied to a
};

/// lc(b)^k * a mod b with k the number of reduction steps taken.
inline PseudoRemainder pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  const auto bc = b.coefficients();
  const Integer& lc = b.leading();
  const std::size_t db = bc.size() - 1;
  int steps = 0;
  auto trim = [&r] {
    while (r.size() > 1 && r.back() == 0) r.pop_back();
  };
  trim();
  while (!(r.size() == 1 && r[0] == 0) && r.size() - 1 >= db) {
    Integer lead = r.back();
    std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c *= lc;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= lead * bc[j];
    ++steps;
    trim();
  }
  int sign = (lc < 0 && steps % 2 == 1) ? -1 : 1;
  return {IntPolynomial(std::move(r)), sign};
}

struct DivisionResult {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// Division by a divisor with leading coefficient +-1; stays in the integers.
inline DivisionResult divide_by_unit_lead(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero() || (b.leading() != 1 && b.leading() != -1))
    throw DomainError("divisor must have leading coefficient +-1");
  if (a.degree() < b.degree()) return {IntPolynomial{}, a};
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  const auto bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> q(r.size() - db);
  const bool neg = b.leading() < 0;
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer t = neg ? Integer(-r[k + db]) : r[k + db];
    if (t != 0) {
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * bc[j];
    }
    q[k] = std::move(t);
  }
  r.resize(db == 0 ? 1 : db);
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

/// a / b over Z; throws DomainError when b does not divide a exactly.
inline IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw DomainError("inexact polynomial division");
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  const auto bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer t, rem;
    boost::multiprecision::divide_qr(r[k + db], bc[db], t, rem);
    if (rem != 0) throw DomainError("inexact polynomial division");
    if (t != 0)
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * bc[j];
    q[k] = std::move(t);
  }
  for (std::size_t j = 0; j < db; ++j)
    if (r[j] != 0) throw DomainError("inexact polynomial division");
  return IntPolynomial(std::move(q));
}

/// Greatest common divisor via the primitive pseudo-remainder sequence.
/// The result has positive leading coefficient and content gcd(cont(a), cont(b)).
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : content(b) * primitive_part(b);
  if (b.is_zero()) return content(a) * primitive_part(a);
  Integer c = boost::multiprecision::gcd(content(a), content(b));
  IntPolynomial u = primitive_part(a), v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPolynomial r = pseudo_remainder(u, v).remainder;
    u = std::move(v);
    v = primitive_part(r);
  }
  return c * primitive_part(u);
}

/// Squarefree decomposition of the primitive part of p: pairs (f_i, i) with
/// pp(p) = prod f_i^i, each f_i primitive, squarefree, pairwise coprime,
/// positive leading coefficient. Constant p gives an empty list.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() < 1) return out;
  IntPolynomial f = primitive_part(p);
  IntPolynomial c = primitive_part(gcd(f, derivative(f)));
  IntPolynomial w = exact_quotient(f, c);
  for (int i = 1; w.degree() > 0; ++i) {
    IntPolynomial y = primitive_part(gcd(w, c));
    IntPolynomial z = exact_quotient(w, y);
    if (z.degree() > 0) out.emplace_back(primitive_part(z), i);
    w = std::move(y);
    c = exact_quotient(c, w);
  }
  return out;
}

inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() < 1) return p;
  IntPolynomial f = primitive_part(p);
  return exact_quotient(f, primitive_part(gcd(f, derivative(f))));
}

// ---------------------------------------------------------------------------
// Structural transforms

/// x^deg(p) * p(1/x): the coefficient sequence reversed.
inline IntPolynomial reciprocal_transform(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("reciprocal transform of the zero polynomial");
  std::vector<Integer> v(p.coefficients().rbegin(), p.coefficients().rend());
  return IntPolynomial(std::move(v));
}

/// +1 if P* = P, -1 if P* = -P, 0 otherwise.
inline int reciprocal_sign(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("reciprocal test on the zero polynomial");
  const auto c = p.coefficients();
  const std::size_t n = c.size();
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < n && (plus || minus); ++i) {
    if (c[i] != c[n - 1 - i]) plus = false;
    if (c[i] != -c[n - 1 - i]) minus = false;
  }
  return plus ? 1 : (minus ? -1 : 0);
}

inline bool is_self_reciprocal(const IntPolynomial& p) { return reciprocal_sign(p) != 0; }

/// Polynomial whose roots are the squares of the roots of p, positive leading
/// coefficient. Uses p(x) = e(x^2) + x o(x^2)  =>  g(x) = e(x)^2 - x o(x)^2.
inline IntPolynomial graeffe_step(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("Graeffe step of the zero polynomial");
  const auto c = p.coefficients();
  std::vector<Integer> even, odd;
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 == 0 ? even : odd).push_back(c[i]);
  IntPolynomial e(std::move(even));
  IntPolynomial o = odd.empty() ? IntPolynomial{} : IntPolynomial(std::move(odd));
  IntPolynomial g = e * e - IntPolynomial::monomial(1, 1) * (o * o);
  return g.leading() < 0 ? -g : g;
}

struct XPowerSplit {
  IntPolynomial rest;
  int power;
};

/// p = x^power * rest with rest(0) != 0.
inline XPowerSplit split_x_power(const IntPolynomial& p) {
  if (p.is_zero()) throw DomainError("x-power split of the zero polynomial");
  const auto c = p.coefficients();
  std::size_t k = 0;
  while (c[k] == 0) ++k;
  return {IntPolynomial(std::vector<Integer>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end())),
          static_cast<int>(k)};
}

}  // namespace lehmer
