#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact detection and removal of cyclotomic factors.
 *
 * A monic integer polynomial with nonzero constant term has every root on the
 * unit circle iff it is a product of cyclotomic polynomials (Kronecker). Roots
 * at 0 are stripped as well and counted among the removed roots, so that
 * is_cyclotomic_product is total on monic input: x^k * prod Phi_m counts as a
 * cyclotomic product (its Mahler measure is 1).
 *
 * Only m with phi(m) <= deg(p) can occur, and phi(m) >= sqrt(m/2) bounds the
 * scan to m <= 2 deg(p)^2.
 */

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "lehmer/polynomial.hpp"

namespace lehmer {

inline long long euler_phi(long long m) {
  long long result = m;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline IntPolynomial x_power_minus_one(std::size_t m) {
  std::vector<Integer> v(m + 1);
  v[0] = -1;
  v[m] = 1;
  return IntPolynomial(std::move(v));
}

namespace detail {

inline IntPolynomial compute_cyclotomic(long long m);

inline const IntPolynomial& cyclotomic_cached(long long m) {
  static std::mutex mu;
  static std::map<long long, IntPolynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPolynomial phi = compute_cyclotomic(m);
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(phi)).first->second;
}

// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
inline IntPolynomial compute_cyclotomic(long long m) {
  IntPolynomial p = x_power_minus_one(static_cast<std::size_t>(m));
  for (long long d = 1; d < m; ++d)
    if (m % d == 0) p = divide_by_unit_lead(p, cyclotomic_cached(d)).quotient;
  return p;
}

/// Rounding-aware test that p(exp(2 pi i / m)) is certainly nonzero.
/// false means "might vanish" and the caller must decide exactly.
inline bool certainly_nonzero_at_root_of_unity(std::span<const double> coeffs, long long m) {
  const double angle = 2.0 * std::numbers::pi / static_cast<double>(m);
  const std::complex<double> z(std::cos(angle), std::sin(angle));
  std::complex<double> acc = 0.0;
  double scale = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * z + coeffs[i];
    scale += std::abs(coeffs[i]);
  }
  const double n = static_cast<double>(coeffs.size());
  const double bound = (8.0 * n + 16.0) * std::numeric_limits<double>::epsilon() * scale;
  return std::abs(acc) > bound;
}

}  // namespace detail

/// The m-th cyclotomic polynomial (m >= 1).
inline IntPolynomial cyclotomic_polynomial(long long m) {
  if (m < 1) throw DomainError("cyclotomic index must be >= 1");
  return detail::cyclotomic_cached(m);
}

struct CyclotomicStrip {
  IntPolynomial stripped;          ///< cyclotomic-free residual, nonzero constant term
  int removed_root_count = 0;      ///< total degree removed (x powers included)
  int x_power = 0;                 ///< roots at 0
  std::vector<long long> orders;   ///< m of each removed Phi_m, with repetition, ascending
};

namespace detail {

// Works for any nonzero p; Phi_m is monic so exact division stays integral.
inline CyclotomicStrip strip_cyclotomic_any(const IntPolynomial& p) {
  auto [rest, xp] = split_x_power(p);
  CyclotomicStrip out{std::move(rest), xp, xp, {}};
  int deg = out.stripped.degree();
  if (deg < 1) return out;

  std::vector<double> approx(out.stripped.coefficients().size());
  auto refresh = [&] {
    approx.resize(out.stripped.coefficients().size());
    for (std::size_t i = 0; i < approx.size(); ++i) approx[i] = out.stripped[i].convert_to<double>();
  };
  refresh();

  const long long limit = 2LL * deg * deg;
  for (long long m = 1; m <= limit && out.stripped.degree() > 0; ++m) {
    if (euler_phi(m) > out.stripped.degree()) continue;
    while (out.stripped.degree() > 0) {
      if (certainly_nonzero_at_root_of_unity(approx, m)) break;
      const IntPolynomial& phi = cyclotomic_cached(m);
      auto [q, r] = divide_by_unit_lead(out.stripped, phi);
      if (!r.is_zero()) break;
      out.stripped = std::move(q);
      out.removed_root_count += phi.degree();
      out.orders.push_back(m);
      refresh();
    }
  }
  return out;
}

// The gcd(p, x^m - 1) formulation, kept as an independent route.
inline CyclotomicStrip strip_cyclotomic_by_gcd(const IntPolynomial& p) {
  auto [rest, xp] = split_x_power(p);
  CyclotomicStrip out{std::move(rest), xp, xp, {}};
  const int deg = out.stripped.degree();
  const long long limit = 2LL * deg * deg;
  for (long long m = 1; m <= limit && out.stripped.degree() > 0; ++m) {
    if (euler_phi(m) > out.stripped.degree()) continue;
    while (out.stripped.degree() > 0) {
      IntPolynomial g = primitive_part(gcd(out.stripped, x_power_minus_one(static_cast<std::size_t>(m))));
      if (g.degree() < 1) break;
      out.stripped = exact_quotient(out.stripped, g);
      out.removed_root_count += g.degree();
    }
  }
  if (out.stripped.leading() < 0) out.stripped = -out.stripped;
  return out;
}

}  // namespace detail

/// Removes all factors x and Phi_m from monic p. The residual is monic, and
/// has degree 0 iff p was x^k times a product of cyclotomic polynomials.
inline CyclotomicStrip strip_cyclotomic_factors(const IntPolynomial& p) {
  if (p.is_zero() || !p.is_monic()) throw DomainError("cyclotomic stripping requires a monic polynomial");
  return detail::strip_cyclotomic_any(p);
}

/// Exact test: every root lies on the unit circle or at 0.
inline bool is_cyclotomic_product(const IntPolynomial& p) {
  if (p.is_zero() || !p.is_monic()) throw DomainError("cyclotomic test requires a monic polynomial");
  auto [rest, xp] = split_x_power(p);
  if (rest.degree() == 0) return true;
  // Every Phi_m is +-self-reciprocal with constant term +-1, so any product is.
  const Integer& c0 = rest.constant_term();
  if ((c0 != 1 && c0 != -1) || reciprocal_sign(rest) == 0) return false;
  return detail::strip_cyclotomic_any(rest).stripped.degree() == 0;
}

}  // namespace lehmer
