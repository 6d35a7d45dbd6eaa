#pragma once

/**
 * @file roots.hpp
 * @brief Simultaneous (Aberth-Ehrlich) root finding with a posteriori inclusion radii.
 *
 * The iteration always runs on the full polynomial (no deflation). After
 * convergence each approximation z_i gets the Weierstrass correction
 * W_i = p(z_i) / (a_n prod_{j != i} (z_i - z_j)); the disks |z - z_i| <= n |W_i|
 * contain all roots, and a connected union of m disks contains exactly m
 * roots. Rounding in the evaluation of p(z_i) is folded into the radius.
 *
 * Work happens in double first; when the budget of 200 * degree sweeps runs
 * out or the radii are above the requested tolerance the factor is redone
 * once at 50 decimal digits.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "lehmer/polynomial.hpp"

namespace lehmer {

struct RootEstimate {
  std::complex<double> value;
  double radius = 0.0;  ///< the true root lies within this distance of value
};

namespace detail {

using WideReal = boost::multiprecision::cpp_bin_float_50;
using WideComplex = boost::multiprecision::cpp_complex_50;

template <class Complex>
struct RealOf {
  using type = typename Complex::value_type;
};

template <>
struct RealOf<WideComplex> {
  using type = WideReal;
};

inline double to_double(double x) { return x; }
inline double to_double(const WideReal& x) { return x.convert_to<double>(); }

template <class Complex>
struct AberthOutcome {
  std::vector<Complex> roots;
  std::vector<typename RealOf<Complex>::type> radii;
  bool converged = false;
  double residual = 0.0;  ///< largest |W_i| at exit
};

// Horner for p and p' plus the running sum sum |a_k| |z|^k for the rounding bound.
template <class Complex, class Real>
void evaluate_with_derivative(const std::vector<Real>& a, const Complex& z, Complex& p, Complex& dp, Real& absval) {
  using std::abs;
  const std::size_t n = a.size() - 1;
  p = Complex(a[n]);
  dp = Complex(0);
  absval = abs(a[n]);
  const Real az = abs(z);
  for (std::size_t k = n; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + Complex(a[k]);
    absval = absval * az + abs(a[k]);
  }
}

template <class Complex>
AberthOutcome<Complex> aberth(const IntPolynomial& poly) {
  using Real = typename RealOf<Complex>::type;
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;

  const std::size_t n = static_cast<std::size_t>(poly.degree());
  std::vector<Real> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) a[i] = poly[i].template convert_to<Real>();
  const Real eps = std::numeric_limits<Real>::epsilon();

  AberthOutcome<Complex> out;
  if (n == 1) {
    out.roots = {Complex(-a[0] / a[1])};
    out.radii = {abs(a[0] / a[1]) * eps * 2};
    out.converged = true;
    return out;
  }

  // Start on a circle around the centroid of the roots with radius
  // max |a_k / a_n|^(1/(n-k)), slightly rotated off the real axis.
  const Real lead = a[n];
  const Real centroid = -a[n - 1] / (lead * Real(n));
  Real radius = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Real r = pow(abs(a[k] / lead), Real(1) / Real(n - k));
    if (r > radius) radius = r;
  }
  if (radius == 0) radius = 1;
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    Real theta = Real(2) * boost::math::constants::pi<Real>() * Real(k) / Real(n) + Real(0.4) / Real(n) + Real(0.25);
    z[k] = Complex(centroid + radius * cos(theta), radius * sin(theta));
  }

  std::vector<bool> done(n, false);
  const std::size_t budget = 200 * n;
  int polish = -1;
  for (std::size_t iter = 0; iter < budget; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] && polish < 0) continue;
      Complex p, dp;
      Real absval;
      evaluate_with_derivative(a, z[i], p, dp, absval);
      if (abs(p) <= absval * eps * 4) {
        done[i] = true;
        continue;
      }
      Complex ratio = p / dp;
      Complex sum(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += Complex(1) / (z[i] - z[j]);
      Complex corr = ratio / (Complex(1) - ratio * sum);
      z[i] -= corr;
      Real scale = abs(z[i]) > 1 ? abs(z[i]) : Real(1);
      if (abs(corr) <= eps * scale * 4)
        done[i] = true;
      else
        all_done = false;
    }
    if (all_done) {
      if (polish < 0) polish = 2;  // two full sweeps once everyone settles
      if (polish-- == 0) {
        out.converged = true;
        break;
      }
    }
  }

  // Inclusion radii n * (|p(z_i)| + rounding) / |a_n prod (z_i - z_j)|.
  const Real nn = Real(n);
  out.radii.assign(n, Real(0));
  Real worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex p, dp;
    Real absval;
    evaluate_with_derivative(a, z[i], p, dp, absval);
    Real denom = abs(lead);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) denom *= abs(z[i] - z[j]);
    if (denom > 0) {
      Real bound = abs(p) + (Real(8) * nn + Real(8)) * eps * absval;
      out.radii[i] = nn * bound / denom * (Real(1) + Real(8) * nn * eps);
      Real w = abs(p) / denom;
      if (w > worst) worst = w;
    } else {
      out.radii[i] = std::numeric_limits<Real>::infinity();
      worst = std::numeric_limits<Real>::infinity();
    }
  }
  out.residual = to_double(worst);

  // A connected cluster of disks only pins its roots down to the cluster, so
  // each member's radius is widened to reach across the whole component.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool clustered = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(z[i] - z[j]) <= out.radii[i] + out.radii[j]) {
        parent[find(i)] = find(j);
        clustered = true;
      }
  if (clustered) {
    std::vector<Real> widened = out.radii;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && find(i) == find(j)) {
          Real reach = abs(z[i] - z[j]) + out.radii[j];
          if (reach > widened[i]) widened[i] = reach;
        }
    out.radii = std::move(widened);
  }
  out.roots = std::move(z);
  return out;
}

inline std::vector<RootEstimate> to_estimates(const AberthOutcome<std::complex<double>>& o) {
  std::vector<RootEstimate> v;
  for (std::size_t i = 0; i < o.roots.size(); ++i) v.push_back({o.roots[i], o.radii[i]});
  return v;
}

inline std::vector<RootEstimate> to_estimates(const AberthOutcome<WideComplex>& o) {
  std::vector<RootEstimate> v;
  for (std::size_t i = 0; i < o.roots.size(); ++i) {
    std::complex<double> z(o.roots[i].real().convert_to<double>(), o.roots[i].imag().convert_to<double>());
    // rounding to double moves the centre by at most one ulp per component
    double r = o.radii[i].convert_to<double>() + 2.0 * std::numeric_limits<double>::epsilon() * std::abs(z);
    v.push_back({z, r});
  }
  return v;
}

inline double max_radius(const std::vector<RootEstimate>& v) {
  double m = 0;
  for (const auto& e : v) m = std::max(m, e.radius);
  return m;
}

/// Roots of a nonconstant polynomial with nonzero constant term. Tries the
/// whole polynomial first; if that does not certify, splits off repeated
/// factors exactly and escalates precision factor by factor.
inline std::vector<RootEstimate> certified_roots(const IntPolynomial& p, double tol) {
  auto fast = aberth<std::complex<double>>(p);
  if (fast.converged) {
    auto est = to_estimates(fast);
    if (max_radius(est) <= tol) return est;
  }

  std::vector<RootEstimate> all;
  double residual = fast.residual;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    std::vector<RootEstimate> est;
    auto lo = aberth<std::complex<double>>(factor);
    if (lo.converged) est = to_estimates(lo);
    if (!lo.converged || max_radius(est) > tol) {
      auto hi = aberth<WideComplex>(factor);
      est = to_estimates(hi);
      residual = std::max(residual, hi.residual);
      if (!hi.converged || max_radius(est) > tol)
        throw ConvergenceError("root finder could not certify radius " + std::to_string(tol) + " for " +
                                   to_display_string(factor) + " (best radius " +
                                   std::to_string(max_radius(est)) + ")",
                               hi.residual);
    }
    for (int k = 0; k < mult; ++k) all.insert(all.end(), est.begin(), est.end());
  }
  return all;
}

}  // namespace detail

/// All deg(p) roots with multiplicity, each with an inclusion radius <= tol.
/// Roots at 0 are returned exactly (radius 0).
inline std::vector<RootEstimate> complex_roots(const IntPolynomial& p, double tol = 1e-9) {
  if (p.degree() < 1) throw DomainError("complex_roots requires degree >= 1");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  auto [rest, xp] = split_x_power(p);
  std::vector<RootEstimate> out(static_cast<std::size_t>(xp), RootEstimate{{0.0, 0.0}, 0.0});
  if (rest.degree() >= 1) {
    auto r = detail::certified_roots(rest, tol);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace lehmer
