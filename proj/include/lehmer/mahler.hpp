#pragma once

/**
 * @file mahler.hpp
 * @brief Mahler measure M(P) = |a_n| prod max(1, |theta_i|) by two independent routes.
 *
 * The root-product route strips x and cyclotomic factors exactly (they
 * contribute exactly 1), finds the remaining roots with certified radii and
 * multiplies the moduli outside the unit circle. Roots whose inclusion disk
 * touches the circle are snapped to modulus 1 only as many times as the exact
 * unit-circle count allows; the rest keep their computed modulus.
 *
 * The Jensen route integrates log|P| over the unit circle with the trapezoid
 * rule and never looks at roots.
 *
 * Irreducibility of the input is not assumed or checked; M is multiplicative,
 * so every operation is well defined on reducible polynomials.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/polynomial.hpp"
#include "lehmer/roots.hpp"
#include "lehmer/trace.hpp"

namespace lehmer {

enum class MeasureMethod { RootProduct, JensenQuadrature, GraeffeCrossCheck };

inline const char* to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::RootProduct: return "RootProduct";
    case MeasureMethod::JensenQuadrature: return "JensenQuadrature";
    case MeasureMethod::GraeffeCrossCheck: return "GraeffeCrossCheck";
  }
  return "?";
}

struct MeasureResult {
  double value = 1.0;
  double error_radius = 0.0;
  MeasureMethod method = MeasureMethod::RootProduct;
  std::optional<std::vector<double>> root_moduli;  ///< ascending, with multiplicity
  bool cyclotomic_fast_path = false;               ///< value is exact: only x and Phi_m factors
};

struct LogMeasure {
  double value = 0.0;
  double error_radius = 0.0;
};

inline constexpr double kDefaultTolerance = 1e-9;

namespace detail {

inline double abs_double(const Integer& v) { return boost::multiprecision::abs(v).convert_to<double>(); }

inline double l2_norm(const IntPolynomial& p) {
  double s = 0;
  for (const auto& c : p.coefficients()) {
    double d = c.convert_to<double>();
    s += d * d;
  }
  return std::sqrt(s);
}

struct ResidualMeasure {
  double value;
  double error_radius;
  std::vector<double> moduli;
};

// Product over the roots of r (cyclotomic-free, r(0) != 0), lead excluded.
inline ResidualMeasure residual_product(const IntPolynomial& r, double root_tol, const std::vector<RootEstimate>& roots) {
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t n = roots.size();

  // Indices of roots whose disk may touch the circle, closest first.
  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::abs(roots[i].value);
    double band = std::max(roots[i].radius + 4 * eps * m, 1e-9);
    if (std::abs(m - 1.0) <= band) near.push_back(i);
  }
  std::vector<bool> snapped(n, false);
  if (!near.empty()) {
    const int on_circle = unit_circle_root_count(r);
    if (static_cast<std::size_t>(on_circle) > near.size())
      throw ConvergenceError("certified roots disagree with the exact unit-circle count for " + to_display_string(r),
                             root_tol);
    std::sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(std::abs(roots[a].value) - 1.0) < std::abs(std::abs(roots[b].value) - 1.0);
    });
    for (int k = 0; k < on_circle; ++k) snapped[near[static_cast<std::size_t>(k)]] = true;
  }

  ResidualMeasure out{1.0, 0.0, {}};
  double upper = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (snapped[i]) {
      out.moduli.push_back(1.0);
      continue;
    }
    double m = std::abs(roots[i].value);
    double r_eff = roots[i].radius + 4 * eps * m;
    out.moduli.push_back(m);
    double f = std::max(1.0, m);
    out.value *= f;
    upper *= std::max(1.0, m + r_eff) / f;
  }
  out.error_radius = out.value * (upper - 1.0) + static_cast<double>(2 * n + 4) * eps * out.value;
  return out;
}

}  // namespace detail

/// M(p) by the root product. Non-monic input is allowed; the factor |a_n| is
/// included. The returned radius is at most tol.
inline MeasureResult mahler_measure(const IntPolynomial& p, double tol = kDefaultTolerance) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");

  MeasureResult res;
  res.method = MeasureMethod::RootProduct;
  const double lead = detail::abs_double(p.leading());
  std::vector<double> moduli;

  CyclotomicStrip strip = detail::strip_cyclotomic_any(p);
  moduli.insert(moduli.end(), static_cast<std::size_t>(strip.x_power), 0.0);
  moduli.insert(moduli.end(), static_cast<std::size_t>(strip.removed_root_count - strip.x_power), 1.0);

  const IntPolynomial& r = strip.stripped;
  if (r.degree() < 1) {
    res.value = lead;
    res.error_radius = 0.0;
    res.cyclotomic_fast_path = true;
    res.root_moduli = std::move(moduli);
    return res;
  }

  // Each root radius enters the product roughly as value * radius.
  const double scale = std::max(1.0, detail::l2_norm(r) / lead);
  double root_tol = tol / (4.0 * r.degree() * scale);
  auto roots = detail::certified_roots(r, root_tol);
  auto part = detail::residual_product(r, root_tol, roots);
  res.value = lead * part.value;
  res.error_radius = lead * part.error_radius;
  if (res.error_radius > tol)
    throw ConvergenceError("measure radius " + std::to_string(res.error_radius) + " exceeds tolerance",
                           res.error_radius);
  moduli.insert(moduli.end(), part.moduli.begin(), part.moduli.end());
  std::sort(moduli.begin(), moduli.end());
  res.root_moduli = std::move(moduli);
  return res;
}

/// Natural log of the measure; radius by first-order propagation.
inline LogMeasure log_mahler(const IntPolynomial& p, double tol = kDefaultTolerance) {
  MeasureResult m = mahler_measure(p, tol);
  return {std::log(m.value), m.error_radius / (m.value - m.error_radius)};
}

inline double jensen_offset(std::size_t samples) { return std::numbers::pi / (7.0 * static_cast<double>(samples)); }

/// M(p) = exp( (1/2pi) int log|p(e^{i theta})| d theta ) by the trapezoid rule on
/// N points offset by pi/(7N). The radius comes from comparing N with N/2 and
/// N/2 with N/4 (doubled for safety).
inline MeasureResult jensen_measure(const IntPolynomial& p, std::size_t samples) {
  if (p.is_zero()) throw DomainError("Jensen measure of the zero polynomial");
  if (samples < 16) throw DomainError("Jensen quadrature needs at least 16 samples");

  std::vector<double> a;
  double scale = 0;
  for (const auto& c : p.coefficients()) {
    a.push_back(c.convert_to<double>());
    scale += std::abs(a.back());
  }

  // Returns the mean of log|p| or nothing when a sample lands on a zero.
  auto trapezoid = [&](std::size_t n, double shift) -> std::optional<double> {
    const double delta = jensen_offset(n) * shift;
    long double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + delta;
      const std::complex<double> z(std::cos(theta), std::sin(theta));
      std::complex<double> v = 0.0;
      for (std::size_t i = a.size(); i-- > 0;) v = v * z + a[i];
      const double mag = std::abs(v);
      if (mag <= 1e-14 * scale) return std::nullopt;
      sum += std::log(mag);
    }
    return static_cast<double>(sum / static_cast<long double>(n));
  };

  for (double shift : {1.0, 1.3819660112501051, 0.6180339887498949}) {
    auto l1 = trapezoid(samples, shift);
    auto l2 = trapezoid(samples / 2, shift);
    auto l4 = trapezoid(samples / 4, shift);
    if (!l1 || !l2 || !l4) continue;
    const double est = std::max(std::abs(*l1 - *l2), std::abs(*l2 - *l4) / 2.0);
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(a.size());
    const double v = std::exp(*l1);
    const double r = v * std::expm1(2.0 * est + rounding);

    // M >= max(|a_n|, |lowest nonzero coefficient|) for integer polynomials;
    // clip the interval there.
    const double floor_value =
        std::max(detail::abs_double(p.leading()), detail::abs_double(split_x_power(p).rest.constant_term()));
    double lo = std::max(v - r, floor_value);
    double hi = std::max(v + r, floor_value);
    MeasureResult res;
    res.method = MeasureMethod::JensenQuadrature;
    res.value = 0.5 * (lo + hi);
    // Cover both endpoints after rounding of the midpoint.
    const double eps = std::numeric_limits<double>::epsilon();
    res.error_radius = std::max(res.value - lo, hi - res.value) * (1 + 4 * eps) + 2 * eps * res.value;
    return res;
  }
  throw QuadratureError("Jensen quadrature kept hitting zeros of " + to_display_string(p));
}

/// sqrt(M(graeffe(p))): the root-squaring identity M(g) = M(p)^2 as a cross-check.
inline MeasureResult graeffe_measure(const IntPolynomial& p, double tol = kDefaultTolerance) {
  MeasureResult g = mahler_measure(graeffe_step(p), tol);
  MeasureResult res;
  res.method = MeasureMethod::GraeffeCrossCheck;
  res.value = std::sqrt(g.value);
  res.error_radius = std::sqrt(g.value + g.error_radius) - res.value;
  res.cyclotomic_fast_path = g.cyclotomic_fast_path;
  return res;
}

}  // namespace lehmer
