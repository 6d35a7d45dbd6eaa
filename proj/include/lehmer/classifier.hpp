#pragma once

/**
 * @file classifier.hpp
 * @brief Cyclotomic-product / Salem / Pisot / other classification of monic polynomials.
 *
 * Classification works on the residual left after exact cyclotomic stripping.
 * Irreducibility is never checked, and every certificate says so. The Salem
 * test is exact (Sturm counts on the trace polynomial); the Pisot test is
 * numeric with a margin taken from certified root radii.
 */

#include <algorithm>
#include <optional>
#include <string>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/roots.hpp"
#include "lehmer/trace.hpp"

namespace lehmer {

enum class ClassKind { CyclotomicProduct, Salem, Pisot, Other };

inline const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::CyclotomicProduct: return "CyclotomicProduct";
    case ClassKind::Salem: return "Salem";
    case ClassKind::Pisot: return "Pisot";
    case ClassKind::Other: return "Other";
  }
  return "?";
}

struct SalemCertificate {
  IntPolynomial residual;  ///< input with x and cyclotomic factors removed
  int removed_cyclotomic_degree = 0;
  bool reciprocal_even = false;  ///< residual has P* = +P and even degree >= 4
  std::optional<IntPolynomial> trace_polynomial;
  int half_degree = 0;
  // distinct real roots of the trace polynomial
  int roots_above_two = 0;
  int roots_inside = 0;
  int roots_below_minus_two = 0;
  bool root_at_two = false;
  bool root_at_minus_two = false;
  std::string reason;
};

struct SalemVerdict {
  bool salem = false;
  SalemCertificate certificate;
};

struct PisotCertificate {
  IntPolynomial residual;
  int removed_cyclotomic_degree = 0;
  int roots_outside = 0;    ///< certified |z| > 1
  int roots_ambiguous = 0;  ///< disk meets the circle
  std::optional<double> dominant_root;
  double margin = 0.0;      ///< 1 - max over non-dominant roots of (|z| + radius)
  bool uncertain = false;
  std::string reason;
};

struct PisotVerdict {
  bool pisot = false;
  PisotCertificate certificate;
};

struct ClassCertificate {
  int removed_cyclotomic_degree = 0;
  bool irreducibility_checked = false;
  std::optional<SalemCertificate> salem;
  std::optional<PisotCertificate> pisot;
};

struct PolynomialClass {
  ClassKind kind = ClassKind::Other;
  std::optional<double> dominant_root;
  ClassCertificate certificate;
};

namespace detail {

inline void require_monic(const IntPolynomial& p, const char* op) {
  if (p.degree() < 1 || !p.is_monic())
    throw DomainError(std::string(op) + " requires a monic polynomial of degree >= 1");
}

}  // namespace detail

/// Exact Salem certification of the cyclotomic-free part of p: P* = +P,
/// degree 2s >= 4, trace polynomial with one root in (2, inf), s - 1 distinct
/// roots in (-2, 2), and none in (-inf, -2] or at 2.
inline SalemVerdict is_salem(const IntPolynomial& p) {
  detail::require_monic(p, "Salem test");
  CyclotomicStrip strip = strip_cyclotomic_factors(p);
  SalemVerdict v;
  auto& cert = v.certificate;
  cert.removed_cyclotomic_degree = strip.removed_root_count;
  IntPolynomial r = std::move(strip.stripped);

  // x -+ 1 are cyclotomic and normally gone already; kept for residuals
  // handed in from elsewhere.
  if (r.degree() > 0 && reciprocal_sign(r) == -1) {
    for (const IntPolynomial& linear : {IntPolynomial{-1, 1}, IntPolynomial{1, 1}}) {
      while (r.degree() > 0) {
        auto [q, rem] = divide_by_unit_lead(r, linear);
        if (!rem.is_zero()) break;
        r = std::move(q);
        cert.removed_cyclotomic_degree += 1;
      }
    }
  }
  cert.residual = r;

  if (r.degree() < 1) {
    cert.reason = "cyclotomic product";
    return v;
  }
  if (reciprocal_sign(r) != 1) {
    cert.reason = "residual is not self-reciprocal";
    return v;
  }
  if (r.degree() % 2 != 0 || r.degree() < 4) {
    cert.reason = "residual degree " + std::to_string(r.degree()) + " is not even and >= 4";
    return v;
  }
  cert.reciprocal_even = true;

  TracePolynomial tp = to_trace_polynomial(r);
  cert.trace_polynomial = tp.q;
  cert.half_degree = tp.half_degree;
  SturmSequence sturm(tp.q);
  const Rational two(2), minus_two(-2);
  cert.roots_above_two = sturm.count(two, std::nullopt);
  cert.roots_inside = sturm.count(minus_two, two);
  cert.roots_below_minus_two = sturm.count(std::nullopt, minus_two);
  cert.root_at_two = sign_at(tp.q, two) == 0;
  cert.root_at_minus_two = sign_at(tp.q, minus_two) == 0;

  v.salem = cert.roots_above_two == 1 && cert.roots_inside == tp.half_degree - 1 &&
            cert.roots_below_minus_two == 0 && !cert.root_at_two && !cert.root_at_minus_two;
  cert.reason = v.salem ? "trace polynomial: one root > 2, all others simple in (-2, 2)"
                        : "trace polynomial root pattern is not Salem";
  return v;
}

/// Exactly one root outside the circle, real and > 1, every other root
/// certified inside by more than tol. A non-dominant root within tol of the
/// circle makes the verdict uncertain (reported as false).
inline PisotVerdict is_pisot(const IntPolynomial& p, double tol = kDefaultTolerance) {
  detail::require_monic(p, "Pisot test");
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  CyclotomicStrip strip = strip_cyclotomic_factors(p);
  PisotVerdict v;
  auto& cert = v.certificate;
  cert.removed_cyclotomic_degree = strip.removed_root_count;
  cert.residual = strip.stripped;
  if (cert.residual.degree() < 1) {
    cert.reason = "cyclotomic product";
    return v;
  }

  auto roots = complex_roots(cert.residual, std::min(tol, kDefaultTolerance));
  std::size_t dom = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i].value) > std::abs(roots[dom].value)) dom = i;

  double max_other = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double m = std::abs(roots[i].value), rad = roots[i].radius;
    if (m - rad > 1.0)
      ++cert.roots_outside;
    else if (m + rad >= 1.0)
      ++cert.roots_ambiguous;
    if (i != dom) {
      max_other = std::max(max_other, m + rad);
      if (std::abs(m - 1.0) <= tol) cert.uncertain = true;
    }
  }
  cert.margin = 1.0 - max_other;

  const auto& d = roots[dom];
  const bool dominant_real_above_one = std::abs(d.value.imag()) <= d.radius && d.value.real() - d.radius > 1.0;
  if (dominant_real_above_one) cert.dominant_root = d.value.real();

  if (cert.uncertain) {
    cert.reason = "uncertain: a non-dominant root lies within tolerance of the unit circle";
    cert.dominant_root.reset();
    return v;
  }
  v.pisot = cert.roots_outside == 1 && dominant_real_above_one && cert.margin > tol;
  cert.reason = v.pisot ? "one real root > 1, all others certified inside the unit circle"
                        : "root moduli do not fit the Pisot pattern";
  if (!v.pisot) cert.dominant_root.reset();
  return v;
}

/// CyclotomicProduct, then Salem, then Pisot, else Other.
inline PolynomialClass classify(const IntPolynomial& p) {
  detail::require_monic(p, "classification");
  PolynomialClass out;
  CyclotomicStrip strip = strip_cyclotomic_factors(p);
  out.certificate.removed_cyclotomic_degree = strip.removed_root_count;
  if (strip.stripped.degree() < 1) {
    out.kind = ClassKind::CyclotomicProduct;
    return out;
  }

  SalemVerdict salem = is_salem(p);
  if (salem.salem) {
    out.kind = ClassKind::Salem;
    double best = 0.0;
    for (const auto& r : complex_roots(salem.certificate.residual)) best = std::max(best, std::abs(r.value));
    out.dominant_root = best;
    out.certificate.salem = std::move(salem.certificate);
    return out;
  }
  out.certificate.salem = std::move(salem.certificate);

  PisotVerdict pisot = is_pisot(p);
  if (pisot.pisot) {
    out.kind = ClassKind::Pisot;
    out.dominant_root = pisot.certificate.dominant_root;
  }
  out.certificate.pisot = std::move(pisot.certificate);
  if (!pisot.pisot) out.kind = ClassKind::Other;
  return out;
}

}  // namespace lehmer
