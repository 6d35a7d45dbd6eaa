#include <random>

#include <gtest/gtest.h>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/trace.hpp"
#include "oracles.hpp"

using lehmer::IntPolynomial;
using lehmer::Rational;

namespace {

const IntPolynomial kLehmer = lehmer::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1");

// Monic self-reciprocal polynomial of degree 2s from random middle coefficients.
IntPolynomial random_reciprocal(std::mt19937_64& rng, int s, int bound) {
  std::uniform_int_distribution<int> val(-bound, bound);
  std::vector<long long> c(static_cast<std::size_t>(2 * s) + 1);
  c.front() = c.back() = 1;
  for (int i = 1; i <= s; ++i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(2 * s - i)] = val(rng);
  return oracle::poly(c);
}

}  // namespace

TEST(Trace, LehmerTracePolynomial) {
  auto tp = lehmer::to_trace_polynomial(kLehmer);
  EXPECT_EQ(tp.half_degree, 5);
  EXPECT_EQ(tp.q, lehmer::parse("3,4,-5,-5,1,1"));
}

TEST(Trace, QuadraticAndQuartic) {
  EXPECT_EQ(lehmer::to_trace_polynomial(lehmer::parse("1,-3,1")).q, lehmer::parse("-3,1"));
  EXPECT_EQ(lehmer::to_trace_polynomial(lehmer::parse("1,-1,-1,-1,1")).q, lehmer::parse("-3,-1,1"));
}

TEST(Trace, ExpansionInvertsTransform) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> half(1, 7);
    auto p = random_reciprocal(rng, half(rng), 3);
    auto tp = lehmer::to_trace_polynomial(p);
    EXPECT_EQ(tp.q.degree(), tp.half_degree);
    EXPECT_EQ(lehmer::expand_trace_polynomial(tp), p);
  }
}

TEST(Trace, RejectsAntiReciprocalAndOddDegree) {
  try {
    lehmer::to_trace_polynomial(lehmer::parse("-1,0,1"));
    FAIL();
  } catch (const lehmer::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x - 1"), std::string::npos);
  }
  try {
    lehmer::to_trace_polynomial(lehmer::parse("1,2,2,1"));
    FAIL();
  } catch (const lehmer::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x + 1"), std::string::npos);
  }
  EXPECT_THROW(lehmer::to_trace_polynomial(lehmer::parse("-1,-1,0,1")), lehmer::DomainError);
}

TEST(Sturm, CountsOpenIntervals) {
  auto q = lehmer::parse("-6,11,-6,1");  // (x-1)(x-2)(x-3)
  EXPECT_EQ(lehmer::real_root_count(q), 3);
  EXPECT_EQ(lehmer::sturm_count(q, Rational(0), Rational(5, 2)), 2);
  EXPECT_EQ(lehmer::sturm_count(q, Rational(1), Rational(3)), 1);
  EXPECT_EQ(lehmer::sturm_count(q, Rational(1), Rational(2)), 0);
  EXPECT_EQ(lehmer::sturm_count(q, Rational(3, 2), Rational(7, 2)), 2);
  EXPECT_THROW(lehmer::sturm_count(q, Rational(2), Rational(2)), lehmer::DomainError);
  lehmer::SturmSequence s(q);
  EXPECT_EQ(s.count(std::nullopt, Rational(2)), 1);
  EXPECT_EQ(s.count(Rational(2), std::nullopt), 1);
}

TEST(Sturm, RepeatedRootsCountOnce) {
  auto q = lehmer::parse("-1,1") * lehmer::parse("-1,1") * lehmer::parse("2,1");
  EXPECT_EQ(lehmer::real_root_count(q), 2);
  EXPECT_EQ(lehmer::real_root_count(lehmer::parse("1,0,1")), 0);
}

TEST(Sturm, MatchesCompanionEigenvalues) {
  std::mt19937_64 rng(32);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = oracle::random_coeffs(rng, 8, 6);
    auto roots = oracle::companion_roots(c);
    // Skip cases where the numeric picture is ambiguous.
    bool clear = true;
    int real = 0, positive = 0;
    for (auto z : roots) {
      if (std::abs(z.imag()) < 1e-6) {
        if (std::abs(z.imag()) > 1e-12) clear = false;
        ++real;
        if (z.real() > 0) ++positive;
        if (std::abs(z.real()) < 1e-6) clear = false;
      } else if (std::abs(z.imag()) < 1e-3) {
        clear = false;
      }
    }
    auto p = oracle::poly(c);
    if (!clear || lehmer::squarefree_part(p).degree() != p.degree()) continue;
    ++checked;
    EXPECT_EQ(lehmer::real_root_count(p), real) << lehmer::to_wire(p);
    EXPECT_EQ(lehmer::SturmSequence(p).count(Rational(0), std::nullopt), positive) << lehmer::to_wire(p);
  }
  EXPECT_GT(checked, 200);
}

TEST(UnitCircle, ExactCounts) {
  EXPECT_EQ(lehmer::unit_circle_root_count(kLehmer), 8);
  EXPECT_EQ(lehmer::unit_circle_root_count(lehmer::parse("1,-3,1")), 0);
  EXPECT_EQ(lehmer::unit_circle_root_count(lehmer::parse("1,-1,-1,-1,1")), 2);
  EXPECT_EQ(lehmer::unit_circle_root_count(lehmer::parse("-1,-1,0,1")), 0);
  auto phi3 = lehmer::cyclotomic_polynomial(3);
  EXPECT_EQ(lehmer::unit_circle_root_count(phi3 * phi3 * lehmer::parse("-1,1")), 5);
  EXPECT_EQ(lehmer::unit_circle_root_count(kLehmer * lehmer::cyclotomic_polynomial(12)), 12);
}

TEST(UnitCircle, MatchesCompanionModuliOnReciprocalFamily) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> half(1, 5);
    auto p = random_reciprocal(rng, half(rng), 2);
    if (lehmer::squarefree_part(p).degree() != p.degree()) continue;
    int on = 0;
    for (auto z : oracle::companion_roots(oracle::coeffs(p))) on += std::abs(std::abs(z) - 1.0) < 1e-7;
    EXPECT_EQ(lehmer::unit_circle_root_count(p), on) << lehmer::to_wire(p);
  }
}
