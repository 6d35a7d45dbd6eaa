#include <random>

#include <gtest/gtest.h>

#include "lehmer/geodesic.hpp"
#include "lehmer/trace.hpp"
#include "oracles.hpp"

using lehmer::IntPolynomial;

TEST(Geodesic, LiftOfLinearTrace) {
  EXPECT_EQ(lehmer::u_minpoly_from_trace_minpoly(lehmer::parse("-3,1")), lehmer::parse("1,-3,1"));
  EXPECT_EQ(lehmer::u_minpoly_from_trace_minpoly(lehmer::parse("-1,-1,1")), lehmer::parse("1,-1,1,-1,1"));
  EXPECT_EQ(lehmer::u_minpoly_from_trace_minpoly(lehmer::parse("-3,-1,1")), lehmer::parse("1,-1,-1,-1,1"));
}

TEST(Geodesic, LiftOfLehmerTrace) {
  EXPECT_EQ(lehmer::u_minpoly_from_trace_minpoly(lehmer::parse("3,4,-5,-5,1,1")),
            lehmer::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1"));
}

TEST(Geodesic, ResultantAgreesWithTraceExpansion) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::random_coeffs(rng, 6, 5, true);
    auto q = oracle::poly(c);
    EXPECT_EQ(lehmer::u_minpoly_from_trace_minpoly(q), lehmer::expand_trace_polynomial({q, q.degree()}));
  }
}

TEST(Geodesic, BareissMatchesCofactorExpansion) {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    long long m[3][3];
    std::vector<std::vector<IntPolynomial>> pm(3, std::vector<IntPolynomial>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m[i][j] = val(rng);
        pm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = IntPolynomial{m[i][j]};
      }
    long long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_EQ(lehmer::detail::bareiss_determinant(pm), IntPolynomial{det});
  }
}

TEST(Geodesic, GoldenTrace) {
  auto d = lehmer::displacement_from_trace(lehmer::parse("-3,1"));
  EXPECT_NEAR(d.length_dim2, 1.92484730023841378999, 1e-12);
  EXPECT_NEAR(d.length_dim3, 0.96242365011920689500, 1e-12);
  EXPECT_EQ(*d.trace_polynomial, lehmer::parse("-3,1"));
}

TEST(Geodesic, LehmerElement) {
  auto d = lehmer::displacement_from_u_polynomial(lehmer::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1"));
  EXPECT_NEAR(d.length_dim3, 0.16235761200773813943, 1e-12);
  EXPECT_NEAR(d.length_dim2, 0.32471522401547627886, 1e-12);
  EXPECT_FALSE(d.trace_polynomial.has_value());
}

TEST(Geodesic, QuarticSalemTrace) {
  auto d = lehmer::displacement_from_trace(lehmer::parse("-3,-1,1"));
  EXPECT_NEAR(d.length_dim2, 1.08707014499573909979, 1e-12);
  EXPECT_NEAR(d.length_dim3, 0.54353507249786954989, 1e-12);
}

TEST(Geodesic, NonHyperbolicTraces) {
  for (const char* q : {"-1,1", "0,1", "-2,1", "2,1", "-1,-1,1"}) {
    try {
      lehmer::displacement_from_trace(lehmer::parse(q));
      FAIL() << q;
    } catch (const lehmer::DomainError& e) {
      EXPECT_NE(std::string(e.what()).find("not hyperbolic"), std::string::npos);
    }
  }
  try {
    lehmer::displacement_from_trace(lehmer::parse("-2,1"));
  } catch (const lehmer::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("parabolic"), std::string::npos);
  }
  EXPECT_THROW(lehmer::displacement_from_u_polynomial(lehmer::parse("1,1,1")), lehmer::DomainError);
  EXPECT_THROW(lehmer::u_minpoly_from_trace_minpoly(lehmer::parse("-3,2")), lehmer::DomainError);
}

TEST(Geodesic, ClosedFormForIntegerTraces) {
  for (int t = 3; t <= 20; ++t) {
    auto d = lehmer::displacement_from_trace(IntPolynomial{-t, 1});
    const double closed = 2.0 * std::log((t + std::sqrt(double(t) * t - 4.0)) / 2.0);
    EXPECT_NEAR(d.length_dim2, closed, 1e-12) << t;
    EXPECT_EQ(d.length_dim2, 2.0 * d.length_dim3);
    // negative trace gives the same length
    EXPECT_NEAR(lehmer::displacement_from_trace(IntPolynomial{t, 1}).length_dim2, closed, 1e-12);
  }
}
