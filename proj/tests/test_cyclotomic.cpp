#include <random>

#include <gtest/gtest.h>

#include "lehmer/cyclotomic.hpp"
#include "oracles.hpp"

using lehmer::IntPolynomial;

TEST(Cyclotomic, SmallCases) {
  EXPECT_EQ(lehmer::cyclotomic_polynomial(1), lehmer::parse("-1,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(2), lehmer::parse("1,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(3), lehmer::parse("1,1,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(4), lehmer::parse("1,0,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(6), lehmer::parse("1,-1,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(10), lehmer::parse("1,-1,1,-1,1"));
  EXPECT_EQ(lehmer::cyclotomic_polynomial(12), lehmer::parse("1,0,-1,0,1"));
}

TEST(Cyclotomic, Phi105HasCoefficientMinusTwo) {
  auto p = lehmer::cyclotomic_polynomial(105);
  EXPECT_EQ(p.degree(), 48);
  EXPECT_EQ(p[7], -2);
  EXPECT_EQ(p[41], -2);
}

TEST(Cyclotomic, DegreeIsTotient) {
  for (long long m = 1; m <= 80; ++m) {
    long long phi = 0;
    for (long long k = 1; k <= m; ++k) phi += std::gcd(k, m) == 1;
    EXPECT_EQ(lehmer::euler_phi(m), phi);
    EXPECT_EQ(lehmer::cyclotomic_polynomial(m).degree(), phi) << m;
  }
}

TEST(Cyclotomic, DivisorProductIsXmMinusOne) {
  for (std::size_t m = 1; m <= 40; ++m) {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (std::size_t d = 1; d <= m; ++d)
      if (m % d == 0) prod = prod * lehmer::cyclotomic_polynomial(static_cast<long long>(d));
    EXPECT_EQ(prod, lehmer::x_power_minus_one(m));
  }
}

TEST(Cyclotomic, RootsLieOnTheCircle) {
  for (long long m = 1; m <= 30; ++m)
    for (auto z : oracle::companion_roots(oracle::coeffs(lehmer::cyclotomic_polynomial(m))))
      EXPECT_NEAR(std::abs(z), 1.0, 1e-9);
}

TEST(Cyclotomic, StripsKnownFactors) {
  // (x^2 + x + 1)(x^2 - x - 1) = x^4 - x^2 - 2x - 1
  auto s = lehmer::strip_cyclotomic_factors(lehmer::parse("-1,-2,-1,0,1"));
  EXPECT_EQ(s.stripped, lehmer::parse("-1,-1,1"));
  EXPECT_EQ(s.removed_root_count, 2);
  EXPECT_EQ(s.orders, (std::vector<long long>{3}));

  auto lehmer_poly = lehmer::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1");
  auto with = lehmer_poly * lehmer::cyclotomic_polynomial(7) * lehmer::cyclotomic_polynomial(1) *
              lehmer::cyclotomic_polynomial(1) * IntPolynomial{0, 0, 1};
  auto t = lehmer::strip_cyclotomic_factors(with);
  EXPECT_EQ(t.stripped, lehmer_poly);
  EXPECT_EQ(t.x_power, 2);
  EXPECT_EQ(t.removed_root_count, 10);
  EXPECT_EQ(t.orders, (std::vector<long long>{1, 1, 7}));
}

TEST(Cyclotomic, StripRequiresMonic) {
  EXPECT_THROW(lehmer::strip_cyclotomic_factors(lehmer::parse("1,2")), lehmer::DomainError);
}

TEST(Cyclotomic, StripAgreesWithGcdRoute) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> order(1, 24), count(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    IntPolynomial p = oracle::poly(oracle::random_coeffs(rng, 5, 3, true));
    for (int k = count(rng); k > 0; --k) p = p * lehmer::cyclotomic_polynomial(order(rng));
    auto a = lehmer::strip_cyclotomic_factors(p);
    auto b = lehmer::detail::strip_cyclotomic_by_gcd(p);
    EXPECT_EQ(a.stripped, b.stripped) << lehmer::to_wire(p);
    EXPECT_EQ(a.removed_root_count, b.removed_root_count);
    EXPECT_EQ(a.stripped * [&] {
      IntPolynomial f = IntPolynomial::monomial(1, static_cast<std::size_t>(a.x_power));
      for (long long m : a.orders) f = f * lehmer::cyclotomic_polynomial(m);
      return f;
    }(), p);
  }
}

TEST(Cyclotomic, ProductTestMatchesRootModuliOnSmallFamily) {
  // Kronecker: monic, nonzero constant, every root on or inside the circle.
  for (int n = 1; n <= 4; ++n)
    oracle::for_each_tuple(n, 2, [&](const oracle::Coeffs& t) {
      auto c = oracle::monic(t);
      bool inside = true;
      for (auto z : oracle::companion_roots(c)) inside = inside && std::abs(z) < 1 + 1e-3;
      EXPECT_EQ(lehmer::is_cyclotomic_product(oracle::poly(c)), inside) << lehmer::to_wire(oracle::poly(c));
    });
}

TEST(Cyclotomic, ProductTestEdgeCases) {
  EXPECT_THROW(lehmer::is_cyclotomic_product(lehmer::parse("2,0,2")), lehmer::DomainError);
  EXPECT_FALSE(lehmer::is_cyclotomic_product(lehmer::parse("1,-3,1")));
  EXPECT_TRUE(lehmer::is_cyclotomic_product(lehmer::parse("0,0,1,1")));
  EXPECT_TRUE(lehmer::is_cyclotomic_product(lehmer::parse("1")));
}
