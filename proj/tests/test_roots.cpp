#include <random>

#include <gtest/gtest.h>

#include "lehmer/roots.hpp"
#include "oracles.hpp"

using lehmer::IntPolynomial;

namespace {

// Every oracle root lies in some returned disk (padded by the oracle's own error).
void expect_roots_covered(const IntPolynomial& p, double pad) {
  auto got = lehmer::complex_roots(p);
  auto want = oracle::companion_roots(oracle::coeffs(p));
  ASSERT_EQ(got.size(), want.size());
  for (auto z : want) {
    double best = 1e300;
    for (const auto& r : got) best = std::min(best, std::abs(r.value - z) - r.radius);
    EXPECT_LE(best, pad) << lehmer::to_wire(p) << " root " << z;
  }
  for (const auto& r : got) EXPECT_LE(r.radius, 1e-9);
}

}  // namespace

TEST(Roots, QuadraticFormula) {
  auto roots = lehmer::complex_roots(lehmer::parse("-2,0,1"));
  ASSERT_EQ(roots.size(), 2u);
  std::vector<double> re{roots[0].value.real(), roots[1].value.real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(re[1], std::sqrt(2.0), 1e-14);

  auto golden = lehmer::complex_roots(lehmer::parse("1,-3,1"));
  const double big = (3 + std::sqrt(5.0)) / 2;
  double found = 0;
  for (const auto& r : golden) found = std::max(found, r.value.real());
  EXPECT_NEAR(found, big, 1e-14);
}

TEST(Roots, PlasticNumberByBisection) {
  auto f = [](double x) { return x * x * x - x - 1; };
  const double plastic = oracle::bisect(f, 1.0, 2.0);
  EXPECT_NEAR(plastic, 1.32471795724474602596, 1e-15);
  auto roots = lehmer::complex_roots(lehmer::parse("-1,-1,0,1"));
  int real = 0;
  for (const auto& r : roots) {
    if (std::abs(r.value.imag()) <= r.radius) {
      ++real;
      EXPECT_NEAR(r.value.real(), plastic, r.radius + 1e-15);
    } else {
      EXPECT_NEAR(std::abs(r.value), 0.86883696183270930181, 1e-14);
    }
  }
  EXPECT_EQ(real, 1);
}

TEST(Roots, ZeroRootsAreExact) {
  auto roots = lehmer::complex_roots(lehmer::parse("0,0,-1,1"));
  int zeros = 0;
  for (const auto& r : roots)
    if (r.value == std::complex<double>(0, 0)) {
      ++zeros;
      EXPECT_EQ(r.radius, 0.0);
    }
  EXPECT_EQ(zeros, 2);
}

TEST(Roots, RepeatedRoots) {
  // (x - 1)^3 (x + 2)^2
  auto p = lehmer::parse("-1,1") * lehmer::parse("-1,1") * lehmer::parse("-1,1") * lehmer::parse("2,1") *
           lehmer::parse("2,1");
  auto roots = lehmer::complex_roots(p);
  ASSERT_EQ(roots.size(), 5u);
  int near_one = 0, near_minus_two = 0;
  for (const auto& r : roots) {
    if (std::abs(r.value - 1.0) <= r.radius + 1e-12) ++near_one;
    if (std::abs(r.value + 2.0) <= r.radius + 1e-12) ++near_minus_two;
  }
  EXPECT_EQ(near_one, 3);
  EXPECT_EQ(near_minus_two, 2);
}

TEST(Roots, DisksContainCompanionEigenvalues) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_coeffs(rng, 10, 5);
    if (c.front() == 0) c.front() = 1;
    auto p = oracle::poly(c);
    if (lehmer::squarefree_part(p).degree() != p.degree()) continue;
    expect_roots_covered(p, 1e-8);
  }
}

TEST(Roots, RootsOfUnityClusterOnTheCircle) {
  auto p = lehmer::parse("-1,0,0,0,0,0,0,0,0,0,0,0,1");  // x^12 - 1
  for (const auto& r : lehmer::complex_roots(p)) EXPECT_NEAR(std::abs(r.value), 1.0, r.radius + 1e-14);
}

TEST(Roots, RejectsZeroPolynomial) {
  EXPECT_THROW(lehmer::complex_roots(IntPolynomial{}), lehmer::DomainError);
}
