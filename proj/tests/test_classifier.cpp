#include <gtest/gtest.h>

#include "lehmer/classifier.hpp"
#include "oracles.hpp"

using lehmer::ClassKind;
using lehmer::IntPolynomial;

namespace {

const IntPolynomial kLehmer = lehmer::parse("1,1,0,-1,-1,-1,-1,-1,0,1,1");

// Salem picture from companion eigenvalues of the stripped residual.
ClassKind numeric_kind(const IntPolynomial& p) {
  auto strip = lehmer::strip_cyclotomic_factors(p);
  const auto& r = strip.stripped;
  if (r.degree() < 1) return ClassKind::CyclotomicProduct;
  auto roots = oracle::companion_roots(oracle::coeffs(r));
  int outside = 0, on = 0, real_outside = 0;
  for (auto z : roots) {
    const double m = std::abs(z);
    if (m > 1 + 1e-6) {
      ++outside;
      if (std::abs(z.imag()) < 1e-6 && z.real() > 1) ++real_outside;
    } else if (m > 1 - 1e-6) {
      ++on;
    }
  }
  if (outside == 1 && real_outside == 1 && on > 0 && r.degree() >= 4) return ClassKind::Salem;
  if (outside == 1 && real_outside == 1 && on == 0) return ClassKind::Pisot;
  return ClassKind::Other;
}

}  // namespace

TEST(Salem, LehmerCertificate) {
  auto v = lehmer::is_salem(kLehmer);
  EXPECT_TRUE(v.salem);
  const auto& c = v.certificate;
  EXPECT_TRUE(c.reciprocal_even);
  EXPECT_EQ(c.half_degree, 5);
  EXPECT_EQ(c.roots_above_two, 1);
  EXPECT_EQ(c.roots_inside, 4);
  EXPECT_EQ(c.roots_below_minus_two, 0);
  EXPECT_FALSE(c.root_at_two);
  EXPECT_EQ(*c.trace_polynomial, lehmer::parse("3,4,-5,-5,1,1"));
}

TEST(Salem, QuarticSalem) {
  EXPECT_TRUE(lehmer::is_salem(lehmer::parse("1,-1,-1,-1,1")).salem);
}

TEST(Salem, NonSalemExamples) {
  auto plastic = lehmer::is_salem(lehmer::parse("-1,-1,0,1"));
  EXPECT_FALSE(plastic.salem);
  EXPECT_NE(plastic.certificate.reason.find("self-reciprocal"), std::string::npos);
  auto quad = lehmer::is_salem(lehmer::parse("1,-3,1"));
  EXPECT_FALSE(quad.salem);
  EXPECT_FALSE(quad.certificate.reciprocal_even);
  // x^4 - 3x^2 + 1 = (x^2 - x - 1)(x^2 + x - 1): two roots outside
  EXPECT_FALSE(lehmer::is_salem(lehmer::parse("1,0,-3,0,1")).salem);
}

TEST(Salem, CyclotomicFactorsAreStrippedFirst) {
  auto p = kLehmer * lehmer::cyclotomic_polynomial(3) * lehmer::cyclotomic_polynomial(1);
  auto v = lehmer::is_salem(p);
  EXPECT_TRUE(v.salem);
  EXPECT_EQ(v.certificate.removed_cyclotomic_degree, 3);
  EXPECT_EQ(v.certificate.residual, kLehmer);
}

TEST(Pisot, PlasticNumber) {
  auto v = lehmer::is_pisot(lehmer::parse("-1,-1,0,1"));
  EXPECT_TRUE(v.pisot);
  EXPECT_NEAR(*v.certificate.dominant_root, 1.32471795724474602596, 1e-12);
  EXPECT_NEAR(v.certificate.margin, 1 - 0.86883696183270930181, 1e-9);
  EXPECT_EQ(v.certificate.roots_outside, 1);
}

TEST(Pisot, GoldenSquare) {
  auto v = lehmer::is_pisot(lehmer::parse("1,-3,1"));
  EXPECT_TRUE(v.pisot);
  EXPECT_NEAR(*v.certificate.dominant_root, 2.61803398874989484820, 1e-12);
}

TEST(Pisot, SalemIsNotPisot) {
  auto v = lehmer::is_pisot(kLehmer);
  EXPECT_FALSE(v.pisot);
  EXPECT_TRUE(v.certificate.uncertain);
  EXPECT_FALSE(v.certificate.dominant_root.has_value());
}

TEST(Pisot, NegativeDominantRootIsNotPisot) {
  EXPECT_FALSE(lehmer::is_pisot(lehmer::parse("-1,1,1")).pisot);  // x^2 + x - 1: root -1.618
}

TEST(Classify, Examples) {
  EXPECT_EQ(lehmer::classify(lehmer::parse("1,1,1")).kind, ClassKind::CyclotomicProduct);
  auto salem = lehmer::classify(kLehmer);
  EXPECT_EQ(salem.kind, ClassKind::Salem);
  EXPECT_NEAR(*salem.dominant_root, 1.17628081825991750654, 1e-12);
  EXPECT_FALSE(salem.certificate.irreducibility_checked);
  auto pisot = lehmer::classify(lehmer::parse("-1,-1,0,1"));
  EXPECT_EQ(pisot.kind, ClassKind::Pisot);
  EXPECT_NEAR(*pisot.dominant_root, 1.32471795724474602596, 1e-12);
  EXPECT_EQ(lehmer::classify(lehmer::parse("1,0,-3,0,1")).kind, ClassKind::Other);
  auto quartic = lehmer::classify(lehmer::parse("1,-1,-1,-1,1"));
  EXPECT_EQ(quartic.kind, ClassKind::Salem);
  EXPECT_NEAR(*quartic.dominant_root, 1.72208380573904224503, 1e-12);
}

TEST(Classify, RequiresMonic) {
  EXPECT_THROW(lehmer::classify(lehmer::parse("1,2")), lehmer::DomainError);
  EXPECT_THROW(lehmer::is_salem(lehmer::parse("3")), lehmer::DomainError);
}

TEST(Classify, ConsistentWithRootPictureDegreeFive) {
  for (int n = 1; n <= 5; ++n)
    oracle::for_each_tuple(n, 1, [&](const oracle::Coeffs& t) {
      auto p = oracle::poly(oracle::monic(t));
      EXPECT_EQ(lehmer::classify(p).kind, numeric_kind(p)) << lehmer::to_wire(p);
    });
}
