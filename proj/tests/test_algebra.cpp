#include <gtest/gtest.h>

#include <random>

#include "njac/factor.hpp"
#include "njac/parse.hpp"
#include "test_oracles.hpp"

using namespace njac;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

}  // namespace

TEST(Parse, SupportOfQuinticExample) {
  Polynomial h = P("y^5+2*x*y^3-x^3*y^2+3*x^4*y");
  std::vector<std::pair<int, int>> support;
  for (const auto& [e, c] : h.terms()) support.emplace_back(e.i, e.j);
  std::sort(support.begin(), support.end());
  std::vector<std::pair<int, int>> expected{{0, 5}, {1, 3}, {3, 2}, {4, 1}};
  EXPECT_EQ(support, expected);
  EXPECT_EQ(h.coeff(1, 3), 2);
  EXPECT_EQ(h.coeff(3, 2), -1);
}

TEST(Parse, ZeroAndSquare) {
  EXPECT_TRUE(P("0").is_zero());
  EXPECT_EQ(P("(y-x)^2"), P("y^2") - P("2*x*y") + P("x^2"));
  EXPECT_EQ(to_string(P("(y-x)^2")), "y^2-2*x*y+x^2");
}

TEST(Parse, ImplicitProductsAndRationals) {
  EXPECT_EQ(P("3x^2y"), P("3*x^2*y"));
  EXPECT_EQ(P("1/2 x - 3/4"), P("x").mul_scalar(Rational(1, 2)) - P("3/4"));
  EXPECT_EQ(P("u^2 - v"), P("x^2 - y"));
  EXPECT_EQ(P(" ( x + y ) ( x - y ) "), P("x^2-y^2"));
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("x^-1"), SyntaxError);
  try {
    P("x^-1");
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeExponent);
  }
  try {
    P("x + * y");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x^3-t"), SyntaxError);
  EXPECT_THROW(P("x+v"), SyntaxError);
  EXPECT_THROW(P("(x+y"), SyntaxError);
  EXPECT_THROW(P(""), SyntaxError);
  EXPECT_THROW(P("1/0"), SyntaxError);
}

TEST(Parse, RoundTripIsCanonical) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial p = oracle::random_polynomial(rng, 5, 6);
    std::string s = to_string(p);
    EXPECT_EQ(parse_polynomial(s), p) << s;
    EXPECT_EQ(to_string(parse_polynomial(s)), s);
  }
}

TEST(Resultant, AgainstCofactorDeterminant) {
  // Res_y(y^2 - x^3, y) is x^3 up to sign.
  auto r = resultant(P("y^2-x^3").as_poly_in_y(), P("y").as_poly_in_y());
  auto expected = oracle::sylvester_resultant_y(P("y^2-x^3"), P("y"));
  EXPECT_EQ(r, expected);
  EXPECT_EQ(r.degree(), 3);
  EXPECT_EQ(r.order(), ExtNat(3));

  auto r2 = resultant(P("y-x").as_poly_in_y(), P("y+x").as_poly_in_y());
  EXPECT_EQ(r2, oracle::sylvester_resultant_y(P("y-x"), P("y+x")));
  EXPECT_EQ(abs(r2.coeff(1)), 2);

  auto r3 = resultant(P("y^3+x*y+x^2").as_poly_in_y(), QtxPoly(QPoly(Rational(1))));
  EXPECT_EQ(r3, QPoly(Rational(1)));
}

TEST(Resultant, MatchesCofactorOnRandomInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, 3, 4);
    Polynomial g = oracle::random_polynomial(rng, 3, 4);
    if (f.degree_y() < 1 || g.degree_y() < 1) continue;
    EXPECT_EQ(resultant(f.as_poly_in_y(), g.as_poly_in_y()), oracle::sylvester_resultant_y(f, g));
  }
}

TEST(Resultant, Multiplicative) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, 3, 3) + P("y");
    Polynomial g = oracle::random_polynomial(rng, 3, 3) + P("y^2");
    Polynomial h = oracle::random_polynomial(rng, 3, 3) + P("y");
    auto lhs = resultant((f * g).as_poly_in_y(), h.as_poly_in_y());
    auto rhs = resultant(f.as_poly_in_y(), h.as_poly_in_y()) * resultant(g.as_poly_in_y(), h.as_poly_in_y());
    EXPECT_TRUE(lhs == rhs || lhs == -rhs);
  }
}

TEST(Resultant, OverParameterRing) {
  // Res_y(y - t*x, y - x) = x - t*x up to sign.
  TPolynomial a = lift_to_t(P("y"));
  a.add_term(1, 0, QPoly(std::vector<Rational>{0, -1}));
  TPolynomial b = lift_to_t(P("y-x"));
  auto r = resultant(a.as_poly_in_y(), b.as_poly_in_y());
  ASSERT_EQ(r.degree(), 1);
  QPoly c = r.coeff(1);
  EXPECT_TRUE(c == QPoly(std::vector<Rational>{1, -1}) || c == QPoly(std::vector<Rational>{-1, 1}));
}

TEST(XOrder, Basics) {
  EXPECT_EQ(QPoly(std::vector<Rational>{0, 0, 0, 1, 0, 1}).order(), ExtNat(3));
  EXPECT_TRUE(QPoly().order().is_infinite());
  // t*x^2 + (t^2 - t)*x^2 + x^4 has generic order 2.
  QtxPoly p(std::vector<QPoly>{QPoly(), QPoly(), QPoly(std::vector<Rational>{0, 1}) + QPoly(std::vector<Rational>{0, -1, 1}),
                               QPoly(), QPoly(Rational(1))});
  EXPECT_EQ(p.order(), ExtNat(2));
}

TEST(Squarefree, Examples) {
  auto d1 = squarefree_decomposition(P("(y^2-x^3)^2"));
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1[0].multiplicity, 2);
  EXPECT_EQ(d1[0].factor, P("y^2-x^3"));

  auto d2 = squarefree_decomposition(P("x*y"));
  ASSERT_EQ(d2.size(), 1u);
  EXPECT_EQ(d2[0].multiplicity, 1);
  EXPECT_EQ(d2[0].factor, P("x*y"));

  auto d3 = squarefree_decomposition(P("x^2*(y-x)"));
  ASSERT_EQ(d3.size(), 2u);
  EXPECT_EQ(d3[0].factor, P("y-x"));
  EXPECT_EQ(d3[0].multiplicity, 1);
  EXPECT_EQ(d3[1].factor, P("x"));
  EXPECT_EQ(d3[1].multiplicity, 2);

  EXPECT_THROW(squarefree_decomposition(Polynomial()), DomainError);
}

TEST(Squarefree, ReconstructsAndAgreesWithGcdOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial a = oracle::random_polynomial(rng, 2, 3) + P("y");
    Polynomial b = oracle::random_polynomial(rng, 2, 3) + P("x");
    Polynomial c = oracle::random_polynomial(rng, 1, 2) + P("y+1");
    Polynomial f = a * b * b * c * c * c;
    auto parts = squarefree_decomposition(f);
    Polynomial prod(1L);
    for (const auto& sf : parts) {
      prod *= sf.factor.pow(static_cast<unsigned>(sf.multiplicity));
      EXPECT_TRUE(is_constant(poly_gcd(poly_gcd(sf.factor, sf.factor.dx()), sf.factor.dy())));
    }
    EXPECT_TRUE(oracle::proportional(prod, f));
  }
}

TEST(Gcd, SharedFactorsOfLargeDegree) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    Polynomial common = (P("2+x-3*y") * (oracle::random_polynomial(rng, 3, 4) + P("y^2-x^3"))).pow(2);
    Polynomial a = common * (oracle::random_polynomial(rng, 4, 5) + P("y^5"));
    Polynomial b = common * (oracle::random_polynomial(rng, 4, 5) + P("x^4"));
    Polynomial g = poly_gcd(a, b);
    EXPECT_TRUE(divides(common, g));
    EXPECT_TRUE(divides(g, a));
    EXPECT_TRUE(divides(g, b));
    EXPECT_TRUE(is_constant(poly_gcd(exact_quotient(a, g), exact_quotient(b, g))));
  }
  EXPECT_TRUE(is_constant(poly_gcd(P("y^2-x^3"), P("y^3-x^5+x^4*y"))));
  EXPECT_EQ(poly_gcd(P("x^2*y"), P("x^3*(y+1)")), P("x^2"));
}

TEST(CoprimeBasis, SplitsSharedFactors) {
  auto cb = coprime_basis({P("x*y*(y-x)"), P("y^2*(y+x)")});
  // x*y*(y-x) and y^2*(y+x) share only y.
  ASSERT_EQ(cb.basis.size(), 3u);
  for (std::size_t k = 0; k < 2; ++k) {
    Polynomial prod(1L);
    for (std::size_t b = 0; b < cb.basis.size(); ++b) prod *= cb.basis[b].pow(static_cast<unsigned>(cb.exponents[k][b]));
    EXPECT_TRUE(oracle::proportional(prod, k == 0 ? P("x*y*(y-x)") : P("y^2*(y+x)")));
  }
  for (std::size_t a = 0; a < cb.basis.size(); ++a)
    for (std::size_t b = a + 1; b < cb.basis.size(); ++b) EXPECT_TRUE(is_constant(poly_gcd(cb.basis[a], cb.basis[b])));
}

TEST(ApplyLinear, Examples) {
  EXPECT_EQ(apply_linear(P("x"), 0, 1, 1, 0), P("y"));
  EXPECT_EQ(apply_linear(P("y^2-x^3"), 1, 0, 0, 1), P("y^2-x^3"));
  EXPECT_EQ(apply_linear(P("y^2"), 1, 0, 1, 1), P("(x+y)^2"));
  EXPECT_THROW(apply_linear(P("x"), 1, 2, 2, 4), DomainError);
}

TEST(ApplyLinear, InverseIsIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, 4, 5);
    Rational a = 2, b = -3, c = 1, d = 4;
    Rational det = a * d - b * c;
    Polynomial g = apply_linear(f, a, b, c, d);
    // (f o M) o M^-1 = f.
    Polynomial back = apply_linear(g, d / det, -b / det, -c / det, a / det);
    EXPECT_EQ(back, f);
  }
}
