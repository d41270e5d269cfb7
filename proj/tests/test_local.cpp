#include <gtest/gtest.h>

#include <random>

#include "njac/local_invariants.hpp"
#include "test_oracles.hpp"

using namespace njac;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

}  // namespace

TEST(IntersectionMultiplicity, Examples) {
  EXPECT_EQ(intersection_multiplicity(P("x"), P("y")), ExtNat(1));
  EXPECT_EQ(intersection_multiplicity(P("y^2-x^3"), P("y")), ExtNat(3));
  EXPECT_TRUE(intersection_multiplicity(P("y^2-x^3"), P("y^2-x^3")).is_infinite());
  EXPECT_EQ(intersection_multiplicity(P("1+x"), P("y")), ExtNat(0));
  // common factor 1+x is a unit at the origin
  EXPECT_EQ(intersection_multiplicity(P("(1+x)*y"), P("(1+x)*(y-x^2)")), ExtNat(2));
  EXPECT_THROW(intersection_multiplicity(Polynomial(), Polynomial()), DomainError);
}

TEST(IntersectionMultiplicity, MatchesInterpolationOracle) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, 4, 4) + P("y^2-x^3");
    Polynomial g = oracle::random_polynomial(rng, 3, 3) + P("x*y+y^3");
    f = f - Polynomial(f.constant_term());
    g = g - Polynomial(g.constant_term());
    if (!finiteness_check(f, g)) continue;
    EXPECT_EQ(intersection_multiplicity(f, g), ExtNat(oracle::intersection_multiplicity(f, g)))
        << to_string(f) << " ; " << to_string(g);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(IntersectionMultiplicity, SymmetricAndAdditive) {
  Polynomial f = P("y^3-x^5+x^2*y"), g = P("y^2-x^3"), h = P("y-2*x");
  EXPECT_EQ(intersection_multiplicity(f, g), intersection_multiplicity(g, f));
  EXPECT_EQ(intersection_multiplicity(f, g * h), intersection_multiplicity(f, g) + intersection_multiplicity(f, h));
}

TEST(Milnor, Examples) {
  EXPECT_EQ(milnor_number(P("y^2-x^3")), ExtNat(2));
  EXPECT_EQ(milnor_number(P("x+y^2")), ExtNat(0));
  EXPECT_EQ(milnor_number(P("x^3-5*y^2")), ExtNat(2));
  EXPECT_TRUE(milnor_number(P("(y-x^2)^2")).is_infinite());
  EXPECT_EQ(milnor_number(P("x*y*(x-y)*(x+y)")), ExtNat(9));
}

TEST(Milnor, TreeAndJetRoutesAgree) {
  for (const char* c : {"y^2-x^3", "y^3-x^7+x^5*y", "x*y*(x-y)", "y^4-2*x^3*y^2-4*x^5*y+x^6-x^7", "(y^2-x^3)*(y^3-x^2)",
                        "y^5+x^7+x^4*y^2"}) {
    Polynomial h = P(c);
    ExtNat mu = milnor_number(h);
    EXPECT_EQ(tree_milnor_number(h), mu) << c;
    EXPECT_EQ(tree_milnor_number_by_jets(h), mu) << c;
  }
}

TEST(Finiteness, Examples) {
  EXPECT_TRUE(finiteness_check(P("y^2-x^3"), P("x")));
  EXPECT_FALSE(finiteness_check(P("x*y"), P("x")));
  EXPECT_FALSE(finiteness_check(P("x"), P("x+x^2")));
  EXPECT_FALSE(finiteness_check(P("1+x"), P("y")));
}

TEST(Pencil, MonomialPairs) {
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      if (std::gcd(n, m) != 1) continue;
      auto r = generic_pencil_milnor(P("x"), P("y"), n, m);
      EXPECT_EQ(r.value, ExtNat((m - 1) * (n - 1))) << n << "," << m;
      EXPECT_TRUE(r.symbolic);
    }
  EXPECT_THROW(generic_pencil_milnor(P("x"), P("y"), 2, 4), DomainError);
}

TEST(Pencil, WorkedExamples) {
  EXPECT_EQ(generic_pencil_milnor(P("y^2-x^3"), P("x"), 1, 1).value, ExtNat(0));
  EXPECT_EQ(generic_pencil_milnor(P("y^2-x^3"), P("y"), 1, 1).value, ExtNat(0));
}

TEST(Pencil, SampledRouteAgreesWithSymbolic) {
  PencilOptions sampled;
  sampled.symbolic_degree_limit = 0;
  for (auto [f, g] : std::vector<std::pair<const char*, const char*>>{{"y^2-x^3", "x"}, {"y^2-x^3", "y"}, {"y^3-x^2*y+x^4", "x+y^2"}})
    for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 3}, {3, 2}}) {
      auto a = generic_pencil_milnor(P(f), P(g), n, m);
      auto b = generic_pencil_milnor(P(f), P(g), n, m, sampled);
      EXPECT_FALSE(b.symbolic);
      EXPECT_EQ(a.value, b.value) << f << " " << g << " " << n << "," << m;
      for (const auto& v : b.sample_values) EXPECT_LE(a.value, v);
    }
}

TEST(IntersectionMultiplicity, ModularOrderMatchesExactResultant) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, 4, 5) + P("y^4+x*y");
    Polynomial g = oracle::random_polynomial(rng, 3, 4) + P("y^3-x^2");
    f = f - Polynomial(f.constant_term());
    g = g - Polynomial(g.constant_term());
    if (f.coeff(0, f.degree_y()) == 0 || g.coeff(0, g.degree_y()) == 0) continue;
    if (f.degree_y() != f.total_degree() || g.degree_y() != g.total_degree()) continue;
    auto mod = local_detail::resultant_order_mod(f, g, 2147483647LL);
    ASSERT_TRUE(mod.has_value());
    EXPECT_EQ(*mod, oracle::resultant_by_interpolation(f, g).order()) << to_string(f) << " ; " << to_string(g);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}
