#include <gtest/gtest.h>

#include <random>

#include "njac/equisingularity.hpp"
#include "test_oracles.hpp"

using namespace njac;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

}  // namespace

TEST(Fingerprint, PairExamples) {
  auto fp = pair_fingerprint(P("y^2-x^3"), P("x"));
  ASSERT_EQ(fp.branches.size(), 2u);
  EXPECT_EQ(fp.branches[0].label, 'F');
  EXPECT_EQ(fp.branches[0].characteristic.to_string(), "(2;3)");
  EXPECT_EQ(fp.branches[1].label, 'G');
  EXPECT_EQ(fp.branches[1].characteristic.to_string(), "(1;)");
  EXPECT_EQ(fp.contacts[0][1], ExtNat(oracle::intersection_multiplicity(P("y^2-x^3"), P("x"))));

  auto xy = pair_fingerprint(P("x"), P("y"));
  EXPECT_EQ(xy.contacts[0][1], ExtNat(1));

  auto sq = pair_fingerprint(P("(y^2-x^3)^2"), P("y"));
  EXPECT_EQ(sq.branches[0].multiplicity, 2);
  EXPECT_EQ(sq.contacts[0][1], ExtNat(3));
  EXPECT_THROW(pair_fingerprint(P("x*y"), P("x")), DomainError);
}

TEST(Fingerprint, CurveExamples) {
  EXPECT_EQ(curve_fingerprint(P("y^2-x^3")).to_string(), "Cx1(2;3) |");
  EXPECT_EQ(curve_fingerprint(P("x*y")).to_string(), "Cx1(1;) Cx1(1;) | 1");
  EXPECT_EQ(curve_fingerprint(P("x+y^2")).to_string(), "Cx1(1;) |");
}

TEST(Fingerprint, IndependentOfEnumerationOrder) {
  // The same curve written with its factors in another order and coordinates swapped.
  auto a = curve_fingerprint(P("(y^2-x^3)*(y-x)*(y+2*x)*(y^3-x^2)"));
  auto b = curve_fingerprint(P("(x^2-y^3)*(x+2*y)*(x-y)*(x^3-y^2)"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
}

TEST(Automorphism, DeterministicAndLinearWhenDegreeOne) {
  auto a = random_automorphism(5, 3), b = random_automorphism(5, 3);
  EXPECT_EQ(a.phi1, b.phi1);
  EXPECT_EQ(a.phi2, b.phi2);
  auto l = random_automorphism(9, 1);
  EXPECT_EQ(l.phi1.total_degree(), 1);
  EXPECT_EQ(l.phi2.total_degree(), 1);
  EXPECT_NE(l.phi1.coeff(1, 0) * l.phi2.coeff(0, 1) - l.phi1.coeff(0, 1) * l.phi2.coeff(1, 0), 0);
}

TEST(Automorphism, TransformPreservesInvariants) {
  const Polynomial f = P("y^3-x^7+x^5*y"), g = P("y^2-x^3");
  auto base = pair_fingerprint(f, g);
  auto identity = AutomorphismGerm{P("x"), P("y"), 1};
  auto [f0, g0] = transform_pair(f, g, identity, P("1"), P("1"));
  EXPECT_EQ(f0, f);
  EXPECT_EQ(g0, g);
  for (std::uint64_t s = 1; s <= 4; ++s) {
    std::mt19937_64 rng(s);
    auto [f2, g2] = transform_pair(f, g, random_automorphism(s, 3), random_unit(rng), random_unit(rng));
    EXPECT_EQ(pair_fingerprint(f2, g2), base);
    EXPECT_EQ(intersection_multiplicity(f2, g2), intersection_multiplicity(f, g));
    EXPECT_EQ(milnor_number(f2), milnor_number(f));
  }
  EXPECT_THROW(transform_pair(f, g, identity, P("x"), P("1")), DomainError);
}

TEST(PencilFingerprint, Examples) {
  EXPECT_EQ(generic_pencil_fingerprint(P("v^2-u^3"), P("u"), 1).fingerprint.to_string(), "Cx1(1;) |");
  EXPECT_EQ(generic_pencil_fingerprint(P("x"), P("y"), 1).fingerprint.to_string(), "Cx1(1;) |");
  EXPECT_EQ(generic_pencil_fingerprint(P("y^2-x^3"), P("x^2"), 1).fingerprint.to_string(), "Cx1(1;) Cx1(1;) | 1");
}

TEST(Invariance, WorkedGerms) {
  auto r = verify_njac_invariance(P("v^2-u^3"), P("u"), 3, 3, 7);
  EXPECT_TRUE(r.all_match());
  EXPECT_EQ(r.base, NewtonDiagram({Vertex{0, 3}, Vertex{1, 0}}));
  auto id = verify_njac_invariance(P("u"), P("v"), 2, 2, 7);
  EXPECT_TRUE(id.all_match());
  EXPECT_EQ(id.base, NewtonDiagram());
}
