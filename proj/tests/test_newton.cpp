#include <gtest/gtest.h>

#include <random>

#include "njac/algebraic.hpp"
#include "njac/newton.hpp"
#include "njac/parse.hpp"

using namespace njac;

namespace {

NewtonDiagram D(std::vector<Vertex> v) { return NewtonDiagram(std::move(v)); }

// Brute force l(v, Gamma) straight from a list of points.
std::int64_t brute_support(const std::vector<Vertex>& pts, std::int64_t a, std::int64_t b) {
  std::int64_t best = INT64_MAX;
  for (const auto& p : pts) best = std::min(best, a * p.i + b * p.j);
  return best;
}

}  // namespace

TEST(Tower, SqrtTwoInverse) {
  Tower base;
  KPoly m{base.from_rational(-2), base.zero(), base.one()};
  Tower t = base.extend(m, 1);
  AlgElem a = t.generator();
  EXPECT_EQ(t.mul(a, a), t.from_rational(2));
  AlgElem b = t.add(a, t.one());
  AlgElem bi = t.inv(b);
  EXPECT_EQ(t.mul(b, bi), t.one());
  EXPECT_TRUE(t.is_rational(t.mul(a, a)));
  EXPECT_FALSE(t.is_rational(a));
}

TEST(Tower, ZeroDivisorRaisesSplit) {
  Tower base;
  KPoly m{base.from_rational(-1), base.zero(), base.one()};
  Tower t = base.extend(m, 7);
  AlgElem a = t.generator();
  try {
    t.inv(t.sub(a, t.one()));
    FAIL();
  } catch (const SplitRequired& s) {
    EXPECT_EQ(s.level_id, 7u);
    EXPECT_EQ(s.f1.size() + s.f2.size(), 4u);
  }
}

TEST(Tower, TwoLevels) {
  Tower base;
  Tower t1 = base.extend(KPoly{base.from_rational(-2), base.zero(), base.one()}, 1);
  // b^2 = a
  Tower t2 = t1.extend(KPoly{t1.neg(t1.generator()), t1.zero(), t1.one()}, 2);
  AlgElem b = t2.generator();
  AlgElem b4 = t2.pow(b, 4);
  EXPECT_EQ(b4, t2.from_rational(2));
  EXPECT_EQ(t2.point_count(), 4);
  EXPECT_EQ(t2.mul(t2.inv(b), b), t2.one());
}

TEST(Newton, QuinticExample) {
  Polynomial h = parse_polynomial("y^5+2*x*y^3-x^3*y^2+3*x^4*y");
  NewtonDiagram d = diagram_of(h);
  std::vector<Vertex> expected{{0, 5}, {1, 3}, {4, 1}};
  EXPECT_EQ(d.vertices(), expected);
  auto parts = elementary_decomposition(d);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].to_string(), "Teis{1}{2}");
  EXPECT_EQ(parts[1].to_string(), "Teis{3}{2}");
  EXPECT_EQ(parts[2].to_string(), "Teis{inf}{1}");
  EXPECT_EQ(sum_of(parts), d);
  auto inc = inclinations(d);
  ASSERT_EQ(inc.size(), 3u);
  EXPECT_EQ(inc[0], ExtRational::of(1, 2));
  EXPECT_EQ(inc[1], ExtRational::of(3, 2));
  EXPECT_TRUE(inc[2].infinite);
}

TEST(Newton, MinkowskiSumMatchesProduct) {
  Polynomial f = parse_polynomial("y^2-x^3");
  Polynomial g = parse_polynomial("y^3+x^2*y+x^5");
  EXPECT_EQ(minkowski_sum(diagram_of(f), diagram_of(g)), diagram_of(f * g));
  EXPECT_EQ(minkowski_sum(NewtonDiagram(), diagram_of(f)), diagram_of(f));
}

TEST(Newton, SupportAgreesWithBruteForce) {
  std::vector<Vertex> pts{{0, 5}, {1, 3}, {3, 2}, {4, 1}, {7, 0}};
  NewtonDiagram d = lower_hull(pts);
  for (std::int64_t a = 1; a <= 8; ++a)
    for (std::int64_t b = 1; b <= 8; ++b) EXPECT_EQ(support(a, b, d), brute_support(pts, a, b));
}

TEST(Newton, ReconstructRoundTrips) {
  std::vector<NewtonDiagram> cases{D({{0, 4}, {1, 2}, {4, 0}}), D({{0, 0}}), D({{0, 3}, {1, 0}}), D({{0, 4}, {2, 0}}),
                                   D({{0, 7}, {1, 4}, {3, 2}, {6, 1}, {11, 0}}), D({{2, 3}}), D({{0, 2}, {5, 0}}),
                                   D({{1, 6}, {2, 2}, {7, 1}})};
  for (const auto& d : cases) {
    int queries = 0;
    SupportOracle o = [&](std::int64_t a, std::int64_t b) {
      ++queries;
      return support(a, b, d);
    };
    EXPECT_EQ(reconstruct_from_support(o, d.width() + 3, d.height() + 2), d) << d.to_string();
    EXPECT_EQ(reconstruct_exhaustive(o, d.width() + 1, d.height() + 1), d) << d.to_string();
  }
}

TEST(Newton, ReconstructFromKnownCorners) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 14);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vertex> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(Vertex{coord(rng), coord(rng)});
    pts.push_back(Vertex{0, coord(rng)});
    pts.push_back(Vertex{coord(rng), 0});
    const NewtonDiagram d = lower_hull(pts);
    SupportOracle o = [&](std::int64_t a, std::int64_t b) { return support(a, b, d); };
    EXPECT_EQ(reconstruct_from_support(o, d.first(), d.last()), d) << d.to_string();
  }
}

TEST(Newton, InconsistentOracleIsRejected) {
  SupportOracle bad = [](std::int64_t a, std::int64_t b) { return a * b; };
  EXPECT_THROW(reconstruct_from_support(bad, 5, 5), DomainError);
}

TEST(Newton, Transpose) {
  NewtonDiagram d = D({{0, 4}, {1, 2}, {4, 0}});
  EXPECT_EQ(transpose(d), D({{0, 4}, {2, 1}, {4, 0}}));
  EXPECT_EQ(transpose(transpose(d)), d);
}
