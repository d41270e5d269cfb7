#pragma once

// Newton-Puiseux tree of several tracked polynomials at the origin.
//
// The input polynomials are replaced by a coprime basis of squarefree
// "colors". One tree is grown for the product of all colors; every leaf is a
// group of conjugate analytic branches of exactly one color, and the orders of
// all other colors along it fall out of the transforms. Coefficients live in
// towers of squarefree extensions (see algebraic.hpp).
//
// Each step uses the substitution
//     x = xi^v X^q,   y = X^m (xi^u + Y),   u q - v m = 1,
// for an edge of slope m/q (di/dj) and a root xi of its edge polynomial,
// followed by division by X^l. Below the root the polynomials are known only
// modulo X^P; polygons are accepted only when they are certified.

#include <climits>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "njac/algebraic.hpp"
#include "njac/bipoly.hpp"
#include "njac/errors.hpp"
#include "njac/ext_nat.hpp"
#include "njac/factor.hpp"
#include "njac/newton.hpp"

namespace njac {

constexpr std::int64_t kExactPrecision = INT64_MAX;

struct PrecisionPolicy {
  /// Initial x-adic truncation below the root; 0 picks 4 * degree + 16.
  std::int64_t start = 0;
  /// Largest truncation tried before switching to untruncated transforms.
  std::int64_t cap = 512;
};

struct PuiseuxStep {
  int q = 1;
  int m = 1;
  int u = 1;
  int v = 0;
  AlgElem xi;              // root of the edge polynomial
  int xi_height = 0;       // height of the tower xi lives in
  std::uint64_t edge = 0;  // identifies the root set taken at this step
  int level_degree = 1;    // degree of the level adjoined for xi (1: xi was rational over the tower)
  std::vector<std::int64_t> l;  // per color: X-power divided out by this step
};

enum class BranchKind { Regular, YZero, XAxis };

/// A group of conjugate branches: one per point of `tower`.
struct BranchGroup {
  BranchKind kind = BranchKind::Regular;
  int owner = 0;
  std::vector<PuiseuxStep> steps;
  Tower tower;
  std::vector<std::int64_t> end_orders;  // YZero / XAxis: orders of the other colors at the end node
  std::vector<ExtNat> color_orders;      // order of every color along each branch of the group

  long long conjugates() const { return tower.point_count(); }

  /// n_k = ord_s X_k along the branch, k = 0..steps.size().
  std::vector<std::int64_t> chart_orders() const {
    std::vector<std::int64_t> n(steps.size() + 1, 1);
    for (std::size_t k = steps.size(); k-- > 0;) n[k] = n[k + 1] * steps[k].q;
    return n;
  }
  /// Ramification index: ord_s x.
  std::int64_t ramification() const { return kind == BranchKind::XAxis ? 0 : chart_orders()[0]; }
};

namespace puiseux_detail {

using KTerms = std::map<std::pair<std::int64_t, std::int64_t>, AlgElem>;

struct NeedPrecision {};

struct ColorState {
  int color;
  KTerms terms;
  std::int64_t prec;
};

inline std::pair<int, int> bezout_uv(int q, int m) {
  if (m == 1) return {1, q - 1};
  // u = q^{-1} mod m in [1, m)
  int u = 1;
  while ((static_cast<long long>(u) * q) % m != 1) ++u;
  int v = static_cast<int>((static_cast<long long>(u) * q - 1) / m);
  return {u, v};
}

inline Rational binomial(std::int64_t n, std::int64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

/// Powers of an element, computed on demand.
class PowerCache {
 public:
  PowerCache(const Tower& t, AlgElem base) : t_(t) { p_.push_back(t.one()), p_.push_back(std::move(base)); }
  const AlgElem& get(std::int64_t k) {
    while (static_cast<std::int64_t>(p_.size()) <= k) p_.push_back(t_.mul(p_.back(), p_[1]));
    return p_[static_cast<std::size_t>(k)];
  }

 private:
  const Tower& t_;
  std::vector<AlgElem> p_;
};

inline std::int64_t child_precision(std::int64_t prec, int q, std::int64_t l, std::int64_t budget) {
  std::int64_t p = prec == kExactPrecision ? kExactPrecision : static_cast<std::int64_t>(q) * prec - l;
  return std::min(p, budget);
}

/// Applies one step to a polynomial over the tower t (which contains xi).
inline KTerms transform(const Tower& t, const KTerms& in, const PuiseuxStep& s, std::int64_t l,
                        std::int64_t prec_out) {
  KTerms out;
  PowerCache xi(t, t.lift(s.xi, s.xi_height));
  for (const auto& [e, c] : in) {
    const auto [i, j] = e;
    const std::int64_t base = s.q * i + s.m * j - l;
    if (base < 0) throw std::logic_error("transform: negative exponent");
    if (base >= prec_out) continue;
    for (std::int64_t k = 0; k <= j; ++k) {
      AlgElem coef = t.mul(c, xi.get(s.v * i + s.u * (j - k)));
      if (k != 0 && k != j) coef = t.mul(coef, t.from_rational(binomial(j, k)));
      auto [it, inserted] = out.try_emplace({base, k}, coef);
      if (!inserted) {
        it->second = t.add(it->second, coef);
        if (t.is_zero(it->second)) out.erase(it);
      }
    }
  }
  return out;
}

inline KTerms lift_terms(const Tower& t, const KTerms& in, int from) {
  if (from == t.height()) return in;
  KTerms out;
  for (const auto& [e, c] : in) out.emplace(e, t.lift(c, from));
  return out;
}

inline KTerms terms_of(const Tower& t, const Polynomial& p) {
  KTerms out;
  for (const auto& [e, c] : p.terms()) out.emplace(std::make_pair(std::int64_t{e.i}, std::int64_t{e.j}), t.from_rational(c));
  return out;
}

/// Newton polygon of the known part; hull vertices are checked to be units.
inline NewtonDiagram certified_polygon_vertices(const Tower& t, const KTerms& terms) {
  std::vector<Vertex> pts;
  pts.reserve(terms.size());
  for (const auto& [e, c] : terms) pts.push_back(Vertex{e.first, e.second});
  NewtonDiagram d = lower_hull(std::move(pts));
  for (const auto& v : d.vertices()) t.ensure_invertible(terms.at({v.i, v.j}));
  return d;
}

/// x(s), y(s) of the branch Y = 0 at the end of `path`, as polynomials in s.
inline std::pair<KPoly, KPoly> path_parametrization(const KPolyRing& ring, const std::vector<PuiseuxStep>& path) {
  const Tower& t = ring.tower();
  KPoly x{t.zero(), t.one()};  // X_d = s
  KPoly y;                     // Y_d = 0
  for (std::size_t k = path.size(); k-- > 0;) {
    const PuiseuxStep& s = path[k];
    AlgElem xi = t.lift(s.xi, s.xi_height);
    // X^m as a polynomial in s
    KPoly xm{t.one()};
    for (int r = 0; r < s.m; ++r) xm = ring.mul(xm, x);
    KPoly inner = y;
    if (inner.empty()) inner.push_back(t.zero());
    inner[0] = t.add(inner[0], t.pow(xi, static_cast<unsigned>(s.u)));
    ring.trim(inner);
    KPoly new_y = ring.mul(xm, inner);
    KPoly xq{t.one()};
    for (int r = 0; r < s.q; ++r) xq = ring.mul(xq, x);
    x = ring.scale(xq, t.pow(xi, static_cast<unsigned>(s.v)));
    y = std::move(new_y);
  }
  return {x, y};
}

/// p(x(s), y(s)) for a rational polynomial p.
inline KPoly substitute(const KPolyRing& ring, const Polynomial& p, const KPoly& x, const KPoly& y) {
  const Tower& t = ring.tower();
  auto rows = p.as_poly_in_y();  // coefficients in x
  KPoly acc;
  std::vector<KPoly> xpow{KPoly{t.one()}};
  for (int j = rows.degree(); j >= 0; --j) {
    acc = ring.mul(acc, y);
    const QPoly& a = rows.coeff(j);
    KPoly term;
    for (int i = 0; i <= a.degree(); ++i) {
      if (sgn(a.coeff(i)) == 0) continue;
      while (static_cast<int>(xpow.size()) <= i) xpow.push_back(ring.mul(xpow.back(), x));
      term = ring.add(term, ring.scale(xpow[static_cast<std::size_t>(i)], t.from_rational(a.coeff(i))));
    }
    acc = ring.add(acc, term);
  }
  return acc;
}

/// Decides whether the branch Y = 0 at the end of `path` lies on root_poly = 0.
inline bool y_branch_lies_on(const Tower& t, const std::vector<PuiseuxStep>& path, const Polynomial& root_poly) {
  KPolyRing ring(t);
  auto [x, y] = path_parametrization(ring, path);
  KPoly val = substitute(ring, root_poly, x, y);
  if (val.empty()) return true;
  for (const auto& c : val) {
    if (t.is_zero(c)) continue;
    t.ensure_invertible(c);  // a zero divisor here forces a split
    return false;
  }
  return true;
}

struct ColorEdgeInfo {
  int q, m;
  std::int64_t i_b, j_b;  // lower-right endpoint of the edge
  int g;                  // lattice length
};

/// Squarefree, pairwise coprime pieces of a family of polynomials over t.
struct RootSet {
  KPoly poly;
  std::map<int, int> mult;  // color -> multiplicity of each root
};

inline std::vector<RootSet> coprime_roots(const KPolyRing& ring, const std::vector<std::pair<int, KPoly>>& polys) {
  std::vector<RootSet> items;
  for (const auto& [color, p] : polys)
    for (auto& [f, e] : ring.squarefree(p)) items.push_back(RootSet{f, {{color, e}}});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < items.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < items.size() && !changed; ++b) {
        KPoly g = ring.gcd(items[a].poly, items[b].poly);
        if (ring.degree(g) <= 0) continue;
        RootSet common{g, items[a].mult};
        for (const auto& [c, e] : items[b].mult) common.mult[c] += e;
        RootSet ra{ring.exact_quotient(items[a].poly, g), items[a].mult};
        RootSet rb{ring.exact_quotient(items[b].poly, g), items[b].mult};
        std::vector<RootSet> next;
        for (std::size_t k = 0; k < items.size(); ++k)
          if (k != a && k != b) next.push_back(std::move(items[k]));
        for (RootSet* it : {&common, &ra, &rb})
          if (ring.degree(it->poly) > 0) next.push_back(std::move(*it));
        items = std::move(next);
        changed = true;
      }
    }
  }
  return items;
}


inline std::vector<mpz_class> divisors_of(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> primes;
  std::vector<int> exps;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 1000000) return {};  // too large to factor by trial division
    if (n % d != 0) continue;
    primes.push_back(d);
    exps.push_back(0);
    while (n % d == 0) n /= d, ++exps.back();
  }
  if (n > 1) primes.push_back(n), exps.push_back(1);
  std::vector<mpz_class> out{1};
  for (std::size_t k = 0; k < primes.size(); ++k) {
    std::size_t sz = out.size();
    mpz_class pk = 1;
    for (int e = 1; e <= exps[k]; ++e) {
      pk *= primes[k];
      for (std::size_t r = 0; r < sz; ++r) out.push_back(out[r] * pk);
    }
  }
  return out;
}

/// Rational roots of a polynomial whose coefficients all lie in Q.
inline std::vector<Rational> rational_roots(const Tower& t, const KPoly& p) {
  std::vector<Rational> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!t.is_rational(p[k], &c[k])) return {};
  mpz_class den = 1;
  for (const auto& r : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den_mpz_t());
  std::vector<mpz_class> z(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) z[k] = Rational(c[k] * den).get_num();
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  std::vector<Rational> roots;
  if (low > 0) roots.push_back(0);
  if (low + 1 >= z.size()) return roots;
  auto num = divisors_of(z[low]);
  auto dens = divisors_of(z.back());
  if (num.empty() || dens.empty()) return roots;
  for (const auto& a : num)
    for (const auto& b : dens)
      for (int sign : {1, -1}) {
        if (gcd(a, b) != 1) continue;
        Rational x(sign * a, b);
        Rational v = 0;
        for (std::size_t k = z.size(); k-- > 0;) v = v * x + Rational(z[k]);
        if (v == 0) roots.push_back(x);
      }
  return roots;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<Polynomial>& root_colors, std::int64_t budget)
      : root_colors_(root_colors), budget_(budget), ncolors_(static_cast<int>(root_colors.size())) {}

  std::vector<BranchGroup> run(const std::vector<ColorState>& root, const std::vector<Polynomial>& root_for_check) {
    root_check_ = root_for_check;
    return node(Tower(), root, {});
  }

 private:
  std::vector<BranchGroup> node(const Tower& K, const std::vector<ColorState>& active,
                                const std::vector<PuiseuxStep>& path) {
    std::vector<BranchGroup> out;
    std::vector<NewtonDiagram> polys;
    int y_owner = -1;
    for (const auto& cs : active) {
      if (cs.terms.empty()) {
        if (cs.prec == kExactPrecision) throw std::logic_error("vanishing tracked polynomial");
        throw NeedPrecision{};
      }
      NewtonDiagram d = certified_polygon_vertices(K, cs.terms);
      if (d.first().i != 0) throw std::logic_error("tracked polynomial divisible by X");
      const Vertex last = d.last();
      if (last.j >= 1) {
        if (last.j > 1 && cs.prec == kExactPrecision) throw std::logic_error("tracked polynomial is not squarefree");
        if (last.j > 1) throw NeedPrecision{};
        if (cs.prec != kExactPrecision && !y_branch_lies_on(K, path, root_check_[static_cast<std::size_t>(cs.color)]))
          throw NeedPrecision{};
        if (y_owner >= 0) throw std::logic_error("two tracked polynomials contain the same branch");
        y_owner = cs.color;
      }
      polys.push_back(std::move(d));
    }

    if (y_owner >= 0) {
      BranchGroup g;
      g.kind = BranchKind::YZero;
      g.owner = y_owner;
      g.steps = path;
      g.tower = K;
      g.end_orders.assign(static_cast<std::size_t>(ncolors_), 0);
      for (std::size_t k = 0; k < active.size(); ++k)
        if (active[k].color != y_owner) g.end_orders[static_cast<std::size_t>(active[k].color)] = polys[k].last().i;
      finish(g);
      out.push_back(std::move(g));
    }

    // Distinct edge slopes over all colors, in a fixed order.
    std::set<std::pair<int, int>> slopes;  // (m, q)
    std::vector<std::vector<ColorEdgeInfo>> edges(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto& v = polys[k].vertices();
      for (std::size_t e = 1; e < v.size(); ++e) {
        std::int64_t di = v[e].i - v[e - 1].i, dj = v[e - 1].j - v[e].j;
        std::int64_t g = std::gcd(di, dj);
        ColorEdgeInfo info{static_cast<int>(dj / g), static_cast<int>(di / g), v[e].i, v[e].j, static_cast<int>(g)};
        edges[k].push_back(info);
        slopes.insert({info.m, info.q});
      }
    }

    KPolyRing ring(K);
    for (const auto& [m, q] : slopes) {
      std::vector<std::pair<int, KPoly>> edge_polys;
      for (std::size_t k = 0; k < active.size(); ++k) {
        for (const auto& info : edges[k]) {
          if (info.m != m || info.q != q) continue;
          KPoly phi(static_cast<std::size_t>(info.g) + 1);
          for (int t = 0; t <= info.g; ++t) {
            auto it = active[k].terms.find({info.i_b - static_cast<std::int64_t>(m) * t, info.j_b + static_cast<std::int64_t>(q) * t});
            if (it != active[k].terms.end()) phi[static_cast<std::size_t>(t)] = it->second;
          }
          ring.trim(phi);
          edge_polys.emplace_back(active[k].color, std::move(phi));
        }
      }
      std::vector<std::int64_t> l(static_cast<std::size_t>(ncolors_), 0);
      for (std::size_t k = 0; k < active.size(); ++k) l[static_cast<std::size_t>(active[k].color)] = support(q, m, polys[k]);
      auto [u, v] = bezout_uv(q, m);
      PuiseuxStep proto;
      proto.q = q;
      proto.m = m;
      proto.u = u;
      proto.v = v;
      proto.l = l;
      for (auto& rs : coprime_roots(ring, edge_polys)) {
        auto groups = root_set(K, std::move(rs), proto, active, path);
        for (auto& g : groups) out.push_back(std::move(g));
      }
    }
    return out;
  }

  std::vector<BranchGroup> root_set(const Tower& K, RootSet rs, const PuiseuxStep& proto,
                                    const std::vector<ColorState>& active, const std::vector<PuiseuxStep>& path) {
    std::vector<BranchGroup> out;
    std::vector<KPoly> work{std::move(rs.poly)};
    KPolyRing ring(K);
    while (!work.empty()) {
      KPoly b = std::move(work.back());
      work.pop_back();
      if (ring.degree(b) > 1) {
        auto roots = rational_roots(K, b);
        if (!roots.empty()) {
          KPoly rest = b;
          for (const auto& r : roots) {
            KPoly lin{K.from_rational(-r), K.one()};
            rest = ring.exact_quotient(rest, lin);
            work.push_back(std::move(lin));
          }
          if (ring.degree(rest) > 0) work.push_back(ring.monic(rest));
          continue;
        }
      }
      const std::uint64_t id = next_id_++;
      PuiseuxStep step = proto;
      step.edge = id;
      Tower K2 = K;
      if (ring.degree(b) == 1) {
        step.xi = K.neg(b[0]);
        step.level_degree = 1;
      } else {
        K2 = K.extend(b, id);
        step.xi = K2.generator();
        step.level_degree = ring.degree(b);
      }
      step.xi_height = K2.height();
      try {
        auto groups = descend(K, K2, step, rs.mult, active, path);
        for (auto& g : groups) out.push_back(std::move(g));
      } catch (const SplitRequired& s) {
        if (s.level_id != id) throw;
        work.push_back(s.f1);
        work.push_back(s.f2);
      }
    }
    return out;
  }

  std::vector<BranchGroup> descend(const Tower& K, const Tower& K2, const PuiseuxStep& step,
                                   const std::map<int, int>& mult, const std::vector<ColorState>& active,
                                   std::vector<PuiseuxStep> path) {
    int r = 0, owner = -1;
    for (const auto& [c, e] : mult) {
      r += e;
      owner = c;
    }
    path.push_back(step);
    if (r == 1) {
      BranchGroup g;
      g.kind = BranchKind::Regular;
      g.owner = owner;
      g.steps = std::move(path);
      g.tower = K2;
      g.end_orders.assign(static_cast<std::size_t>(ncolors_), 0);
      finish(g);
      return {std::move(g)};
    }
    std::vector<ColorState> child;
    for (const auto& cs : active) {
      if (!mult.count(cs.color)) continue;
      const std::int64_t l = step.l[static_cast<std::size_t>(cs.color)];
      const std::int64_t p = child_precision(cs.prec, step.q, l, budget_);
      if (p <= 0) throw NeedPrecision{};
      KTerms lifted = lift_terms(K2, cs.terms, K.height());
      child.push_back(ColorState{cs.color, transform(K2, lifted, step, l, p), p});
    }
    return node(K2, child, path);
  }

  void finish(BranchGroup& g) const {
    auto n = g.chart_orders();
    g.color_orders.assign(static_cast<std::size_t>(ncolors_), ExtNat(0));
    for (int c = 0; c < ncolors_; ++c) {
      if (c == g.owner) {
        g.color_orders[static_cast<std::size_t>(c)] = ExtNat::infinity();
        continue;
      }
      std::int64_t total = g.end_orders[static_cast<std::size_t>(c)];
      for (std::size_t k = 0; k < g.steps.size(); ++k) total += g.steps[k].l[static_cast<std::size_t>(c)] * n[k + 1];
      g.color_orders[static_cast<std::size_t>(c)] = ExtNat(total);
    }
  }

  const std::vector<Polynomial>& root_colors_;
  std::vector<Polynomial> root_check_;
  std::int64_t budget_;
  int ncolors_;
  std::uint64_t next_id_ = 1;
};

}  // namespace puiseux_detail

/// Tree data for a family of polynomials at the origin.
class LocalAnalysis {
 public:
  LocalAnalysis() = default;

  /// Inputs must be nonzero.
  static LocalAnalysis build(const std::vector<Polynomial>& inputs, const PrecisionPolicy& policy = {}) {
    LocalAnalysis a;
    for (const auto& p : inputs)
      if (p.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "cannot analyze the zero polynomial");
    CoprimeBasis cb = coprime_basis(inputs);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < cb.basis.size(); ++k)
      if (cb.basis[k].vanishes_at_origin()) keep.push_back(k);
    for (std::size_t k : keep) a.colors_.push_back(cb.basis[k]);
    a.exponents_.assign(inputs.size(), std::vector<int>(keep.size(), 0));
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (std::size_t k = 0; k < keep.size(); ++k) a.exponents_[i][k] = cb.exponents[i][keep[k]];
    a.grow(policy);
    return a;
  }

  const std::vector<Polynomial>& colors() const { return colors_; }
  int exponent(std::size_t input, std::size_t color) const { return exponents_[input][color]; }
  std::size_t input_count() const { return exponents_.size(); }
  const std::vector<BranchGroup>& groups() const { return groups_; }
  /// Largest truncation that was needed (kExactPrecision for untruncated).
  std::int64_t precision_used() const { return budget_used_; }

  /// Multiplicity of the branches of group g as components of input k.
  int multiplicity(std::size_t input, std::size_t group) const {
    return exponents_[input][static_cast<std::size_t>(groups_[group].owner)];
  }

  /// Order of input k along each branch of group g.
  ExtNat order(std::size_t input, std::size_t group) const {
    ExtNat total(0);
    for (std::size_t c = 0; c < colors_.size(); ++c) {
      const int e = exponents_[input][c];
      if (e == 0) continue;
      total = total + static_cast<std::int64_t>(e) * groups_[group].color_orders[c];
    }
    return total;
  }

  /// One analytic branch: a group and a point of its tower.
  struct Branch {
    std::size_t group;
    std::vector<int> point;  // index per level-adjoining step
  };

  std::vector<Branch> branches() const {
    std::vector<Branch> out;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      std::vector<int> degs;
      for (const auto& s : groups_[g].steps)
        if (s.level_degree > 1) degs.push_back(s.level_degree);
      std::vector<int> idx(degs.size(), 0);
      while (true) {
        out.push_back(Branch{g, idx});
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == degs[k]) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    return out;
  }

  /// Intersection multiplicity of two analytic branches (infinite iff equal).
  ExtNat contact(const Branch& a, const Branch& b) const {
    const BranchGroup& ga = groups_[a.group];
    const BranchGroup& gb = groups_[b.group];
    if (ga.kind == BranchKind::XAxis && gb.kind == BranchKind::XAxis) {
      if (a.group == b.group) return ExtNat::infinity();
      throw std::logic_error("two x-axis branches");
    }
    if (ga.kind == BranchKind::XAxis) return ExtNat(gb.ramification());
    if (gb.kind == BranchKind::XAxis) return ExtNat(ga.ramification());
    auto na = ga.chart_orders(), nb = gb.chart_orders();
    std::int64_t total = 0;
    std::size_t ia = 0, ib = 0;  // point cursors
    for (std::size_t k = 0;; ++k) {
      const bool has_a = k < ga.steps.size(), has_b = k < gb.steps.size();
      if (has_a && has_b && ga.steps[k].edge == gb.steps[k].edge) {
        const auto& s = ga.steps[k];
        bool same_point = true;
        if (s.level_degree > 1) same_point = a.point[ia] == b.point[ib];
        if (same_point) {
          if (s.level_degree > 1) ++ia, ++ib;
          total += static_cast<std::int64_t>(s.m) * s.q * na[k + 1] * nb[k + 1];
          continue;
        }
      }
      if (!has_a && !has_b) return ExtNat::infinity();
      // The branches part at node k.
      Rational sa = has_a ? Rational(ga.steps[k].m, ga.steps[k].q) : Rational(-1);
      Rational sb = has_b ? Rational(gb.steps[k].m, gb.steps[k].q) : Rational(-1);
      Rational smin;
      if (!has_a)
        smin = sb;
      else if (!has_b)
        smin = sa;
      else
        smin = std::min(sa, sb);
      Rational val = smin * Rational(static_cast<long>(na[k])) * Rational(static_cast<long>(nb[k]));
      if (val.get_den() != 1) throw std::logic_error("non-integral contact");
      return ExtNat(total + val.get_num().get_si());
    }
  }

 private:
  void grow(const PrecisionPolicy& policy) {
    using namespace puiseux_detail;
    const int ncolors = static_cast<int>(colors_.size());
    // Root: split off the branch x = 0.
    std::vector<Polynomial> reduced = colors_;
    int x_owner = -1;
    for (int c = 0; c < ncolors; ++c) {
      if (colors_[static_cast<std::size_t>(c)].x_valuation() == ExtNat(1)) {
        x_owner = c;
        reduced[static_cast<std::size_t>(c)] = colors_[static_cast<std::size_t>(c)].divide_monomial(1, 0);
      }
    }
    int deg = 1;
    for (const auto& c : colors_) deg = std::max(deg, c.total_degree());
    std::int64_t budget = policy.start > 0 ? policy.start : 4 * static_cast<std::int64_t>(deg) + 16;
    Tower base;
    std::vector<ColorState> root;
    for (int c = 0; c < ncolors; ++c) {
      const Polynomial& p = reduced[static_cast<std::size_t>(c)];
      if (!p.vanishes_at_origin()) continue;
      root.push_back(ColorState{c, terms_of(base, p), kExactPrecision});
    }
    while (true) {
      try {
        TreeBuilder tb(colors_, budget);
        groups_ = tb.run(root, reduced);
        budget_used_ = budget;
        break;
      } catch (const NeedPrecision&) {
        if (budget == kExactPrecision) throw std::logic_error("untruncated tree asked for precision");
        budget = budget >= policy.cap ? kExactPrecision : std::min(budget * 2, std::max(policy.cap, budget + 1));
      } catch (const SplitRequired&) {
        throw std::logic_error("unhandled split of a tower level");
      }
    }
    if (x_owner >= 0) {
      // the removed factor x has order e along every other branch
      for (auto& g : groups_)
        g.color_orders[static_cast<std::size_t>(x_owner)] += ExtNat(g.ramification());
      BranchGroup g;
      g.kind = BranchKind::XAxis;
      g.owner = x_owner;
      g.end_orders.assign(static_cast<std::size_t>(ncolors), 0);
      g.color_orders.assign(static_cast<std::size_t>(ncolors), ExtNat(0));
      for (int c = 0; c < ncolors; ++c) {
        if (c == x_owner) {
          g.color_orders[static_cast<std::size_t>(c)] = ExtNat::infinity();
          continue;
        }
        ExtNat o = colors_[static_cast<std::size_t>(c)].at_x_zero().order();
        g.end_orders[static_cast<std::size_t>(c)] = o.value();
        g.color_orders[static_cast<std::size_t>(c)] = o;
      }
      groups_.insert(groups_.begin(), std::move(g));
    }
  }

  std::vector<Polynomial> colors_;
  std::vector<std::vector<int>> exponents_;
  std::vector<BranchGroup> groups_;
  std::int64_t budget_used_ = 0;
};

}  // namespace njac
