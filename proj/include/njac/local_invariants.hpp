#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "njac/bipoly.hpp"
#include "njac/errors.hpp"
#include "njac/factor.hpp"
#include "njac/parse.hpp"
#include "njac/puiseux.hpp"

namespace njac {

constexpr std::uint64_t kDefaultSeed = 20240917;
/// Above this product of total degrees resultant orders are computed modulo primes.
constexpr int kExactResultantLimit = 40;

template <class C>
struct RegularizedPair {
  BiPoly<C> f, g;
  std::array<Rational, 4> change;  // (x, y) -> (c0 x + c1 y, c2 x + c3 y)
  BiPoly<C> tf, tg;
};

namespace local_detail {

// Arithmetic modulo a prime below 2^31.
struct ModP {
  std::int64_t p;
  std::int64_t reduce(const Rational& r) const {
    mpz_class n = r.get_num() % p, d = r.get_den() % p;
    if (n < 0) n += p;
    return n.get_si() * inv(d.get_si()) % p;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return a * b % p; }
  std::int64_t pow(std::int64_t b, std::int64_t e) const {
    std::int64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  std::int64_t inv(std::int64_t a) const { return pow(a, p - 2); }
};

// Resultant of two univariate polynomials of the given formal degrees.
inline std::int64_t resultant_mod(std::vector<std::int64_t> a, std::vector<std::int64_t> b, const ModP& m) {
  std::int64_t acc = 1;
  while (true) {
    const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (db == 0) return m.mul(acc, m.pow(b[0], da));
    if (da < db) {
      if ((da % 2 == 1) && (db % 2 == 1)) acc = (m.p - acc) % m.p;
      std::swap(a, b);
      continue;
    }
    // a <- a mod b
    const std::int64_t lb_inv = m.inv(b.back());
    while (a.size() >= b.size()) {
      const std::int64_t f = m.mul(a.back(), lb_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = (a[k + shift] - m.mul(f, b[k]) + m.p) % m.p;
      a.pop_back();
      while (!a.empty() && a.back() == 0 && a.size() >= b.size()) a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) return 0;
    const int dr = static_cast<int>(a.size()) - 1;
    // res(A, B) = (-1)^(da db) lc(B)^(da - dr) res(B, R)
    if ((da % 2 == 1) && (db % 2 == 1)) acc = (m.p - acc) % m.p;
    acc = m.mul(acc, m.pow(b.back(), da - dr));
    std::swap(a, b);
  }
}

// ord_x of Res_y(f, g) mod p, for f, g regular in y. Nullopt if p is unusable.
inline std::optional<ExtNat> resultant_order_mod(const Polynomial& f, const Polynomial& g, std::int64_t prime) {
  ModP m{prime};
  for (const Polynomial* h : {&f, &g})
    for (const auto& [e, c] : h->terms())
      if (c.get_den() % prime == 0) return std::nullopt;
  const int df = f.degree_y(), dg = g.degree_y();
  if (m.reduce(f.coeff(0, df)) == 0 || m.reduce(g.coeff(0, dg)) == 0) return std::nullopt;
  auto rows = [&](const Polynomial& h) {
    std::vector<std::vector<std::int64_t>> r(static_cast<std::size_t>(h.degree_y() + 1));
    for (const auto& [e, c] : h.terms()) {
      auto& row = r[static_cast<std::size_t>(e.j)];
      if (row.size() <= static_cast<std::size_t>(e.i)) row.resize(static_cast<std::size_t>(e.i) + 1, 0);
      row[static_cast<std::size_t>(e.i)] = m.reduce(c);
    }
    return r;
  };
  auto rf = rows(f), rg = rows(g);
  auto eval = [&](const std::vector<std::vector<std::int64_t>>& r, std::int64_t x0) {
    std::vector<std::int64_t> v(r.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = r[j].size(); i-- > 0;) acc = (m.mul(acc, x0) + r[j][i]) % m.p;
      v[j] = acc;
    }
    return v;
  };
  const int bound = f.total_degree() * g.total_degree();
  std::vector<std::int64_t> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    xs.push_back(k);
    ys.push_back(resultant_mod(eval(rf, k), eval(rg, k), m));
  }
  // Newton interpolation, then expand into monomial coefficients.
  const std::size_t n = xs.size();
  std::vector<std::int64_t> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i)
      dd[i] = m.mul((dd[i] - dd[i - 1] + m.p) % m.p, m.inv((xs[i] - xs[i - k] + m.p) % m.p));
  std::vector<std::int64_t> coef(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // coef <- coef * (x - xs[k]) + dd[k]
    for (std::size_t i = n - 1; i > 0; --i) coef[i] = (coef[i - 1] - m.mul(coef[i], xs[k]) + m.p) % m.p;
    coef[0] = (m.p - m.mul(coef[0], xs[k])) % m.p;
    coef[0] = (coef[0] + dd[k]) % m.p;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (coef[i] != 0) return ExtNat(static_cast<std::int64_t>(i));
  return ExtNat::infinity();
}

}  // namespace local_detail

namespace local_detail {

template <class C>
bool is_monomial(const UPoly<C>& p) {
  int nonzero = 0;
  for (const auto& c : p.coeffs())
    if (!RingOps<C>::is_zero(c)) ++nonzero;
  return nonzero == 1;
}

template <class C>
bool regular_in_y(const BiPoly<C>& p) {
  const int d = p.total_degree();
  if (p.degree_y() != d) return false;
  // the y^d coefficient must be a constant
  for (const auto& [e, c] : p.terms())
    if (e.j == d && e.i != 0) return false;
  return p.at_x_zero().order() == p.order();
}

/// After the change the resultant order counts only the origin.
template <class C>
bool certified(const BiPoly<C>& f, const BiPoly<C>& g) {
  if (!regular_in_y(f) || !regular_in_y(g)) return false;
  return is_monomial(gcd(f.at_x_zero(), g.at_x_zero()));
}

inline std::array<Rational, 4> random_change(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  while (true) {
    std::array<Rational, 4> m{Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
    if (m[0] * m[3] - m[1] * m[2] != 0) return m;
  }
}

template <class C>
std::optional<RegularizedPair<C>> regularize(const BiPoly<C>& f, const BiPoly<C>& g, std::mt19937_64& rng,
                                             int tries = 50) {
  for (int k = 0; k < tries; ++k) {
    auto m = random_change(rng);
    RegularizedPair<C> r{f, g, m, apply_linear(f, m[0], m[1], m[2], m[3]), apply_linear(g, m[0], m[1], m[2], m[3])};
    if (certified(r.tf, r.tg)) return r;
  }
  return std::nullopt;
}

/// ord_x Res_y with the generic-order semantics of the coefficient ring.
template <class C>
ExtNat resultant_order(const RegularizedPair<C>& r) {
  if constexpr (std::is_same_v<C, Rational>) {
    if (r.tf.total_degree() * r.tg.total_degree() > kExactResultantLimit) {
      // Each prime gives an upper bound (a nonzero residue is a nonzero
      // coefficient); two distinct primes must agree.
      std::vector<ExtNat> seen;
      for (std::int64_t p : {2147483647LL, 2147483629LL, 2147483587LL, 2147483579LL, 2147483563LL, 2147483549LL}) {
        auto v = resultant_order_mod(r.tf, r.tg, p);
        if (!v) continue;
        for (const auto& w : seen)
          if (w == *v) return *v;
        seen.push_back(*v);
      }
    }
  }
  return resultant(r.tf.as_poly_in_y(), r.tg.as_poly_in_y()).order();
}

/// i0 by two agreeing certified regularizations.

template <class C>
ExtNat regularized_i0(const BiPoly<C>& f, const BiPoly<C>& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::optional<ExtNat> previous;
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto r = regularize(f, g, rng);
    if (!r) break;
    ExtNat v = resultant_order(*r);
    if (previous && *previous == v) return v;
    previous = v;
  }
  throw DomainError(ErrorKind::Disagreement, "random linear changes did not give a stable intersection multiplicity");
}

}  // namespace local_detail

inline ExtNat intersection_multiplicity(Polynomial f, Polynomial g, std::uint64_t seed = kDefaultSeed) {
  if (f.is_zero() || g.is_zero()) {
    if (f.is_zero() && g.is_zero())
      throw DomainError(ErrorKind::ZeroPolynomial, "intersection multiplicity of two zero polynomials");
    const Polynomial& other = f.is_zero() ? g : f;
    return other.vanishes_at_origin() ? ExtNat::infinity() : ExtNat(0);
  }
  if (!f.vanishes_at_origin() || !g.vanishes_at_origin()) return ExtNat(0);
  // Drop common factors that are units at the origin.
  while (true) {
    Polynomial h = poly_gcd(f, g);
    if (is_constant(h)) break;
    if (h.vanishes_at_origin()) return ExtNat::infinity();
    f = exact_quotient(f, h);
  }
  return local_detail::regularized_i0(f, g, seed);
}

inline ExtNat milnor_number(const Polynomial& h, std::uint64_t seed = kDefaultSeed) {
  if (h.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "Milnor number of the zero polynomial");
  return intersection_multiplicity(h.dx(), h.dy(), seed);
}

inline bool finiteness_check(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return false;
  if (!f.vanishes_at_origin() || !g.vanishes_at_origin()) return false;
  Polynomial a = f;
  while (true) {
    Polynomial h = poly_gcd(a, g);
    if (is_constant(h)) return true;
    if (h.vanishes_at_origin()) return false;
    a = exact_quotient(a, h);
  }
}

/// Milnor number from the branch tree of h, using finite determinacy: a germ
/// with Milnor number mu is determined by its jet of order mu + 1.
inline ExtNat tree_milnor_number_by_jets(const Polynomial& h) {
  if (!h.vanishes_at_origin()) return ExtNat(0);
  const int top = h.total_degree();
  int d = std::min(top, std::max(2 * static_cast<int>(h.order().value()) + 2, 8));
  while (true) {
    Polynomial jet = h.truncate_total(d + 1);
    ExtNat mu = jet.is_zero() ? ExtNat::infinity() : tree_milnor_number(jet);
    if (d >= top) return mu;
    if (mu.is_finite() && mu.value() <= d - 1) return mu;
    int next = 2 * d;
    if (mu.is_finite()) next = std::max(next, static_cast<int>(mu.value()) + 1);
    d = std::min(top, next);
  }
}

struct PencilMilnor {
  ExtNat value;
  bool symbolic = true;
  std::vector<Rational> samples;
  std::vector<ExtNat> sample_values;
};

struct PencilOptions {
  /// Largest total degree of f^n - t g^m handled by the symbolic route.
  int symbolic_degree_limit = 6;
  int samples = 5;
  /// The sampled route stops once its minimum has been seen this many times.
  int agreeing_samples = 2;
  std::uint64_t seed = kDefaultSeed;
};

inline std::vector<Rational> pencil_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> num(-97, 97), den(1, 13);
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < count) {
    Rational t(num(rng), den(rng));
    t.canonicalize();
    if (t == 0 || std::find(out.begin(), out.end(), t) != out.end()) continue;
    out.push_back(t);
  }
  return out;
}

inline PencilMilnor generic_pencil_milnor(const Polynomial& f, const Polynomial& g, int n, int m,
                                          const PencilOptions& opt = {}) {
  if (n <= 0 || m <= 0 || std::gcd(n, m) != 1)
    throw DomainError(ErrorKind::InvalidArgument, "the pencil needs coprime positive exponents");
  if (!finiteness_check(f, g)) throw DomainError(ErrorKind::NotFinite, "the map germ is not finite");
  const Polynomial fn = f.pow(static_cast<unsigned>(n)), gm = g.pow(static_cast<unsigned>(m));
  PencilMilnor out;
  const int degree = std::max(fn.total_degree(), gm.total_degree());
  if (degree <= opt.symbolic_degree_limit) {
    TPolynomial h = lift_to_t(fn);
    for (const auto& [e, c] : gm.terms()) h.add_term(e.i, e.j, QPoly(std::vector<Rational>{0, -c}));
    TPolynomial hx = h.dx(), hy = h.dy();
    try {
      if (hx.is_zero() || hy.is_zero() || !hx.vanishes_at_origin() || !hy.vanishes_at_origin()) {
        out.value = hx.vanishes_at_origin() && hy.vanishes_at_origin() ? ExtNat::infinity() : ExtNat(0);
      } else {
        out.value = local_detail::regularized_i0(hx, hy, opt.seed);
      }
      if (out.value.is_infinite())
        throw DomainError(ErrorKind::NonGenericFailure, "the generic pencil member has a non-isolated singularity");
      return out;
    } catch (const DomainError& e) {
      if (e.kind() != ErrorKind::Disagreement) throw;
    }
  }
  out.symbolic = false;
  out.samples = pencil_samples(opt.samples, opt.seed);
  std::optional<ExtNat> best;
  // Special members have strictly larger Milnor number, so once the smallest
  // value has been seen twice further samples are very unlikely to go lower.
  for (const auto& t0 : out.samples) {
    ExtNat v = tree_milnor_number_by_jets(fn - gm.mul_scalar(t0));
    out.sample_values.push_back(v);
    if (!best || v < *best) best = v;
    if (std::count(out.sample_values.begin(), out.sample_values.end(), *best) >= opt.agreeing_samples) break;
  }
  if (!best || best->is_infinite())
    throw DomainError(ErrorKind::NonGenericFailure, "every sampled pencil member has a non-isolated singularity");
  out.value = *best;
  return out;
}

}  // namespace njac
