#pragma once

// Towers of simple algebraic extensions Q(a1)(a2)...(ak).
//
// Each level is given by a monic squarefree polynomial over the previous
// level. Squarefree is all we ask for, so a level is in general a product of
// fields rather than a field. When an inversion runs into a zero divisor the
// operation throws SplitRequired with a factorization of the offending
// modulus; the code that introduced that level is expected to catch it and
// redo its work once per factor ("dynamic evaluation").

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "njac/errors.hpp"
#include "njac/upoly.hpp"

namespace njac {

/// Element of a tower. At height 0 it is the rational q; at height h > 0 it
/// is the polynomial sum c[k] * a_h^k with coefficients of height h - 1
/// (trimmed, reduced modulo the level-h modulus).
struct AlgElem {
  Rational q;
  std::vector<AlgElem> c;

  AlgElem() = default;
  explicit AlgElem(Rational v) : q(std::move(v)) {}
};

inline bool operator==(const AlgElem& a, const AlgElem& b) {
  if (a.q != b.q || a.c.size() != b.c.size()) return false;
  for (std::size_t k = 0; k < a.c.size(); ++k)
    if (!(a.c[k] == b.c[k])) return false;
  return true;
}

using KPoly = std::vector<AlgElem>;  // univariate, index = degree

/// Thrown when a modulus is found to factor as f1 * f2 (both monic, of
/// positive degree, coefficients one level below).
struct SplitRequired {
  std::uint64_t level_id;
  KPoly f1;
  KPoly f2;
};

class Tower {
 public:
  struct Level {
    std::uint64_t id;
    KPoly modulus;  // monic, coefficients of height equal to this level's index
  };

  Tower() = default;

  int height() const { return static_cast<int>(levels_.size()); }
  const Level& level(int k) const { return *levels_[static_cast<std::size_t>(k)]; }
  int level_degree(int k) const { return static_cast<int>(level(k).modulus.size()) - 1; }

  /// Product of the level degrees: the number of points of the tower over C.
  long long point_count() const {
    long long n = 1;
    for (int k = 0; k < height(); ++k) n *= level_degree(k);
    return n;
  }

  Tower extend(KPoly monic_modulus, std::uint64_t id) const {
    Tower t = *this;
    t.levels_.push_back(std::make_shared<const Level>(Level{id, std::move(monic_modulus)}));
    return t;
  }

  /// The tower made of the first k levels.
  Tower prefix(int k) const {
    Tower t;
    t.levels_.assign(levels_.begin(), levels_.begin() + k);
    return t;
  }

  // Elements at full height.
  AlgElem zero() const { return AlgElem(); }
  AlgElem one() const { return from_rational(Rational(1)); }
  AlgElem from_rational(const Rational& r) const { return lift(AlgElem(r), 0); }
  /// The generator of the top level.
  AlgElem generator() const {
    const int h = height();
    if (h == 0) throw std::logic_error("generator of the base field");
    AlgElem g;
    g.c = {AlgElem(), lift_to(AlgElem(Rational(1)), 0, h - 1)};
    if (level_degree(h - 1) == 1) return reduce_top(std::move(g));
    return g;
  }

  bool is_zero(const AlgElem& a) const { return is_zero(a, height()); }
  AlgElem add(const AlgElem& a, const AlgElem& b) const { return add(a, b, height()); }
  AlgElem sub(const AlgElem& a, const AlgElem& b) const { return add(a, neg(b, height()), height()); }
  AlgElem neg(const AlgElem& a) const { return neg(a, height()); }
  AlgElem mul(const AlgElem& a, const AlgElem& b) const { return mul(a, b, height()); }
  AlgElem inv(const AlgElem& a) const { return inv(a, height()); }
  AlgElem pow(AlgElem base, unsigned k) const {
    AlgElem r = one();
    while (k) {
      if (k & 1u) r = mul(r, base);
      k >>= 1u;
      if (k) base = mul(base, base);
    }
    return r;
  }
  /// Throws SplitRequired if a is a nonzero zero divisor; a must be nonzero.
  void ensure_invertible(const AlgElem& a) const { (void)inv(a); }

  /// Embeds an element of height `from` into the full tower.
  AlgElem lift(const AlgElem& a, int from) const { return lift_to(a, from, height()); }

  /// Rational value if the element lies in Q.
  bool is_rational(const AlgElem& a, Rational* value = nullptr) const {
    const AlgElem* p = &a;
    for (int h = height(); h > 0; --h) {
      if (p->c.empty()) {
        if (value) *value = 0;
        return true;
      }
      if (p->c.size() > 1) return false;
      p = &p->c[0];
    }
    if (value) *value = p->q;
    return true;
  }

  std::string to_string(const AlgElem& a) const { return to_string(a, height()); }

  /// Minimal-polynomial style description of level k, e.g. "a1^2-2".
  std::string level_to_string(int k) const {
    const KPoly& m = level(k).modulus;
    std::ostringstream os;
    bool first = true;
    for (int d = static_cast<int>(m.size()) - 1; d >= 0; --d) {
      const AlgElem& cf = m[static_cast<std::size_t>(d)];
      if (is_zero(cf, k)) continue;
      std::string s = to_string(cf, k);
      std::string mono = d == 0 ? "" : (d == 1 ? var_name(k + 1) : var_name(k + 1) + "^" + std::to_string(d));
      append_term(os, s, mono, first);
      first = false;
    }
    return os.str();
  }

  static std::string var_name(int level_one_based) { return "a" + std::to_string(level_one_based); }

 private:
  static bool is_zero(const AlgElem& a, int h) { return h == 0 ? sgn(a.q) == 0 : a.c.empty(); }

  static void trim(KPoly& p, int h) {
    while (!p.empty() && is_zero(p.back(), h)) p.pop_back();
  }

  static AlgElem lift_to(const AlgElem& a, int from, int to) {
    AlgElem r = a;
    for (int h = from; h < to; ++h) {
      AlgElem w;
      if (!is_zero(r, h)) w.c.push_back(std::move(r));
      r = std::move(w);
    }
    return r;
  }

  AlgElem reduce_top(AlgElem g) const {
    const int h = height();
    reduce(g.c, h);
    return g;
  }

  static AlgElem neg(const AlgElem& a, int h) {
    if (h == 0) return AlgElem(Rational(-a.q));
    AlgElem r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(neg(x, h - 1));
    return r;
  }

  static AlgElem add(const AlgElem& a, const AlgElem& b, int h) {
    if (h == 0) return AlgElem(Rational(a.q + b.q));
    AlgElem r;
    const std::size_t n = std::max(a.c.size(), b.c.size());
    r.c.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k >= a.c.size())
        r.c[k] = b.c[k];
      else if (k >= b.c.size())
        r.c[k] = a.c[k];
      else
        r.c[k] = add(a.c[k], b.c[k], h - 1);
    }
    trim(r.c, h - 1);
    return r;
  }

  // p modulo the monic modulus of level h - 1 (p has coefficients of height h - 1).
  void reduce(KPoly& p, int h) const {
    const KPoly& m = level(h - 1).modulus;
    const std::size_t d = m.size() - 1;
    trim(p, h - 1);
    while (p.size() > d) {
      AlgElem top = p.back();
      const std::size_t shift = p.size() - 1 - d;
      for (std::size_t i = 0; i < d; ++i) {
        if (is_zero(m[i], h - 1)) continue;
        p[shift + i] = add(p[shift + i], neg(mul(top, m[i], h - 1), h - 1), h - 1);
      }
      p.pop_back();
      trim(p, h - 1);
    }
  }

  AlgElem mul(const AlgElem& a, const AlgElem& b, int h) const {
    if (h == 0) return AlgElem(Rational(a.q * b.q));
    if (a.c.empty() || b.c.empty()) return AlgElem();
    AlgElem r;
    r.c = poly_mul(a.c, b.c, h - 1);
    reduce(r.c, h);
    return r;
  }

  KPoly poly_mul(const KPoly& a, const KPoly& b, int h) const {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    if (h == 0) {
      for (auto& x : r) x.q = 0;
    } else {
      for (auto& x : r) x = AlgElem();
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (is_zero(a[i], h)) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (is_zero(b[j], h)) continue;
        r[i + j] = add(r[i + j], mul(a[i], b[j], h), h);
      }
    }
    trim(r, h);
    return r;
  }

  // Division with remainder of polynomials with coefficients of height h.
  std::pair<KPoly, KPoly> poly_divmod(KPoly a, const KPoly& b, int h) const {
    KPoly q;
    if (a.size() < b.size()) return {q, a};
    AlgElem lc_inv = inv(b.back(), h);
    q.assign(a.size() - b.size() + 1, AlgElem());
    while (!a.empty() && a.size() >= b.size()) {
      const std::size_t k = a.size() - b.size();
      AlgElem c = mul(a.back(), lc_inv, h);
      for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = add(a[k + i], neg(mul(c, b[i], h), h), h);
      q[k] = std::move(c);
      a.pop_back();
      trim(a, h);
    }
    trim(q, h);
    return {q, a};
  }

  AlgElem inv(const AlgElem& a, int h) const {
    if (is_zero(a, h)) throw std::domain_error("inverse of zero in an algebraic tower");
    if (h == 0) return AlgElem(Rational(1 / a.q));
    const KPoly& m = level(h - 1).modulus;
    KPoly r0 = m, r1 = a.c;
    KPoly s0, s1{lift_to(AlgElem(Rational(1)), 0, h - 1)};
    while (!r1.empty()) {
      auto [qt, rem] = poly_divmod(r0, r1, h - 1);
      KPoly s2 = poly_sub(s0, poly_mul(qt, s1, h - 1), h - 1);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd(a, m) up to a unit, s0 * a = r0 mod m.
    AlgElem lc_inv = inv(r0.back(), h - 1);
    if (r0.size() > 1) {
      KPoly g;
      for (const auto& x : r0) g.push_back(mul(x, lc_inv, h - 1));
      KPoly cofactor = poly_divmod(m, g, h - 1).first;
      throw SplitRequired{level(h - 1).id, std::move(g), std::move(cofactor)};
    }
    AlgElem r;
    for (const auto& x : s0) r.c.push_back(mul(x, lc_inv, h - 1));
    reduce(r.c, h);
    return r;
  }

  static KPoly poly_sub(const KPoly& a, const KPoly& b, int h) {
    KPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k < a.size() && k < b.size())
        r[k] = add(a[k], neg(b[k], h), h);
      else if (k < a.size())
        r[k] = a[k];
      else
        r[k] = neg(b[k], h);
    }
    trim(r, h);
    return r;
  }

  static void append_term(std::ostringstream& os, const std::string& coeff, const std::string& mono, bool first) {
    const bool compound = coeff.find_first_of("+-", 1) != std::string::npos;
    const bool negative = !coeff.empty() && coeff[0] == '-' && !compound;
    std::string body = negative ? coeff.substr(1) : coeff;
    if (negative)
      os << '-';
    else if (!first)
      os << '+';
    if (mono.empty()) {
      os << (compound ? "(" + body + ")" : body);
    } else if (body == "1") {
      os << mono;
    } else {
      os << (compound ? "(" + body + ")" : body) << '*' << mono;
    }
  }

  static std::string to_string(const AlgElem& a, int h) {
    if (h == 0) return a.q.get_str();
    if (a.c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = static_cast<int>(a.c.size()) - 1; d >= 0; --d) {
      const AlgElem& cf = a.c[static_cast<std::size_t>(d)];
      if (is_zero(cf, h - 1)) continue;
      std::string mono = d == 0 ? "" : (d == 1 ? var_name(h) : var_name(h) + "^" + std::to_string(d));
      append_term(os, to_string(cf, h - 1), mono, first);
      first = false;
    }
    return os.str();
  }

  std::vector<std::shared_ptr<const Level>> levels_;
};

/// Univariate polynomials over a tower (at the tower's full height).
class KPolyRing {
 public:
  explicit KPolyRing(const Tower& t) : t_(t) {}

  const Tower& tower() const { return t_; }

  void trim(KPoly& p) const {
    while (!p.empty() && t_.is_zero(p.back())) p.pop_back();
  }
  int degree(const KPoly& p) const { return static_cast<int>(p.size()) - 1; }

  KPoly add(const KPoly& a, const KPoly& b) const {
    KPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k < a.size() && k < b.size())
        r[k] = t_.add(a[k], b[k]);
      else
        r[k] = k < a.size() ? a[k] : b[k];
    }
    trim(r);
    return r;
  }
  KPoly sub(const KPoly& a, const KPoly& b) const { return add(a, scale(b, t_.from_rational(-1))); }
  KPoly scale(const KPoly& a, const AlgElem& s) const {
    KPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(t_.mul(x, s));
    trim(r);
    return r;
  }
  KPoly mul(const KPoly& a, const KPoly& b) const {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (t_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (t_.is_zero(b[j])) continue;
        r[i + j] = t_.add(r[i + j], t_.mul(a[i], b[j]));
      }
    }
    trim(r);
    return r;
  }
  KPoly derivative(const KPoly& a) const {
    KPoly r;
    for (std::size_t k = 1; k < a.size(); ++k) r.push_back(t_.mul(a[k], t_.from_rational(Rational(static_cast<long>(k)))));
    trim(r);
    return r;
  }

  std::pair<KPoly, KPoly> divmod(KPoly a, const KPoly& b) const {
    if (b.empty()) throw std::domain_error("division by the zero polynomial");
    KPoly q;
    trim(a);
    if (a.size() < b.size()) return {q, a};
    AlgElem lc_inv = t_.inv(b.back());
    q.assign(a.size() - b.size() + 1, AlgElem());
    while (!a.empty() && a.size() >= b.size()) {
      const std::size_t k = a.size() - b.size();
      AlgElem c = t_.mul(a.back(), lc_inv);
      for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = t_.sub(a[k + i], t_.mul(c, b[i]));
      q[k] = std::move(c);
      a.pop_back();
      trim(a);
    }
    trim(q);
    return {q, a};
  }

  KPoly monic(const KPoly& a) const {
    if (a.empty()) return a;
    return scale(a, t_.inv(a.back()));
  }

  /// Monic gcd. Inverting leading coefficients may throw SplitRequired.
  KPoly gcd(KPoly a, KPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      KPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  KPoly exact_quotient(const KPoly& a, const KPoly& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) throw std::logic_error("exact_quotient: nonzero remainder");
    return q;
  }

  /// Yun's algorithm: monic squarefree factors with their multiplicities.
  std::vector<std::pair<KPoly, int>> squarefree(const KPoly& f) const {
    std::vector<std::pair<KPoly, int>> out;
    if (degree(f) <= 0) return out;
    KPoly fm = monic(f);
    KPoly fp = derivative(fm);
    KPoly a = gcd(fm, fp);
    KPoly b = exact_quotient(fm, a);
    KPoly c = exact_quotient(fp, a);
    KPoly d = sub(c, derivative(b));
    for (int i = 1; degree(b) > 0; ++i) {
      KPoly ai = gcd(b, d);
      b = exact_quotient(b, ai);
      c = exact_quotient(d, ai);
      d = sub(c, derivative(b));
      if (degree(ai) > 0) out.emplace_back(std::move(ai), i);
    }
    return out;
  }

  AlgElem evaluate(const KPoly& p, const AlgElem& x) const {
    AlgElem acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = t_.add(t_.mul(acc, x), *it);
    return acc;
  }

  /// Lifts a polynomial whose coefficients live at height `from`.
  KPoly lift(const KPoly& p, int from) const {
    KPoly r;
    for (const auto& x : p) r.push_back(t_.lift(x, from));
    return r;
  }

 private:
  Tower t_;
};

}  // namespace njac
