#pragma once

// Dense univariate polynomials over a commutative ring.
//
// The coefficient ring R is either the rationals (mpq_class, a field) or
// UPoly of something (a GCD domain). Ring-specific behaviour lives in
// RingOps<R>, so that the same resultant / gcd code runs over Q, Q[t] and
// Q[t][x].

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "njac/ext_nat.hpp"

namespace njac {

using Rational = mpq_class;

template <class R>
class UPoly;

template <class R>
struct RingOps;

template <>
struct RingOps<Rational> {
  static constexpr bool is_field = true;
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
  static Rational gcd(const Rational& a, const Rational& b) {
    return (is_zero(a) && is_zero(b)) ? Rational(0) : Rational(1);
  }
  /// Rational by which `a` is divided to make it "normalized".
  static Rational normal_factor(const Rational& a) { return a; }
  static Rational scale(const Rational& a, const Rational& s) { return a * s; }
};

template <class R>
class UPoly {
 public:
  UPoly() = default;
  UPoly(long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) c_.push_back(R(v));
  }
  UPoly(const R& c) {  // NOLINT(google-explicit-constructor)
    if (!RingOps<R>::is_zero(c)) c_.push_back(c);
  }
  explicit UPoly(std::vector<R> c) : c_(std::move(c)) { trim(); }

  static UPoly monomial(const R& c, int deg) {
    if (RingOps<R>::is_zero(c)) return UPoly();
    std::vector<R> v(static_cast<std::size_t>(deg) + 1, R(0));
    v.back() = c;
    return UPoly(std::move(v));
  }
  static UPoly variable() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return R(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const R& lead() const {
    if (c_.empty()) throw std::logic_error("lead() of zero polynomial");
    return c_.back();
  }

  /// Lowest degree with a nonzero coefficient; infinity for zero.
  ExtNat order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!RingOps<R>::is_zero(c_[i])) return ExtNat(static_cast<std::int64_t>(i));
    return ExtNat::infinity();
  }

  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (RingOps<R>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  UPoly mul_scalar(const R& s) const {
    if (RingOps<R>::is_zero(s)) return UPoly();
    UPoly r = *this;
    for (auto& x : r.c_) x = x * s;
    r.trim();
    return r;
  }

  /// Multiply by x^k.
  UPoly shift(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<R> v(static_cast<std::size_t>(k), R(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return UPoly(std::move(v));
  }

  /// Drop all terms of degree >= n.
  UPoly truncate(int n) const {
    if (n >= static_cast<int>(c_.size())) return *this;
    return UPoly(std::vector<R>(c_.begin(), c_.begin() + std::max(n, 0)));
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<R> v(c_.size() - 1, R(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * R(static_cast<long>(i));
    return UPoly(std::move(v));
  }

  template <class S>
  S evaluate(const S& at) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + S(c_[i]);
    return acc;
  }

  UPoly pow(unsigned k) const {
    UPoly result(1L), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

 private:
  void trim() {
    while (!c_.empty() && RingOps<R>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
R power(const R& base, unsigned k) {
  R result(1L), b = base;
  while (k) {
    if (k & 1u) result = result * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return result;
}

template <>
inline Rational power<Rational>(const Rational& base, unsigned k) {
  Rational result(1), b = base;
  while (k) {
    if (k & 1u) result *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return result;
}

/// lc(b)^(deg a - deg b + 1) * a mod b, valid over any commutative ring.
template <class R>
UPoly<R> pseudo_rem(UPoly<R> a, const UPoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_rem by zero");
  const int db = b.degree();
  if (a.degree() < db) return a;
  int e = a.degree() - db + 1;
  const R& lb = b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    UPoly<R> t = UPoly<R>::monomial(a.lead(), a.degree() - db);
    a = a.mul_scalar(lb) - t * b;
    --e;
  }
  if (e > 0) a = a.mul_scalar(power(lb, static_cast<unsigned>(e)));
  return a;
}

/// Quotient of an exact division; throws if b does not divide a.
template <class R>
UPoly<R> exact_div(UPoly<R> a, const UPoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("exact_div by zero");
  if (a.is_zero()) return a;
  const int db = b.degree();
  if (a.degree() < db) throw std::domain_error("exact_div: not divisible");
  std::vector<R> q(static_cast<std::size_t>(a.degree() - db) + 1, R(0));
  while (!a.is_zero() && a.degree() >= db) {
    const int k = a.degree() - db;
    R c = RingOps<R>::exact_div(a.lead(), b.lead());
    q[static_cast<std::size_t>(k)] = c;
    a -= UPoly<R>::monomial(c, k) * b;
    if (!a.is_zero() && a.degree() >= db + k) throw std::domain_error("exact_div: not divisible");
  }
  if (!a.is_zero()) throw std::domain_error("exact_div: not divisible");
  return UPoly<R>(std::move(q));
}

/// Euclidean division over a field.
template <class R>
std::pair<UPoly<R>, UPoly<R>> divmod(UPoly<R> a, const UPoly<R>& b) {
  static_assert(RingOps<R>::is_field, "divmod requires field coefficients");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {UPoly<R>(), a};
  std::vector<R> q(static_cast<std::size_t>(a.degree() - db) + 1, R(0));
  R inv_lead = R(1) / b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    const int k = a.degree() - db;
    R c = a.lead() * inv_lead;
    q[static_cast<std::size_t>(k)] = c;
    a -= UPoly<R>::monomial(c, k) * b;
  }
  return {UPoly<R>(std::move(q)), a};
}

template <class R>
UPoly<R> scale(const UPoly<R>& a, const Rational& s) {
  std::vector<R> v = a.coeffs();
  for (auto& x : v) x = RingOps<R>::scale(x, s);
  return UPoly<R>(std::move(v));
}

/// Divide by the rational making the innermost leading coefficient 1.
template <class R>
UPoly<R> normalize(const UPoly<R>& a) {
  if (a.is_zero()) return a;
  Rational f = RingOps<R>::normal_factor(a.lead());
  return scale(a, Rational(1) / f);
}

template <class R>
R content(const UPoly<R>& a) {
  R g(0);
  for (const auto& c : a.coeffs()) {
    g = RingOps<R>::gcd(g, c);
    if constexpr (RingOps<R>::is_field) {
      if (!RingOps<R>::is_zero(g)) return g;
    }
  }
  return g;
}

template <class R>
UPoly<R> primitive_part(const UPoly<R>& a) {
  if (a.is_zero()) return a;
  R c = content(a);
  std::vector<R> v = a.coeffs();
  for (auto& x : v) x = RingOps<R>::exact_div(x, c);
  return UPoly<R>(std::move(v));
}

namespace detail {

// Scales a nonzero rational polynomial to a primitive one with integer coefficients.
inline UPoly<Rational> integer_primitive(const UPoly<Rational>& a) {
  if (a.is_zero()) return a;
  mpz_class den = 1, num = 0;
  for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : a.coeffs()) {
    mpz_class z = c.get_num() * (den / c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), z.get_mpz_t());
  }
  std::vector<Rational> v;
  v.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) v.emplace_back(mpz_class(c.get_num() * (den / c.get_den()) / num));
  return UPoly<Rational>(std::move(v));
}

inline std::int64_t upoly_mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// True when a and b are certainly coprime: their images mod a prime not dividing
// either leading coefficient have a constant gcd.
inline bool coprime_mod_p(const UPoly<Rational>& a, const UPoly<Rational>& b) {
  if (a.degree() <= 0 || b.degree() <= 0) return false;
  for (std::int64_t p : {2147483629LL, 2147483587LL}) {
    auto reduce = [p](const UPoly<Rational>& f, bool& ok) {
      UPoly<Rational> z = integer_primitive(f);
      std::vector<std::int64_t> v;
      for (const auto& c : z.coeffs()) {
        mpz_class r = c.get_num() % p;
        if (r < 0) r += p;
        v.push_back(r.get_si());
      }
      ok = v.back() != 0;
      return v;
    };
    bool oka = false, okb = false;
    auto va = reduce(a, oka), vb = reduce(b, okb);
    if (!oka || !okb) continue;
    auto trim = [](std::vector<std::int64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    while (!vb.empty()) {
      const std::int64_t inv = upoly_mod_pow(vb.back(), p - 2, p);
      while (va.size() >= vb.size()) {
        const std::int64_t f = va.back() * inv % p;
        const std::size_t shift = va.size() - vb.size();
        for (std::size_t k = 0; k < vb.size(); ++k) va[k + shift] = ((va[k + shift] - f * vb[k]) % p + p) % p;
        trim(va);
        if (va.empty()) break;
      }
      std::swap(va, vb);
    }
    return va.size() == 1;
  }
  return false;
}

}  // namespace detail

/// Greatest common divisor, normalized (monic over a field; primitive with
/// normalized leading coefficient over a domain).
template <class R>
UPoly<R> gcd(UPoly<R> a, UPoly<R> b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if constexpr (std::is_same_v<R, Rational>) {
    if (detail::coprime_mod_p(a, b)) return UPoly<R>(std::vector<R>{R(1)});
    // Primitive remainder sequence: keeps coefficient growth in check.
    a = detail::integer_primitive(a);
    b = detail::integer_primitive(b);
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = detail::integer_primitive(r);
    }
    return normalize(a);
  } else if constexpr (RingOps<R>::is_field) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return normalize(a);
  } else {
    R c = RingOps<R>::gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
      UPoly<R> r = pseudo_rem(a, b);
      a = std::move(b);
      b = primitive_part(r);
    }
    return normalize(a.mul_scalar(c));
  }
}

/// Sylvester resultant via the subresultant PRS; exact over any domain.
template <class R>
R resultant(UPoly<R> a, UPoly<R> b) {
  if (a.is_zero() || b.is_zero()) return R(0);
  long sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    std::swap(a, b);
  }
  if (b.degree() == 0) return power(b.lead(), static_cast<unsigned>(a.degree())) * R(sign);
  R g(1L), h(1L);
  while (true) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    UPoly<R> r = pseudo_rem(a, b);
    a = std::move(b);
    if (r.is_zero()) return R(0);
    R divisor = g * power(h, static_cast<unsigned>(delta));
    std::vector<R> v = r.coeffs();
    for (auto& x : v) x = RingOps<R>::exact_div(x, divisor);
    b = UPoly<R>(std::move(v));
    g = a.lead();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = RingOps<R>::exact_div(power(g, static_cast<unsigned>(delta)),
                                power(h, static_cast<unsigned>(delta - 1)));
    }
    if (b.degree() == 0) {
      const int da = a.degree();
      R res;
      if (da == 0) {
        res = R(1L);
      } else {
        res = RingOps<R>::exact_div(power(b.lead(), static_cast<unsigned>(da)),
                                    power(h, static_cast<unsigned>(da - 1)));
      }
      return res * R(sign);
    }
  }
}

template <class R>
struct RingOps<UPoly<R>> {
  static constexpr bool is_field = false;
  static bool is_zero(const UPoly<R>& a) { return a.is_zero(); }
  static UPoly<R> exact_div(const UPoly<R>& a, const UPoly<R>& b) { return njac::exact_div(a, b); }
  static UPoly<R> gcd(const UPoly<R>& a, const UPoly<R>& b) { return njac::gcd(a, b); }
  static Rational normal_factor(const UPoly<R>& a) { return RingOps<R>::normal_factor(a.lead()); }
  static UPoly<R> scale(const UPoly<R>& a, const Rational& s) { return njac::scale(a, s); }
};

using QPoly = UPoly<Rational>;    // Q[t] or Q[x]
using QtxPoly = UPoly<QPoly>;     // Q[t][x]

}  // namespace njac
