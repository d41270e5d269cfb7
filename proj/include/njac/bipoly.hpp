#pragma once

// Sparse polynomials in two variables x, y.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "njac/errors.hpp"
#include "njac/upoly.hpp"

namespace njac {

/// Exponent pair (i, j) of the monomial x^i y^j.
struct Exponent {
  int i = 0;
  int j = 0;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic by (i + j, i); this is also the canonical print order.
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
    return a.i < b.i;
  }
};

template <class C>
class BiPoly {
 public:
  using Terms = std::map<Exponent, C, GradedOrder>;

  BiPoly() = default;
  BiPoly(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Exponent{0, 0}, C(c));
  }
  explicit BiPoly(const C& c) {
    if (!RingOps<C>::is_zero(c)) terms_.emplace(Exponent{0, 0}, c);
  }

  static BiPoly monomial(const C& c, int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    BiPoly p;
    if (!RingOps<C>::is_zero(c)) p.terms_.emplace(Exponent{i, j}, c);
    return p;
  }
  static BiPoly x() { return monomial(C(1L), 1, 0); }
  static BiPoly y() { return monomial(C(1L), 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(int i, int j) const {
    auto it = terms_.find(Exponent{i, j});
    return it == terms_.end() ? C(0L) : it->second;
  }
  C constant_term() const { return coeff(0, 0); }
  bool vanishes_at_origin() const { return RingOps<C>::is_zero(constant_term()); }

  /// Adds c * x^i y^j.
  void add_term(int i, int j, const C& c) {
    if (RingOps<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Exponent{i, j}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (RingOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const {
    if (is_zero()) return -1;
    return terms_.rbegin()->first.i + terms_.rbegin()->first.j;
  }
  /// Lowest total degree of a term (the multiplicity at the origin).
  ExtNat order() const {
    if (is_zero()) return ExtNat::infinity();
    return ExtNat(terms_.begin()->first.i + terms_.begin()->first.j);
  }
  int degree_x() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.i);
    return d;
  }
  int degree_y() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.j);
    return d;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (!(e == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.i, e.j, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.i, e.j, -c);
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea.i + eb.i, ea.j + eb.j, C(ca * cb));
    return r;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  BiPoly mul_scalar(const C& s) const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.add_term(e.i, e.j, C(c * s));
    return r;
  }

  BiPoly pow(unsigned k) const {
    BiPoly result(1L), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  BiPoly dx() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
      if (e.i > 0) r.add_term(e.i - 1, e.j, C(c * C(static_cast<long>(e.i))));
    return r;
  }
  BiPoly dy() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
      if (e.j > 0) r.add_term(e.i, e.j - 1, C(c * C(static_cast<long>(e.j))));
    return r;
  }

  /// Drops all terms of total degree >= d.
  BiPoly truncate_total(int d) const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
      if (e.i + e.j < d) r.terms_.emplace(e, c);
    return r;
  }

  BiPoly swap_xy() const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.j, e.i}, c);
    return r;
  }

  /// Largest k with x^k dividing this polynomial (infinity for zero).
  ExtNat x_valuation() const {
    if (is_zero()) return ExtNat::infinity();
    int k = terms_.begin()->first.i;
    for (const auto& [e, c] : terms_) k = std::min(k, e.i);
    return ExtNat(k);
  }
  ExtNat y_valuation() const {
    if (is_zero()) return ExtNat::infinity();
    int k = terms_.begin()->first.j;
    for (const auto& [e, c] : terms_) k = std::min(k, e.j);
    return ExtNat(k);
  }

  /// Divides by x^a y^b; every term must be divisible.
  BiPoly divide_monomial(int a, int b) const {
    BiPoly r;
    for (const auto& [e, c] : terms_) {
      if (e.i < a || e.j < b) throw std::domain_error("divide_monomial: not divisible");
      r.terms_.emplace(Exponent{e.i - a, e.j - b}, c);
    }
    return r;
  }

  /// f(p(x,y), q(x,y)) computed exactly.
  BiPoly compose(const BiPoly& p, const BiPoly& q) const {
    if (is_zero()) return *this;
    std::vector<BiPoly> pp{BiPoly(1L)}, qp{BiPoly(1L)};
    const int dx = degree_x(), dy = degree_y();
    for (int k = 1; k <= dx; ++k) pp.push_back(pp.back() * p);
    for (int k = 1; k <= dy; ++k) qp.push_back(qp.back() * q);
    // Group by y-exponent to reuse products.
    std::map<int, BiPoly> by_j;
    for (const auto& [e, c] : terms_) by_j[e.j] += pp[static_cast<std::size_t>(e.i)].mul_scalar(c);
    BiPoly r;
    for (const auto& [j, part] : by_j) r += part * qp[static_cast<std::size_t>(j)];
    return r;
  }

  /// Value at a point of the coefficient ring.
  C evaluate(const C& xv, const C& yv) const {
    C acc(0L);
    for (const auto& [e, c] : terms_) acc = acc + c * power(xv, static_cast<unsigned>(e.i)) * power(yv, static_cast<unsigned>(e.j));
    return acc;
  }

  /// Restriction to x = 0 as a polynomial in y.
  UPoly<C> at_x_zero() const {
    std::vector<C> v(static_cast<std::size_t>(std::max(degree_y(), 0)) + 1, C(0L));
    for (const auto& [e, c] : terms_)
      if (e.i == 0) v[static_cast<std::size_t>(e.j)] = c;
    return UPoly<C>(std::move(v));
  }
  UPoly<C> at_y_zero() const { return swap_xy().at_x_zero(); }

  /// Dense form as a polynomial in y whose coefficients are polynomials in x.
  UPoly<UPoly<C>> as_poly_in_y() const {
    if (is_zero()) return {};
    std::vector<std::vector<C>> rows(static_cast<std::size_t>(degree_y()) + 1);
    for (const auto& [e, c] : terms_) {
      auto& row = rows[static_cast<std::size_t>(e.j)];
      if (row.size() <= static_cast<std::size_t>(e.i)) row.resize(static_cast<std::size_t>(e.i) + 1, C(0L));
      row[static_cast<std::size_t>(e.i)] = c;
    }
    std::vector<UPoly<C>> v;
    v.reserve(rows.size());
    for (auto& row : rows) v.emplace_back(std::move(row));
    return UPoly<UPoly<C>>(std::move(v));
  }
  static BiPoly from_poly_in_y(const UPoly<UPoly<C>>& p) {
    BiPoly r;
    for (int j = 0; j <= p.degree(); ++j) {
      const auto& row = p.coeffs()[static_cast<std::size_t>(j)];
      for (int i = 0; i <= row.degree(); ++i) r.add_term(i, j, row.coeffs()[static_cast<std::size_t>(i)]);
    }
    return r;
  }
  UPoly<UPoly<C>> as_poly_in_x() const { return swap_xy().as_poly_in_y(); }
  static BiPoly from_poly_in_x(const UPoly<UPoly<C>>& p) { return from_poly_in_y(p).swap_xy(); }

  /// Polynomial in x alone (y-degree must be 0).
  static BiPoly from_univariate_x(const UPoly<C>& p) {
    BiPoly r;
    for (int i = 0; i <= p.degree(); ++i) r.add_term(i, 0, p.coeffs()[static_cast<std::size_t>(i)]);
    return r;
  }
  static BiPoly from_univariate_y(const UPoly<C>& p) { return from_univariate_x(p).swap_xy(); }

 private:
  Terms terms_;
};

using Polynomial = BiPoly<Rational>;   // over Q
using TPolynomial = BiPoly<QPoly>;     // over Q[t]

/// Embeds a rational polynomial into the Q[t]-coefficient ring.
inline TPolynomial lift_to_t(const Polynomial& p) {
  TPolynomial r;
  for (const auto& [e, c] : p.terms()) r.add_term(e.i, e.j, QPoly(c));
  return r;
}

/// Substitutes the value t0 for the parameter.
inline Polynomial specialize_t(const TPolynomial& p, const Rational& t0) {
  Polynomial r;
  for (const auto& [e, c] : p.terms()) r.add_term(e.i, e.j, c.evaluate(t0));
  return r;
}

/// f(m11 x + m12 y, m21 x + m22 y).
template <class C>
BiPoly<C> apply_linear(const BiPoly<C>& f, const Rational& m11, const Rational& m12, const Rational& m21,
                       const Rational& m22) {
  if (sgn(Rational(m11 * m22 - m12 * m21)) == 0)
    throw DomainError(ErrorKind::SingularMatrix, "linear change has zero determinant");
  auto lin = [](const Rational& a, const Rational& b) {
    BiPoly<C> r;
    r.add_term(1, 0, C(a));
    r.add_term(0, 1, C(b));
    return r;
  };
  return f.compose(lin(m11, m12), lin(m21, m22));
}

}  // namespace njac
