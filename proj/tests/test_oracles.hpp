#pragma once

// Independent reference computations used only by the tests. These are
// deliberately naive so they share no code path with the library routines
// they check.

#include <random>
#include <vector>

#include "njac/bipoly.hpp"

namespace oracle {

using njac::Polynomial;
using njac::QPoly;
using njac::Rational;

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coef(-5, 5);
  Polynomial p;
  for (int k = 0; k < terms; ++k) {
    int i = deg(rng);
    int j = deg(rng);
    if (i + j > max_degree) continue;
    p.add_term(i, j, Rational(coef(rng)));
  }
  return p;
}

// Determinant by Laplace expansion along the first row.
inline QPoly laplace_det(const std::vector<std::vector<QPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return QPoly(Rational(1));
  if (n == 1) return m[0][0];
  QPoly total;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<QPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    QPoly term = m[0][col] * laplace_det(minor);
    if (col % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

// Sylvester resultant with respect to y, by explicit determinant.
inline QPoly sylvester_resultant_y(const Polynomial& f, const Polynomial& g) {
  auto a = f.as_poly_in_y();
  auto b = g.as_poly_in_y();
  const int da = a.degree(), db = b.degree();
  const std::size_t n = static_cast<std::size_t>(da + db);
  std::vector<std::vector<QPoly>> m(n, std::vector<QPoly>(n));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.coeff(da - k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k)
      m[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + k)] = b.coeff(db - k);
  return laplace_det(m);
}

// Determinant over Q by Gaussian elimination.
inline Rational rational_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Res_y(f, g) as a polynomial in x, by evaluating Sylvester determinants at
// integer points and interpolating.
inline QPoly resultant_by_interpolation(const Polynomial& f, const Polynomial& g) {
  const int da = f.degree_y(), db = g.degree_y();
  const int bound = f.total_degree() * g.total_degree() + 1;
  std::vector<Rational> xs, vals;
  for (int p = 0; p <= bound; ++p) {
    Rational x0 = p - bound / 2;
    std::vector<Rational> a(static_cast<std::size_t>(da + 1)), b(static_cast<std::size_t>(db + 1));
    for (const auto& [e, c] : f.terms()) {
      Rational v = c;
      for (int k = 0; k < e.i; ++k) v *= x0;
      a[static_cast<std::size_t>(e.j)] += v;
    }
    for (const auto& [e, c] : g.terms()) {
      Rational v = c;
      for (int k = 0; k < e.i; ++k) v *= x0;
      b[static_cast<std::size_t>(e.j)] += v;
    }
    const std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int r = 0; r < db; ++r)
      for (int k = 0; k <= da; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a[static_cast<std::size_t>(da - k)];
    for (int r = 0; r < da; ++r)
      for (int k = 0; k <= db; ++k)
        m[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + k)] = b[static_cast<std::size_t>(db - k)];
    xs.push_back(x0);
    vals.push_back(n == 0 ? Rational(1) : rational_det(m));
  }
  // Newton divided differences, then expand.
  const std::size_t n = xs.size();
  std::vector<Rational> dd = vals;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  QPoly result;
  QPoly basis(Rational(1));
  for (std::size_t k = 0; k < n; ++k) {
    result += basis * QPoly(dd[k]);
    basis = basis * QPoly(std::vector<Rational>{-xs[k], 1});
  }
  return result;
}

// i0(f, g) at the origin for coprime f, g: order of the resultant after a
// shear that makes both regular in y. Agreement of two shears is required.
inline long intersection_multiplicity(const Polynomial& f, const Polynomial& g) {
  long previous = -1;
  for (int c : {3, -5, 7, 11, -13}) {
    // x -> x + c y
    Polynomial fs, gs;
    Polynomial sh = Polynomial::x() + Polynomial::y().mul_scalar(Rational(c));
    fs = f.compose(sh, Polynomial::y());
    gs = g.compose(sh, Polynomial::y());
    QPoly r = resultant_by_interpolation(fs, gs);
    if (r.is_zero()) return -1;
    long o = static_cast<long>(r.order().value());
    if (o == previous) return o;
    previous = o;
  }
  return -2;
}

// True when a = c * b for some nonzero rational c.
inline bool proportional(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  const auto& [e0, c0] = *b.terms().begin();
  Rational ratio = a.coeff(e0.i, e0.j) / c0;
  return a == b.mul_scalar(ratio);
}

}  // namespace oracle
