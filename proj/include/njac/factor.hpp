#pragma once

// GCD, exact division, squarefree decomposition and coprime bases for
// polynomials in Q[x, y].

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "njac/bipoly.hpp"
#include "njac/errors.hpp"

namespace njac {

inline bool is_constant(const Polynomial& p) { return p.total_degree() <= 0; }

/// Normalized gcd in Q[x, y] (leading coefficient in y, then in x, equal to 1).
namespace detail {

constexpr std::int64_t kGcdPrime = 2147483629;

inline std::int64_t mod_reduce(const mpz_class& z) {
  mpz_class r = z % kGcdPrime;
  if (r < 0) r += kGcdPrime;
  return r.get_si();
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kGcdPrime;
  while (e) {
    if (e & 1) r = r * b % kGcdPrime;
    b = b * b % kGcdPrime;
    e >>= 1;
  }
  return r;
}

// a(x0, y) mod p as a dense vector in y, after clearing denominators.
inline std::vector<std::int64_t> specialize_mod(const Polynomial& a, std::int64_t x0) {
  mpz_class den = 1;
  for (const auto& [e, c] : a.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::int64_t> v(static_cast<std::size_t>(a.degree_y() + 1), 0);
  for (const auto& [e, c] : a.terms()) {
    mpz_class z = c.get_num() * (den / c.get_den());
    auto& slot = v[static_cast<std::size_t>(e.j)];
    slot = (slot + mod_reduce(z) * mod_pow(x0, e.i)) % kGcdPrime;
  }
  return v;
}

inline int mod_gcd_degree(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  auto trim = [](std::vector<std::int64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    const std::int64_t inv = mod_pow(b.back(), kGcdPrime - 2);
    while (a.size() >= b.size()) {
      const std::int64_t f = a.back() * inv % kGcdPrime;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = ((a[k + shift] - f * b[k]) % kGcdPrime + kGcdPrime) % kGcdPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when gcd(a, b) certainly has y-degree 0.
inline bool coprime_in_y_mod_p(const Polynomial& a, const Polynomial& b) {
  if (a.degree_y() == 0 || b.degree_y() == 0) return true;
  for (std::int64_t x0 : {3, 7, 12, 31}) {
    auto va = specialize_mod(a, x0), vb = specialize_mod(b, x0);
    if (va.back() == 0 || vb.back() == 0) continue;
    return mod_gcd_degree(std::move(va), std::move(vb)) == 0;
  }
  return false;
}

using BiQ = UPoly<QPoly>;

inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton form, accumulated incrementally.
  QPoly result, basis(Rational(1));
  std::vector<Rational> dd = ys;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0)
      for (std::size_t i = xs.size() - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    result += basis.mul_scalar(dd[k]);
    basis = basis * QPoly(std::vector<Rational>{-xs[k], Rational(1)});
  }
  return result;
}

inline int max_x_degree(const BiQ& p) {
  int d = 0;
  for (const auto& c : p.coeffs()) d = std::max(d, c.degree());
  return d;
}

inline QPoly specialize_x(const BiQ& p, const Rational& x0) {
  std::vector<Rational> v;
  for (const auto& c : p.coeffs()) v.push_back(c.evaluate(x0));
  return QPoly(std::move(v));
}

// gcd of primitive polynomials in Q[x][y] by evaluation at x = x0 and
// interpolation, with the leading coefficient fixed by gcd(lc(a), lc(b)).
inline std::optional<BiQ> interpolated_gcd(const BiQ& a, const BiQ& b) {
  const QPoly gamma = gcd(a.lead(), b.lead());
  const int bound = gamma.degree() + std::min(max_x_degree(a), max_x_degree(b));
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<Rational> xs;
  std::vector<QPoly> images;
  for (long k = 0; k < 4 * (bound + 8); ++k) {
    const Rational x0(k % 2 ? (k + 1) / 2 : -(k / 2));
    const Rational ga = a.lead().evaluate(x0), gb = b.lead().evaluate(x0);
    if (sgn(ga) == 0 || sgn(gb) == 0) continue;
    QPoly h = gcd(specialize_x(a, x0), specialize_x(b, x0));
    if (h.degree() > best) continue;
    if (h.degree() == 0) return BiQ(QPoly(Rational(1)));
    if (h.degree() < best) {
      best = h.degree();
      xs.clear();
      images.clear();
    }
    xs.push_back(x0);
    images.push_back(h.mul_scalar(gamma.evaluate(x0)));
    if (static_cast<int>(xs.size()) < bound + 1) continue;
    std::vector<QPoly> coeffs;
    for (int j = 0; j <= best; ++j) {
      std::vector<Rational> ys;
      for (const auto& img : images) ys.push_back(img.coeff(j));
      coeffs.push_back(interpolate(xs, ys));
    }
    BiQ candidate = primitive_part(BiQ(std::move(coeffs)));
    try {
      (void)exact_div(a, candidate);
      (void)exact_div(b, candidate);
      return candidate;
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return Polynomial();
  auto pa = a.as_poly_in_y(), pb = b.as_poly_in_y();
  if (a.is_zero() || b.is_zero()) return Polynomial::from_poly_in_y(gcd(pa, pb));
  const QPoly cont = gcd(content(pa), content(pb));
  if (detail::coprime_in_y_mod_p(a, b)) return Polynomial::from_univariate_x(cont);
  pa = primitive_part(pa);
  pb = primitive_part(pb);
  if (auto h = detail::interpolated_gcd(pa, pb)) return Polynomial::from_poly_in_y(normalize(h->mul_scalar(cont)));
  return Polynomial::from_poly_in_y(normalize(gcd(pa, pb).mul_scalar(cont)));
}

/// a / b; throws if the division is not exact.
inline Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  if (a.is_zero()) return a;
  return Polynomial::from_poly_in_y(exact_div(a.as_poly_in_y(), b.as_poly_in_y()));
}

inline bool divides(const Polynomial& b, const Polynomial& a) {
  try {
    (void)exact_quotient(a, b);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

/// Rescales so the leading coefficient (in y, then x) is 1.
inline Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  return Polynomial::from_poly_in_y(normalize(p.as_poly_in_y()));
}

struct SquarefreeFactor {
  Polynomial factor;
  int multiplicity = 0;
};

namespace detail {

// Yun's algorithm with respect to y on a polynomial primitive in Q[x][y].
inline std::vector<SquarefreeFactor> yun_in_y(const Polynomial& f) {
  std::vector<SquarefreeFactor> out;
  if (f.degree_y() <= 0) return out;
  Polynomial fy = f.dy();
  Polynomial a = poly_gcd(f, fy);
  Polynomial b = exact_quotient(f, a);
  Polynomial c = exact_quotient(fy, a);
  Polynomial d = c - b.dy();
  for (int i = 1; !is_constant(b); ++i) {
    Polynomial ai = poly_gcd(b, d);
    b = exact_quotient(b, ai);
    c = exact_quotient(d, ai);
    d = c - b.dy();
    if (!is_constant(ai)) out.push_back({normalized(ai), i});
  }
  return out;
}

inline std::vector<SquarefreeFactor> yun_univariate(const QPoly& f) {
  std::vector<SquarefreeFactor> out;
  if (f.degree() <= 0) return out;
  QPoly fp = f.derivative();
  QPoly a = gcd(f, fp);
  QPoly b = divmod(f, a).first;
  QPoly c = divmod(fp, a).first;
  QPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    QPoly ai = gcd(b, d);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = c - b.derivative();
    if (ai.degree() > 0) out.push_back({Polynomial::from_univariate_x(ai), i});
  }
  return out;
}

}  // namespace detail

/// f = c * prod factor^multiplicity with pairwise coprime squarefree factors,
/// one factor per multiplicity, sorted by multiplicity.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const Polynomial& f) {
  if (f.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "squarefree decomposition of 0");
  auto fy = f.as_poly_in_y();
  QPoly cont = content(fy);
  Polynomial prim = Polynomial::from_poly_in_y(primitive_part(fy));
  std::vector<SquarefreeFactor> parts = detail::yun_univariate(cont);
  for (auto& sf : detail::yun_in_y(prim)) parts.push_back(std::move(sf));
  std::vector<SquarefreeFactor> merged;
  for (auto& sf : parts) {
    bool found = false;
    for (auto& m : merged) {
      if (m.multiplicity == sf.multiplicity) {
        m.factor = normalized(m.factor * sf.factor);
        found = true;
      }
    }
    if (!found) merged.push_back(std::move(sf));
  }
  std::sort(merged.begin(), merged.end(),
            [](const SquarefreeFactor& a, const SquarefreeFactor& b) { return a.multiplicity < b.multiplicity; });
  return merged;
}

inline bool is_squarefree(const Polynomial& f) {
  auto sf = squarefree_decomposition(f);
  return sf.size() <= 1 && (sf.empty() || sf.front().multiplicity == 1);
}

/// Product of the squarefree factors (the radical, up to a constant).
inline Polynomial squarefree_part(const Polynomial& f) {
  Polynomial r(1L);
  for (const auto& sf : squarefree_decomposition(f)) r *= sf.factor;
  return normalized(r);
}

/// Pairwise coprime squarefree polynomials such that every input equals a
/// constant times the product of basis[k]^exponents[input][k].
struct CoprimeBasis {
  std::vector<Polynomial> basis;
  std::vector<std::vector<int>> exponents;  // [input][basis element]
};

inline CoprimeBasis coprime_basis(const std::vector<Polynomial>& inputs) {
  struct Item {
    Polynomial p;
    std::vector<int> e;
  };
  const std::size_t n = inputs.size();
  std::vector<Item> items;
  for (std::size_t k = 0; k < n; ++k) {
    if (inputs[k].is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "coprime basis of 0");
    for (auto& sf : squarefree_decomposition(inputs[k])) {
      std::vector<int> e(n, 0);
      e[k] = sf.multiplicity;
      items.push_back({sf.factor, e});
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < items.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < items.size() && !changed; ++b) {
        Polynomial g = poly_gcd(items[a].p, items[b].p);
        if (is_constant(g)) continue;
        Item common{g, std::vector<int>(n, 0)};
        for (std::size_t k = 0; k < n; ++k) common.e[k] = items[a].e[k] + items[b].e[k];
        Item ra{exact_quotient(items[a].p, g), items[a].e};
        Item rb{exact_quotient(items[b].p, g), items[b].e};
        std::vector<Item> next;
        for (std::size_t k = 0; k < items.size(); ++k)
          if (k != a && k != b) next.push_back(std::move(items[k]));
        for (Item* it : {&common, &ra, &rb})
          if (!is_constant(it->p)) next.push_back(std::move(*it));
        items = std::move(next);
        changed = true;
      }
    }
  }
  CoprimeBasis out;
  out.exponents.assign(n, std::vector<int>(items.size(), 0));
  for (std::size_t k = 0; k < items.size(); ++k) {
    out.basis.push_back(normalized(items[k].p));
    for (std::size_t i = 0; i < n; ++i) out.exponents[i][k] = items[k].e[i];
  }
  return out;
}

}  // namespace njac
