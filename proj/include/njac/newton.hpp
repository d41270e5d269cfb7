#pragma once

// Newton diagrams: the region conv(union of (i,j) + R_+^2) over a support,
// stored as its chain of lattice vertices.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "njac/bipoly.hpp"
#include "njac/errors.hpp"
#include "njac/ext_nat.hpp"

namespace njac {

struct Vertex {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// A rational number or infinity; used for inclinations and quotients.
struct ExtRational {
  bool infinite = false;
  Rational value;

  static ExtRational inf() { return {true, Rational(0)}; }
  static ExtRational of(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite()) return inf();
    if (b.is_infinite()) return {false, Rational(0)};
    if (b.value() == 0) return inf();
    Rational q(static_cast<long>(a.value()), static_cast<long>(b.value()));
    q.canonicalize();
    return {false, q};
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  std::string to_string() const { return infinite ? "inf" : value.get_str(); }
};

class NewtonDiagram {
 public:
  /// The unit diagram [(0,0)].
  NewtonDiagram() : v_{Vertex{0, 0}} {}

  /// Validates the vertex chain (i increasing, j decreasing, strictly convex).
  explicit NewtonDiagram(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw DomainError(ErrorKind::InvalidArgument, "a Newton diagram needs at least one vertex");
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (v_[k].i < 0 || v_[k].j < 0) throw DomainError(ErrorKind::InvalidArgument, "negative vertex coordinate");
      if (k > 0 && !(v_[k].i > v_[k - 1].i && v_[k].j < v_[k - 1].j))
        throw DomainError(ErrorKind::InvalidArgument, "vertices must have increasing i and decreasing j");
      if (k > 1) {
        // inclination (di/dj) must strictly increase
        auto a = v_[k - 1], b = v_[k - 2], c = v_[k];
        __int128 lhs = static_cast<__int128>(a.i - b.i) * (a.j - c.j);
        __int128 rhs = static_cast<__int128>(c.i - a.i) * (b.j - a.j);
        if (!(lhs < rhs)) throw DomainError(ErrorKind::InvalidArgument, "vertex chain is not strictly convex");
      }
    }
  }

  const std::vector<Vertex>& vertices() const { return v_; }
  bool is_unit() const { return v_.size() == 1 && v_[0] == Vertex{0, 0}; }
  const Vertex& first() const { return v_.front(); }
  const Vertex& last() const { return v_.back(); }
  /// Horizontal extent: i of the last vertex.
  std::int64_t width() const { return v_.back().i; }
  /// Vertical extent: j of the first vertex.
  std::int64_t height() const { return v_.front().j; }

  friend bool operator==(const NewtonDiagram&, const NewtonDiagram&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t k = 0; k < v_.size(); ++k) {
      if (k) s += ",";
      s += "(" + std::to_string(v_[k].i) + "," + std::to_string(v_[k].j) + ")";
    }
    return s + "]";
  }

 private:
  std::vector<Vertex> v_;
};

/// The vertex chain of conv(points + R_+^2). Points must be nonempty.
inline NewtonDiagram lower_hull(std::vector<Vertex> pts) {
  if (pts.empty()) throw DomainError(ErrorKind::ZeroPolynomial, "Newton diagram of an empty support");
  std::sort(pts.begin(), pts.end());
  // Keep, scanning by increasing i, only points that lower the running minimum of j.
  std::vector<Vertex> stair;
  for (const auto& p : pts)
    if (stair.empty() || p.j < stair.back().j) stair.push_back(p);
  std::vector<Vertex> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2) {
      const Vertex& a = hull[hull.size() - 2];
      const Vertex& b = hull.back();
      // Drop b unless the turn a -> b -> p is strictly convex.
      __int128 cross = static_cast<__int128>(b.i - a.i) * (p.j - a.j) - static_cast<__int128>(b.j - a.j) * (p.i - a.i);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  return NewtonDiagram(std::move(hull));
}

template <class C>
NewtonDiagram diagram_of(const BiPoly<C>& f) {
  if (f.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "the Newton diagram of 0 is undefined");
  std::vector<Vertex> pts;
  pts.reserve(f.size());
  for (const auto& [e, c] : f.terms()) pts.push_back(Vertex{e.i, e.j});
  return lower_hull(std::move(pts));
}

namespace detail {

struct Edge {
  std::int64_t di;  // > 0
  std::int64_t dj;  // > 0
};

inline bool edge_less(const Edge& a, const Edge& b) {
  return static_cast<__int128>(a.di) * b.dj < static_cast<__int128>(b.di) * a.dj;
}

inline std::vector<Edge> edges_of(const NewtonDiagram& d) {
  std::vector<Edge> out;
  const auto& v = d.vertices();
  for (std::size_t k = 1; k < v.size(); ++k) out.push_back(Edge{v[k].i - v[k - 1].i, v[k - 1].j - v[k].j});
  return out;
}

}  // namespace detail

inline NewtonDiagram minkowski_sum(const NewtonDiagram& a, const NewtonDiagram& b) {
  auto ea = detail::edges_of(a), eb = detail::edges_of(b);
  std::vector<detail::Edge> all(ea);
  all.insert(all.end(), eb.begin(), eb.end());
  std::stable_sort(all.begin(), all.end(), detail::edge_less);
  std::vector<Vertex> v{Vertex{a.first().i + b.first().i, a.first().j + b.first().j}};
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (k > 0 && !detail::edge_less(all[k - 1], all[k])) {
      // same inclination: extend the previous edge
      v.back().i += all[k].di;
      v.back().j -= all[k].dj;
    } else {
      v.push_back(Vertex{v.back().i + all[k].di, v.back().j - all[k].dj});
    }
  }
  return NewtonDiagram(std::move(v));
}

/// Teis{a}{b}: [(0,b),(a,0)] for finite a, b; Teis{inf}{b} = [(0,b)]; Teis{a}{inf} = [(a,0)].
struct ElementaryDiagram {
  ExtNat a;
  ExtNat b;

  ElementaryDiagram(ExtNat a_, ExtNat b_) : a(a_), b(b_) {
    if (a.is_infinite() && b.is_infinite()) throw DomainError(ErrorKind::InvalidArgument, "Teis{inf}{inf}");
    if (a == ExtNat(0) && b == ExtNat(0)) throw DomainError(ErrorKind::InvalidArgument, "Teis{0}{0}");
  }

  ExtRational inclination() const { return ExtRational::of(a, b); }

  NewtonDiagram diagram() const {
    if (a.is_infinite()) return NewtonDiagram({Vertex{0, b.value()}});
    if (b.is_infinite()) return NewtonDiagram({Vertex{a.value(), 0}});
    if (a.value() == 0) return NewtonDiagram({Vertex{0, b.value()}});
    if (b.value() == 0) return NewtonDiagram({Vertex{a.value(), 0}});
    return NewtonDiagram({Vertex{0, b.value()}, Vertex{a.value(), 0}});
  }

  friend bool operator==(const ElementaryDiagram&, const ElementaryDiagram&) = default;
  friend bool operator<(const ElementaryDiagram& x, const ElementaryDiagram& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  std::string to_string() const { return "Teis{" + a.to_string() + "}{" + b.to_string() + "}"; }
};

/// One Teis{di}{dj} per edge, plus Teis{i0}{inf} for a leading x^i0 and
/// Teis{inf}{j_last} for a trailing y^j_last.
inline std::vector<ElementaryDiagram> elementary_decomposition(const NewtonDiagram& d) {
  std::vector<ElementaryDiagram> out;
  if (d.first().i > 0) out.emplace_back(ExtNat(d.first().i), ExtNat::infinity());
  for (const auto& e : detail::edges_of(d)) out.emplace_back(ExtNat(e.di), ExtNat(e.dj));
  if (d.last().j > 0) out.emplace_back(ExtNat::infinity(), ExtNat(d.last().j));
  return out;
}

inline NewtonDiagram sum_of(const std::vector<ElementaryDiagram>& parts) {
  NewtonDiagram acc;
  for (const auto& p : parts) acc = minkowski_sum(acc, p.diagram());
  return acc;
}

/// I(d): sorted, without repetition.
inline std::vector<ExtRational> inclinations(const NewtonDiagram& d) {
  std::vector<ExtRational> out;
  for (const auto& e : elementary_decomposition(d)) out.push_back(e.inclination());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// l(v, d) = min over vertices of v1*i + v2*j.
inline std::int64_t support(std::int64_t v1, std::int64_t v2, const NewtonDiagram& d) {
  std::int64_t best = INT64_MAX;
  for (const auto& p : d.vertices()) best = std::min(best, v1 * p.i + v2 * p.j);
  return best;
}

inline NewtonDiagram transpose(const NewtonDiagram& d) {
  std::vector<Vertex> v;
  for (auto it = d.vertices().rbegin(); it != d.vertices().rend(); ++it) v.push_back(Vertex{it->j, it->i});
  return NewtonDiagram(std::move(v));
}

using SupportOracle = std::function<std::int64_t(std::int64_t, std::int64_t)>;

namespace detail {

// Normals with components summing to at most this are cheap enough to probe
// speculatively.
constexpr std::int64_t kCheapNormal = 12;

struct Normal {
  std::int64_t v1, v2;
  std::int64_t value;
};

class Reconstructor {
 public:
  Reconstructor(const SupportOracle& oracle, std::int64_t w, std::int64_t h) : oracle_(oracle), w_(w), h_(h) {}

  std::int64_t query(std::int64_t v1, std::int64_t v2) {
    auto key = std::make_pair(v1, v2);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::int64_t val = oracle_(v1, v2);
    if (val < 0) throw DomainError(ErrorKind::InconsistentOracle, "negative support value");
    cache_.emplace(key, val);
    return val;
  }

  // Vertices between normals a and b (a before b, det(a,b) = 1).
  void refine(const Normal& a, const Normal& b, int depth, std::vector<Vertex>& out) {
    if (depth > w_ + h_ + 4) throw DomainError(ErrorKind::InconsistentOracle, "refinement did not terminate");
    if (auto p = corner(a, b); p && is_known(*p)) {
      out.push_back(*p);
      return;
    }
    const std::int64_t m1 = a.v1 + b.v1, m2 = a.v2 + b.v2;
    const std::int64_t lm = query(m1, m2);
    if (lm < a.value + b.value)
      throw DomainError(ErrorKind::InconsistentOracle, "support function is not superadditive");
    if (lm == a.value + b.value) {
      out.push_back(solve(a, b));
      add_known(out.back());
      return;
    }
    Normal mid{m1, m2, lm};
    refine(a, mid, depth + 1, out);
    refine(mid, b, depth + 1, out);
  }

  // The lattice point P with a.P = a.value and b.P = b.value.
  Vertex solve(const Normal& a, const Normal& b) const {
    // a = (a1, a2), b = (b1, b2), a1*b2 - a2*b1 = 1
    const __int128 det = static_cast<__int128>(a.v1) * b.v2 - static_cast<__int128>(a.v2) * b.v1;
    const __int128 pi = (static_cast<__int128>(a.value) * b.v2 - static_cast<__int128>(b.value) * a.v2);
    const __int128 pj = (static_cast<__int128>(a.v1) * b.value - static_cast<__int128>(b.v1) * a.value);
    if (det == 0 || pi % det != 0 || pj % det != 0)
      throw DomainError(ErrorKind::InconsistentOracle, "support values give a non-lattice vertex");
    Vertex v{static_cast<std::int64_t>(pi / det), static_cast<std::int64_t>(pj / det)};
    if (v.i < 0 || v.j < 0 || v.i > w_ || v.j > h_)
      throw DomainError(ErrorKind::InconsistentOracle, "support values give a vertex outside the bounds");
    return v;
  }

  const std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>& cache() const { return cache_; }

  void add_known(const Vertex& v) { known_.push_back(v); }

  // Points of the diagram so far certified: the region over the known vertices.
  bool is_known(const Vertex& p) const {
    if (known_.empty()) return false;
    std::vector<Vertex> with = known_;
    with.push_back(p);
    return lower_hull(known_) == lower_hull(with);
  }

  // Where the supporting lines of a and b meet, if that is a lattice point in bounds.
  std::optional<Vertex> corner(const Normal& a, const Normal& b) const {
    try {
      return solve(a, b);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

 private:
  const SupportOracle& oracle_;
  std::int64_t w_, h_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cache_;
  std::vector<Vertex> known_;
};

inline NewtonDiagram chain_to_diagram(std::vector<Vertex> v) {
  v.erase(std::unique(v.begin(), v.end()), v.end());
  try {
    return NewtonDiagram(std::move(v));
  } catch (const DomainError&) {
    throw DomainError(ErrorKind::InconsistentOracle, "support values do not describe a Newton diagram");
  }
}

inline void check_against_cache(const NewtonDiagram& d, const Reconstructor& r) {
  for (const auto& [v, val] : r.cache())
    if (support(v.first, v.second, d) != val)
      throw DomainError(ErrorKind::InconsistentOracle,
                        "reconstructed diagram disagrees with the oracle at (" + std::to_string(v.first) + "," +
                            std::to_string(v.second) + ")");
}

inline NewtonDiagram reconstruct_between(Reconstructor& r, const Vertex& first, const Vertex& last) {
  std::vector<Vertex> chain{first};
  r.add_known(first);
  r.add_known(last);
  bool single_edge = first == last;
  if (!single_edge && last.i > first.i && last.j < first.j) {
    const std::int64_t di = last.i - first.i, dj = first.j - last.j, g = std::gcd(di, dj);
    if (dj / g + di / g <= kCheapNormal) single_edge = r.query(dj / g, di / g) == (dj / g) * first.i + (di / g) * first.j;
  }
  if (!single_edge) r.refine(Normal{1, 0, first.i}, Normal{0, 1, last.j}, 0, chain);
  chain.push_back(last);
  NewtonDiagram d = chain_to_diagram(std::move(chain));
  if (!(d.first() == first) || !(d.last() == last))
    throw DomainError(ErrorKind::InconsistentOracle, "support values contradict the corner vertices");
  check_against_cache(d, r);
  return d;
}

}  // namespace detail

/// Rebuilds a diagram with vertices in [0,w] x [0,h] from its support function
/// on primitive positive vectors.
inline NewtonDiagram reconstruct_from_support(const SupportOracle& oracle, std::int64_t width_bound,
                                              std::int64_t height_bound) {
  if (width_bound < 0 || height_bound < 0) throw DomainError(ErrorKind::InvalidArgument, "negative bounds");
  detail::Reconstructor r(oracle, width_bound, height_bound);
  const std::int64_t n = std::max(width_bound, height_bound) + 1;
  // With n larger than every coordinate, (n,1) is minimized exactly at the
  // first vertex and (1,n) at the last one.
  const std::int64_t s1 = r.query(n, 1), s2 = r.query(1, n);
  Vertex first{s1 / n, s1 % n};
  Vertex last{s2 % n, s2 / n};
  if (first.i > width_bound || last.j > height_bound)
    throw DomainError(ErrorKind::InconsistentOracle, "corner vertices outside the bounds");
  return detail::reconstruct_between(r, first, last);
}

/// Same, when the first and last vertices are known in advance.
inline NewtonDiagram reconstruct_from_support(const SupportOracle& oracle, const Vertex& first, const Vertex& last) {
  detail::Reconstructor r(oracle, last.i, first.j);
  return detail::reconstruct_between(r, first, last);
}

/// Exhaustive variant: queries every primitive vector with components up to
/// max(bounds) + 1 and intersects the supporting half-planes.
inline NewtonDiagram reconstruct_exhaustive(const SupportOracle& oracle, std::int64_t width_bound,
                                            std::int64_t height_bound) {
  const std::int64_t n = std::max(width_bound, height_bound) + 1;
  std::vector<detail::Normal> normals;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = 0; b <= n; ++b) {
      if (std::gcd(a, b) != 1) continue;
      normals.push_back(detail::Normal{a, b, 0});
    }
  // Order by angle from (1,0) to (0,1): decreasing a/b.
  std::sort(normals.begin(), normals.end(), [](const detail::Normal& x, const detail::Normal& y) {
    return static_cast<__int128>(x.v1) * y.v2 > static_cast<__int128>(y.v1) * x.v2;
  });
  detail::Reconstructor r(oracle, width_bound, height_bound);
  const std::int64_t s1 = r.query(n, 1), s2 = r.query(1, n);
  for (auto& nm : normals) {
    if (nm.v1 == 1 && nm.v2 == 0)
      nm.value = s1 / n;
    else if (nm.v1 == 0 && nm.v2 == 1)
      nm.value = s2 / n;
    else
      nm.value = r.query(nm.v1, nm.v2);
  }
  // Consecutive Farey neighbours are unimodular, so each pair pins a candidate vertex.
  std::vector<Vertex> pts;
  for (std::size_t k = 0; k + 1 < normals.size(); ++k) pts.push_back(r.solve(normals[k], normals[k + 1]));
  NewtonDiagram d = lower_hull(pts);
  detail::check_against_cache(d, r);
  return d;
}

}  // namespace njac
