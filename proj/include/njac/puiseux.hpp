#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "njac/parse.hpp"
#include "njac/puiseux_tree.hpp"

namespace njac {

/// Conjugate analytic branches of one factor, sharing a parametrization over
/// an algebraic tower (one branch per point of the tower).
struct PuiseuxBranch {
  bool axis = false;         // the branch x = 0, parametrized by x = 0, y = s
  std::int64_t e = 1;        // ramification: ord_s x
  AlgElem x_coefficient;     // x = x_coefficient * s^e
  std::map<std::int64_t, AlgElem> coefficients;  // y = sum c_k s^k
  std::int64_t truncation_order = 0;
  bool exact = false;        // the y series is complete (no O-term)
  int multiplicity = 1;
  long long conjugates = 1;
  Tower tower;

  // Replay data.
  BranchKind kind = BranchKind::Regular;
  std::vector<PuiseuxStep> steps;
  Polynomial source;         // squarefree factor containing the branch, with any x factor removed
  std::shared_ptr<const LocalAnalysis> analysis;
  std::size_t group = 0;

  std::string to_string() const;
};

struct CharacteristicSequence {
  std::int64_t multiplicity = 1;             // m0
  std::vector<Rational> exponents;           // beta_i / m0
  std::vector<std::int64_t> integer_exponents;  // beta_i

  bool operator==(const CharacteristicSequence&) const = default;
  std::string to_string() const {
    std::string s = "(" + std::to_string(multiplicity) + ";";
    for (std::size_t k = 0; k < integer_exponents.size(); ++k) s += (k ? "," : "") + std::to_string(integer_exponents[k]);
    return s + ")";
  }
};

namespace puiseux_detail {

inline PuiseuxBranch make_branch(const std::shared_ptr<const LocalAnalysis>& a, std::size_t group, int mult) {
  const BranchGroup& g = a->groups()[group];
  PuiseuxBranch b;
  b.kind = g.kind;
  b.axis = g.kind == BranchKind::XAxis;
  b.multiplicity = mult;
  b.conjugates = g.conjugates();
  b.tower = g.tower;
  b.steps = g.steps;
  b.analysis = a;
  b.group = group;
  const Polynomial& color = a->colors()[static_cast<std::size_t>(g.owner)];
  b.source = b.axis ? Polynomial::x() : color;
  if (!b.axis) {
    ExtNat xv = color.x_valuation();
    if (xv.is_finite() && xv.value() > 0) b.source = color.divide_monomial(static_cast<int>(xv.value()), 0);
  }
  if (b.axis) {
    b.e = 0;
    b.x_coefficient = AlgElem();
    b.coefficients[1] = AlgElem(Rational(1));
    b.truncation_order = 1;
    b.exact = true;
    return b;
  }
  KPolyRing ring(g.tower);
  auto [x, y] = path_parametrization(ring, g.steps);
  b.e = static_cast<std::int64_t>(x.size()) - 1;
  b.x_coefficient = x.back();
  std::int64_t horizon = 0;
  auto n = g.chart_orders();
  for (std::size_t k = 0; k < g.steps.size(); ++k) horizon += static_cast<std::int64_t>(g.steps[k].m) * n[k + 1];
  b.exact = g.kind == BranchKind::YZero;
  b.truncation_order = b.exact ? static_cast<std::int64_t>(y.size()) - 1 : horizon;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (!g.tower.is_zero(y[k]) && static_cast<std::int64_t>(k) <= b.truncation_order)
      b.coefficients[static_cast<std::int64_t>(k)] = y[k];
  return b;
}

// Replays a branch's steps on a polynomial, with every transform truncated to
// X-degree below `budget`. Returns nullopt when the budget does not certify.
class Walker {
 public:
  Walker(const PuiseuxBranch& b, std::int64_t budget) : b_(b), t_(b.tower), budget_(budget) {}

  std::optional<std::int64_t> order(const Polynomial& f) {
    State F{terms_of(t_, f), kExactPrecision};
    State O{terms_of(t_, b_.source), kExactPrecision};
    const bool track_owner = b_.kind == BranchKind::Regular;
    auto n = chart_orders();
    std::int64_t total = 0;
    for (std::size_t k = 0; k < b_.steps.size(); ++k) {
      if (is_unit(F)) return total;
      const PuiseuxStep& s = b_.steps[k];
      auto lf = weighted_min(F, s.q, s.m);
      if (!lf) return std::nullopt;
      total += *lf * n[k + 1];
      if (!advance(F, s, *lf)) return std::nullopt;
      if (track_owner) {
        auto lo = weighted_min(O, s.q, s.m);
        if (!lo || !advance(O, s, *lo)) return std::nullopt;
      }
    }
    if (b_.kind == BranchKind::YZero) return end_on_y_zero(F, total);
    // Continue along the smooth branch of the owner through the leaf.
    while (true) {
      if (is_unit(F)) return total;
      auto c01 = O.terms.find({0, 1});
      if (c01 == O.terms.end()) throw std::logic_error("walker lost the owner branch");
      std::int64_t io = -1;
      for (const auto& [e, c] : O.terms)
        if (e.second == 0 && (io < 0 || e.first < io)) io = e.first;
      if (io < 0) {
        // The branch is Y = O(X^P) with P the owner's precision.
        auto r = end_on_y_zero(F, total);
        if (r && O.prec != kExactPrecision && *r - total >= O.prec) return std::nullopt;
        return r;
      }
      if (O.prec != kExactPrecision && io >= O.prec) return std::nullopt;
      PuiseuxStep s;
      s.q = 1;
      s.m = static_cast<int>(io);
      s.u = 1;
      s.v = 0;
      s.xi = t_.neg(t_.mul(O.terms.at({io, 0}), t_.inv(c01->second)));
      s.xi_height = t_.height();
      auto lf = weighted_min(F, 1, s.m);
      if (!lf) return std::nullopt;
      total += *lf;
      if (!advance(F, s, *lf) || !advance(O, s, io)) return std::nullopt;
    }
  }

 private:
  struct State {
    KTerms terms;
    std::int64_t prec;
  };

  std::vector<std::int64_t> chart_orders() const {
    std::vector<std::int64_t> n(b_.steps.size() + 1, 1);
    for (std::size_t k = b_.steps.size(); k-- > 0;) n[k] = n[k + 1] * b_.steps[k].q;
    return n;
  }

  bool is_unit(const State& s) const {
    auto it = s.terms.find({0, 0});
    if (it == s.terms.end()) return false;
    t_.ensure_invertible(it->second);
    return true;
  }

  static std::optional<std::int64_t> weighted_min(const State& s, int q, int m) {
    std::optional<std::int64_t> best;
    for (const auto& [e, c] : s.terms) {
      std::int64_t w = static_cast<std::int64_t>(q) * e.first + static_cast<std::int64_t>(m) * e.second;
      if (!best || w < *best) best = w;
    }
    if (!best) return std::nullopt;
    if (s.prec != kExactPrecision && *best >= static_cast<std::int64_t>(q) * s.prec) return std::nullopt;
    return best;
  }

  bool advance(State& s, const PuiseuxStep& step, std::int64_t l) const {
    std::int64_t p = child_precision(s.prec, step.q, l, budget_);
    if (p <= 0) return false;
    s.terms = transform(t_, s.terms, step, l, p);
    s.prec = p;
    return true;
  }

  std::optional<std::int64_t> end_on_y_zero(const State& F, std::int64_t total) const {
    std::optional<std::int64_t> io;
    for (const auto& [e, c] : F.terms)
      if (e.second == 0 && (!io || e.first < *io)) io = e.first;
    if (!io || (F.prec != kExactPrecision && *io >= F.prec)) return std::nullopt;
    return total + *io;
  }

  const PuiseuxBranch& b_;
  const Tower& t_;
  std::int64_t budget_;
};

inline std::optional<std::int64_t> walk(const Polynomial& f, const PuiseuxBranch& b, std::int64_t budget) {
  try {
    return Walker(b, budget).order(f);
  } catch (const SplitRequired&) {
    throw DomainError(ErrorKind::InvalidArgument,
                      "the polynomial separates conjugate branches of this branch entry; expand it jointly instead");
  }
}

inline std::int64_t walk_budget_start(const Polynomial& f, const PuiseuxBranch& b, const PrecisionPolicy& policy) {
  if (policy.start > 0) return policy.start;
  return 4 * static_cast<std::int64_t>(std::max(f.total_degree(), b.source.total_degree())) + 16;
}

}  // namespace puiseux_detail

/// Branches of each input of a family, expanded jointly so that contacts
/// between any two of them are available.
inline std::vector<std::vector<PuiseuxBranch>> branches_of_family(const std::vector<Polynomial>& inputs,
                                                                  const PrecisionPolicy& policy = {}) {
  for (const auto& f : inputs) {
    if (f.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "cannot expand the zero polynomial");
    if (!f.vanishes_at_origin())
      throw DomainError(ErrorKind::NotVanishingAtOrigin, to_string(f) + " does not vanish at the origin");
  }
  auto a = std::make_shared<const LocalAnalysis>(LocalAnalysis::build(inputs, policy));
  std::vector<std::vector<PuiseuxBranch>> out(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k)
    for (std::size_t g = 0; g < a->groups().size(); ++g) {
      const int mult = a->multiplicity(k, g);
      if (mult > 0) out[k].push_back(puiseux_detail::make_branch(a, g, mult));
    }
  return out;
}

inline std::vector<PuiseuxBranch> branches_at_origin(const Polynomial& f, const PrecisionPolicy& policy = {}) {
  return branches_of_family({f}, policy)[0];
}

/// ord_s f(x(s), y(s)) along any one of the conjugate branches.
inline ExtNat order_along_branch(const Polynomial& f, const PuiseuxBranch& b, const PrecisionPolicy& policy = {}) {
  using namespace puiseux_detail;
  if (f.is_zero()) return ExtNat::infinity();
  if (b.axis) return f.at_x_zero().order();
  if (!f.vanishes_at_origin()) return ExtNat(0);
  Polynomial g = poly_gcd(f, b.source);
  const bool may_contain = !is_constant(g);
  if (may_contain && g.total_degree() == b.source.total_degree()) return ExtNat::infinity();
  Polynomial rest = may_contain ? exact_quotient(b.source, g) : Polynomial();
  const std::int64_t cap = std::max<std::int64_t>(policy.cap, 64) * 8;
  bool outside = !may_contain;
  for (std::int64_t budget = walk_budget_start(f, b, policy); budget <= cap; budget *= 2) {
    if (!outside) {
      if (walk(g, b, budget)) outside = true;
      else if (walk(rest, b, budget)) return ExtNat::infinity();
    }
    if (outside)
      if (auto r = walk(f, b, budget)) return ExtNat(*r);
  }
  throw DomainError(ErrorKind::PrecisionExhausted, "order along branch not certified within the truncation cap");
}

inline CharacteristicSequence characteristic_exponents(const PuiseuxBranch& b) {
  CharacteristicSequence cs;
  if (b.axis) return cs;
  std::vector<std::int64_t> n(b.steps.size() + 1, 1);
  for (std::size_t k = b.steps.size(); k-- > 0;) n[k] = n[k + 1] * b.steps[k].q;
  const std::int64_t e = n[0];
  std::vector<std::int64_t> beta;
  std::int64_t cumulative = 0;
  for (std::size_t k = 0; k < b.steps.size(); ++k) {
    cumulative += static_cast<std::int64_t>(b.steps[k].m) * n[k + 1];
    if (b.steps[k].q > 1) beta.push_back(cumulative);
  }
  std::int64_t m0 = e;
  if (!beta.empty() && beta[0] < e) {
    // y has lower order than x: swap the roles of the coordinates.
    const std::int64_t b1 = beta[0];
    std::vector<std::int64_t> swapped;
    if (e % b1 != 0) swapped.push_back(e);
    for (std::size_t k = 1; k < beta.size(); ++k) swapped.push_back(beta[k] - b1 + e);
    m0 = b1;
    beta = std::move(swapped);
  }
  cs.multiplicity = m0;
  cs.integer_exponents = beta;
  for (auto v : beta) cs.exponents.push_back(Rational(static_cast<long>(v), static_cast<long>(m0)));
  return cs;
}

/// Conductor c = 2 delta of a single branch.
inline std::int64_t conductor(const CharacteristicSequence& cs) {
  std::int64_t prev = cs.multiplicity, total = 0;
  for (auto b : cs.integer_exponents) {
    std::int64_t next = std::gcd(prev, b);
    total += (prev - next) * b;
    prev = next;
  }
  return total - cs.multiplicity + 1;
}

/// Sum of i0 over all pairs (one conjugate from each entry); infinite iff
/// the entries share a branch. Both entries must come from the same expansion
/// unless one of them is a whole squarefree factor.
inline ExtNat branch_pair_intersection(const PuiseuxBranch& b1, const PuiseuxBranch& b2) {
  if (b1.analysis && b1.analysis == b2.analysis) {
    const LocalAnalysis& a = *b1.analysis;
    ExtNat total(0);
    for (const auto& x : a.branches())
      if (x.group == b1.group)
        for (const auto& y : a.branches())
          if (y.group == b2.group) total += a.contact(x, y);
    return total;
  }
  auto whole = [](const PuiseuxBranch& b) {
    if (b.axis) return true;
    if (!b.analysis) return false;
    const int owner = b.analysis->groups()[b.group].owner;
    int count = 0;
    for (const auto& g : b.analysis->groups())
      if (g.owner == owner && g.kind != BranchKind::XAxis) ++count;
    return count == 1;
  };
  if (whole(b2)) return static_cast<std::int64_t>(b1.conjugates) * order_along_branch(b2.source, b1);
  if (whole(b1)) return static_cast<std::int64_t>(b2.conjugates) * order_along_branch(b1.source, b2);
  throw DomainError(ErrorKind::InvalidArgument, "branches from unrelated expansions; use branches_of_family");
}

/// Milnor number of a squarefree polynomial from its branches (infinite if
/// not reduced; 0 at a smooth point or off the curve).
inline ExtNat tree_milnor_number(const Polynomial& h, const PrecisionPolicy& policy = {}) {
  if (h.is_zero()) return ExtNat::infinity();
  if (!h.vanishes_at_origin()) return ExtNat(0);
  auto a = std::make_shared<const LocalAnalysis>(LocalAnalysis::build({h}, policy));
  for (std::size_t c = 0; c < a->colors().size(); ++c)
    if (a->exponent(0, c) > 1) return ExtNat::infinity();
  auto all = a->branches();
  std::int64_t total = 1 - static_cast<std::int64_t>(all.size());
  for (std::size_t g = 0; g < a->groups().size(); ++g) {
    PuiseuxBranch b = puiseux_detail::make_branch(a, g, 1);
    total += conductor(characteristic_exponents(b)) * static_cast<std::int64_t>(b.conjugates);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) total += 2 * a->contact(all[i], all[j]).value();
  return ExtNat(total);
}

inline std::string PuiseuxBranch::to_string() const {
  if (axis) return "x = 0, y = s";
  auto mono = [](std::int64_t k) { return k == 1 ? std::string("s") : "s^" + std::to_string(k); };
  auto coef = [&](const AlgElem& c) {
    std::string s = tower.to_string(c);
    bool simple = s.find_first_of("+-", 1) == std::string::npos;
    return simple ? s : "(" + s + ")";
  };
  std::string out = "x = ";
  std::string cx = tower.to_string(x_coefficient);
  out += (cx == "1" ? "" : cx == "-1" ? "-" : coef(x_coefficient) + "*") + mono(e) + ", y = ";
  bool first = true;
  for (const auto& [k, c] : coefficients) {
    std::string cs = coef(c);
    if (!first) out += cs[0] == '-' ? " - " : " + ";
    if (!first && cs[0] == '-') cs = cs.substr(1);
    if (cs == "-1") cs = "-";
    out += (cs == "1" ? "" : cs == "-" ? cs : cs + "*") + mono(k);
    first = false;
  }
  if (first) out += "0";
  if (!exact) out += " + O(" + mono(truncation_order + 1) + ")";
  for (int k = 0; k < tower.height(); ++k) out += ", " + tower.level_to_string(k) + " = 0";
  return out;
}

}  // namespace njac
