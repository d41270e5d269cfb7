#pragma once

#include <map>
#include <string>
#include <vector>

#include "njac/local_invariants.hpp"
#include "njac/newton.hpp"
#include "njac/puiseux.hpp"

namespace njac {

class MapGerm {
 public:
  MapGerm(Polynomial f, Polynomial g) : f_(std::move(f)), g_(std::move(g)) {
    if (f_.is_zero() || g_.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "map components must be nonzero");
    if (!f_.vanishes_at_origin() || !g_.vanishes_at_origin())
      throw DomainError(ErrorKind::NotVanishingAtOrigin, "map components must vanish at the origin");
    if (!finiteness_check(f_, g_))
      throw DomainError(ErrorKind::NotFinite, "f and g share a component through the origin");
  }

  const Polynomial& f() const { return f_; }
  const Polynomial& g() const { return g_; }
  MapGerm swapped() const { return MapGerm(g_, f_); }

 private:
  Polynomial f_, g_;
};

struct BranchContribution {
  PuiseuxBranch branch;
  ExtNat a;  // i0(g, branch)
  ExtNat b;  // i0(f, branch)
  int multiplicity = 1;
};

struct HironakaGroup {
  ExtRational q;
  ExtNat a;
  ExtNat b;
};

struct NjacOptions {
  PrecisionPolicy precision;
  PencilOptions pencil;
  std::uint64_t seed = kDefaultSeed;
};

inline Polynomial jacobian(const MapGerm& germ) {
  Polynomial j = germ.f().dx() * germ.g().dy() - germ.f().dy() * germ.g().dx();
  if (j.is_zero()) throw DomainError(ErrorKind::DegenerateJacobian, "the jacobian vanishes identically");
  return j;
}

/// Route A data: orders of f and g along the branches of jac = 0.
inline std::vector<BranchContribution> branch_contributions(const MapGerm& germ, const NjacOptions& opt = {}) {
  const Polynomial jac = jacobian(germ);
  if (!jac.vanishes_at_origin()) return {};
  auto family = branches_of_family({jac, germ.f(), germ.g()}, opt.precision);
  const auto& analysis = *family[0].front().analysis;
  std::vector<BranchContribution> out;
  ExtNat total_a(0), total_b(0);
  for (const auto& br : family[0]) {
    BranchContribution c{br, analysis.order(2, br.group), analysis.order(1, br.group), br.multiplicity};
    const std::int64_t copies = static_cast<std::int64_t>(c.multiplicity) * br.conjugates;
    total_a += copies * c.a;
    total_b += copies * c.b;
    out.push_back(std::move(c));
  }
  const ExtNat ia = intersection_multiplicity(germ.g(), jac, opt.seed);
  const ExtNat ib = intersection_multiplicity(germ.f(), jac, opt.seed);
  if (ia != total_a || ib != total_b)
    throw DomainError(ErrorKind::CertificateMismatch,
                      "branch orders sum to (" + total_a.to_string() + "," + total_b.to_string() +
                          ") but the resultants give (" + ia.to_string() + "," + ib.to_string() + ")");
  return out;
}

inline NewtonDiagram njac_from_contributions(const std::vector<BranchContribution>& cs) {
  std::vector<ElementaryDiagram> parts;
  for (const auto& c : cs)
    for (long long k = 0; k < c.multiplicity * c.branch.conjugates; ++k) parts.emplace_back(c.a, c.b);
  return sum_of(parts);
}

inline NewtonDiagram njac_branches(const MapGerm& germ, const NjacOptions& opt = {}) {
  return njac_from_contributions(branch_contributions(germ, opt));
}

/// l((m,n), Nj) as given by the pencil Milnor number.
inline std::int64_t lemma_support(const MapGerm& germ, std::int64_t m, std::int64_t n, const ExtNat& i0fg,
                                  const NjacOptions& opt = {}) {
  ExtNat mu = generic_pencil_milnor(germ.f(), germ.g(), static_cast<int>(n), static_cast<int>(m), opt.pencil).value;
  return mu.value() - i0fg.value() * ((m - 1) * (n - 1) - 1) - 1;
}

/// Route B: reconstruct Nj from the support values of the pencil Milnor numbers.
inline NewtonDiagram njac_support(const MapGerm& germ, const NjacOptions& opt = {}) {
  if (!is_squarefree(germ.f()) || !is_squarefree(germ.g()))
    throw DomainError(ErrorKind::NonReducedInput, "the support route needs reduced f and g");
  const Polynomial jac = jacobian(germ);
  const ExtNat width = intersection_multiplicity(germ.g(), jac, opt.seed);
  const ExtNat height = intersection_multiplicity(germ.f(), jac, opt.seed);
  if (width.is_infinite() || height.is_infinite())
    throw DomainError(ErrorKind::InconsistentOracle, "a jacobian branch lies on f = 0 or g = 0");
  if (width == ExtNat(0) && height == ExtNat(0)) return NewtonDiagram();
  const ExtNat i0fg = intersection_multiplicity(germ.f(), germ.g(), opt.seed);
  SupportOracle oracle = [&](std::int64_t m, std::int64_t n) { return lemma_support(germ, m, n, i0fg, opt); };
  // Every jacobian branch has finite positive orders, so Nj spans from (0,h) to (w,0).
  return reconstruct_from_support(oracle, Vertex{0, height.value()}, Vertex{width.value(), 0});
}

enum class NjacMethod { Branches, Support, Both };

class RouteMismatch : public DomainError {
 public:
  RouteMismatch(NewtonDiagram branches, NewtonDiagram support)
      : DomainError(ErrorKind::RouteMismatch,
                    "branch route gives " + branches.to_string() + ", support route gives " + support.to_string()),
        branches_(std::move(branches)),
        support_(std::move(support)) {}
  const NewtonDiagram& by_branches() const { return branches_; }
  const NewtonDiagram& by_support() const { return support_; }

 private:
  NewtonDiagram branches_, support_;
};

inline NewtonDiagram njac(const MapGerm& germ, NjacMethod method = NjacMethod::Both, const NjacOptions& opt = {}) {
  switch (method) {
    case NjacMethod::Branches:
      return njac_branches(germ, opt);
    case NjacMethod::Support:
      return njac_support(germ, opt);
    case NjacMethod::Both:
      break;
  }
  NewtonDiagram a = njac_branches(germ, opt);
  NewtonDiagram b = njac_support(germ, opt);
  if (!(a == b)) throw RouteMismatch(a, b);
  return a;
}

inline std::vector<ExtRational> jacobian_quotients(const std::vector<BranchContribution>& cs) {
  std::vector<ExtRational> out;
  for (const auto& c : cs) out.push_back(ExtRational::of(c.a, c.b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<ExtRational> jacobian_quotients(const MapGerm& germ, const NjacOptions& opt = {}) {
  return jacobian_quotients(branch_contributions(germ, opt));
}

inline std::vector<HironakaGroup> hironaka_data(const std::vector<BranchContribution>& cs) {
  std::vector<HironakaGroup> out;
  for (const auto& c : cs) {
    const ExtRational q = ExtRational::of(c.a, c.b);
    const std::int64_t copies = static_cast<std::int64_t>(c.multiplicity) * c.branch.conjugates;
    auto it = std::find_if(out.begin(), out.end(), [&](const HironakaGroup& h) { return h.q == q; });
    if (it == out.end()) {
      out.push_back(HironakaGroup{q, copies * c.a, copies * c.b});
    } else {
      it->a += copies * c.a;
      it->b += copies * c.b;
    }
  }
  std::sort(out.begin(), out.end(), [](const HironakaGroup& x, const HironakaGroup& y) { return x.q < y.q; });
  return out;
}

inline std::vector<HironakaGroup> hironaka_data(const MapGerm& germ, const NjacOptions& opt = {}) {
  return hironaka_data(branch_contributions(germ, opt));
}

}  // namespace njac
