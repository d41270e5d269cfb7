#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "njac/jacobian_newton.hpp"
#include "njac/local_invariants.hpp"
#include "njac/puiseux.hpp"

namespace njac {

struct BranchRecord {
  char label = 'C';  // 'F', 'G', or 'C' for a single curve
  int multiplicity = 1;
  CharacteristicSequence characteristic;

  friend bool operator==(const BranchRecord&, const BranchRecord&) = default;
  friend bool operator<(const BranchRecord& a, const BranchRecord& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    if (a.characteristic.multiplicity != b.characteristic.multiplicity)
      return a.characteristic.multiplicity < b.characteristic.multiplicity;
    return a.characteristic.integer_exponents < b.characteristic.integer_exponents;
  }
};

struct PairFingerprint {
  std::vector<BranchRecord> branches;
  std::vector<std::vector<ExtNat>> contacts;  // symmetric, infinite on the diagonal

  friend bool operator==(const PairFingerprint&, const PairFingerprint&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < branches.size(); ++k) {
      s += k ? " " : "";
      s += std::string(1, branches[k].label) + "x" + std::to_string(branches[k].multiplicity) +
           branches[k].characteristic.to_string();
    }
    s += " |";
    for (std::size_t i = 0; i < contacts.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) s += " " + contacts[i][j].to_string();
    return s;
  }

  /// FNV-1a of the canonical text form.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : to_string()) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

namespace equi_detail {

// Branch-and-bound over permutations inside classes of equal records,
// minimizing the strictly lower triangle read row by row.
class Canonicalizer {
 public:
  Canonicalizer(const std::vector<BranchRecord>& recs, const std::vector<std::vector<ExtNat>>& m)
      : recs_(recs), m_(m), n_(recs.size()) {}

  std::vector<std::size_t> run() {
    used_.assign(n_, false);
    perm_.clear();
    best_.clear();
    search();
    return best_perm_;
  }

 private:
  void search() {
    const std::size_t pos = perm_.size();
    if (pos == n_) {
      if (best_perm_.empty() || current_ < best_) {
        best_ = current_;
        best_perm_ = perm_;
      }
      return;
    }
    for (std::size_t c = 0; c < n_; ++c) {
      if (used_[c] || !(recs_[c] == recs_[pos])) continue;
      const std::size_t mark = current_.size();
      for (std::size_t j = 0; j < pos; ++j) current_.push_back(m_[c][perm_[j]]);
      // prune: the prefix must not exceed the best found so far
      if (!best_perm_.empty() && std::lexicographical_compare(best_.begin(), best_.begin() + static_cast<long>(current_.size()),
                                                              current_.begin(), current_.end())) {
        current_.resize(mark);
        continue;
      }
      used_[c] = true;
      perm_.push_back(c);
      search();
      perm_.pop_back();
      used_[c] = false;
      current_.resize(mark);
    }
  }

  const std::vector<BranchRecord>& recs_;  // sorted
  const std::vector<std::vector<ExtNat>>& m_;
  std::size_t n_;
  std::vector<bool> used_;
  std::vector<std::size_t> perm_, best_perm_;
  std::vector<ExtNat> current_, best_;
};

inline PairFingerprint canonicalize(std::vector<BranchRecord> recs, std::vector<std::vector<ExtNat>> m) {
  const std::size_t n = recs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return recs[a] < recs[b]; });
  std::vector<BranchRecord> sorted;
  std::vector<std::vector<ExtNat>> sm(n, std::vector<ExtNat>(n));
  for (std::size_t a = 0; a < n; ++a) {
    sorted.push_back(recs[order[a]]);
    for (std::size_t b = 0; b < n; ++b) sm[a][b] = m[order[a]][order[b]];
  }
  auto perm = Canonicalizer(sorted, sm).run();
  PairFingerprint fp;
  fp.branches = sorted;
  fp.contacts.assign(n, std::vector<ExtNat>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) fp.contacts[a][b] = sm[perm[a]][perm[b]];
  return fp;
}

inline PairFingerprint fingerprint_of(const std::vector<Polynomial>& inputs, const std::string& labels,
                                      const PrecisionPolicy& policy) {
  auto a = std::make_shared<const LocalAnalysis>(LocalAnalysis::build(inputs, policy));
  auto all = a->branches();
  std::vector<BranchRecord> recs;
  std::vector<CharacteristicSequence> chars(a->groups().size());
  for (std::size_t g = 0; g < a->groups().size(); ++g)
    chars[g] = characteristic_exponents(puiseux_detail::make_branch(a, g, 1));
  for (const auto& br : all) {
    BranchRecord r;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const int e = a->multiplicity(k, br.group);
      if (e > 0) {
        r.label = labels[k];
        r.multiplicity = e;
      }
    }
    r.characteristic = chars[br.group];
    recs.push_back(r);
  }
  std::vector<std::vector<ExtNat>> m(all.size(), std::vector<ExtNat>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) m[i][j] = i == j ? ExtNat::infinity() : a->contact(all[i], all[j]);
  return canonicalize(std::move(recs), std::move(m));
}

}  // namespace equi_detail

inline PairFingerprint pair_fingerprint(const Polynomial& f, const Polynomial& g, const PrecisionPolicy& policy = {}) {
  for (const Polynomial* h : {&f, &g}) {
    if (h->is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "fingerprint of the zero polynomial");
    if (!h->vanishes_at_origin()) throw DomainError(ErrorKind::NotVanishingAtOrigin, to_string(*h) + " does not vanish at 0");
  }
  if (!finiteness_check(f, g)) throw DomainError(ErrorKind::CommonComponent, "f and g share a component through 0");
  return equi_detail::fingerprint_of({f, g}, "FG", policy);
}

inline PairFingerprint curve_fingerprint(const Polynomial& h, const PrecisionPolicy& policy = {}) {
  if (h.is_zero()) throw DomainError(ErrorKind::ZeroPolynomial, "fingerprint of the zero polynomial");
  if (!h.vanishes_at_origin()) throw DomainError(ErrorKind::NotVanishingAtOrigin, to_string(h) + " does not vanish at 0");
  return equi_detail::fingerprint_of({h}, "C", policy);
}

struct AutomorphismGerm {
  Polynomial phi1, phi2;  // (x, y) -> (phi1, phi2)
  int degree_bound = 1;
};

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline AutomorphismGerm random_automorphism(std::uint64_t seed, int degree_bound) {
  if (degree_bound < 1) throw DomainError(ErrorKind::InvalidArgument, "degree bound must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> lin(-5, 5);
  int a, b, c, d;
  do {
    a = lin(rng), b = lin(rng), c = lin(rng), d = lin(rng);
  } while (a * d - b * c == 0);
  AutomorphismGerm aut;
  aut.degree_bound = degree_bound;
  aut.phi1.add_term(1, 0, Rational(a));
  aut.phi1.add_term(0, 1, Rational(b));
  aut.phi2.add_term(1, 0, Rational(c));
  aut.phi2.add_term(0, 1, Rational(d));
  std::bernoulli_distribution keep(0.5);
  for (int deg = 2; deg <= degree_bound; ++deg)
    for (int i = deg; i >= 0; --i)
      for (Polynomial* p : {&aut.phi1, &aut.phi2})
        if (keep(rng)) p->add_term(i, deg - i, small_rational(rng));
  return aut;
}

/// A polynomial with nonzero constant term.
inline Polynomial random_unit(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c0(1, 3), sign(0, 1);
  Polynomial u(Rational(sign(rng) ? c0(rng) : -c0(rng)));
  u.add_term(1, 0, small_rational(rng));
  u.add_term(0, 1, small_rational(rng));
  return u;
}

inline std::pair<Polynomial, Polynomial> transform_pair(const Polynomial& f, const Polynomial& g,
                                                        const AutomorphismGerm& aut, const Polynomial& unit_f,
                                                        const Polynomial& unit_g) {
  if (!unit_f.vanishes_at_origin() && !unit_g.vanishes_at_origin())
    return {unit_f * f.compose(aut.phi1, aut.phi2), unit_g * g.compose(aut.phi1, aut.phi2)};
  throw DomainError(ErrorKind::InvalidArgument, "units must have a nonzero constant term");
}

struct PencilFingerprint {
  PairFingerprint fingerprint;
  std::vector<Rational> samples;
  std::vector<std::uint64_t> hashes;
};

inline PencilFingerprint generic_pencil_fingerprint(const Polynomial& f, const Polynomial& g, std::uint64_t seed,
                                                    const PrecisionPolicy& policy = {}) {
  if (!finiteness_check(f, g)) throw DomainError(ErrorKind::NotFinite, "the map germ is not finite");
  PencilFingerprint out;
  std::vector<PairFingerprint> seen;
  for (const auto& t0 : pencil_samples(7, seed)) {
    PairFingerprint fp = curve_fingerprint(f - g.mul_scalar(t0), policy);
    out.samples.push_back(t0);
    out.hashes.push_back(fp.hash());
    seen.push_back(fp);
    if (std::count(seen.begin(), seen.end(), fp) >= 3) {
      out.fingerprint = fp;
      return out;
    }
  }
  std::string detail = "no fingerprint seen 3 times in 7 samples:";
  for (auto h : out.hashes) detail += " " + std::to_string(h);
  throw DomainError(ErrorKind::NoConsensus, detail);
}

struct InvarianceTrial {
  AutomorphismGerm automorphism;
  Polynomial unit_f, unit_g;
  std::optional<NewtonDiagram> njac;
  std::uint64_t fingerprint_hash = 0;
  bool match = false;
  std::string error;
};

struct InvarianceReport {
  NewtonDiagram base;
  std::uint64_t base_fingerprint_hash = 0;
  std::vector<InvarianceTrial> trials;
  bool all_match() const {
    return std::all_of(trials.begin(), trials.end(), [](const InvarianceTrial& t) { return t.match; });
  }
};

inline std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial) * 0xbf58476d1ce4e5b9ULL + 1;
}

inline InvarianceReport verify_njac_invariance(const Polynomial& f, const Polynomial& g, int trials, int degree_bound,
                                               std::uint64_t seed, const NjacOptions& opt = {}) {
  MapGerm germ(f, g);
  InvarianceReport report;
  report.base = njac::njac(germ, NjacMethod::Both, opt);
  const PairFingerprint base_fp = pair_fingerprint(f, g, opt.precision);
  report.base_fingerprint_hash = base_fp.hash();
  for (int k = 0; k < trials; ++k) {
    InvarianceTrial t;
    const std::uint64_t s = trial_seed(seed, k);
    t.automorphism = random_automorphism(s, degree_bound);
    std::mt19937_64 rng(s ^ 0x94d049bb133111ebULL);
    t.unit_f = random_unit(rng);
    t.unit_g = random_unit(rng);
    try {
      auto [f2, g2] = transform_pair(f, g, t.automorphism, t.unit_f, t.unit_g);
      t.njac = njac::njac(MapGerm(f2, g2), NjacMethod::Both, opt);
      PairFingerprint fp = pair_fingerprint(f2, g2, opt.precision);
      t.fingerprint_hash = fp.hash();
      t.match = *t.njac == report.base && fp == base_fp;
    } catch (const DomainError& e) {
      t.error = e.what();
    }
    report.trials.push_back(std::move(t));
  }
  return report;
}

}  // namespace njac
