// Acceptance run over the shipped corpus. Prints one PASS/FAIL line per
// criterion and exits nonzero if any criterion fails.
//
// usage: njac_acceptance <corpus file> [<path to the njac cli>]

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "njac/corpus.hpp"
#include "njac/render.hpp"

using namespace njac;

namespace {

struct Germ {
  std::string text_f, text_g;
  Polynomial f, g;
};

std::vector<Germ> corpus;
std::string cli_path;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

std::string label(const Germ& g) { return "(" + g.text_f + " ;" + g.text_g + ")"; }

Outcome example_diagram() {
  Outcome o;
  const auto d = diagram_of(parse_polynomial("y^5+2*x*y^3-x^3*y^2+3*x^4*y"));
  if (d.to_string() != "[(0,5),(1,3),(4,1)]") o.fail("vertices " + d.to_string());
  std::string parts;
  for (const auto& e : elementary_decomposition(d)) parts += e.to_string() + " ";
  if (parts != "Teis{1}{2} Teis{3}{2} Teis{inf}{1} ") o.fail("decomposition " + parts);
  std::string incl;
  for (const auto& q : inclinations(d)) incl += q.to_string() + " ";
  if (incl != "1/2 3/2 inf ") o.fail("inclinations " + incl);
  return o;
}

Outcome pencil_formula() {
  Outcome o;
  const auto x = parse_polynomial("x"), y = parse_polynomial("y");
  int checked = 0;
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      if (std::gcd(n, m) != 1) continue;
      const auto mu = generic_pencil_milnor(x, y, n, m).value;
      ++checked;
      if (mu != ExtNat((m - 1) * (n - 1)))
        o.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + " gives " + mu.to_string());
    }
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(checked) + " coprime pairs";
  return o;
}

Outcome worked_germs() {
  Outcome o;
  // Direct images of the critical locus, worked by hand.
  const std::array<std::array<const char*, 3>, 2> cases{{{"v^2-u^3", "u", "x+y^3"}, {"v^2-u^3", "v", "(x-y^2)^2"}}};
  for (const auto& [f, g, image] : cases) {
    const MapGerm germ(parse_polynomial(f), parse_polynomial(g));
    const auto expected = diagram_of(parse_polynomial(image));
    const auto a = njac_branches(germ), b = njac_support(germ);
    if (!(a == expected) || !(b == expected))
      o.fail(std::string(f) + "," + g + ": branches " + a.to_string() + " support " + b.to_string() + " expected " +
             expected.to_string());
  }
  return o;
}

Outcome route_equivalence() {
  Outcome o;
  int small = 0;
  for (const auto& c : corpus) {
    if (c.f.total_degree() <= 6 && c.g.total_degree() <= 6) ++small;
    try {
      const MapGerm germ(c.f, c.g);
      const auto a = njac_branches(germ), b = njac_support(germ);
      if (!(a == b)) {
        o.fail(label(c) + ": branches " + a.to_string() + " support " + b.to_string());
        continue;
      }
      const ExtNat i0 = intersection_multiplicity(c.f, c.g, kSeed);
      for (std::int64_t m = 1; m <= 8; ++m)
        for (std::int64_t n = 1; n <= 8; ++n) {
          if (std::gcd(m, n) != 1) continue;
          const auto lhs = support(m, n, a), rhs = lemma_support(germ, m, n, i0);
          if (lhs != rhs)
            o.fail(label(c) + " at (" + std::to_string(m) + "," + std::to_string(n) + "): " + std::to_string(lhs) +
                   " vs " + std::to_string(rhs));
        }
    } catch (const DomainError& e) {
      o.fail(label(c) + ": " + e.what());
    }
  }
  if (small < 20) o.fail("only " + std::to_string(small) + " corpus pairs of degree <= 6");
  if (o.pass) o.note = std::to_string(corpus.size()) + " pairs, all primitive directions up to 8";
  return o;
}

Outcome njac_invariance() {
  Outcome o;
  std::vector<NewtonDiagram> family;
  for (const auto& c : corpus) {
    try {
      const auto report = verify_njac_invariance(c.f, c.g, 5, 3, kSeed);
      for (const auto& t : report.trials)
        if (!t.match) o.fail(label(c) + ": " + (t.error.empty() ? "diagram or fingerprint changed" : t.error));
      if (c.text_f.find("x^7") != std::string::npos) family.push_back(report.base);
    } catch (const DomainError& e) {
      o.fail(label(c) + ": " + e.what());
    }
  }
  if (family.size() != 4) o.fail("expected four members of the y^3-x^7 family, found " + std::to_string(family.size()));
  for (const auto& d : family)
    if (!(d == family.front())) o.fail("family diagrams differ: " + d.to_string() + " vs " + family.front().to_string());
  return o;
}

Outcome pencil_invariance() {
  Outcome o;
  for (const auto& c : corpus) {
    try {
      const auto base = generic_pencil_fingerprint(c.f, c.g, kSeed).fingerprint;
      for (int k = 0; k < 5; ++k) {
        const std::uint64_t s = trial_seed(kSeed, k);
        std::mt19937_64 rng(s ^ 0x5bd1e995ULL);
        const auto uf = random_unit(rng), ug = random_unit(rng);
        auto [f2, g2] = transform_pair(c.f, c.g, random_automorphism(s, 3), uf, ug);
        const auto moved = generic_pencil_fingerprint(f2, g2, kSeed).fingerprint;
        if (!(moved == base)) o.fail(label(c) + ": " + base.to_string() + " became " + moved.to_string());
      }
    } catch (const DomainError& e) {
      o.fail(label(c) + ": " + e.what());
    }
  }
  return o;
}

Outcome quotients_and_hironaka() {
  Outcome o;
  for (const auto& c : corpus) {
    try {
      const MapGerm germ(c.f, c.g);
      const auto contributions = branch_contributions(germ);
      const auto nj = njac_from_contributions(contributions);
      if (inclinations(nj) != jacobian_quotients(contributions)) o.fail(label(c) + ": inclinations differ from quotients");
      std::vector<ElementaryDiagram> parts;
      for (const auto& h : hironaka_data(contributions)) parts.emplace_back(h.a, h.b);
      if (!(sum_of(parts) == nj)) o.fail(label(c) + ": Hironaka sum " + sum_of(parts).to_string() + " vs " + nj.to_string());
    } catch (const DomainError& e) {
      o.fail(label(c) + ": " + e.what());
    }
  }
  return o;
}

ExtNat i0_by_branches(const Polynomial& f, const Polynomial& g) {
  ExtNat total(0);
  for (const auto& b : branches_at_origin(f))
    total += static_cast<std::int64_t>(b.multiplicity) * b.conjugates * order_along_branch(g, b);
  return total;
}

Outcome cross_method() {
  Outcome o;
  if (milnor_number(parse_polynomial("y^2-x^3")) != ExtNat(2)) o.fail("mu(y^2-x^3) is not 2");
  for (const auto& c : corpus) {
    try {
      const ExtNat r = intersection_multiplicity(c.f, c.g, kSeed);
      const ExtNat p1 = i0_by_branches(c.f, c.g), p2 = i0_by_branches(c.g, c.f);
      if (r != p1 || r != p2)
        o.fail(label(c) + ": resultant " + r.to_string() + ", branches " + p1.to_string() + "/" + p2.to_string());
      const auto nj = njac_branches(MapGerm(c.f, c.g));
      const ExtNat mu_f = milnor_number(c.f, kSeed), mu_g = milnor_number(c.g, kSeed);
      if (mu_f.is_infinite() || mu_g.is_infinite() || r.is_infinite()) {
        o.fail(label(c) + ": infinite mu or i0");
        continue;
      }
      const std::int64_t height = mu_f.value() + r.value() - 1, width = mu_g.value() + r.value() - 1;
      if (nj.height() != height || nj.width() != width)
        o.fail(label(c) + ": extent (" + std::to_string(nj.width()) + "," + std::to_string(nj.height()) +
               ") but mu + i0 - 1 gives (" + std::to_string(width) + "," + std::to_string(height) + ")");
    } catch (const DomainError& e) {
      o.fail(label(c) + ": " + e.what());
    }
  }
  return o;
}

std::string library_dump() {
  render::Json all = render::Json::array();
  for (const auto& c : corpus) {
    const MapGerm germ(c.f, c.g);
    all.push_back({{"njac", render::diagram_json(njac::njac(germ))},
                   {"pair", render::fingerprint_json(pair_fingerprint(c.f, c.g))},
                   {"pencil", render::fingerprint_json(generic_pencil_fingerprint(c.f, c.g, kSeed).fingerprint)},
                   {"verify", render::report_json(verify_njac_invariance(c.f, c.g, 2, 3, kSeed))}});
  }
  return all.dump();
}

std::string run_cli(const std::string& args) {
  std::string out;
  FILE* p = popen((cli_path + " " + args + " 2>&1").c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  out += "\nexit " + std::to_string(pclose(p));
  return out;
}

Outcome determinism(const std::string& corpus_path) {
  Outcome o;
  if (library_dump() != library_dump()) o.fail("library JSON differs between runs");
  if (cli_path.empty()) {
    o.note = "library only; no cli path given";
    return o;
  }
  const std::vector<std::string> commands{
      "corpus '" + corpus_path + "'",
      "verify 'v^2-u^3' 'u' --trials 5 --seed 7",
      "verify 'y^3-x^7+x^5*y' 'x' --trials 3 --seed 11",
      "pencil 'y^3-x^4' 'y'",
      "fingerprint 'x*y*(x-y)' 'x+y^2'",
      "puiseux 'y^4-x^5'",
      "diagram 'y^5+2*x*y^3-x^3*y^2+3*x^4*y' --format svg",
  };
  for (const auto& cmd : commands)
    if (run_cli(cmd) != run_cli(cmd)) o.fail("cli output differs for: " + cmd);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: njac_acceptance <corpus file> [<njac cli>]\n";
    return 64;
  }
  if (argc > 2) cli_path = argv[2];
  for (const auto& e : read_corpus(argv[1]))
    corpus.push_back({e.f, e.g, parse_polynomial(e.f), parse_polynomial(e.g)});

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Newton diagram, decomposition and inclinations of the quintic example", example_diagram},
      {"generic pencil Milnor number of x^n - t y^m", pencil_formula},
      {"worked germs by both routes", worked_germs},
      {"branch and support routes agree; support matches the pencil formula", route_equivalence},
      {"Nj invariant under coordinate changes and units", njac_invariance},
      {"generic pencil fingerprint invariant under coordinate changes and units", pencil_invariance},
      {"inclinations equal jacobian quotients; Hironaka data sums to Nj", quotients_and_hironaka},
      {"intersection multiplicity by resultants and by branches; classical totals", cross_method},
      {"identical seeds give byte-identical JSON", [&] { return determinism(argv[1]); }},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::printf("criterion %zu: %s  %s (%.1fs)%s%s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(), secs,
                o.note.empty() ? "" : "  ", o.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
