#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "njac/corpus.hpp"
#include "njac/render.hpp"

namespace {

using njac::render::Json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitUsage = 64;

struct Settings {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = njac::kDefaultSeed;
  int precision_cap = 512;
  std::string method = "both";
  int trials = 5;
  int degree = 3;
};

// What a subcommand produced: a JSON document and, when it has one, a diagram to draw.
struct Result {
  Json json;
  std::optional<njac::NewtonDiagram> diagram;
  std::vector<njac::Vertex> support;
  int exit_code = kExitOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

njac::Polynomial parse(const std::string& text) {
  try {
    return njac::parse_polynomial(text);
  } catch (const njac::SyntaxError& e) {
    throw UsageError("cannot parse '" + text + "': " + e.detail());
  }
}

njac::NjacOptions options(const Settings& s) {
  njac::NjacOptions opt;
  opt.seed = s.seed;
  opt.pencil.seed = s.seed;
  opt.precision.cap = s.precision_cap;
  return opt;
}

njac::NjacMethod method_of(const std::string& m) {
  if (m == "branches") return njac::NjacMethod::Branches;
  if (m == "support") return njac::NjacMethod::Support;
  return njac::NjacMethod::Both;
}

Result cmd_diagram(const std::string& h_text) {
  const auto h = parse(h_text);
  Result r;
  r.diagram = njac::diagram_of(h);
  r.json = njac::render::decomposition_json(*r.diagram);
  for (const auto& [e, c] : h.terms()) r.support.push_back({e.i, e.j});
  return r;
}

Result cmd_imult(const std::string& f, const std::string& g, const Settings& s) {
  return {Json{{"i0", njac::render::ext(njac::intersection_multiplicity(parse(f), parse(g), s.seed))}}};
}

Result cmd_milnor(const std::string& h, const Settings& s) {
  return {Json{{"mu", njac::render::ext(njac::milnor_number(parse(h), s.seed))}}};
}

Result cmd_puiseux(const std::string& h_text, const Settings& s) {
  const auto h = parse(h_text);
  if (!h.vanishes_at_origin()) throw njac::DomainError(njac::ErrorKind::NotVanishingAtOrigin, "the curve must pass through the origin");
  Json branches = Json::array();
  for (const auto& b : njac::branches_at_origin(h, options(s).precision)) {
    Json j = njac::render::branch_json(b);
    j["characteristic"] = njac::render::characteristic_json(njac::characteristic_exponents(b));
    branches.push_back(j);
  }
  return {Json{{"branches", branches}}};
}

Result cmd_jacobian(const std::string& f, const std::string& g) {
  const njac::MapGerm germ(parse(f), parse(g));
  const auto jac = njac::jacobian(germ);
  Result r;
  r.diagram = njac::diagram_of(jac);
  r.json = Json{{"jacobian", njac::to_string(jac)}, {"diagram", njac::render::diagram_json(*r.diagram)}};
  for (const auto& [e, c] : jac.terms()) r.support.push_back({e.i, e.j});
  return r;
}

Result cmd_njac(const std::string& f, const std::string& g, const Settings& s) {
  const njac::MapGerm germ(parse(f), parse(g));
  Result r;
  try {
    r.diagram = njac::njac(germ, method_of(s.method), options(s));
    r.json = njac::render::diagram_json(*r.diagram);
  } catch (const njac::RouteMismatch& e) {
    r.json = njac::render::route_mismatch_json(e);
    r.exit_code = kExitMismatch;
  }
  return r;
}

Result cmd_quotients(const std::string& f, const std::string& g, const Settings& s) {
  Json q = Json::array();
  for (const auto& x : njac::jacobian_quotients(njac::MapGerm(parse(f), parse(g)), options(s))) q.push_back(njac::render::ext(x));
  return {Json{{"quotients", q}}};
}

Result cmd_hironaka(const std::string& f, const std::string& g, const Settings& s) {
  Json groups = Json::array();
  for (const auto& h : njac::hironaka_data(njac::MapGerm(parse(f), parse(g)), options(s)))
    groups.push_back({{"q", njac::render::ext(h.q)}, {"a", njac::render::ext(h.a)}, {"b", njac::render::ext(h.b)}});
  return {Json{{"groups", groups}}};
}

Result cmd_fingerprint(const std::string& f, const std::string& g, const Settings& s) {
  const auto policy = options(s).precision;
  if (g.empty()) return {njac::render::fingerprint_json(njac::curve_fingerprint(parse(f), policy))};
  return {njac::render::fingerprint_json(njac::pair_fingerprint(parse(f), parse(g), policy))};
}

Result cmd_pencil(const std::string& f, const std::string& g, const Settings& s) {
  const auto pf = njac::generic_pencil_fingerprint(parse(f), parse(g), s.seed, options(s).precision);
  Json samples = Json::array(), hashes = Json::array();
  for (const auto& t : pf.samples) samples.push_back(t.get_str());
  for (auto h : pf.hashes) hashes.push_back(h);
  return {Json{{"fingerprint", njac::render::fingerprint_json(pf.fingerprint)}, {"samples", samples}, {"hashes", hashes}}};
}

Result cmd_verify(const std::string& f, const std::string& g, const Settings& s) {
  const auto report = njac::verify_njac_invariance(parse(f), parse(g), s.trials, s.degree, s.seed, options(s));
  Result r{njac::render::report_json(report)};
  r.diagram = report.base;
  if (!report.all_match()) r.exit_code = kExitMismatch;
  return r;
}

std::vector<njac::CorpusEntry> corpus_entries(const std::string& path) {
  try {
    return njac::read_corpus(path);
  } catch (const njac::DomainError& e) {
    throw UsageError(e.detail());
  }
}

Result cmd_corpus(const std::string& path, const Settings& s) {
  Result r{Json::array()};
  for (const auto& entry : corpus_entries(path)) {
    Json j{{"line", entry.line}, {"f", njac::to_string(parse(entry.f))}, {"g", njac::to_string(parse(entry.g))}};
    try {
      const njac::MapGerm germ(parse(entry.f), parse(entry.g));
      const auto nj = njac::njac(germ, njac::NjacMethod::Both, options(s));
      j["njac"] = njac::render::diagram_json(nj);
      Json incl = Json::array();
      for (const auto& q : njac::inclinations(nj)) incl.push_back(njac::render::ext(q));
      j["inclinations"] = incl;
    } catch (const njac::RouteMismatch& e) {
      j["result"] = njac::render::route_mismatch_json(e);
      r.exit_code = kExitMismatch;
    } catch (const njac::DomainError& e) {
      j["result"] = njac::render::error_json(e);
      if (r.exit_code == kExitOk) r.exit_code = kExitDomain;
    }
    r.json.push_back(j);
  }
  return r;
}

std::string format_result(const Result& r, const std::string& format) {
  if (format == "json") return r.json.dump() + "\n";
  if (format == "ascii") return r.diagram ? njac::render::ascii(*r.diagram, r.support) : r.json.dump(2) + "\n";
  if (!r.diagram) throw UsageError("--format svg needs a subcommand that produces a diagram");
  return njac::render::svg(*r.diagram, r.support);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton diagrams of plane curve and map germs"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "ascii", "svg"}));
  app.add_option("-o,--output", s.output, "write the result to a file instead of stdout");
  app.add_option("--seed", s.seed, "seed for every randomized step");
  app.add_option("--precision-cap", s.precision_cap, "truncation cap before exact mode")->check(CLI::Range(16, 1 << 20));

  std::string a, b;
  std::function<Result()> run;
  auto unary = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("germ", a, "curve germ")->required();
    sub->callback([&, fn] { run = [&, fn] { return fn(); }; });
    return sub;
  };
  auto binary = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("f", a, "first component")->required();
    sub->add_option("g", b, "second component")->required();
    sub->callback([&, fn] { run = [&, fn] { return fn(); }; });
    return sub;
  };
  unary("diagram", "Newton diagram, elementary decomposition and inclinations", [&] { return cmd_diagram(a); });
  binary("imult", "intersection multiplicity at the origin", [&] { return cmd_imult(a, b, s); });
  unary("milnor", "Milnor number at the origin", [&] { return cmd_milnor(a, s); });
  unary("puiseux", "Puiseux branches and characteristic exponents", [&] { return cmd_puiseux(a, s); });
  binary("jacobian", "jacobian determinant and its Newton diagram", [&] { return cmd_jacobian(a, b); });
  auto* nj = binary("njac", "jacobian Newton diagram", [&] { return cmd_njac(a, b, s); });
  nj->add_option("--method", s.method, "route")->check(CLI::IsMember({"branches", "support", "both"}));
  binary("quotients", "jacobian quotients", [&] { return cmd_quotients(a, b, s); });
  binary("hironaka", "Hironaka data grouped by quotient", [&] { return cmd_hironaka(a, b, s); });
  auto* fp = app.add_subcommand("fingerprint", "equisingularity fingerprint of a curve or a pair");
  fp->add_option("f", a, "curve")->required();
  fp->add_option("g", b, "second curve");
  fp->callback([&] { run = [&] { return cmd_fingerprint(a, b, s); }; });
  binary("pencil", "fingerprint of the generic member of the pencil f - t g", [&] { return cmd_pencil(a, b, s); });
  auto* ver = binary("verify", "invariance of Nj under random coordinate changes", [&] { return cmd_verify(a, b, s); });
  ver->add_option("--trials", s.trials, "number of trials")->check(CLI::Range(1, 1000));
  ver->add_option("--degree", s.degree, "degree bound of the coordinate changes")->check(CLI::Range(1, 8));
  auto* corpus = app.add_subcommand("corpus", "run both routes over a file of 'f ; g' lines");
  corpus->add_option("file", a, "corpus file")->required();
  corpus->callback([&] { run = [&] { return cmd_corpus(a, s); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Result result;
  try {
    result = run();
  } catch (const UsageError& e) {
    std::cerr << "njac: " << e.what() << '\n';
    return kExitUsage;
  } catch (const njac::DomainError& e) {
    result.json = njac::render::error_json(e);
    result.exit_code = kExitDomain;
  }

  std::string text;
  try {
    text = result.exit_code == kExitOk || result.diagram ? format_result(result, s.format) : result.json.dump() + "\n";
  } catch (const UsageError& e) {
    std::cerr << "njac: " << e.what() << '\n';
    return kExitUsage;
  }
  if (s.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(s.output, std::ios::binary);
    if (!out) {
      std::cerr << "njac: cannot write '" << s.output << "'\n";
      return kExitUsage;
    }
    out << text;
  }
  return result.exit_code;
}
