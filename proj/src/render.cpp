#include "njac/render.hpp"

#include <algorithm>
#include <sstream>

namespace njac::render {


Json ext(const ExtNat& n) {
  if (n.is_infinite()) return "inf";
  return n.value();
}

Json ext(const ExtRational& q) {
  if (q.infinite) return "inf";
  return q.value.get_str();
}

Json diagram_json(const NewtonDiagram& d) {
  Json v = Json::array();
  for (const auto& p : d.vertices()) v.push_back({p.i, p.j});
  return Json{{"vertices", v}};
}

Json elementary_json(const ElementaryDiagram& e) { return Json{{"a", ext(e.a)}, {"b", ext(e.b)}}; }

Json decomposition_json(const NewtonDiagram& d) {
  Json parts = Json::array();
  for (const auto& e : elementary_decomposition(d)) parts.push_back(elementary_json(e));
  Json incl = Json::array();
  for (const auto& q : inclinations(d)) incl.push_back(ext(q));
  Json out = diagram_json(d);
  out["elementary"] = parts;
  out["inclinations"] = incl;
  return out;
}

Json error_json(const DomainError& e) {
  return Json{{"error", to_string(e.kind())}, {"detail", e.detail()}};
}

Json route_mismatch_json(const RouteMismatch& e) {
  Json out = error_json(e);
  out["branches"] = diagram_json(e.by_branches());
  out["support"] = diagram_json(e.by_support());
  return out;
}

Json branch_json(const PuiseuxBranch& b) {
  Json out{{"expansion", b.to_string()},
           {"ramification", b.e},
           {"multiplicity", b.multiplicity},
           {"conjugates", b.conjugates},
           {"exact", b.exact}};
  Json tower = Json::array();
  for (int k = 0; k < b.tower.height(); ++k) tower.push_back(b.tower.level_to_string(k));
  out["tower"] = tower;
  return out;
}

Json characteristic_json(const CharacteristicSequence& c) {
  Json ex = Json::array();
  for (const auto& b : c.exponents) ex.push_back(b.get_str());
  return Json{{"multiplicity", c.multiplicity}, {"exponents", ex}, {"notation", c.to_string()}};
}

Json fingerprint_json(const PairFingerprint& fp) {
  Json branches = Json::array();
  for (const auto& b : fp.branches)
    branches.push_back({{"label", std::string(1, b.label)}, {"multiplicity", b.multiplicity}, {"characteristic", characteristic_json(b.characteristic)}});
  Json contacts = Json::array();
  for (const auto& row : fp.contacts) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(ext(c));
    contacts.push_back(r);
  }
  return Json{{"branches", branches}, {"contacts", contacts}, {"hash", fp.hash()}, {"notation", fp.to_string()}};
}

Json polynomial_json(const Polynomial& p) { return to_string(p); }

Json report_json(const InvarianceReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    Json j{{"automorphism", {to_string(t.automorphism.phi1), to_string(t.automorphism.phi2)}},
           {"units", {to_string(t.unit_f), to_string(t.unit_g)}}};
    j["njac"] = t.njac ? diagram_json(*t.njac) : Json(nullptr);
    j["fingerprint_hash"] = t.fingerprint_hash;
    j["match"] = t.match;
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(j);
  }
  return Json{{"base", diagram_json(r.base)},
              {"base_fingerprint_hash", r.base_fingerprint_hash},
              {"trials", trials},
              {"all_match", r.all_match()}};
}

std::string ascii(const NewtonDiagram& d, const std::vector<Vertex>& support) {
  std::int64_t w = d.width(), h = d.height();
  for (const auto& p : support) {
    w = std::max(w, p.i);
    h = std::max(h, p.j);
  }
  w = std::min<std::int64_t>(w + 1, 60);
  h = std::min<std::int64_t>(h + 1, 40);
  std::vector<std::string> grid(static_cast<std::size_t>(h + 1), std::string(static_cast<std::size_t>(w + 1), ' '));
  auto put = [&](std::int64_t i, std::int64_t j, char c) {
    if (i >= 0 && j >= 0 && i <= w && j <= h) grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = c;
  };
  const auto& v = d.vertices();
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const auto a = v[k], b = v[k + 1];
    for (std::int64_t i = a.i; i <= b.i; ++i) {
      // boundary height at column i, rounded up to the lattice
      const std::int64_t num = a.j * (b.i - i) + b.j * (i - a.i), den = b.i - a.i;
      const std::int64_t j = (num + den - 1) / den;
      if (num % den == 0) put(i, j, '.');
    }
  }
  for (std::int64_t j = v.front().j + 1; j <= h; ++j) put(v.front().i, j, '|');
  for (std::int64_t i = v.back().i + 1; i <= w; ++i) put(i, v.back().j, '-');
  for (const auto& p : support) put(p.i, p.j, '*');
  for (const auto& p : v) put(p.i, p.j, 'o');
  std::ostringstream out;
  for (std::int64_t j = h; j >= 0; --j) {
    std::string row = grid[static_cast<std::size_t>(j)];
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out << (j < 10 ? " " : "") << j << " :" << row << '\n';
  }
  out << "   +" << std::string(static_cast<std::size_t>(w + 1), '-') << '\n';
  out << "    0";
  for (std::int64_t i = 5; i <= w; i += 5) out << std::string(i < 10 ? 4 : 3, ' ') << i;
  out << '\n' << "vertices " << d.to_string() << '\n';
  return out.str();
}

std::string svg(const NewtonDiagram& d, const std::vector<Vertex>& support) {
  std::int64_t w = d.width(), h = d.height();
  for (const auto& p : support) {
    w = std::max(w, p.i);
    h = std::max(h, p.j);
  }
  w += 2;
  h += 2;
  const int cell = 32, margin = 30;
  const std::int64_t width = 2 * margin + w * cell, height = 2 * margin + h * cell;
  auto X = [&](std::int64_t i) { return margin + i * cell; };
  auto Y = [&](std::int64_t j) { return height - margin - j * cell; };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
    << width << ' ' << height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<g stroke=\"#bbb\" stroke-width=\"0.5\">\n";
  for (std::int64_t i = 0; i <= w; ++i) s << "<line x1=\"" << X(i) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(i) << "\" y2=\"" << Y(h) << "\"/>\n";
  for (std::int64_t j = 0; j <= h; ++j) s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(j) << "\" x2=\"" << X(w) << "\" y2=\"" << Y(j) << "\"/>\n";
  s << "</g>\n";
  s << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
  s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(w) << "\" y2=\"" << Y(0) << "\"/>\n";
  s << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(h) << "\"/>\n";
  s << "</g>\n";
  const auto& v = d.vertices();
  s << "<polyline fill=\"none\" stroke=\"#c00\" stroke-width=\"2.5\" points=\"" << X(v.front().i) << ',' << Y(h);
  for (const auto& p : v) s << ' ' << X(p.i) << ',' << Y(p.j);
  s << ' ' << X(w) << ',' << Y(v.back().j) << "\"/>\n";
  for (const auto& p : support) s << "<circle cx=\"" << X(p.i) << "\" cy=\"" << Y(p.j) << "\" r=\"4\" fill=\"#333\"/>\n";
  for (const auto& p : v)
    s << "<circle cx=\"" << X(p.i) << "\" cy=\"" << Y(p.j) << "\" r=\"5\" fill=\"none\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
  s << "<text x=\"" << X(w) - 10 << "\" y=\"" << Y(0) + 20 << "\" font-family=\"serif\" font-size=\"14\">i</text>\n";
  s << "<text x=\"" << X(0) - 20 << "\" y=\"" << Y(h) + 10 << "\" font-family=\"serif\" font-size=\"14\">j</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace njac::render
