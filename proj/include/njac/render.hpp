#pragma once

// JSON, ASCII and SVG output for diagrams and the other result types.

#include <json.hpp>

#include <string>
#include <vector>

#include "njac/equisingularity.hpp"
#include "njac/jacobian_newton.hpp"
#include "njac/newton.hpp"
#include "njac/puiseux.hpp"

namespace njac::render {

using Json = nlohmann::ordered_json;

// "inf" for infinite values.
Json ext(const ExtNat& n);
Json ext(const ExtRational& q);

Json diagram_json(const NewtonDiagram& d);
Json elementary_json(const ElementaryDiagram& e);
Json decomposition_json(const NewtonDiagram& d);
Json error_json(const DomainError& e);
Json route_mismatch_json(const RouteMismatch& e);
Json branch_json(const PuiseuxBranch& b);
Json characteristic_json(const CharacteristicSequence& c);
Json fingerprint_json(const PairFingerprint& fp);
Json polynomial_json(const Polynomial& p);
Json report_json(const InvarianceReport& r);

/// Text plot with j on the vertical axis; '*' support, 'o' vertices, '.' boundary.
std::string ascii(const NewtonDiagram& d, const std::vector<Vertex>& support = {});
std::string svg(const NewtonDiagram& d, const std::vector<Vertex>& support = {});

}  // namespace njac::render
