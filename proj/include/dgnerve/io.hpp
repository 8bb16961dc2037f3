#pragma once

#include "dgnerve/horn.hpp"
#include "dgnerve/mc.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dgn {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent document content (exit code 2 in the CLI).
struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p/q" when the ideal part is zero, otherwise ["p/q", ["p/q", ...]].
Json ring_to_json(const RingElement& x);
RingElement ring_from_json(const Json& j, std::size_t rank);

Json coords_to_json(const Vector& v);
Vector coords_from_json(const Json& j, std::size_t rank);

Json category_to_json(const DgCategory& c);
DgCategory category_from_json(const Json& j);

// Simplex, horn and filler documents embed their category under "category".
Json simplex_to_json(const DgCategory& c, const NerveSimplex& sigma);
NerveSimplex simplex_from_json(const DgCategory& c, const Json& j);

Json horn_to_json(const DgCategory& c, const HornData& h);
HornData horn_from_json(const DgCategory& c, const Json& j);

// The filler cells plus the completed simplex.
Json filler_to_json(const DgCategory& c, const HornData& h, const Filler& f);
Filler filler_from_json(const DgCategory& c, const Json& j);

// Base category plus a list of MC objects.
Json twisted_to_json(const DgCategory& base, const std::vector<MCElement>& objs);
std::vector<MCElement> mc_objects_from_json(const DgCategory& base, const Json& j);

Json report_to_json(const Report& r);

// "category", "simplex", "horn", "filler", "twisted"; throws DocumentError otherwise.
std::string document_kind(const Json& j);

// Named example documents: every fixture category plus simplices, horns, fillers, a twisted
// category and a dual-number lifting problem.
std::vector<std::pair<std::string, Json>> fixture_documents(std::uint64_t seed);

// Parses text; nlohmann errors are rethrown as DocumentError with the byte position.
Json parse_document(const std::string& text);

}  // namespace dgn
