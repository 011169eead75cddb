#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "ltax/bicluster.hpp"
#include "ltax/context.hpp"
#include "ltax/implications.hpp"
#include "ltax/lattice.hpp"

// JSON wire formats. Keys keep insertion order so output is stable.
namespace ltax {

using Json = nlohmann::ordered_json;

/// {"name", "objects":[...], "attributes":[...], "incidence":["X.X", ...]}
Json context_to_json(const FormalContext& ctx);
FormalContext context_from_json(const Json& j);

/// [{"extent":[names], "intent":[names]}]
Json concepts_to_json(const FormalContext& ctx, const std::vector<FormalConcept>& concepts);

/// {"nodes":[{"id","layer","position","extent","intent","objectLabels","attributeLabels"}],
///  "edges":[{"parent","child"}]}
Json diagram_to_json(const LineDiagram& diagram);
LineDiagram diagram_from_json(const Json& j);

/// {"generator":{"object","attribute"},"extent","intent","density":{"num","den"}}
Json bicluster_to_json(const FormalContext& ctx, const OABicluster& bicluster);
Json biclusters_to_json(const FormalContext& ctx, const std::vector<OABicluster>& biclusters);

/// {"premise":[names],"conclusion":[names],"support":n}
Json implication_to_json(const FormalContext& ctx, const Implication& implication);
Implication implication_from_json(const FormalContext& ctx, const Json& j);
Json implications_to_json(const FormalContext& ctx, const ImplicationBase& base);
ImplicationBase implications_from_json(const FormalContext& ctx, const Json& j,
                                       BaseProvenance provenance);

/// Parses text, mapping syntax errors to ErrorCode::malformed_payload.
Json parse_json(std::string_view text);

}  // namespace ltax
