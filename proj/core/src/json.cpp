#include "ltax/json.hpp"

namespace ltax {

namespace {

template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_payload, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  return guarded("json", [&] { return Json::parse(text); });
}

Json context_to_json(const FormalContext& ctx) {
  Json rows = Json::array();
  for (std::size_t g = 0; g < ctx.object_count(); ++g) rows.push_back(ctx.row_string(g));
  return Json{{"name", ctx.name()},
              {"objects", ctx.objects()},
              {"attributes", ctx.attributes()},
              {"incidence", std::move(rows)}};
}

FormalContext context_from_json(const Json& j) {
  return guarded("context-json", [&] {
    auto rows = j.at("incidence").get<std::vector<std::string>>();
    return FormalContext::from_rows(j.value("name", std::string{}),
                                    j.at("objects").get<std::vector<std::string>>(),
                                    j.at("attributes").get<std::vector<std::string>>(), rows);
  });
}

Json concepts_to_json(const FormalContext& ctx, const std::vector<FormalConcept>& concepts) {
  Json out = Json::array();
  for (const auto& c : concepts) {
    out.push_back({{"extent", ctx.object_names(c.extent)}, {"intent", ctx.attribute_names(c.intent)}});
  }
  return out;
}

Json diagram_to_json(const LineDiagram& diagram) {
  Json nodes = Json::array();
  for (const auto& n : diagram.nodes) {
    nodes.push_back({{"id", n.id},
                     {"layer", n.layer},
                     {"position", n.position},
                     {"extent", n.extent},
                     {"intent", n.intent},
                     {"objectLabels", n.object_labels},
                     {"attributeLabels", n.attribute_labels}});
  }
  Json edges = Json::array();
  for (const auto& e : diagram.edges) edges.push_back({{"parent", e.parent}, {"child", e.child}});
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

LineDiagram diagram_from_json(const Json& j) {
  return guarded("diagram-json", [&] {
    LineDiagram d;
    for (const auto& n : j.at("nodes")) {
      DiagramNode node;
      node.id = n.at("id").get<std::size_t>();
      node.layer = n.at("layer").get<std::size_t>();
      node.position = n.value("position", std::size_t{0});
      node.extent = n.at("extent").get<std::vector<std::string>>();
      node.intent = n.at("intent").get<std::vector<std::string>>();
      node.object_labels = n.at("objectLabels").get<std::vector<std::string>>();
      node.attribute_labels = n.at("attributeLabels").get<std::vector<std::string>>();
      d.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      d.edges.push_back({e.at("parent").get<std::size_t>(), e.at("child").get<std::size_t>()});
    }
    return d;
  });
}

Json bicluster_to_json(const FormalContext& ctx, const OABicluster& b) {
  return Json{{"generator",
               {{"object", ctx.objects().at(b.object)}, {"attribute", ctx.attributes().at(b.attribute)}}},
              {"extent", ctx.object_names(b.extent)},
              {"intent", ctx.attribute_names(b.intent)},
              {"density", {{"num", b.density.num()}, {"den", b.density.den()}}}};
}

Json biclusters_to_json(const FormalContext& ctx, const std::vector<OABicluster>& biclusters) {
  Json out = Json::array();
  for (const auto& b : biclusters) out.push_back(bicluster_to_json(ctx, b));
  return out;
}

Json implication_to_json(const FormalContext& ctx, const Implication& imp) {
  Json out{{"premise", ctx.attribute_names(imp.premise())},
           {"conclusion", ctx.attribute_names(imp.conclusion())}};
  out["support"] = imp.support ? Json(*imp.support) : Json(nullptr);
  return out;
}

Implication implication_from_json(const FormalContext& ctx, const Json& j) {
  return guarded("implication-json", [&] {
    const auto premise = j.at("premise").get<std::vector<std::string>>();
    const auto conclusion = j.at("conclusion").get<std::vector<std::string>>();
    Implication imp(ctx.attributes_named(premise), ctx.attributes_named(conclusion));
    if (j.contains("support") && !j.at("support").is_null()) {
      imp.support = j.at("support").get<std::size_t>();
    }
    return imp;
  });
}

Json implications_to_json(const FormalContext& ctx, const ImplicationBase& base) {
  Json out = Json::array();
  for (const auto& imp : base.implications) out.push_back(implication_to_json(ctx, imp));
  return out;
}

ImplicationBase implications_from_json(const FormalContext& ctx, const Json& j,
                                       BaseProvenance provenance) {
  if (!j.is_array()) throw Error(ErrorCode::malformed_payload, "implication list must be an array");
  ImplicationBase base;
  base.provenance = provenance;
  for (const auto& item : j) base.implications.push_back(implication_from_json(ctx, item));
  return base;
}

}  // namespace ltax
