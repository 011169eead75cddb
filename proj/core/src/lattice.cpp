#include "ltax/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "ltax/json.hpp"
#include "ltax/lectic.hpp"

namespace ltax {

ConceptOrder concept_order(const FormalConcept& a, const FormalConcept& b) {
  if (a.extent.universe() != b.extent.universe() || a.intent.universe() != b.intent.universe()) {
    throw Error(ErrorCode::foreign_concept, "concepts belong to different contexts");
  }
  const bool le = a.extent.is_subset_of(b.extent);
  const bool ge = b.extent.is_subset_of(a.extent);
  if (le && ge) return ConceptOrder::equal;
  if (le) return ConceptOrder::less;
  if (ge) return ConceptOrder::greater;
  return ConceptOrder::incomparable;
}

ConceptLimitExceeded::ConceptLimitExceeded(std::vector<FormalConcept> partial,
                                           AttributeSet resume_after)
    : Error(ErrorCode::concept_limit,
            "concept limit of " + std::to_string(partial.size()) +
                " reached; resume after the last reported intent"),
      partial_(std::move(partial)),
      resume_after_(std::move(resume_after)) {}

std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx,
                                              const EnumerationOptions& options) {
  std::size_t closures = 0;
  auto close = [&](const AttributeSet& b) {
    if (options.progress && options.progress_interval > 0 &&
        ++closures % options.progress_interval == 0) {
      options.progress(closures);
    }
    return closure_attributes(ctx, b);
  };

  std::vector<FormalConcept> out;
  std::optional<AttributeSet> intent;
  if (options.resume_after) {
    if (options.resume_after->universe() != ctx.attribute_count()) {
      throw Error(ErrorCode::index_out_of_range, "resume intent does not belong to this context");
    }
    intent = next_closed(*options.resume_after, close);
  } else {
    intent = close(ctx.no_attributes());
  }

  while (intent) {
    if (out.size() == options.max_concepts) {
      AttributeSet last = out.empty() ? (options.resume_after ? *options.resume_after
                                                              : ctx.no_attributes())
                                      : out.back().intent;
      throw ConceptLimitExceeded(std::move(out), std::move(last));
    }
    out.push_back({derive_attributes(ctx, *intent), *intent});
    intent = next_closed(*intent, close);
  }
  return out;
}

ConceptLattice::ConceptLattice(FormalContext context, std::vector<FormalConcept> concepts,
                               std::vector<Cover> covers)
    : context_(std::move(context)), concepts_(std::move(concepts)), covers_(std::move(covers)) {
  std::sort(covers_.begin(), covers_.end());
  upper_.resize(concepts_.size());
  lower_.resize(concepts_.size());
  for (auto [child, parent] : covers_) {
    upper_.at(child).push_back(parent);
    lower_.at(parent).push_back(child);
  }
  for (auto& v : upper_) std::sort(v.begin(), v.end());
  for (auto& v : lower_) std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < concepts_.size(); ++i) by_intent_.emplace(concepts_[i].intent, i);
}

std::optional<std::size_t> ConceptLattice::index_of(const AttributeSet& intent) const {
  auto it = by_intent_.find(intent);
  if (it == by_intent_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConceptLattice::meet(std::size_t a, std::size_t b) const {
  const auto extent = concepts_.at(a).extent & concepts_.at(b).extent;
  return *index_of(derive_objects(context_, extent));
}

std::size_t ConceptLattice::join(std::size_t a, std::size_t b) const {
  const auto intent = concepts_.at(a).intent & concepts_.at(b).intent;
  return *index_of(closure_attributes(context_, intent));
}

ConceptLattice build_lattice(const FormalContext& ctx, const EnumerationOptions& options) {
  auto concepts = enumerate_concepts(ctx, options);

  std::unordered_map<AttributeSet, std::size_t, IndexSetHash<AttributeTag>> by_intent;
  by_intent.reserve(concepts.size());
  for (std::size_t i = 0; i < concepts.size(); ++i) by_intent.emplace(concepts[i].intent, i);

  // Lower neighbours of (A, B) are the inclusion-minimal intents among
  // (B + m)'' for m outside B.
  std::vector<Cover> covers;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const auto& intent = concepts[i].intent;
    candidates.clear();
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
      if (intent.contains(m)) continue;
      auto grown = intent;
      grown.insert(m);
      const auto j = by_intent.at(closure_attributes(ctx, grown));
      if (std::find(candidates.begin(), candidates.end(), j) == candidates.end()) {
        candidates.push_back(j);
      }
    }
    for (auto j : candidates) {
      const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](std::size_t k) {
        return k != j && concepts[k].intent.is_subset_of(concepts[j].intent);
      });
      if (minimal) covers.emplace_back(j, i);
    }
  }
  return ConceptLattice(ctx, std::move(concepts), std::move(covers));
}

ReducedLabels reduced_labels(const ConceptLattice& lattice) {
  const auto& ctx = lattice.context();
  ReducedLabels labels;
  labels.objects.resize(lattice.size());
  labels.attributes.resize(lattice.size());
  for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
    const auto intent = closure_attributes(ctx, AttributeSet(ctx.attribute_count(), {m}));
    labels.attributes.at(*lattice.index_of(intent)).push_back(m);
  }
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    labels.objects.at(*lattice.index_of(ctx.row(g))).push_back(g);
  }
  return labels;
}

LineDiagram line_diagram(const ConceptLattice& lattice) {
  const auto& ctx = lattice.context();
  const auto& concepts = lattice.concepts();
  const std::size_t n = concepts.size();

  // Extent size strictly drops along every cover edge, so this order is
  // topological from the top down.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return concepts[a].extent.size() > concepts[b].extent.size();
  });
  std::vector<std::size_t> layer(n, 0);
  for (auto i : order) {
    for (auto child : lattice.lower_covers(i)) layer[child] = std::max(layer[child], layer[i] + 1);
  }

  std::vector<std::size_t> position(n, 0);
  {
    std::unordered_map<std::size_t, std::size_t> fill;
    for (std::size_t i = 0; i < n; ++i) position[i] = fill[layer[i]]++;
  }

  const auto labels = reduced_labels(lattice);
  LineDiagram diagram;
  diagram.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DiagramNode node;
    node.id = i;
    node.layer = layer[i];
    node.position = position[i];
    node.extent = ctx.object_names(concepts[i].extent);
    node.intent = ctx.attribute_names(concepts[i].intent);
    for (auto g : labels.objects[i]) node.object_labels.push_back(ctx.objects()[g]);
    for (auto m : labels.attributes[i]) node.attribute_labels.push_back(ctx.attributes()[m]);
    diagram.nodes.push_back(std::move(node));
  }
  for (auto [child, parent] : lattice.covers()) diagram.edges.push_back({parent, child});
  std::sort(diagram.edges.begin(), diagram.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.parent, a.child) < std::tie(b.parent, b.child);
  });
  return diagram;
}

DiagramFormat parse_diagram_format(std::string_view name) {
  if (name == "diagram-json" || name == "json") return DiagramFormat::json;
  if (name == "dot") return DiagramFormat::dot;
  throw Error(ErrorCode::unknown_format,
              "unknown diagram format '" + std::string(name) + "' (expected diagram-json or dot)");
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string export_diagram(const LineDiagram& diagram, DiagramFormat format) {
  if (format == DiagramFormat::json) return diagram_to_json(diagram).dump(2) + "\n";

  std::string out = "digraph lattice {\n  rankdir=TB;\n  node [shape=box];\n";
  std::size_t current_layer = static_cast<std::size_t>(-1);
  std::vector<const DiagramNode*> by_layer;
  for (const auto& node : diagram.nodes) by_layer.push_back(&node);
  std::stable_sort(by_layer.begin(), by_layer.end(), [](const auto* a, const auto* b) {
    return std::tie(a->layer, a->position) < std::tie(b->layer, b->position);
  });
  for (const auto* node : by_layer) {
    if (node->layer != current_layer) {
      if (current_layer != static_cast<std::size_t>(-1)) out += "  }\n";
      current_layer = node->layer;
      out += "  { rank=same;\n";
    }
    out += "    n" + std::to_string(node->id) + " [label=\"" +
           dot_escape(join_names(node->object_labels)) + " | " +
           dot_escape(join_names(node->attribute_labels)) + "\"];\n";
  }
  if (!by_layer.empty()) out += "  }\n";
  for (const auto& e : diagram.edges) {
    out += "  n" + std::to_string(e.parent) + " -> n" + std::to_string(e.child) + ";\n";
  }
  return out + "}\n";
}

std::string export_diagram(const ConceptLattice& lattice, DiagramFormat format) {
  return export_diagram(line_diagram(lattice), format);
}

LineDiagram parse_diagram_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed_payload, std::string("diagram-json: ") + e.what());
  }
  return diagram_from_json(j);
}

}  // namespace ltax
