#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ltax/context.hpp"

namespace ltax {

struct FormalConcept {
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const FormalConcept&, const FormalConcept&) = default;
};

enum class ConceptOrder { less, greater, equal, incomparable };

/// Subconcept-superconcept comparison by extent inclusion. Concepts from
/// contexts of different shape raise ErrorCode::foreign_concept.
ConceptOrder concept_order(const FormalConcept& a, const FormalConcept& b);

struct EnumerationOptions {
  /// Hard cap; exceeding it throws ConceptLimitExceeded.
  std::size_t max_concepts = 1'000'000;
  /// Called with the running closure count every `progress_interval` closures.
  std::function<void(std::size_t closures)> progress;
  std::size_t progress_interval = 10'000;
  /// Resume strictly after this intent (lectic order).
  std::optional<AttributeSet> resume_after;
};

/// Raised when enumeration hits the cap. Holds everything produced so far;
/// pass resume_after() back through EnumerationOptions to continue.
class ConceptLimitExceeded : public Error {
 public:
  ConceptLimitExceeded(std::vector<FormalConcept> partial, AttributeSet resume_after);

  const std::vector<FormalConcept>& partial() const noexcept { return partial_; }
  const AttributeSet& resume_after() const noexcept { return resume_after_; }

 private:
  std::vector<FormalConcept> partial_;
  AttributeSet resume_after_;
};

/// All formal concepts, intents in strictly increasing lectic order.
std::vector<FormalConcept> enumerate_concepts(const FormalContext& ctx,
                                              const EnumerationOptions& options = {});

using Cover = std::pair<std::size_t, std::size_t>;  // (child, parent)

class ConceptLattice {
 public:
  ConceptLattice(FormalContext context, std::vector<FormalConcept> concepts,
                 std::vector<Cover> covers);

  const FormalContext& context() const noexcept { return context_; }
  const std::vector<FormalConcept>& concepts() const noexcept { return concepts_; }
  /// Sorted (child, parent) pairs of the covering relation.
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  std::size_t size() const noexcept { return concepts_.size(); }
  const FormalConcept& operator[](std::size_t i) const { return concepts_.at(i); }

  std::size_t top() const noexcept { return 0; }
  std::size_t bottom() const noexcept { return concepts_.size() - 1; }

  std::optional<std::size_t> index_of(const AttributeSet& intent) const;
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_.at(i); }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_.at(i); }

  /// Greatest common subconcept.
  std::size_t meet(std::size_t a, std::size_t b) const;
  /// Least common superconcept.
  std::size_t join(std::size_t a, std::size_t b) const;

 private:
  FormalContext context_;
  std::vector<FormalConcept> concepts_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::vector<std::size_t>> lower_;
  std::unordered_map<AttributeSet, std::size_t, IndexSetHash<AttributeTag>> by_intent_;
};

ConceptLattice build_lattice(const FormalContext& ctx, const EnumerationOptions& options = {});

/// Reduced labelling: attribute m sits on (m', m''), object g on (g'', g').
struct ReducedLabels {
  std::vector<std::vector<std::size_t>> objects;     // per concept
  std::vector<std::vector<std::size_t>> attributes;  // per concept
};

ReducedLabels reduced_labels(const ConceptLattice& lattice);

struct DiagramNode {
  std::size_t id = 0;
  std::size_t layer = 0;
  std::size_t position = 0;
  std::vector<std::string> extent;
  std::vector<std::string> intent;
  std::vector<std::string> object_labels;
  std::vector<std::string> attribute_labels;

  friend bool operator==(const DiagramNode&, const DiagramNode&) = default;
};

struct DiagramEdge {
  std::size_t parent = 0;
  std::size_t child = 0;

  friend bool operator==(const DiagramEdge&, const DiagramEdge&) = default;
};

/// Layered drawing: layer = longest path from the top concept, position =
/// lectic rank within the layer. Edges run parent -> child.
struct LineDiagram {
  std::vector<DiagramNode> nodes;
  std::vector<DiagramEdge> edges;

  friend bool operator==(const LineDiagram&, const LineDiagram&) = default;
};

LineDiagram line_diagram(const ConceptLattice& lattice);

enum class DiagramFormat { json, dot };

DiagramFormat parse_diagram_format(std::string_view name);
std::string export_diagram(const ConceptLattice& lattice, DiagramFormat format);
std::string export_diagram(const LineDiagram& diagram, DiagramFormat format);
LineDiagram parse_diagram_json(std::string_view text);

}  // namespace ltax
