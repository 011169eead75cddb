#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltax/context.hpp"

namespace ltax {

/// premise -> conclusion over one context's attributes. The stored
/// conclusion never overlaps the premise.
class Implication {
 public:
  Implication(AttributeSet premise, AttributeSet conclusion);

  const AttributeSet& premise() const noexcept { return premise_; }
  /// Conclusion minus premise.
  const AttributeSet& conclusion() const noexcept { return conclusion_; }
  AttributeSet full_conclusion() const { return premise_ | conclusion_; }

  std::optional<std::size_t> support;

  /// Structural equality; support is not compared.
  friend bool operator==(const Implication& a, const Implication& b) {
    return a.premise_ == b.premise_ && a.conclusion_ == b.conclusion_;
  }

 private:
  AttributeSet premise_;
  AttributeSet conclusion_;
};

enum class BaseProvenance { computed_dg, exploration_accepted, user_loaded };

struct ImplicationBase {
  std::vector<Implication> implications;
  BaseProvenance provenance = BaseProvenance::user_loaded;

  std::size_t size() const noexcept { return implications.size(); }
};

std::string_view to_string(BaseProvenance provenance) noexcept;
BaseProvenance parse_provenance(std::string_view text);

/// premise' is a subset of conclusion'.
bool holds(const FormalContext& ctx, const AttributeSet& premise, const AttributeSet& conclusion);
bool holds(const FormalContext& ctx, const Implication& implication);

/// |(premise u conclusion)'|
std::size_t support(const FormalContext& ctx, const Implication& implication);

/// Fills in support for every member.
void annotate_support(const FormalContext& ctx, ImplicationBase& base);

/// Least superset of `attributes` closed under every implication.
AttributeSet implication_closure(std::span<const Implication> implications,
                                 const AttributeSet& attributes);
inline AttributeSet implication_closure(const ImplicationBase& base,
                                        const AttributeSet& attributes) {
  return implication_closure(base.implications, attributes);
}

/// Canonical (stem) base: P -> P'' \ P for each pseudo-intent P, premises in
/// lectic order. Supports are filled in.
ImplicationBase duquenne_guigues_base(const FormalContext& ctx);

struct VerifyOptions {
  /// Completeness is checked over all 2^|M| attribute sets.
  std::size_t max_attributes = 20;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct BaseReport {
  bool sound = false;
  bool complete = false;
  bool minimal = false;
  /// Indices of members that fail in the context.
  std::vector<std::size_t> violated;
  /// Lectically least X with closure(X) != X''.
  std::optional<AttributeSet> incompleteness_witness;
  /// Indices of members entailed by the rest of the base.
  std::vector<std::size_t> redundant;
};

/// Soundness, completeness (exhaustive sweep) and minimality, which is
/// checked as non-redundancy: no member follows from the others.
BaseReport verify_base(const FormalContext& ctx, const ImplicationBase& base,
                       const VerifyOptions& options = {});

/// "{a, b} -> {c}  sup=n" (the support part only when known).
std::string render_implication(const std::vector<std::string>& premise,
                               const std::vector<std::string>& conclusion,
                               std::optional<std::size_t> support);
std::string render_implication(const FormalContext& ctx, const Implication& implication);

}  // namespace ltax
