#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ltax/context.hpp"

namespace ltax::workbench {

struct DatasetEntry {
  FormalContext context;
  std::string provenance;
  /// Optional legend, one entry per attribute (empty when none).
  std::vector<std::string> attribute_legend;
};

/// Contexts shipped with the tool, addressable by name.
class DatasetRegistry {
 public:
  static const DatasetRegistry& builtin();

  const DatasetEntry* find(std::string_view name) const;
  /// Throws ErrorCode::not_found listing the available names.
  const DatasetEntry& at(std::string_view name) const;
  std::vector<std::string> names() const;

  void add(std::string name, DatasetEntry entry);

 private:
  std::map<std::string, DatasetEntry, std::less<>> entries_;
};

inline constexpr std::string_view fca_related_biclustering = "fca-related-biclustering";
inline constexpr std::string_view fca_algorithm_attributes_template =
    "fca-algorithm-attributes-template";

/// Canonical cxt text of the bundled 7x7 taxonomy context.
std::string_view fca_related_biclustering_cxt();

/// Implications reported for a biclustering-method taxonomy whose incidence
/// table is not available. These are rendering fixtures only: nothing here
/// can be recomputed, so no test checks them against a context.
struct PublishedImplication {
  std::vector<std::string> premise;
  std::vector<std::string> conclusion;
  std::size_t reported_support = 0;
};

struct PublishedImplicationFixture {
  bool source_context_available = false;
  std::string note;
  std::vector<PublishedImplication> top_by_support;
  std::size_t reported_base_size = 0;
  /// First exploration question reported for the same context.
  PublishedImplication first_question;
};

const PublishedImplicationFixture& published_taxonomy_implications();

}  // namespace ltax::workbench
