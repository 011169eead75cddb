#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ltax/index_set.hpp"

namespace ltax {

/// Boolean object x attribute table K = (G, M, I) with named rows and columns.
///
/// Immutable once constructed. Rows and columns are both kept as bitsets so
/// either derivation operator is a plain AND over the relevant side.
class FormalContext {
 public:
  /// The empty context (no objects, no attributes).
  FormalContext() = default;

  /// Validates uniqueness of names and row dimensions.
  FormalContext(std::string name, std::vector<std::string> objects,
                std::vector<std::string> attributes, std::vector<AttributeSet> rows);

  /// Rows given as strings over {'X', '.'}, one per object.
  static FormalContext from_rows(std::string name, std::vector<std::string> objects,
                                 std::vector<std::string> attributes,
                                 std::span<const std::string> rows);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }

  bool incident(std::size_t object, std::size_t attribute) const;
  /// g' for a single object.
  const AttributeSet& row(std::size_t object) const;
  /// m' for a single attribute.
  const ObjectSet& column(std::size_t attribute) const;
  /// |I|
  std::size_t incidence_count() const noexcept;

  std::optional<std::size_t> object_index(std::string_view name) const;
  std::optional<std::size_t> attribute_index(std::string_view name) const;

  // Name-based lookups; unknown names throw ErrorCode::unknown_name.
  ObjectSet objects_named(std::span<const std::string> names) const;
  AttributeSet attributes_named(std::span<const std::string> names) const;
  std::vector<std::string> object_names(const ObjectSet& set) const;
  std::vector<std::string> attribute_names(const AttributeSet& set) const;

  ObjectSet no_objects() const { return ObjectSet(object_count()); }
  ObjectSet all_objects() const { return ObjectSet::full(object_count()); }
  AttributeSet no_attributes() const { return AttributeSet(attribute_count()); }
  AttributeSet all_attributes() const { return AttributeSet::full(attribute_count()); }

  /// Copy of this context with one more object appended.
  FormalContext with_object(std::string object, AttributeSet row) const;
  FormalContext renamed(std::string name) const;

  /// Row `g` as an "X.X.." string.
  std::string row_string(std::size_t object) const;

  friend bool operator==(const FormalContext& a, const FormalContext& b) {
    return a.name_ == b.name_ && a.objects_ == b.objects_ && a.attributes_ == b.attributes_ &&
           a.rows_ == b.rows_;
  }

 private:
  void build_indices();

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
  std::unordered_map<std::string, std::size_t> object_lookup_;
  std::unordered_map<std::string, std::size_t> attribute_lookup_;
};

/// A' : attributes shared by every object of A (all attributes for A = {}).
AttributeSet derive_objects(const FormalContext& ctx, const ObjectSet& objects);
/// B' : objects having every attribute of B (all objects for B = {}).
ObjectSet derive_attributes(const FormalContext& ctx, const AttributeSet& attributes);

AttributeSet closure_attributes(const FormalContext& ctx, const AttributeSet& attributes);
ObjectSet closure_objects(const FormalContext& ctx, const ObjectSet& objects);

/// Swaps the roles of objects and attributes.
FormalContext transpose(const FormalContext& ctx);

/// Horizontal merge over an identical ordered object list. Attributes are
/// renamed "<context name>:<attribute>".
FormalContext appose(const FormalContext& left, const FormalContext& right);

/// Vertical merge over an identical ordered attribute list; objects are
/// namespaced like attributes in appose().
FormalContext subpose(const FormalContext& top, const FormalContext& bottom);

}  // namespace ltax
