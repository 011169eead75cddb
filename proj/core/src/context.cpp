#include "ltax/context.hpp"

#include <algorithm>
#include <set>

namespace ltax {

namespace {

void require_unique(const std::vector<std::string>& names, std::string_view what) {
  std::unordered_map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto [it, inserted] = seen.emplace(names[i], i);
    if (!inserted) {
      throw Error(ErrorCode::duplicate_name,
                  "duplicate " + std::string(what) + " name '" + names[i] + "' (positions " +
                      std::to_string(it->second + 1) + " and " + std::to_string(i + 1) + ")",
                  {{"kind", what}, {"name", names[i]}});
    }
    if (names[i].find('\n') != std::string::npos) {
      throw Error(ErrorCode::parse_error,
                  std::string(what) + " name at position " + std::to_string(i + 1) +
                      " contains a newline");
    }
  }
}

}  // namespace

FormalContext::FormalContext(std::string name, std::vector<std::string> objects,
                             std::vector<std::string> attributes, std::vector<AttributeSet> rows)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      rows_(std::move(rows)) {
  if (name_.find('\n') != std::string::npos) {
    throw Error(ErrorCode::parse_error, "context name contains a newline");
  }
  require_unique(objects_, "object");
  require_unique(attributes_, "attribute");
  if (rows_.size() != objects_.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::to_string(objects_.size()) + " objects but " + std::to_string(rows_.size()) +
                    " incidence rows");
  }
  for (std::size_t g = 0; g < rows_.size(); ++g) {
    if (rows_[g].universe() != attributes_.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "row of object '" + objects_[g] + "' has " +
                      std::to_string(rows_[g].universe()) + " cells, expected " +
                      std::to_string(attributes_.size()));
    }
  }
  build_indices();
}

FormalContext FormalContext::from_rows(std::string name, std::vector<std::string> objects,
                                       std::vector<std::string> attributes,
                                       std::span<const std::string> rows) {
  std::vector<AttributeSet> sets;
  sets.reserve(rows.size());
  for (std::size_t g = 0; g < rows.size(); ++g) {
    if (rows[g].size() != attributes.size()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "row " + std::to_string(g + 1) + " has " + std::to_string(rows[g].size()) +
                      " cells, expected " + std::to_string(attributes.size()));
    }
    AttributeSet row(attributes.size());
    for (std::size_t m = 0; m < rows[g].size(); ++m) {
      const char c = rows[g][m];
      if (c == 'X' || c == 'x') {
        row.insert(m);
      } else if (c != '.') {
        throw Error(ErrorCode::illegal_cell, "illegal cell character '" + std::string(1, c) +
                                                 "' at row " + std::to_string(g + 1) +
                                                 ", column " + std::to_string(m + 1));
      }
    }
    sets.push_back(std::move(row));
  }
  return FormalContext(std::move(name), std::move(objects), std::move(attributes),
                       std::move(sets));
}

void FormalContext::build_indices() {
  columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
  for (std::size_t g = 0; g < rows_.size(); ++g) {
    rows_[g].for_each([&](std::size_t m) { columns_[m].insert(g); });
  }
  object_lookup_.clear();
  attribute_lookup_.clear();
  for (std::size_t g = 0; g < objects_.size(); ++g) object_lookup_.emplace(objects_[g], g);
  for (std::size_t m = 0; m < attributes_.size(); ++m) attribute_lookup_.emplace(attributes_[m], m);
}

bool FormalContext::incident(std::size_t object, std::size_t attribute) const {
  return row(object).contains(attribute);
}

const AttributeSet& FormalContext::row(std::size_t object) const {
  if (object >= rows_.size()) {
    throw Error(ErrorCode::index_out_of_range, "object index " + std::to_string(object) +
                                                   " out of range (" +
                                                   std::to_string(rows_.size()) + " objects)");
  }
  return rows_[object];
}

const ObjectSet& FormalContext::column(std::size_t attribute) const {
  if (attribute >= columns_.size()) {
    throw Error(ErrorCode::index_out_of_range, "attribute index " + std::to_string(attribute) +
                                                   " out of range (" +
                                                   std::to_string(columns_.size()) +
                                                   " attributes)");
  }
  return columns_[attribute];
}

std::size_t FormalContext::incidence_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::optional<std::size_t> FormalContext::object_index(std::string_view name) const {
  auto it = object_lookup_.find(std::string(name));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FormalContext::attribute_index(std::string_view name) const {
  auto it = attribute_lookup_.find(std::string(name));
  if (it == attribute_lookup_.end()) return std::nullopt;
  return it->second;
}

ObjectSet FormalContext::objects_named(std::span<const std::string> names) const {
  ObjectSet out(object_count());
  for (const auto& n : names) {
    auto idx = object_index(n);
    if (!idx) throw Error(ErrorCode::unknown_name, "unknown object '" + n + "'", {{"name", n}});
    out.insert(*idx);
  }
  return out;
}

AttributeSet FormalContext::attributes_named(std::span<const std::string> names) const {
  AttributeSet out(attribute_count());
  for (const auto& n : names) {
    auto idx = attribute_index(n);
    if (!idx) throw Error(ErrorCode::unknown_name, "unknown attribute '" + n + "'", {{"name", n}});
    out.insert(*idx);
  }
  return out;
}

std::vector<std::string> FormalContext::object_names(const ObjectSet& set) const {
  if (set.universe() != object_count()) {
    throw Error(ErrorCode::index_out_of_range, "object set does not belong to this context");
  }
  std::vector<std::string> out;
  set.for_each([&](std::size_t g) { out.push_back(objects_[g]); });
  return out;
}

std::vector<std::string> FormalContext::attribute_names(const AttributeSet& set) const {
  if (set.universe() != attribute_count()) {
    throw Error(ErrorCode::index_out_of_range, "attribute set does not belong to this context");
  }
  std::vector<std::string> out;
  set.for_each([&](std::size_t m) { out.push_back(attributes_[m]); });
  return out;
}

FormalContext FormalContext::with_object(std::string object, AttributeSet row) const {
  auto objects = objects_;
  auto rows = rows_;
  objects.push_back(std::move(object));
  rows.push_back(std::move(row));
  return FormalContext(name_, std::move(objects), attributes_, std::move(rows));
}

FormalContext FormalContext::renamed(std::string name) const {
  FormalContext out = *this;
  out.name_ = std::move(name);
  return out;
}

std::string FormalContext::row_string(std::size_t object) const {
  const auto& r = row(object);
  std::string s(attribute_count(), '.');
  r.for_each([&](std::size_t m) { s[m] = 'X'; });
  return s;
}

namespace {

void check_objects(const FormalContext& ctx, const ObjectSet& set) {
  if (set.universe() != ctx.object_count()) {
    throw Error(ErrorCode::index_out_of_range,
                "object set over " + std::to_string(set.universe()) +
                    " indices used with a context of " + std::to_string(ctx.object_count()) +
                    " objects");
  }
}

void check_attributes(const FormalContext& ctx, const AttributeSet& set) {
  if (set.universe() != ctx.attribute_count()) {
    throw Error(ErrorCode::index_out_of_range,
                "attribute set over " + std::to_string(set.universe()) +
                    " indices used with a context of " + std::to_string(ctx.attribute_count()) +
                    " attributes");
  }
}

}  // namespace

AttributeSet derive_objects(const FormalContext& ctx, const ObjectSet& objects) {
  check_objects(ctx, objects);
  AttributeSet out = ctx.all_attributes();
  objects.for_each([&](std::size_t g) { out &= ctx.row(g); });
  return out;
}

ObjectSet derive_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  check_attributes(ctx, attributes);
  ObjectSet out = ctx.all_objects();
  attributes.for_each([&](std::size_t m) { out &= ctx.column(m); });
  return out;
}

AttributeSet closure_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  return derive_objects(ctx, derive_attributes(ctx, attributes));
}

ObjectSet closure_objects(const FormalContext& ctx, const ObjectSet& objects) {
  return derive_attributes(ctx, derive_objects(ctx, objects));
}

FormalContext transpose(const FormalContext& ctx) {
  std::vector<AttributeSet> rows;
  rows.reserve(ctx.attribute_count());
  for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
    rows.push_back(ctx.column(m).retag<AttributeTag>());
  }
  return FormalContext(ctx.name(), ctx.attributes(), ctx.objects(), std::move(rows));
}

FormalContext appose(const FormalContext& left, const FormalContext& right) {
  if (left.objects() != right.objects()) {
    const std::set<std::string> a(left.objects().begin(), left.objects().end());
    const std::set<std::string> b(right.objects().begin(), right.objects().end());
    std::vector<std::string> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(diff));
    std::string msg = diff.empty() ? "object lists contain the same names in a different order"
                                   : "object lists differ:";
    for (const auto& d : diff) msg += " '" + d + "'";
    throw Error(ErrorCode::object_mismatch, msg, {{"symmetricDifference", diff}});
  }

  std::vector<std::string> attributes;
  attributes.reserve(left.attribute_count() + right.attribute_count());
  for (const auto& a : left.attributes()) attributes.push_back(left.name() + ":" + a);
  for (const auto& a : right.attributes()) attributes.push_back(right.name() + ":" + a);
  {
    std::unordered_map<std::string_view, int> seen;
    for (const auto& a : attributes) {
      if (++seen[a] > 1) {
        throw Error(ErrorCode::name_collision,
                    "attribute name '" + a + "' collides after namespacing", {{"name", a}});
      }
    }
  }

  const std::size_t width = attributes.size();
  const std::size_t offset = left.attribute_count();
  std::vector<AttributeSet> rows;
  rows.reserve(left.object_count());
  for (std::size_t g = 0; g < left.object_count(); ++g) {
    AttributeSet row(width);
    left.row(g).for_each([&](std::size_t m) { row.insert(m); });
    right.row(g).for_each([&](std::size_t m) { row.insert(offset + m); });
    rows.push_back(std::move(row));
  }
  return FormalContext(left.name() + "|" + right.name(), left.objects(), std::move(attributes),
                       std::move(rows));
}

FormalContext subpose(const FormalContext& top, const FormalContext& bottom) {
  try {
    return transpose(appose(transpose(top), transpose(bottom)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::object_mismatch) {
      throw Error(ErrorCode::object_mismatch,
                  std::string("attribute lists differ (subposition): ") + e.what(), e.detail());
    }
    throw;
  }
}

}  // namespace ltax
