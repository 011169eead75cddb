#include "ltax/workbench/datasets.hpp"

#include "ltax/io.hpp"

namespace ltax::workbench {

namespace {

constexpr std::string_view bundled_cxt =
    "B\n"
    "FCA-related biclustering\n"
    "7\n"
    "7\n"
    "\n"
    "BiMax\n"
    "Box biclustering\n"
    "FCA\n"
    "Freq. Closed Itemsets\n"
    "Association rules\n"
    "Fault-tolerant concepts\n"
    "OA-biclusters\n"
    "Type:const\n"
    "Type:const with exceptions\n"
    "Struct:Arbitr. overl.\n"
    "Value type:binary\n"
    "Closure:explicit\n"
    "Closure:implicit\n"
    "Val.type:numeric\n"
    "X.XX.X.\n"
    "X.XX.XX\n"
    "X.XXX..\n"
    "X.XXX..\n"
    "X.XXX..\n"
    "XXXX.X.\n"
    "XXXXX..\n";

DatasetRegistry make_builtin() {
  DatasetRegistry registry;
  registry.add(std::string(fca_related_biclustering),
               {parse_cxt(bundled_cxt).context,
                "Taxonomy of FCA-related Boolean biclustering methods (7 methods x 7 "
                "classification attributes), transcribed cell for cell.",
                {}});

  std::vector<std::string> attributes;
  for (int i = 1; i <= 10; ++i) attributes.push_back("m" + std::to_string(i));
  registry.add(std::string(fca_algorithm_attributes_template),
               {FormalContext("FCA algorithm attributes", {}, attributes, {}),
                "Attribute schema for classifying concept-lattice construction algorithms. "
                "The classified algorithms are not bundled; the context has no objects and is "
                "meant to be filled by exploration or by hand.",
                {"incremental approach",
                 "canonicity test based on the lexical order",
                 "divides the set of concepts into several parts",
                 "uses hashing",
                 "maintains an auxiliary tree structure",
                 "uses an attribute cache",
                 "computes intents by intersecting object intents ({g}' n {h}')",
                 "computes intersections of already generated intents",
                 "intersects non-object intents with object intents",
                 "uses supports of attribute sets"}});
  return registry;
}

}  // namespace

std::string_view fca_related_biclustering_cxt() { return bundled_cxt; }

const DatasetRegistry& DatasetRegistry::builtin() {
  static const DatasetRegistry registry = make_builtin();
  return registry;
}

const DatasetEntry* DatasetRegistry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const DatasetEntry& DatasetRegistry::at(std::string_view name) const {
  if (const auto* entry = find(name)) return *entry;
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::not_found,
              "no built-in dataset named '" + std::string(name) + "' (available: " + known + ")",
              {{"available", names()}});
}

std::vector<std::string> DatasetRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

void DatasetRegistry::add(std::string name, DatasetEntry entry) {
  entries_.insert_or_assign(std::move(name), std::move(entry));
}

const PublishedImplicationFixture& published_taxonomy_implications() {
  static const PublishedImplicationFixture fixture{
      .source_context_available = false,
      .note = "source context unavailable: values are reported figures for a 47-method "
              "biclustering taxonomy whose incidence table is not bundled; they cannot be "
              "recomputed or verified here",
      .top_by_support =
          {
              {{"Metric-based", "Struct:Non-exclusive"}, {"Struct:Non-Exhaustive"}, 26},
              {{"Type:Additive coherent val."}, {"Struct:Non-Exhaustive"}, 20},
              {{"Measure:MSR"}, {"Metric-based", "Struct:Non-Exhaustive"}, 18},
              {{"Type:Additive coherent val.", "Struct:Non-Exhaustive", "Struct:Non-exclusive"},
               {"Metric-based"},
               18},
              {{"Strategy:One"}, {"Struct:Non-Exhaustive", "Struct:Non-exclusive"}, 17},
              {{"Type:Coherent values", "Struct:Non-Exhaustive"}, {"Struct:Non-exclusive"}, 15},
              {{"Strategy:One set"}, {"Struct:Non-Exhaustive"}, 13},
              {{"Measure:Var"}, {"Metric-based", "Struct:Non-Exhaustive", "Struct:Non-exclusive"}, 8},
              {{"Type:Negative correlations"}, {"Struct:Non-Exhaustive", "Struct:Non-exclusive"}, 7},
              {{"Metric-based", "Struct:Non-Exhaustive", "Strategy:Simult"},
               {"Type:Additive coherent val.", "Struct:Non-exclusive"},
               7},
          },
      .reported_base_size = 105,
      .first_question = {{"Strategy:One set"}, {"Struct:Non-exhaustive"}, 0},
  };
  return fixture;
}

}  // namespace ltax::workbench
