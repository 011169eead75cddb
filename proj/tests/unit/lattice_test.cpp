#include <gtest/gtest.h>

#include <random>
#include <set>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "ltax/json.hpp"
#include "ltax/lattice.hpp"
#include "oracle.hpp"

using namespace ltax;
using namespace ltax::testing::bundled_ids;
using ltax::testing::bundled;

namespace {

// Crosses on the diagonal only, or everywhere except the diagonal.
FormalContext diagonal(std::size_t n, bool complement = false) {
  std::vector<std::string> g, m, rows;
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back("g" + std::to_string(i));
    m.push_back("m" + std::to_string(i));
    std::string row(n, complement ? 'X' : '.');
    row[i] = complement ? '.' : 'X';
    rows.push_back(row);
  }
  return FormalContext::from_rows(complement ? "contranominal" : "diagonal", g, m, rows);
}

FormalContext full(std::size_t objects, std::size_t attributes) {
  std::vector<std::string> g, m;
  for (std::size_t i = 0; i < objects; ++i) g.push_back("g" + std::to_string(i));
  for (std::size_t i = 0; i < attributes; ++i) m.push_back("m" + std::to_string(i));
  std::vector<std::string> rows(objects, std::string(attributes, 'X'));
  return FormalContext::from_rows("full", g, m, rows);
}

void expect_matches_oracle(const FormalContext& ctx) {
  auto expected = oracle::concepts(oracle::Table::of(ctx));
  auto actual = enumerate_concepts(ctx);
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ASSERT_EQ(oracle::to_bits(actual[i].intent), expected[i].intent);
    ASSERT_EQ(oracle::to_bits(actual[i].extent), expected[i].extent);
  }
}

}  // namespace

TEST(Enumerate, BundledContext) {
  const auto& ctx = bundled();
  auto concepts = enumerate_concepts(ctx);
  ASSERT_EQ(concepts.size(), 8u);
  const std::vector<std::vector<std::size_t>> intents = {
      {0, 2, 3},    {0, 2, 3, 5},    {0, 2, 3, 5, 6}, {0, 2, 3, 4},
      {0, 1, 2, 3}, {0, 1, 2, 3, 5}, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4, 5, 6}};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(concepts[i].intent.indices(), intents[i]) << i;
  expect_matches_oracle(ctx);
}

TEST(Enumerate, FullIncidenceHasOneConcept) {
  auto concepts = enumerate_concepts(full(4, 5));
  ASSERT_EQ(concepts.size(), 1u);
  EXPECT_TRUE(concepts[0].extent.is_full());
  EXPECT_TRUE(concepts[0].intent.is_full());
}

TEST(Enumerate, EmptyContext) {
  FormalContext empty("e", {}, {}, {});
  auto concepts = enumerate_concepts(empty);
  ASSERT_EQ(concepts.size(), 1u);
  EXPECT_TRUE(concepts[0].extent.empty());
  EXPECT_TRUE(concepts[0].intent.empty());
}

// The identity context is a nominal scale: top, bottom and one concept per
// attribute. Its complement generates the Boolean lattice.
TEST(Enumerate, DiagonalScales) {
  const std::vector<std::size_t> nominal{1, 1, 4, 5, 6};
  for (std::size_t n = 0; n <= 4; ++n) {
    EXPECT_EQ(enumerate_concepts(diagonal(n)).size(), nominal[n]) << n;
    EXPECT_EQ(enumerate_concepts(diagonal(n, true)).size(), std::size_t{1} << n) << n;
    expect_matches_oracle(diagonal(n));
    expect_matches_oracle(diagonal(n, true));
  }
  EXPECT_EQ(enumerate_concepts(ltax::testing::load_cxt("diagonal4.cxt")).size(), 6u);
}

TEST(Enumerate, MatchesOracleOnRandomContexts) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 150; ++round) {
    expect_matches_oracle(oracle::random_small_context(rng, 12, round < 100 ? 8 : 12));
  }
}

TEST(Enumerate, Duality) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 50; ++round) {
    auto ctx = oracle::random_small_context(rng, 8, 8);
    std::set<std::pair<std::string, std::string>> lhs, rhs;
    for (const auto& c : enumerate_concepts(ctx)) lhs.emplace(c.intent.to_string(), c.extent.to_string());
    for (const auto& c : enumerate_concepts(transpose(ctx))) {
      rhs.emplace(c.extent.to_string(), c.intent.to_string());
    }
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(Enumerate, LimitAndResume) {
  const auto& ctx = bundled();
  EnumerationOptions options;
  options.max_concepts = 3;
  std::vector<FormalConcept> collected;
  int rounds = 0;
  while (true) {
    try {
      auto rest = enumerate_concepts(ctx, options);
      collected.insert(collected.end(), rest.begin(), rest.end());
      break;
    } catch (const ConceptLimitExceeded& e) {
      EXPECT_EQ(e.code(), ErrorCode::concept_limit);
      EXPECT_EQ(e.partial().size(), 3u);
      collected.insert(collected.end(), e.partial().begin(), e.partial().end());
      options.resume_after = e.resume_after();
    }
    ASSERT_LT(++rounds, 10);
  }
  EXPECT_EQ(rounds, 2);
  EXPECT_EQ(collected, enumerate_concepts(ctx));
}

TEST(Enumerate, ReportsProgress) {
  std::vector<std::size_t> ticks;
  EnumerationOptions options;
  options.progress_interval = 2;
  options.progress = [&](std::size_t n) { ticks.push_back(n); };
  enumerate_concepts(bundled(), options);
  ASSERT_FALSE(ticks.empty());
  EXPECT_EQ(ticks.front(), 2u);
}

TEST(ConceptOrder, Examples) {
  const auto& ctx = bundled();
  auto concept_of = [&](std::vector<std::size_t> objs) {
    auto extent = ObjectSet::from_indices(7, objs);
    auto intent = derive_objects(ctx, extent);
    return FormalConcept{derive_attributes(ctx, intent), intent};
  };
  auto box_only = concept_of({box});
  auto implicit = concept_of({bimax, box, ftc});
  auto explicit_ = concept_of({fca, fci, rules, oa});
  EXPECT_EQ(box_only.intent, AttributeSet(7, {0, 2, 3, 5, 6}));
  EXPECT_EQ(concept_order(box_only, implicit), ConceptOrder::less);
  EXPECT_EQ(concept_order(implicit, box_only), ConceptOrder::greater);
  EXPECT_EQ(concept_order(box_only, box_only), ConceptOrder::equal);
  EXPECT_EQ(concept_order(explicit_, implicit), ConceptOrder::incomparable);

  FormalConcept foreign{ObjectSet(3), AttributeSet(7)};
  EXPECT_LTAX_ERROR(concept_order(box_only, foreign), ErrorCode::foreign_concept);
}

TEST(Lattice, BundledShape) {
  auto lattice = build_lattice(bundled());
  ASSERT_EQ(lattice.size(), 8u);
  EXPECT_EQ(lattice[lattice.top()].extent.size(), 7u);
  EXPECT_TRUE(lattice[lattice.bottom()].extent.empty());
  EXPECT_EQ(lattice.index_of(AttributeSet(7, {0, 2, 3})), std::optional<std::size_t>(0));
  EXPECT_FALSE(lattice.index_of(AttributeSet(7, {0})).has_value());
}

TEST(Lattice, SingleConceptHasNoEdges) {
  EXPECT_TRUE(build_lattice(full(2, 2)).covers().empty());
}

TEST(Lattice, DiagonalScales) {
  EXPECT_EQ(build_lattice(diagonal(3, true)).covers().size(), 12u);
  EXPECT_EQ(build_lattice(diagonal(3)).covers().size(), 6u);
}

TEST(Lattice, CoversMatchTransitiveReduction) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 120; ++round) {
    auto ctx = oracle::random_small_context(rng, 9, 8);
    auto lattice = build_lattice(ctx);
    auto expected = oracle::covers(oracle::concepts(oracle::Table::of(ctx)));
    std::set<std::pair<std::size_t, std::size_t>> actual(lattice.covers().begin(),
                                                         lattice.covers().end());
    ASSERT_EQ(actual, expected) << "round " << round;
  }
}

TEST(Lattice, MeetAndJoin) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 40; ++round) {
    auto ctx = oracle::random_small_context(rng, 8, 8);
    auto lattice = build_lattice(ctx);
    for (std::size_t a = 0; a < lattice.size(); ++a) {
      for (std::size_t b = 0; b < lattice.size(); ++b) {
        auto meet_extent = lattice[a].extent & lattice[b].extent;
        auto meet = lattice.meet(a, b);
        ASSERT_EQ(lattice[meet].extent, meet_extent);
        auto join_intent = lattice[a].intent & lattice[b].intent;
        auto join = lattice.join(a, b);
        ASSERT_EQ(lattice[join].intent, join_intent);
      }
    }
  }
}

TEST(Labels, ReducedLabelling) {
  auto lattice = build_lattice(bundled());
  auto labels = reduced_labels(lattice);
  std::vector<int> attribute_hits(7, 0), object_hits(7, 0);
  for (std::size_t c = 0; c < lattice.size(); ++c) {
    for (auto m : labels.attributes[c]) ++attribute_hits[m];
    for (auto g : labels.objects[c]) ++object_hits[g];
  }
  EXPECT_EQ(attribute_hits, std::vector<int>(7, 1));
  EXPECT_EQ(object_hits, std::vector<int>(7, 1));

  auto numeric_node = *lattice.index_of(closure_attributes(bundled(), AttributeSet(7, {numeric})));
  EXPECT_EQ(lattice[numeric_node].extent, ObjectSet(7, {box}));
  EXPECT_EQ(labels.attributes[numeric_node], std::vector<std::size_t>{numeric});
  const auto& top = labels.attributes[lattice.top()];
  EXPECT_NE(std::find(top.begin(), top.end(), type_const), top.end());
}

TEST(Labels, FullIncidenceSingleNode) {
  auto labels = reduced_labels(build_lattice(full(3, 2)));
  EXPECT_EQ(labels.objects[0].size(), 3u);
  EXPECT_EQ(labels.attributes[0].size(), 2u);
}

TEST(Diagram, LayersAndEdges) {
  auto lattice = build_lattice(bundled());
  auto diagram = line_diagram(lattice);
  ASSERT_EQ(diagram.nodes.size(), 8u);
  EXPECT_EQ(diagram.edges.size(), lattice.covers().size());
  EXPECT_EQ(diagram.nodes[0].layer, 0u);
  for (const auto& e : diagram.edges) {
    EXPECT_LT(diagram.nodes[e.parent].layer, diagram.nodes[e.child].layer);
  }
  std::set<std::pair<std::size_t, std::size_t>> slots;
  for (const auto& n : diagram.nodes) slots.emplace(n.layer, n.position);
  EXPECT_EQ(slots.size(), 8u);
}

TEST(Diagram, DotExport) {
  auto lattice = build_lattice(bundled());
  auto dot = export_diagram(lattice, parse_diagram_format("dot"));
  EXPECT_EQ(dot.rfind("digraph lattice {", 0), 0u);
  std::size_t nodes = 0, edges = 0;
  for (std::size_t pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos; ++pos) ++nodes;
  for (std::size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
  EXPECT_EQ(nodes, 8u);
  EXPECT_EQ(edges, lattice.covers().size());
  // Top concept is n0 and every edge leaves a parent.
  for (auto [child, parent] : lattice.covers()) {
    EXPECT_NE(dot.find("n" + std::to_string(parent) + " -> n" + std::to_string(child) + ";"),
              std::string::npos);
  }
  EXPECT_EQ(dot, export_diagram(lattice, DiagramFormat::dot));
}

TEST(Diagram, EmptyContextSingleNode) {
  auto diagram = line_diagram(build_lattice(FormalContext("e", {}, {}, {})));
  EXPECT_EQ(diagram.nodes.size(), 1u);
  EXPECT_TRUE(diagram.edges.empty());
}

TEST(Diagram, JsonRoundTrip) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 30; ++round) {
    auto lattice = build_lattice(oracle::random_small_context(rng, 7, 7));
    auto diagram = line_diagram(lattice);
    auto text = export_diagram(lattice, parse_diagram_format("diagram-json"));
    ASSERT_EQ(parse_diagram_json(text), diagram);
  }
}

TEST(Diagram, UnknownFormat) {
  EXPECT_LTAX_ERROR(parse_diagram_format("svg"), ErrorCode::unknown_format);
  EXPECT_LTAX_ERROR(parse_diagram_json("{\"nodes\": ["), ErrorCode::malformed_payload);
}
