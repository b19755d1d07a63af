#include <gtest/gtest.h>

#include <set>

#include "msym/multigraph.hpp"
#include "support.hpp"

using namespace msym;
using msym::test::corpus;

namespace {

const char* kCorpus[] = {"loop.txt", "single_edge.txt", "two_arc.txt", "triangle2.txt", "figure1.json"};

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Multigraph, Figure1Shape) {
  const auto g = corpus("figure1.json");
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 7u);
  EXPECT_EQ(g.max_multiplicity(), 5u);
  EXPECT_FALSE(is_uniform(g));
  EXPECT_EQ(g.multiplicity("a", "b"), 5u);
  EXPECT_EQ(g.multiplicity("c", "d"), 2u);
  EXPECT_EQ(g.multiplicity("b", "a"), 0u);
}

TEST(Multigraph, Figure1PermissiblePairs) {
  const auto g = corpus("figure1.json");
  const auto perm = permissible_pairs(g);
  ASSERT_EQ(perm.size(), 14u);
  std::set<std::pair<std::string, Label>> got;
  for (const auto& p : perm) got.emplace(g.vertex_name(p.vertex), p.label);
  for (Label s = 1; s <= 5; ++s) {
    EXPECT_TRUE(got.count({"a", s}));
    EXPECT_TRUE(got.count({"b", s}));
  }
  for (Label s = 1; s <= 2; ++s) {
    EXPECT_TRUE(got.count({"c", s}));
    EXPECT_TRUE(got.count({"d", s}));
  }
  for (Label s = 3; s <= 5; ++s) {
    EXPECT_FALSE(got.count({"c", s}));
    EXPECT_FALSE(got.count({"d", s}));
  }
}

TEST(Multigraph, LabelsFollowInputOrder) {
  const auto g = parse_graph_text("a b\nb a\na b\n");
  ASSERT_EQ(g.edges().size(), 3u);
  EXPECT_EQ(g.edges()[0].label, 1u);
  EXPECT_EQ(g.edges()[1].label, 1u);
  EXPECT_EQ(g.edges()[2].label, 2u);
  EXPECT_EQ(g.edge_name(g.edges()[2]), "(a,b)2");
  EXPECT_EQ(g.edge_position({0, 1, 2}), std::optional<std::size_t>(2));
  EXPECT_FALSE(g.edge_position({0, 1, 3}));
}

TEST(Multigraph, TextAndJsonAgree) {
  const auto t = parse_graph("# comment\na b\na b  # trailing\nc d\n");
  const auto j = parse_graph(R"({"vertices":["a","b","c","d"],"edges":[{"src":"a","dst":"b"},{"src":"a","dst":"b"},{"src":"c","dst":"d"}]})");
  EXPECT_EQ(graph_to_json(t), graph_to_json(j));
  EXPECT_EQ(graph_to_json(parse_graph(graph_to_json(t))), graph_to_json(t));
}

TEST(Multigraph, Errors) {
  EXPECT_EQ(kind_of([] { parse_graph_text(""); }), ErrorKind::EmptyEdgeList);
  EXPECT_EQ(kind_of([] { parse_graph_text("a b c\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_graph("{ nope"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { Multigraph::build({"a", "b", "z"}, {{"a", "b"}}); }), ErrorKind::IsolatedVertex);
  EXPECT_EQ(kind_of([] { Multigraph::build({"a", "b"}, {{"a", "x"}}); }), ErrorKind::UnknownEndpoint);
  EXPECT_EQ(kind_of([] { Multigraph::build({"a", "a"}, {{"a", "a"}}); }), ErrorKind::DuplicateVertex);
  EXPECT_EQ(kind_of([] { Multigraph::build({"a b"}, {{"a b", "a b"}}); }), ErrorKind::InvalidVertexId);
  EXPECT_EQ(kind_of([] { corpus("two_arc.txt").vertex_index("q"); }), ErrorKind::UnknownVertex);
  EXPECT_EQ(kind_of([] { load_graph("/nonexistent/graph.txt"); }), ErrorKind::ParseError);
}

TEST(Multigraph, UniformityDefinition) {
  EXPECT_TRUE(is_uniform(corpus("loop.txt")));
  EXPECT_TRUE(is_uniform(corpus("two_arc.txt")));
  EXPECT_TRUE(is_uniform(corpus("triangle2.txt")));
  EXPECT_TRUE(is_uniform(corpus("k4_doubled.txt")));
  EXPECT_FALSE(is_uniform(parse_graph_text("a b\na b\nb c\n")));
}

TEST(Multigraph, UnderlyingGraph) {
  const auto g = corpus("figure1.json");
  const auto u = underlying(g);
  ASSERT_EQ(u.arcs.size(), 2u);
  EXPECT_EQ(u.weights, (std::vector<std::size_t>{5, 2}));
  const auto w = u.weighted_adjacency();
  const auto a = u.adjacency();
  for (std::size_t k = 0; k < w.size(); ++k) EXPECT_EQ(a[k], w[k] ? 1 : 0);
  EXPECT_EQ(w[0 * 4 + 1], 5u);
  EXPECT_EQ(w[2 * 4 + 3], 2u);
}

TEST(Multigraph, KnownAutomorphismCounts) {
  EXPECT_EQ(automorphisms(corpus("loop.txt")).size(), 1u);
  EXPECT_EQ(automorphisms(corpus("single_edge.txt")).size(), 1u);
  EXPECT_EQ(automorphisms(corpus("two_arc.txt")).size(), 8u);
  EXPECT_EQ(automorphisms(corpus("triangle2.txt")).size(), 24u);
  EXPECT_EQ(automorphisms(corpus("figure1.json")).size(), 240u);  // 5! * 2!
}

TEST(Multigraph, AutomorphismCountMatchesOracle) {
  for (const auto* name : kCorpus) {
    const auto g = corpus(name);
    EXPECT_EQ(automorphisms(g).size(), msym::test::automorphism_count_oracle(g)) << name;
  }
  const auto k4 = corpus("k4_doubled.txt");
  EXPECT_EQ(msym::test::automorphism_count_oracle(k4), 98304u);  // 4! * 2^12
  EXPECT_EQ(automorphisms(k4).size(), 98304u);
}

TEST(Multigraph, AutomorphismBudget) {
  try {
    automorphisms(corpus("figure1.json"), {10, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchBudgetExceeded);
  }
}

TEST(Multigraph, WorkersDoNotChangeOrder) {
  for (const auto* name : {"two_arc.txt", "triangle2.txt", "figure1.json"}) {
    const auto g = corpus(name);
    EXPECT_EQ(automorphisms(g, {10'000'000, 1}), automorphisms(g, {10'000'000, 4})) << name;
  }
}

// Properties over the whole corpus.

TEST(MultigraphProperty, MultiplicitiesSumToEdgeCount) {
  for (const auto* name : kCorpus) {
    const auto g = corpus(name);
    std::size_t total = 0;
    for (VertexIndex i = 0; i < g.vertex_count(); ++i)
      for (VertexIndex j = 0; j < g.vertex_count(); ++j) total += g.multiplicity(i, j);
    EXPECT_EQ(total, g.edge_count()) << name;
    for (const auto& arc : g.arcs()) EXPECT_GT(g.multiplicity(arc.src, arc.dst), 0u);
  }
}

TEST(MultigraphProperty, AutomorphismsFormAGroup) {
  for (const auto* name : {"loop.txt", "single_edge.txt", "two_arc.txt", "triangle2.txt"}) {
    const auto g = corpus(name);
    const auto aut = automorphisms(g);
    const std::set<MultigraphAutomorphism> all(aut.begin(), aut.end());
    ASSERT_EQ(all.size(), aut.size()) << name;
    for (const auto& a : aut) {
      ASSERT_TRUE(is_automorphism(g, a));
      for (VertexIndex i = 0; i < g.vertex_count(); ++i)
        for (VertexIndex j = 0; j < g.vertex_count(); ++j)
          EXPECT_EQ(g.multiplicity(a.vertex_map[i], a.vertex_map[j]), g.multiplicity(i, j));
      EXPECT_TRUE(all.count(inverse(g, a))) << name;
      for (const auto& b : aut) EXPECT_TRUE(all.count(compose(g, a, b))) << name;
      const auto id = compose(g, a, inverse(g, a));
      for (const auto& e : g.edges()) EXPECT_EQ(apply(g, id, e), e);
    }
  }
}

TEST(MultigraphProperty, PermissiblePairsAreSubsetOfIndexSet) {
  for (const auto* name : kCorpus) {
    const auto g = corpus(name);
    const auto perm = permissible_pairs(g);
    EXPECT_LE(perm.size(), g.vertex_count() * g.max_multiplicity());
    for (const auto& p : perm) {
      EXPECT_LT(p.vertex, g.vertex_count());
      EXPECT_GE(p.label, 1u);
      EXPECT_LE(p.label, g.max_multiplicity());
    }
    EXPECT_TRUE(std::is_sorted(perm.begin(), perm.end()));
  }
}

// Uniform graphs realise every (vertex, label) pair; the converse fails.
TEST(MultigraphProperty, UniformImpliesFullIndexSet) {
  for (const auto* name : {"loop.txt", "single_edge.txt", "two_arc.txt", "triangle2.txt", "k4_doubled.txt"}) {
    const auto g = corpus(name);
    ASSERT_TRUE(is_uniform(g));
    EXPECT_EQ(permissible_pairs(g).size(), g.vertex_count() * g.max_multiplicity()) << name;
  }
  // Not uniform (b->a has one edge), yet every pair is realised.
  const auto g = parse_graph_text("a b\na b\nb c\nc b\nc b\nb a\n");
  EXPECT_FALSE(is_uniform(g));
  EXPECT_EQ(permissible_pairs(g).size(), g.vertex_count() * g.max_multiplicity());
}
