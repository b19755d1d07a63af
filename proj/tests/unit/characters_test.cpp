#include <gtest/gtest.h>

#include <set>

#include "msym/characters.hpp"
#include "support.hpp"

using namespace msym;
using msym::test::corpus;

TEST(Characters, IdentityIsACharacter) {
  for (const auto* name : {"loop.txt", "single_edge.txt", "two_arc.txt", "triangle2.txt", "figure1.json"}) {
    const auto p = build_presentation(corpus(name));
    EXPECT_TRUE(satisfies(*p, identity_character(*p->alphabet()))) << name;
  }
}

TEST(Characters, CountsMatchBruteForce) {
  for (const auto* name : {"loop.txt", "single_edge.txt", "two_arc.txt", "triangle2.txt"}) {
    const auto g = corpus(name);
    for (bool li : {true, false}) {
      const auto p = build_presentation(g, li);
      EXPECT_EQ(enumerate_characters(*p).size(), msym::test::classical_solution_oracle(g, li))
          << name << (li ? "" : " (no label independence)");
    }
  }
}

TEST(Characters, SmallGraphCounts) {
  EXPECT_EQ(enumerate_characters(*build_presentation(corpus("loop.txt"))).size(), 1u);
  EXPECT_EQ(enumerate_characters(*build_presentation(corpus("single_edge.txt"))).size(), 1u);
  // Label mismatch couples the labels of the two arcs, so only 4 of the
  // 8 classical automorphisms show up as characters.
  EXPECT_EQ(enumerate_characters(*build_presentation(corpus("two_arc.txt"))).size(), 4u);
}

TEST(CharactersProperty, EveryCharacterSatisfiesAllRelations) {
  for (const auto* name : {"two_arc.txt", "triangle2.txt"}) {
    const auto g = corpus(name);
    const auto p = build_presentation(g);
    const auto chars = enumerate_characters(*p);
    const std::set<Character> unique(chars.begin(), chars.end());
    EXPECT_EQ(unique.size(), chars.size());
    EXPECT_TRUE(std::is_sorted(chars.begin(), chars.end()));
    for (const auto& c : chars) {
      EXPECT_TRUE(satisfies(*p, c));
      for (const auto& rel : p->rules().linear_relations()) EXPECT_EQ(evaluate(rel.poly, c), 0);
      for (const auto& v : p->vanishing()) EXPECT_FALSE(c.value(*p->alphabet(), v.left) && c.value(*p->alphabet(), v.right));
    }
  }
}

TEST(CharactersProperty, ClosedUnderComposition) {
  const auto g = corpus("triangle2.txt");
  const auto p = build_presentation(g);
  const auto chars = enumerate_characters(*p);
  const std::set<Character> all(chars.begin(), chars.end());
  for (const auto& a : chars)
    for (const auto& b : chars) EXPECT_TRUE(all.count(compose(a, b)));
}

TEST(CharactersProperty, OrderAndWorkersDoNotMatter) {
  for (const auto* name : {"two_arc.txt", "triangle2.txt", "figure1.json"}) {
    const auto p = build_presentation(corpus(name));
    const auto base = enumerate_characters(*p);
    EXPECT_EQ(enumerate_characters(*p, {10'000'000, 4, false}), base) << name;
    EXPECT_EQ(enumerate_characters(*p, {10'000'000, 1, true}), base) << name;
    EXPECT_EQ(enumerate_characters(*p, {10'000'000, 3, true}), base) << name;
  }
}

TEST(CharactersProperty, VertexActionIsAnAutomorphism) {
  for (const auto* name : {"two_arc.txt", "triangle2.txt"}) {
    const auto g = corpus(name);
    const auto p = build_presentation(g);
    const auto vm = vertex_matrix(*p);
    const auto em = edge_matrix(*p, g);
    for (const auto& c : enumerate_characters(*p)) {
      const auto v = vertex_action(c, vm);
      std::set<VertexIndex> image(v.begin(), v.end());
      EXPECT_EQ(image.size(), g.vertex_count());
      for (VertexIndex i = 0; i < g.vertex_count(); ++i)
        for (VertexIndex j = 0; j < g.vertex_count(); ++j) EXPECT_EQ(g.multiplicity(v[i], v[j]), g.multiplicity(i, j));
      const auto e = edge_action_of(c, em);
      for (std::size_t t = 0; t < e.size(); ++t) {
        EXPECT_EQ(em.edges[e[t]].src, v[em.edges[t].src]);
        EXPECT_EQ(em.edges[e[t]].dst, v[em.edges[t].dst]);
      }
      EXPECT_TRUE(is_automorphism(g, induced_automorphism(c, *p, g)));
    }
  }
}

TEST(CharactersProperty, InducedMapIsAHomomorphism) {
  const auto g = corpus("triangle2.txt");
  const auto p = build_presentation(g);
  const auto chars = enumerate_characters(*p);
  for (const auto& a : chars)
    for (const auto& b : chars)
      EXPECT_EQ(induced_automorphism(compose(a, b), *p, g),
                compose(g, induced_automorphism(a, *p, g), induced_automorphism(b, *p, g)));
}

TEST(Characters, Figure1PermissibleIsBijective) {
  const auto g = corpus("figure1.json");
  const auto q = build_presentation(g);
  const auto sub = permissible_subpresentation(*q, g);
  const auto chars = enumerate_characters(*sub.presentation);
  const auto aut = automorphisms(g);
  EXPECT_EQ(chars.size(), aut.size());
  const auto cmp = compare_with_automorphisms(*sub.presentation, g, chars, aut);
  EXPECT_TRUE(cmp.bijective);
  EXPECT_TRUE(cmp.unmatched_characters.empty());
  EXPECT_TRUE(cmp.unmatched_automorphisms.empty());
  EXPECT_TRUE(faithfulness_report(*sub.presentation, g, chars).faithful());
}

// On the full index set the non-permissible labels act freely, so the map to
// automorphisms is onto but far from injective. No particular count is
// asserted for the character set itself, only the structure of the kernel.
TEST(Characters, Figure1FullPresentationHasKernel) {
  const auto g = corpus("figure1.json");
  const auto q = build_presentation(g);
  const auto chars = enumerate_characters(*q);
  const auto aut = automorphisms(g);
  const auto rep = faithfulness_report(*q, g, chars);
  EXPECT_EQ(rep.character_count, chars.size());
  EXPECT_EQ(rep.distinct_actions, aut.size());
  EXPECT_FALSE(rep.faithful());
  EXPECT_EQ(chars.size() % aut.size(), 0u);
  const auto fibre = chars.size() / aut.size();
  EXPECT_EQ(rep.kernel_pair_count, aut.size() * fibre * (fibre - 1) / 2);
  EXPECT_LE(rep.kernel_pairs.size(), 16u);
  const auto cmp = compare_with_automorphisms(*q, g, chars, aut);
  EXPECT_FALSE(cmp.bijective);
  EXPECT_TRUE(cmp.unmatched_automorphisms.empty());
}

TEST(Characters, Budget) {
  const auto p = build_presentation(corpus("figure1.json"));
  try {
    enumerate_characters(*p, {50, 1, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SearchBudgetExceeded);
  }
}

TEST(Characters, CycleNotation) {
  const auto p = build_presentation(corpus("two_arc.txt"));
  const auto& a = *p->alphabet();
  EXPECT_EQ(cycle_notation(identity_character(a), a), "()");
  for (const auto& c : enumerate_characters(*p)) {
    const auto text = cycle_notation(c, a);
    EXPECT_EQ(text == "()", c == identity_character(a));
  }
}

TEST(Characters, NotAPermutation) {
  const auto g = corpus("two_arc.txt");
  const auto p = build_presentation(g);
  Character bad{std::vector<std::uint32_t>(p->alphabet()->index_count(), 0)};
  EXPECT_FALSE(satisfies(*p, bad));
  EXPECT_THROW(vertex_action(bad, vertex_matrix(*p)), Error);
}
