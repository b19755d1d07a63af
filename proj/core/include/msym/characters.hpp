#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "msym/multigraph.hpp"
#include "msym/ncalg.hpp"
#include "msym/presentation.hpp"

namespace msym {

/// A 0/1 solution of the relations: a permutation matrix on the index set.
/// Generator (row, col) takes value 1 iff row_of_col[col] == row.
struct Character {
  std::vector<std::uint32_t> row_of_col;

  bool value(const Alphabet& a, GenId g) const { return row_of_col.at(a.col_of(g)) == a.row_of(g); }
  friend auto operator<=>(const Character&, const Character&) = default;
};

Character identity_character(const Alphabet& a);

struct CharacterOptions {
  std::uint64_t node_budget = 10'000'000;
  unsigned workers = 1;
  /// Pick the column with the fewest candidates next instead of index order.
  /// Results are re-sorted either way.
  bool most_constrained_first = false;
};

/// All characters of p, sorted by row_of_col. Throws SearchBudgetExceeded
/// when the node budget runs out; the message carries the partial count.
/// Index sets are limited to 64 pairs.
std::vector<Character> enumerate_characters(const Presentation& p, const CharacterOptions& options = {});

Rational evaluate(const NCPolynomial& poly, const Character& c);
/// Post-hoc check of every relation by direct evaluation.
bool satisfies(const Presentation& p, const Character& c);

/// Vertex map i -> k with Q^k_i = 1. Throws NotAPermutation.
std::vector<VertexIndex> vertex_action(const Character& c, const VertexMatrix& vm);
/// Edge map tau -> sigma (positions in em.edges) with u^sigma_tau = 1. Throws NotAPermutation.
std::vector<std::size_t> edge_action_of(const Character& c, const EdgeMatrix& em);

/// Composition as 0/1 matrices: (a*b)(x|y) = sum_z a(x|z) b(z|y).
Character compose(const Character& a, const Character& b);

/// "(a,1 b,1)(c,2 d,2)" on the index set; "()" for the identity.
std::string cycle_notation(const Character& c, const Alphabet& a);

struct FaithfulnessReport {
  std::size_t character_count = 0;
  std::size_t distinct_actions = 0;
  std::size_t kernel_pair_count = 0;
  /// First few kernel pairs (indices into the enumeration), capped.
  std::vector<std::pair<std::size_t, std::size_t>> kernel_pairs;
  bool faithful() const { return kernel_pair_count == 0; }
};

FaithfulnessReport faithfulness_report(const Presentation& p, const Multigraph& g,
                                       const std::vector<Character>& characters,
                                       std::size_t max_listed = 16);

struct AutomorphismComparison {
  std::size_t character_count = 0;
  std::size_t automorphism_count = 0;
  bool bijective = false;
  /// Character indices whose induced automorphism is invalid, duplicated or missing from Aut.
  std::vector<std::size_t> unmatched_characters;
  /// Automorphism indices not hit by any character.
  std::vector<std::size_t> unmatched_automorphisms;
};

/// Character -> (vertex map from the vertex matrix, label bijections from the
/// edge action), checked to be a bijection onto automorphisms(g).
MultigraphAutomorphism induced_automorphism(const Character& c, const Presentation& p, const Multigraph& g);
AutomorphismComparison compare_with_automorphisms(const Presentation& p, const Multigraph& g,
                                                  const std::vector<Character>& characters,
                                                  const std::vector<MultigraphAutomorphism>& automorphisms);

}  // namespace msym
