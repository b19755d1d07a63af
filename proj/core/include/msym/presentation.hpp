#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msym/multigraph.hpp"
#include "msym/ncalg.hpp"
#include "msym/prover.hpp"

namespace msym {

enum class PresentationKind { Uniform, NonUniform, Permissible, BanicaLift };
std::string_view to_string(PresentationKind k);

/// Why a non-magic pair of generators multiplies to zero.
enum class VanishingReason {
  EmptyArc,        // q^{ks}_{ir} q^{ls'}_{jr} = 0 if E^k_l is empty, (i,j)r an edge
  LabelMismatch,   // ... if E^k_l nonempty and s != s'
  LabelOverflow,   // ... if E^k_l nonempty, s = s' > |E^k_l|
  WeightMismatch,  // u^k_i u^l_j = 0 if |E^k_l| != |E^i_j|
  Adjoint,         // reverse of a listed pair (generators are self-adjoint)
};
std::string_view to_string(VanishingReason r);

struct VanishingPair {
  GenId left = 0;
  GenId right = 0;
  VanishingReason reason = VanishingReason::EmptyArc;
};

/// Generators-and-relations presentation over an alphabet of magic-matrix
/// entries. Instances are not copyable because provers keep references to
/// the rule set; share them through PresentationPtr.
class Presentation {
 public:
  Presentation(PresentationKind kind, AlphabetPtr alphabet);
  Presentation(const Presentation&) = delete;
  Presentation& operator=(const Presentation&) = delete;

  PresentationKind kind() const { return kind_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const RuleSet& rules() const { return rules_; }
  RuleSet& rules() { return rules_; }
  std::size_t generator_count() const { return alphabet_->generator_count(); }

  const std::vector<VanishingPair>& vanishing() const { return vanishing_; }
  void add_vanishing(const VanishingPair& p);

  bool includes_label_independence() const { return rules_.has_label_independence(); }
  /// Indices of label-independence relations inside rules().linear_relations().
  const std::vector<std::size_t>& label_relation_ids() const { return label_relation_ids_; }
  void add_label_relation(LinearRelation r);

  /// Banica lift only: q[k,s|i,r] -> delta_{sr} u[k|i], keyed by the
  /// generator of the source presentation.
  const AlphabetPtr& source_alphabet() const { return source_alphabet_; }
  const std::map<GenId, GenId>& substitutions() const { return substitutions_; }
  void set_substitutions(AlphabetPtr source, std::map<GenId, GenId> table);
  NCPolynomial substitute(const NCPolynomial& source_poly) const;

 private:
  PresentationKind kind_;
  AlphabetPtr alphabet_;
  RuleSet rules_;
  std::vector<VanishingPair> vanishing_;
  std::vector<std::size_t> label_relation_ids_;
  AlphabetPtr source_alphabet_;
  std::map<GenId, GenId> substitutions_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

/// Q_(V,E): magic relations, edge relations (empty arc, label mismatch,
/// label overflow) and optionally the label-independence relations
/// sum_r q^{ks}_{ir} = sum_r q^{ks'}_{ir}.
PresentationPtr build_presentation(const Multigraph& g, bool include_label_independence = true);

/// Classifies a pair of generators against the edge relations directly
/// (no adjoint closure). Returns the first applicable reason.
std::optional<VanishingReason> classify_edge_pair(const Multigraph& g, const Alphabet& a, GenId left,
                                                  GenId right);

struct VertexMatrix {
  std::size_t size = 0;
  std::vector<NCPolynomial> entries;  // row-major (k, i)

  const NCPolynomial& at(std::size_t k, std::size_t i) const { return entries.at(k * size + i); }
};

/// Q^k_i = sum_r q^{k s0}_{ir}, s0 the smallest label of k in the index set.
VertexMatrix vertex_matrix(const Presentation& p);

struct EdgeMatrix {
  std::vector<LabeledEdge> edges;
  std::vector<NCPolynomial> entries;  // row-major (sigma, tau)

  std::size_t size() const { return edges.size(); }
  const NCPolynomial& at(std::size_t sigma, std::size_t tau) const {
    return entries.at(sigma * edges.size() + tau);
  }
};

/// u^{(k,l)s}_{(i,j)r} = q^{ks}_{ir} q^{ls}_{jr}.
EdgeMatrix edge_matrix(const Presentation& p, const Multigraph& g);

/// Element of A (x) A with words on both legs.
class TensorPolynomial {
 public:
  using Key = std::pair<Word, Word>;
  struct KeyOrder {
    bool operator()(const Key& a, const Key& b) const {
      WordOrder o;
      if (o(a.first, b.first)) return true;
      if (o(b.first, a.first)) return false;
      return o(a.second, b.second);
    }
  };
  using Terms = std::map<Key, Rational, KeyOrder>;

  TensorPolynomial() = default;
  explicit TensorPolynomial(AlphabetPtr ambient) : ambient_(std::move(ambient)) {}

  const AlphabetPtr& ambient() const { return ambient_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& left, const Word& right, const Rational& c);
  TensorPolynomial& operator+=(const TensorPolynomial& o);
  TensorPolynomial& operator-=(const TensorPolynomial& o);
  friend TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b);
  friend bool operator==(const TensorPolynomial& a, const TensorPolynomial& b) { return a.terms_ == b.terms_; }

  /// Reduces each leg; a term vanishes when either leg does.
  TensorPolynomial reduce_legs(const RuleSet& rules) const;
  std::string to_string() const;

 private:
  AlphabetPtr ambient_;
  Terms terms_;
};

TensorPolynomial tensor(const NCPolynomial& left, const NCPolynomial& right);

/// Delta(q^{x}_{y}) = sum_z q^{x}_{z} (x) q^{z}_{y}.
TensorPolynomial coproduct(GenId gen, const Presentation& p);
/// Extends the coproduct multiplicatively and linearly.
TensorPolynomial coproduct(const NCPolynomial& poly, const Presentation& p);

struct ClosureTerm {
  GenId generator = 0;           // retained generator q^{x}_{y} (source alphabet)
  std::size_t dropped_index = 0;  // non-permissible z in the coproduct sum
  NCPolynomial vanishing_leg;     // q^{z}_{y}, proved zero
  ProofOutcome proof;
};

struct PermissibleSubpresentation {
  std::vector<GenId> generators;  // in the source alphabet
  PresentationPtr presentation;   // restricted to permissible pairs
  std::vector<ClosureTerm> closure;
  bool closed = true;             // every dropped coproduct term proved zero
  std::size_t edge_product_generators = 0;  // |{q^{ks}_{ir} q^{ls}_{jr}}| for the alternative description
};

PermissibleSubpresentation permissible_subpresentation(const Presentation& q, const Multigraph& g,
                                                       const ProverOptions& options = {});

/// Presentation over u^i_j: magic relations, the weight-mismatch relations,
/// commutation with the weighted adjacency matrix, and the substitution
/// table q^{ks}_{ir} -> delta_{sr} u^k_i from build_presentation(g).
PresentationPtr banica_lift(const Multigraph& g);

// Export / import.
std::string presentation_to_json(const Presentation& p);
PresentationPtr presentation_from_json(const std::string& text);
std::string presentation_to_text(const Presentation& p);

}  // namespace msym
