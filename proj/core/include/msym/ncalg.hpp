#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "msym/multigraph.hpp"

// Older Boost headers recurse forever on rational<long> == int under C++20's
// reversed-operator rules. This overload is more constrained and wins.
namespace boost {
template <class T>
  requires std::is_integral_v<T>
bool operator==(const rational<std::int64_t>& a, const T& b) {
  return a == rational<std::int64_t>(static_cast<std::int64_t>(b));
}
}  // namespace boost

namespace msym {

using Rational = boost::rational<std::int64_t>;
using GenId = std::uint32_t;

/// Monomial: a product of self-adjoint generators. The empty word is the unit.
using Word = boost::container::small_vector<GenId, 8>;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

/// Generator symbols of a magic matrix indexed by an ordered index set of
/// (vertex, label) pairs. Generator (row, col) is written q[k,s|i,r], or
/// u[k|i] for a label-free (vertex only) alphabet.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> vertex_names, std::vector<IndexPair> index_set,
           std::string symbol = "q", bool show_labels = true);

  std::size_t index_count() const { return index_set_.size(); }
  std::size_t generator_count() const { return index_set_.size() * index_set_.size(); }
  const std::vector<IndexPair>& index_set() const { return index_set_; }
  const IndexPair& index(std::size_t k) const { return index_set_.at(k); }
  std::optional<std::size_t> index_of(const IndexPair& p) const;
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::string& symbol() const { return symbol_; }
  bool show_labels() const { return show_labels_; }

  GenId generator(std::size_t row, std::size_t col) const {
    return static_cast<GenId>(row * index_set_.size() + col);
  }
  /// Generator for (row pair, col pair); nullopt if either pair is outside the index set.
  std::optional<GenId> generator(const IndexPair& row, const IndexPair& col) const;
  std::size_t row_of(GenId g) const { return g / index_set_.size(); }
  std::size_t col_of(GenId g) const { return g % index_set_.size(); }

  std::string index_name(std::size_t k) const;
  std::string generator_name(GenId g) const;
  /// Parses "q[k,s|i,r]" / "u[k|i]"; throws ParseError.
  GenId parse_generator(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<IndexPair> index_set_;
  std::string symbol_;
  bool show_labels_ = true;
  std::map<IndexPair, std::size_t> lookup_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Graded lexicographic: shorter words first, then lexicographic on ids.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Element of the free *-algebra with rational coefficients. Zero
/// coefficients are never stored.
class NCPolynomial {
 public:
  using Terms = std::map<Word, Rational, WordOrder>;

  NCPolynomial() = default;
  explicit NCPolynomial(AlphabetPtr ambient) : ambient_(std::move(ambient)) {}

  static NCPolynomial unit(AlphabetPtr ambient, Rational c = 1);
  static NCPolynomial generator(AlphabetPtr ambient, GenId g, Rational c = 1);
  static NCPolynomial monomial(AlphabetPtr ambient, Word w, Rational c = 1);
  /// Sums an unordered list of terms (duplicates allowed); cheaper than
  /// repeated add_term for large batches.
  static NCPolynomial from_terms(AlphabetPtr ambient, std::vector<std::pair<Word, Rational>> terms);

  const AlphabetPtr& ambient() const { return ambient_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_length() const;
  Rational coefficient(const Word& w) const;

  void add_term(const Word& w, const Rational& c);
  void erase(const Word& w) { terms_.erase(w); }

  NCPolynomial& operator+=(const NCPolynomial& other);
  NCPolynomial& operator-=(const NCPolynomial& other);
  NCPolynomial& operator*=(const Rational& c);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(NCPolynomial a, const Rational& c) { return a *= c; }
  friend NCPolynomial operator*(const Rational& c, NCPolynomial a) { return a *= c; }
  /// Concatenation product; throws MixedAmbient for different alphabets.
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);

  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;
  static NCPolynomial parse(AlphabetPtr ambient, std::string_view text);

 private:
  void adopt(const NCPolynomial& other);

  AlphabetPtr ambient_;
  Terms terms_;
};

NCPolynomial multiply(const NCPolynomial& p, const NCPolynomial& q);
/// Reverses words; generators are self-adjoint and coefficients real.
NCPolynomial adjoint(const NCPolynomial& p);

enum class FamilyKind { Row, Column };

/// A complete row or column of the magic matrix; its members sum to 1.
struct Family {
  FamilyKind kind = FamilyKind::Column;
  std::size_t index = 0;

  friend auto operator<=>(const Family&, const Family&) = default;
};

struct LinearRelation {
  std::string name;
  NCPolynomial poly;  // asserted equal to zero
};

/// Monomial rewriting rules plus linear relations. Same-row and same-column
/// products of distinct generators always vanish; further vanishing pairs are
/// stored explicitly.
class RuleSet {
 public:
  explicit RuleSet(AlphabetPtr alphabet);

  const AlphabetPtr& alphabet() const { return alphabet_; }

  bool vanishes(GenId g, GenId h) const;
  bool magic_pair(GenId g, GenId h) const;
  bool extra_pair(GenId g, GenId h) const { return extra_[static_cast<std::size_t>(g) * stride_ + h]; }
  void add_vanishing(GenId g, GenId h);
  std::size_t extra_pair_count() const { return extra_count_; }

  std::vector<GenId> members(const Family& f) const;
  std::string family_name(const Family& f) const;

  /// Unit-sum relations (every row and column) are always present.
  const std::vector<LinearRelation>& linear_relations() const { return linear_; }
  void add_linear_relation(LinearRelation r) { linear_.push_back(std::move(r)); }

  /// Whether row-label substitution (sub-row sums independent of the row label) holds.
  bool has_label_independence() const { return label_independence_; }
  void set_label_independence(bool on) { label_independence_ = on; }

  /// Columns joined to column c by an edge (c=(i,r), partner (j,r) with (i,j)r or (j,i)r an edge).
  const std::vector<std::size_t>& column_partners(std::size_t c) const { return partners_.at(c); }
  void add_column_partner(std::size_t c, std::size_t partner);

 private:
  AlphabetPtr alphabet_;
  std::size_t stride_ = 0;
  std::vector<bool> extra_;
  std::size_t extra_count_ = 0;
  std::vector<LinearRelation> linear_;
  bool label_independence_ = false;
  std::vector<std::vector<std::size_t>> partners_;
};

/// Leftmost-innermost rewriting of a single word: g g -> g, g h -> 0 for
/// vanishing pairs, rescanning from the start after each rewrite.
std::optional<Word> reduce_word(const Word& w, const RuleSet& rules);
NCPolynomial reduce(const NCPolynomial& p, const RuleSet& rules);

/// Sum of all members of the family as a polynomial.
NCPolynomial family_sum(const RuleSet& rules, const Family& f);

}  // namespace msym
