#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msym/ncalg.hpp"

namespace msym {

enum class ProofStatus { Proved, Undecided };

enum class StepKind {
  Reduce,             // apply the monomial rewriting rules to every term
  Insert,             // w1.w2 -> sum_x w1.m_x.w2 on one term (a family sums to 1)
  BulkInsert,         // the same insertion at one offset in every long-enough term
  Collapse,           // inverse of Insert on a complete group of terms
  LabelSubstitute,    // move a complete sub-row sum to another row label
  LinearCombination,  // subtract a rational combination of known-zero facts
};

std::string_view to_string(StepKind k);
std::string_view to_string(ProofStatus s);

struct ProofStep {
  StepKind kind = StepKind::Reduce;
  Word word;               // Insert / Collapse / LabelSubstitute: the term acted on
  std::size_t offset = 0;  // insertion offset, or position of the varying factor
  Family family{};         // Insert / BulkInsert / Collapse
  Label to_label = 0;      // LabelSubstitute
  std::vector<std::pair<std::size_t, Rational>> combination;  // fact id -> coefficient
};

struct ProofOutcome {
  ProofStatus status = ProofStatus::Undecided;
  std::vector<ProofStep> trace;
  int depth_used = 0;
  NCPolynomial residual;  // best reduction for Undecided outcomes
  std::uint64_t nodes = 0;

  bool proved() const { return status == ProofStatus::Proved; }
};

struct PartitionCertificate;
class FactSpan;

/// A polynomial known to be zero, usable in LinearCombination steps.
/// Base facts are the linear relations of the rule set. Derived facts come
/// from a partition certificate: if projections a_1..a_n sum to 1 in a
/// C*-algebra then a_x a_y = 0 for x != y.
struct ZeroFact {
  std::string name;
  NCPolynomial poly;
  std::shared_ptr<const PartitionCertificate> certificate;
  std::size_t x = 0, y = 0;
};

struct PartitionCertificate {
  std::string name;
  std::vector<NCPolynomial> members;
  std::vector<ProofOutcome> idempotent;  // proofs of a_x a_x - a_x = 0
  ProofOutcome sums_to_unit;             // proof of sum a_x - 1 = 0
};

struct ProverOptions {
  int max_insertions = 3;
  std::size_t max_word = 12;
  std::size_t max_terms = 256;  // whole-polynomial moves that grow past this are skipped
  std::uint64_t node_budget = 200'000;  // per prove_zero call
  bool use_lemmas = true;
};

class Prover {
 public:
  Prover(const RuleSet& rules, ProverOptions options = {});

  const RuleSet& rules() const { return rules_; }
  const ProverOptions& options() const { return options_; }
  const std::vector<ZeroFact>& facts() const { return facts_; }

  /// Iterative deepening over insertion budgets 0..max_insertions. Tries, in
  /// order: reduction, linear relations, derived lemmas, per-term insertion
  /// proofs and whole polynomial moves.
  ProofOutcome prove_zero(const NCPolynomial& p);
  ProofOutcome prove_equal(const NCPolynomial& p, const NCPolynomial& q) { return prove_zero(p - q); }

  /// Checks the premises of a partition and, if they hold, registers the
  /// pairwise products as derived zero facts. Returns null when a premise
  /// could not be proved.
  std::shared_ptr<const PartitionCertificate> certify_partition(const std::string& name,
                                                                std::vector<NCPolynomial> members);

  /// Adds an already-certified partition (e.g. shared between workers).
  void add_partition(std::shared_ptr<const PartitionCertificate> cert);

 private:
  struct Search;
  ProofOutcome prove_zero_impl(const NCPolynomial& p, bool allow_lemmas);
  // Row-reduced span of facts[0, fact_count), rebuilt when facts are added.
  const FactSpan& span(std::size_t fact_count);

  const RuleSet& rules_;
  ProverOptions options_;
  std::vector<ZeroFact> facts_;
  std::size_t base_fact_count_ = 0;
  std::shared_ptr<FactSpan> base_span_, all_span_;
};

/// Applies a single step. Returns false when the step is not valid on p
/// (for example a collapse whose group is incomplete).
bool apply_step(NCPolynomial& p, const ProofStep& step, const RuleSet& rules,
                const std::vector<ZeroFact>& facts);

/// Replays a trace on p from scratch and checks that it ends at zero.
/// Derived facts are re-validated through their certificates.
bool replay(const NCPolynomial& p, const ProofOutcome& outcome, const RuleSet& rules,
            const std::vector<ZeroFact>& facts);

bool validate_certificate(const PartitionCertificate& cert, const RuleSet& rules,
                          const std::vector<ZeroFact>& facts);

std::string describe(const ProofStep& step, const RuleSet& rules, const std::vector<ZeroFact>& facts);

/// Inserts every member of the family at offset in w.
NCPolynomial insert_family(const Word& w, std::size_t offset, const Family& f, const Rational& c,
                           const RuleSet& rules);

}  // namespace msym
