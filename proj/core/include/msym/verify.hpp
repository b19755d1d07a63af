#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msym/characters.hpp"
#include "msym/matmodel.hpp"
#include "msym/presentation.hpp"
#include "msym/prover.hpp"

namespace msym {

enum class ObligationStatus { Proved, DischargedNumerically, Undecided };
std::string_view to_string(ObligationStatus s);

/// One identity, stated as "this polynomial is zero". Kronecker deltas are
/// split eagerly, so every obligation is a plain polynomial (or, for the
/// coproduct suite, a tensor) identity.
struct Obligation {
  std::string id;  // "<suite>/<n>"
  std::string description;
  NCPolynomial poly;
  std::optional<TensorPolynomial> tensor;
  ObligationStatus status = ObligationStatus::Undecided;
  ProofOutcome proof;
  /// Tensor obligations whose leg-wise reduction leaves a residual: the
  /// residual is grouped by left word and each right-leg polynomial proved.
  std::vector<std::pair<Word, ProofOutcome>> components;
  std::string discharge;  // how a numeric discharge was obtained, or why it failed

  int depth() const;
  std::size_t trace_length() const;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::string> notes;
  std::vector<Obligation> obligations;
  /// Fact list the LinearCombination steps refer to.
  std::shared_ptr<const std::vector<ZeroFact>> facts;
  PresentationPtr presentation;

  std::size_t count(ObligationStatus s) const;
  bool all_proved() const { return count(ObligationStatus::Proved) == obligations.size(); }
  const Obligation* find(const std::string& id) const;
};

struct VerifyOptions {
  ProverOptions prover;
  unsigned workers = 1;
  bool include_label_independence = true;
  double tolerance = 1e-10;
  CharacterOptions characters;
  /// Extra models used for numeric discharge, besides character models and
  /// (when the graph supports it) the Pauli witness.
  std::vector<MatrixModel> models;
};

SuiteReport verify_vertex_magic(PresentationPtr p, const VerifyOptions& options = {});
SuiteReport verify_bimodule(PresentationPtr p, const Multigraph& g, const VerifyOptions& options = {});
SuiteReport verify_coproduct_identity(PresentationPtr p, const Multigraph& g, const VerifyOptions& options = {});
SuiteReport verify_restricted_orthogonality(PresentationPtr p, const Multigraph& g,
                                            const VerifyOptions& options = {});
SuiteReport verify_xi_fixed(PresentationPtr p, const Multigraph& g, const VerifyOptions& options = {});
SuiteReport verify_biunitarity(PresentationPtr p, const Multigraph& g, const VerifyOptions& options = {});
SuiteReport verify_permissible_preservation(PresentationPtr p, const Multigraph& g,
                                            const VerifyOptions& options = {});
SuiteReport verify_banica_lift_membership(const Multigraph& g, const VerifyOptions& options = {});

/// Every suite on build_presentation(g), in a fixed order.
std::vector<SuiteReport> verify_all(const Multigraph& g, const VerifyOptions& options = {});

/// Re-checks a Proved obligation from scratch.
bool replay_obligation(const Obligation& o, const SuiteReport& report);
/// Value of the obligation under a character (tensor obligations evaluate
/// both legs under the same character).
Rational evaluate(const Obligation& o, const Character& c);

std::string reports_to_json(const std::vector<SuiteReport>& reports);
std::string reports_to_text(const std::vector<SuiteReport>& reports);
/// Full step-by-step trace of one obligation; nullopt if the id is unknown.
std::optional<std::string> explain(const std::vector<SuiteReport>& reports, const std::string& id);

}  // namespace msym
