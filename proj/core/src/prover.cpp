#include "msym/prover.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace msym {

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::Reduce: return "reduce";
    case StepKind::Insert: return "insert";
    case StepKind::BulkInsert: return "bulk-insert";
    case StepKind::Collapse: return "collapse";
    case StepKind::LabelSubstitute: return "label-substitute";
    case StepKind::LinearCombination: return "linear-combination";
  }
  return "?";
}

std::string_view to_string(ProofStatus s) {
  return s == ProofStatus::Proved ? "Proved" : "Undecided";
}

namespace {

ProofStep step_of(StepKind k) {
  ProofStep s;
  s.kind = k;
  return s;
}

std::string word_name(const Word& w, const Alphabet& a) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += a.generator_name(w[i]);
  }
  return out;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (auto g : w) h = h * 1000003u ^ g;
    return h;
  }
};

// Group of words that differ from `w` only at `pos`, where the generator at
// `pos` ranges over `members`. The group is usable for a collapse or a label
// substitution when every present member carries coefficient c and every
// absent member reduces to zero.
bool group_complete(const NCPolynomial& p, const Word& w, std::size_t pos,
                    const std::vector<GenId>& members, const RuleSet& rules, Rational& c) {
  if (pos >= w.size()) return false;
  if (std::find(members.begin(), members.end(), w[pos]) == members.end()) return false;
  // The representative itself may be one of the absent (zero) members.
  c = Rational(0);
  Word probe = w;
  for (auto m : members) {
    probe[pos] = m;
    const auto coeff = p.coefficient(probe);
    if (coeff == Rational(0)) {
      if (reduce_word(probe, rules)) return false;
    } else if (c == Rational(0)) {
      c = coeff;
    } else if (coeff != c) {
      return false;
    }
  }
  return c != Rational(0);
}

// Members of the sub-row through generator g: row fixed, column vertex fixed,
// column label ranging over the index set.
std::vector<GenId> subrow_members(GenId g, const Alphabet& a, std::optional<Label> row_label = {}) {
  const auto& row = a.index(a.row_of(g));
  const auto& col = a.index(a.col_of(g));
  IndexPair target_row{row.vertex, row_label ? *row_label : row.label};
  std::vector<GenId> out;
  for (std::size_t c = 0; c < a.index_count(); ++c) {
    if (a.index(c).vertex != col.vertex) continue;
    if (auto gen = a.generator(target_row, a.index(c))) out.push_back(*gen);
  }
  return out;
}

}  // namespace

// Subtracts a combination of facts; exact rational linear algebra over words.
class FactSpan {
 public:
  void add(const NCPolynomial& poly, std::size_t fact_id) {
    ++added_;
    Row row{poly.terms(), {{fact_id, Rational(1)}}};
    reduce_row(row);
    if (row.terms.empty()) return;
    const Word pivot = row.terms.rbegin()->first;
    const Rational lead = row.terms.rbegin()->second;
    for (auto& [w, c] : row.terms) c /= lead;
    for (auto& [id, c] : row.combo) c /= lead;
    rows_.emplace(pivot, std::move(row));
  }

  std::size_t size() const { return added_; }

  /// Returns the combination expressing target, if it lies in the span.
  std::optional<std::map<std::size_t, Rational>> express(const NCPolynomial& target) const {
    Row row{target.terms(), {}};
    reduce_row(row);
    if (!row.terms.empty()) return std::nullopt;
    std::map<std::size_t, Rational> combo;
    for (auto& [id, c] : row.combo)
      if (c != Rational(0)) combo[id] = -c;
    return combo;
  }

 private:
  struct Row {
    NCPolynomial::Terms terms;
    std::map<std::size_t, Rational> combo;
  };

  void reduce_row(Row& row) const {
    auto it = row.terms.end();
    while (it != row.terms.begin()) {
      --it;
      auto pivot = rows_.find(it->first);
      if (pivot == rows_.end()) continue;
      const Word key = it->first;
      const Rational c = it->second;
      for (const auto& [w, v] : pivot->second.terms) {
        auto [slot, inserted] = row.terms.try_emplace(w, -c * v);
        if (!inserted) {
          slot->second -= c * v;
          if (slot->second == Rational(0)) row.terms.erase(slot);
        }
      }
      for (const auto& [id, v] : pivot->second.combo) row.combo[id] -= c * v;
      it = row.terms.lower_bound(key);
    }
  }

  std::map<Word, Row, WordOrder> rows_;
  std::size_t added_ = 0;
};

NCPolynomial insert_family(const Word& w, std::size_t offset, const Family& f, const Rational& c,
                           const RuleSet& rules) {
  NCPolynomial out(rules.alphabet());
  for (auto m : rules.members(f)) {
    Word x;
    x.reserve(w.size() + 1);
    x.insert(x.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(offset));
    x.push_back(m);
    x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(offset), w.end());
    out.add_term(x, c);
  }
  return out;
}

bool apply_step(NCPolynomial& p, const ProofStep& step, const RuleSet& rules,
                const std::vector<ZeroFact>& facts) {
  const auto& a = *rules.alphabet();
  switch (step.kind) {
    case StepKind::Reduce:
      p = reduce(p, rules);
      return true;
    case StepKind::Insert: {
      const auto c = p.coefficient(step.word);
      if (c == Rational(0)) return true;  // inserting into an absent term changes nothing
      if (step.offset > step.word.size()) return false;
      p.erase(step.word);
      p += insert_family(step.word, step.offset, step.family, c, rules);
      return true;
    }
    case StepKind::BulkInsert: {
      NCPolynomial out(p.ambient());
      for (const auto& [w, c] : p.terms()) {
        if (w.size() < step.offset) out.add_term(w, c);
        else out += insert_family(w, step.offset, step.family, c, rules);
      }
      p = std::move(out);
      return true;
    }
    case StepKind::Collapse: {
      Rational c;
      const auto members = rules.members(step.family);
      if (!group_complete(p, step.word, step.offset, members, rules, c)) return false;
      Word probe = step.word;
      for (auto m : members) {
        probe[step.offset] = m;
        p.erase(probe);
      }
      Word shorter = step.word;
      shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(step.offset));
      p.add_term(shorter, c);
      return true;
    }
    case StepKind::LabelSubstitute: {
      if (!rules.has_label_independence() || step.offset >= step.word.size()) return false;
      const auto g = step.word[step.offset];
      const auto from = subrow_members(g, a);
      const auto to = subrow_members(g, a, step.to_label);
      if (to.size() != from.size() || to.empty()) return false;
      // Both sub-rows must enumerate the same column pairs.
      for (std::size_t k = 0; k < from.size(); ++k)
        if (a.col_of(from[k]) != a.col_of(to[k])) return false;
      Rational c;
      if (!group_complete(p, step.word, step.offset, from, rules, c)) return false;
      Word probe = step.word;
      for (auto m : from) {
        probe[step.offset] = m;
        p.erase(probe);
      }
      for (auto m : to) {
        probe[step.offset] = m;
        p.add_term(probe, c);
      }
      return true;
    }
    case StepKind::LinearCombination: {
      for (const auto& [id, c] : step.combination) {
        if (id >= facts.size()) return false;
        p -= facts[id].poly * c;
      }
      return true;
    }
  }
  return false;
}

bool validate_certificate(const PartitionCertificate& cert, const RuleSet& rules,
                          const std::vector<ZeroFact>& facts) {
  // Premise proofs may only use base facts (no certificate of their own).
  std::vector<ZeroFact> base;
  for (const auto& f : facts)
    if (!f.certificate) base.push_back(f);
  if (cert.members.empty() || cert.idempotent.size() != cert.members.size()) return false;
  NCPolynomial sum(rules.alphabet());
  for (std::size_t x = 0; x < cert.members.size(); ++x) {
    const auto& m = cert.members[x];
    if (!(reduce(adjoint(m), rules) == reduce(m, rules))) return false;
    if (!replay(m * m - m, cert.idempotent[x], rules, base)) return false;
    sum += m;
  }
  return replay(sum - NCPolynomial::unit(rules.alphabet()), cert.sums_to_unit, rules, base);
}

bool replay(const NCPolynomial& p, const ProofOutcome& outcome, const RuleSet& rules,
            const std::vector<ZeroFact>& facts) {
  if (!outcome.proved()) return false;
  NCPolynomial cur = p;
  for (const auto& step : outcome.trace) {
    if (step.kind == StepKind::LinearCombination) {
      for (const auto& [id, c] : step.combination) {
        if (id >= facts.size()) return false;
        const auto& f = facts[id];
        if (!f.certificate) continue;
        const auto& cert = *f.certificate;
        if (f.x >= cert.members.size() || f.y >= cert.members.size() || f.x == f.y) return false;
        if (!(reduce(cert.members[f.x] * cert.members[f.y], rules) == f.poly)) return false;
        if (!validate_certificate(cert, rules, facts)) return false;
      }
    }
    if (!apply_step(cur, step, rules, facts)) return false;
  }
  return reduce(cur, rules).is_zero();
}

std::string describe(const ProofStep& step, const RuleSet& rules, const std::vector<ZeroFact>& facts) {
  const auto& a = *rules.alphabet();
  std::string out(to_string(step.kind));
  switch (step.kind) {
    case StepKind::Reduce: break;
    case StepKind::Insert:
      out += " " + rules.family_name(step.family) + " into " + word_name(step.word, a) + " at " +
             std::to_string(step.offset);
      break;
    case StepKind::BulkInsert:
      out += " " + rules.family_name(step.family) + " at " + std::to_string(step.offset);
      break;
    case StepKind::Collapse:
      out += " " + rules.family_name(step.family) + " in " + word_name(step.word, a) + " at " +
             std::to_string(step.offset);
      break;
    case StepKind::LabelSubstitute:
      out += " " + word_name(step.word, a) + " at " + std::to_string(step.offset) + " to row label " +
             std::to_string(step.to_label);
      break;
    case StepKind::LinearCombination:
      for (const auto& [id, c] : step.combination)
        out += " [" + to_string(c) + " x " + (id < facts.size() ? facts[id].name : "?") + "]";
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

struct Prover::Search {
  Prover& prover;
  const RuleSet& rules;
  const Alphabet& alpha;
  const FactSpan& base_span;
  std::uint64_t nodes = 0;
  bool exhausted = false;

  // Per-word memo: the smallest budget at which a proof is known, and the
  // largest budget at which the search is known to fail.
  struct WordMemo {
    int proved_at = -1;
    ProofStep move;
    int failed_at = -1;
  };
  std::unordered_map<Word, WordMemo, WordHash> memo;

  Search(Prover& p, std::size_t fact_count)
      : prover(p), rules(p.rules_), alpha(*p.rules_.alphabet()), base_span(p.span(fact_count)) {}

  bool tick() {
    if (++nodes > prover.options_.node_budget) exhausted = true;
    return !exhausted;
  }

  std::vector<Family> candidate_families(const NCPolynomial& p) const {
    std::set<std::size_t> cols, rows;
    for (const auto& [w, c] : p.terms()) {
      for (auto g : w) {
        const auto col = alpha.col_of(g);
        cols.insert(col);
        for (auto partner : rules.column_partners(col)) cols.insert(partner);
        rows.insert(alpha.row_of(g));
      }
    }
    std::vector<Family> out;
    for (auto c : cols) out.push_back({FamilyKind::Column, c});
    for (auto r : rows) out.push_back({FamilyKind::Row, r});
    return out;
  }

  // AND-OR search: a word is zero if some insertion turns it into terms that
  // are all zero within the remaining budget.
  bool prove_word(const Word& w, int budget) {
    auto& m = memo[w];
    if (m.proved_at >= 0 && m.proved_at <= budget) return true;
    if (m.failed_at >= budget) return false;
    if (budget <= 0 || w.size() + 1 > prover.options_.max_word || !tick()) return false;

    NCPolynomial single = NCPolynomial::monomial(rules.alphabet(), w);
    for (const auto& f : candidate_families(single)) {
      for (std::size_t off = 0; off <= w.size(); ++off) {
        const auto expanded = reduce(insert_family(w, off, f, 1, rules), rules);
        if (expanded.size() == 1 && expanded.terms().begin()->first == w) continue;
        bool all = true;
        for (const auto& [child, c] : expanded.terms()) {
          if (!prove_word(child, budget - 1)) {
            all = false;
            break;
          }
        }
        if (all) {
          auto& mm = memo[w];
          mm.proved_at = budget;
          mm.move = ProofStep{StepKind::Insert, w, off, f, 0, {}};
          return true;
        }
        if (exhausted) return false;
      }
    }
    auto& mm = memo[w];
    mm.failed_at = std::max(mm.failed_at, budget);
    return false;
  }

  int emit_word(const Word& w, std::vector<ProofStep>& trace) {
    const auto& m = memo.at(w);
    trace.push_back(m.move);
    trace.push_back(step_of(StepKind::Reduce));
    const auto expanded =
        reduce(insert_family(w, m.move.offset, m.move.family, 1, rules), rules);
    int depth = 0;
    for (const auto& [child, c] : expanded.terms()) depth = std::max(depth, emit_word(child, trace));
    return depth + 1;
  }

  std::optional<std::map<std::size_t, Rational>> finish(const NCPolynomial& p) const {
    if (p.is_zero()) return std::map<std::size_t, Rational>{};
    return base_span.express(p);
  }

  std::vector<ProofStep> whole_moves(const NCPolynomial& p) const {
    std::vector<ProofStep> moves;
    std::size_t longest = p.max_length();
    for (const auto& f : candidate_families(p))
      for (std::size_t off = 0; off <= longest; ++off)
        if (longest + 1 <= prover.options_.max_word)
          moves.push_back({StepKind::BulkInsert, {}, off, f, 0, {}});
    if (rules.has_label_independence()) {
      std::set<std::pair<Word, std::size_t>> seen;
      for (const auto& [w, c] : p.terms()) {
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
          const auto& row = alpha.index(alpha.row_of(w[pos]));
          // Canonical representative of the group: the member with the smallest id.
          Word rep = w;
          const auto members = subrow_members(w[pos], alpha);
          if (members.empty()) continue;
          rep[pos] = members.front();
          if (!seen.emplace(rep, pos).second) continue;
          Rational cc;
          if (!group_complete(p, rep, pos, members, rules, cc)) continue;
          for (std::size_t k = 0; k < alpha.index_count(); ++k) {
            const auto& target = alpha.index(k);
            if (target.vertex != row.vertex || target.label == row.label) continue;
            moves.push_back({StepKind::LabelSubstitute, rep, pos, {}, target.label, {}});
          }
        }
      }
    }
    return moves;
  }

  // Same result as BulkInsert followed by Reduce, without the unreduced
  // intermediate (reduction is linear and word-local). Gives up once the
  // result passes the term cap.
  std::optional<NCPolynomial> bulk_insert_reduced(const NCPolynomial& p, const ProofStep& move) const {
    const auto cap = prover.options_.max_terms;
    const auto members = rules.members(move.family);
    std::vector<std::pair<Word, Rational>> terms;
    Word x;
    for (const auto& [w, c] : p.terms()) {
      if (w.size() < move.offset) {
        if (auto r = reduce_word(w, rules)) terms.emplace_back(std::move(*r), c);
        continue;
      }
      for (auto m : members) {
        x.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(move.offset));
        x.push_back(m);
        x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(move.offset), w.end());
        if (auto r = reduce_word(x, rules)) terms.emplace_back(std::move(*r), c);
      }
      if (terms.size() > 4 * cap) return std::nullopt;  // heavy cancellation is rare
    }
    auto out = NCPolynomial::from_terms(p.ambient(), std::move(terms));
    if (out.size() > cap) return std::nullopt;
    return out;
  }

  bool whole_dfs(const NCPolynomial& p, int budget, std::vector<ProofStep>& trace,
                 std::set<std::pair<std::string, int>>& visited) {
    if (budget <= 0) return false;
    for (const auto& move : whole_moves(p)) {
      if (!tick()) return false;
      NCPolynomial next = p;
      if (move.kind == StepKind::BulkInsert) {
        auto bulk = bulk_insert_reduced(p, move);
        if (!bulk) continue;
        next = std::move(*bulk);
      } else {
        if (!apply_step(next, move, rules, prover.facts_)) continue;
        next = reduce(next, rules);
      }
      if (next == p) continue;
      if (auto combo = finish(next)) {
        trace.push_back(move);
        trace.push_back(step_of(StepKind::Reduce));
        if (!combo->empty()) {
          ProofStep lc = step_of(StepKind::LinearCombination);
          lc.combination.assign(combo->begin(), combo->end());
          trace.push_back(std::move(lc));
        }
        return true;
      }
      if (budget > 1 && visited.emplace(next.to_string(), budget - 1).second) {
        const auto mark = trace.size();
        trace.push_back(move);
        trace.push_back(step_of(StepKind::Reduce));
        if (whole_dfs(next, budget - 1, trace, visited)) return true;
        trace.resize(mark);
      }
      if (exhausted) return false;
    }
    return false;
  }
};

const FactSpan& Prover::span(std::size_t fact_count) {
  auto& slot = fact_count == base_fact_count_ ? base_span_ : all_span_;
  if (!slot || slot->size() != fact_count) {
    auto fresh = std::make_shared<FactSpan>();
    for (std::size_t id = 0; id < fact_count; ++id) fresh->add(facts_[id].poly, id);
    slot = std::move(fresh);
  }
  return *slot;
}

Prover::Prover(const RuleSet& rules, ProverOptions options) : rules_(rules), options_(options) {
  for (const auto& r : rules.linear_relations()) facts_.push_back({r.name, r.poly, nullptr, 0, 0});
  base_fact_count_ = facts_.size();
}

ProofOutcome Prover::prove_zero(const NCPolynomial& p) { return prove_zero_impl(p, options_.use_lemmas); }

ProofOutcome Prover::prove_zero_impl(const NCPolynomial& p, bool allow_lemmas) {
  ProofOutcome out;
  out.trace.push_back(step_of(StepKind::Reduce));
  const auto r = reduce(p, rules_);
  out.residual = r;
  if (r.is_zero()) {
    out.status = ProofStatus::Proved;
    return out;
  }

  Search search(*this, base_fact_count_);
  auto linear_step = [](const std::map<std::size_t, Rational>& combo) {
    ProofStep lc = step_of(StepKind::LinearCombination);
    lc.combination.assign(combo.begin(), combo.end());
    return lc;
  };
  if (auto combo = search.finish(r)) {
    out.trace.push_back(linear_step(*combo));
    out.status = ProofStatus::Proved;
    return out;
  }
  // Derived lemmas are one elimination away; try them before any search.
  if (allow_lemmas && facts_.size() > base_fact_count_) {
    if (auto combo = span(facts_.size()).express(r)) {
      out.trace.push_back(linear_step(*combo));
      out.status = ProofStatus::Proved;
      return out;
    }
  }

  for (int depth = 1; depth <= options_.max_insertions && !search.exhausted; ++depth) {
    // Every term independently.
    bool all = true;
    for (const auto& [w, c] : r.terms()) {
      if (!search.prove_word(w, depth)) {
        all = false;
        break;
      }
    }
    if (all) {
      int used = 0;
      for (const auto& [w, c] : r.terms()) used = std::max(used, search.emit_word(w, out.trace));
      out.status = ProofStatus::Proved;
      out.depth_used = used;
      out.nodes = search.nodes;
      return out;
    }
    if (search.exhausted) break;
    // Whole-polynomial moves, for identities that need cancellation.
    std::vector<ProofStep> trace;
    std::set<std::pair<std::string, int>> visited;
    if (search.whole_dfs(r, depth, trace, visited)) {
      out.trace.insert(out.trace.end(), trace.begin(), trace.end());
      out.status = ProofStatus::Proved;
      out.depth_used = depth;
      out.nodes = search.nodes;
      return out;
    }
  }
  out.nodes = search.nodes;
  return out;
}

std::shared_ptr<const PartitionCertificate> Prover::certify_partition(const std::string& name,
                                                                      std::vector<NCPolynomial> members) {
  auto cert = std::make_shared<PartitionCertificate>();
  cert->name = name;
  NCPolynomial sum(rules_.alphabet());
  for (const auto& m : members) {
    if (!(reduce(adjoint(m), rules_) == reduce(m, rules_))) return nullptr;
    auto proof = prove_zero_impl(m * m - m, false);
    if (!proof.proved()) return nullptr;
    cert->idempotent.push_back(std::move(proof));
    sum += m;
  }
  cert->sums_to_unit = prove_zero_impl(sum - NCPolynomial::unit(rules_.alphabet()), false);
  if (!cert->sums_to_unit.proved()) return nullptr;
  cert->members = std::move(members);
  add_partition(cert);
  return cert;
}

void Prover::add_partition(std::shared_ptr<const PartitionCertificate> cert) {
  for (std::size_t x = 0; x < cert->members.size(); ++x) {
    for (std::size_t y = 0; y < cert->members.size(); ++y) {
      if (x == y) continue;
      auto prod = reduce(cert->members[x] * cert->members[y], rules_);
      if (prod.is_zero()) continue;
      facts_.push_back({cert->name + "[" + std::to_string(x) + "]*" + cert->name + "[" +
                            std::to_string(y) + "]",
                        std::move(prod), cert, x, y});
    }
  }
}

}  // namespace msym
