#include "msym/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace msym {

std::string_view to_string(ObligationStatus s) {
  switch (s) {
    case ObligationStatus::Proved: return "Proved";
    case ObligationStatus::DischargedNumerically: return "DischargedNumerically";
    case ObligationStatus::Undecided: return "Undecided";
  }
  return "?";
}

int Obligation::depth() const {
  int d = proof.depth_used;
  for (const auto& [w, o] : components) d = std::max(d, o.depth_used);
  return d;
}

std::size_t Obligation::trace_length() const {
  auto n = proof.trace.size();
  for (const auto& [w, o] : components) n += o.trace.size();
  return n;
}

std::size_t SuiteReport::count(ObligationStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(obligations.begin(), obligations.end(), [&](const Obligation& o) { return o.status == s; }));
}

const Obligation* SuiteReport::find(const std::string& id) const {
  for (const auto& o : obligations)
    if (o.id == id) return &o;
  return nullptr;
}

namespace {

struct Pending {
  std::string description;
  NCPolynomial poly;
  std::optional<TensorPolynomial> tensor;
};

std::string q_name(const VertexMatrix&, const Alphabet& a, std::size_t k, std::size_t i) {
  return "Q[" + a.vertex_names()[k] + "|" + a.vertex_names()[i] + "]";
}

std::string u_name(const Multigraph& g, const EdgeMatrix& em, std::size_t s, std::size_t t) {
  return "u[" + g.edge_name(em.edges[s]) + "|" + g.edge_name(em.edges[t]) + "]";
}

// Shared certificates: columns of the vertex matrix form partitions of unity
// once label independence makes their sums collapse.
std::vector<std::shared_ptr<const PartitionCertificate>> vertex_partitions(const Presentation& p,
                                                                           const ProverOptions& options) {
  std::vector<std::shared_ptr<const PartitionCertificate>> out;
  if (p.kind() == PresentationKind::BanicaLift) return out;
  const auto vm = vertex_matrix(p);
  const auto& a = *p.alphabet();
  if (a.index_count() == vm.size) return out;  // N = 1: columns are already magic columns
  Prover prover(p.rules(), options);
  for (std::size_t i = 0; i < vm.size; ++i) {
    std::vector<NCPolynomial> members;
    for (std::size_t k = 0; k < vm.size; ++k) members.push_back(vm.at(k, i));
    if (auto cert = prover.certify_partition("vertex column " + a.vertex_names()[i], std::move(members)))
      out.push_back(std::move(cert));
  }
  return out;
}

void prove_tensor(Obligation& o, Prover& prover, const RuleSet& rules) {
  o.proof = {};
  ProofStep step;
  step.kind = StepKind::Reduce;
  o.proof.trace.push_back(step);
  const auto reduced = o.tensor->reduce_legs(rules);
  if (reduced.is_zero()) {
    o.proof.status = ProofStatus::Proved;
    o.status = ObligationStatus::Proved;
    return;
  }
  std::map<Word, NCPolynomial, WordOrder> by_left;
  for (const auto& [key, c] : reduced.terms()) {
    auto [it, inserted] = by_left.try_emplace(key.first, NCPolynomial(rules.alphabet()));
    it->second.add_term(key.second, c);
  }
  bool all = true;
  for (const auto& [w, right] : by_left) {
    auto outcome = prover.prove_zero(right);
    all = all && outcome.proved();
    o.components.emplace_back(w, std::move(outcome));
  }
  o.proof.status = all ? ProofStatus::Proved : ProofStatus::Undecided;
  o.status = all ? ObligationStatus::Proved : ObligationStatus::Undecided;
}

SuiteReport run_suite(std::string name, PresentationPtr p, std::vector<Pending> pending,
                      const VerifyOptions& options, std::vector<std::string> notes = {}) {
  SuiteReport report;
  report.suite = std::move(name);
  report.notes = std::move(notes);
  report.presentation = p;

  const auto certs = vertex_partitions(*p, options.prover);
  {
    Prover prover(p->rules(), options.prover);
    for (const auto& c : certs) prover.add_partition(c);
    report.facts = std::make_shared<const std::vector<ZeroFact>>(prover.facts());
  }

  report.obligations.resize(pending.size());
  for (std::size_t k = 0; k < pending.size(); ++k) {
    auto& o = report.obligations[k];
    o.id = report.suite + "/" + std::to_string(k + 1);
    o.description = std::move(pending[k].description);
    o.poly = std::move(pending[k].poly);
    o.tensor = std::move(pending[k].tensor);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      Prover prover(p->rules(), options.prover);
      for (const auto& c : certs) prover.add_partition(c);
      for (std::size_t k; (k = next.fetch_add(1)) < report.obligations.size();) {
        auto& o = report.obligations[k];
        if (o.tensor) {
          prove_tensor(o, prover, p->rules());
        } else {
          o.proof = prover.prove_zero(o.poly);
          o.status = o.proof.proved() ? ObligationStatus::Proved : ObligationStatus::Undecided;
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, report.obligations.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return report;
}

NCPolynomial delta(const AlphabetPtr& a, bool on) { return on ? NCPolynomial::unit(a) : NCPolynomial(a); }

}  // namespace

SuiteReport verify_vertex_magic(PresentationPtr p, const VerifyOptions& options) {
  const auto& a = *p->alphabet();
  const auto vm = vertex_matrix(*p);
  const auto n = vm.size;
  std::vector<Pending> ob;
  auto Q = [&](std::size_t k, std::size_t i) { return vm.at(k, i); };
  auto name = [&](std::size_t k, std::size_t i) { return q_name(vm, a, k, i); };
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) ob.push_back({"self-adjoint " + name(k, i), adjoint(Q(k, i)) - Q(k, i), {}});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        ob.push_back({name(k, i) + "*" + name(k, i2) + (i == i2 ? " = " + name(k, i) : " = 0"),
                      Q(k, i) * Q(k, i2) - (i == i2 ? Q(k, i) : NCPolynomial(p->alphabet())), {}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t k2 = 0; k2 < n; ++k2)
        ob.push_back({name(k, i) + "*" + name(k2, i) + (k == k2 ? " = " + name(k, i) : " = 0"),
                      Q(k, i) * Q(k2, i) - (k == k2 ? Q(k, i) : NCPolynomial(p->alphabet())), {}});
  for (std::size_t k = 0; k < n; ++k) {
    NCPolynomial s(p->alphabet());
    for (std::size_t i = 0; i < n; ++i) s += Q(k, i);
    ob.push_back({"row sum of Q at " + a.vertex_names()[k] + " = 1", s - NCPolynomial::unit(p->alphabet()), {}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    NCPolynomial s(p->alphabet());
    for (std::size_t k = 0; k < n; ++k) s += Q(k, i);
    ob.push_back({"column sum of Q at " + a.vertex_names()[i] + " = 1", s - NCPolynomial::unit(p->alphabet()), {}});
  }
  // Label independence of the entries: sum_r q[k,s|i,r] for every row label s.
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t x = 0; x < a.index_count(); ++x) rows[a.index(x).vertex].push_back(x);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 1; t < rows[k].size(); ++t)
      for (std::size_t i = 0; i < n; ++i) {
        NCPolynomial s(p->alphabet());
        for (std::size_t c = 0; c < a.index_count(); ++c)
          if (a.index(c).vertex == i) s.add_term(Word{a.generator(rows[k][t], c)}, 1);
        ob.push_back({"label independence " + a.index_name(rows[k][t]) + " -> " + name(k, i), s - Q(k, i), {}});
      }
  std::vector<std::string> notes;
  if (!p->includes_label_independence() && a.index_count() > n)
    notes.push_back("label independence not included: its instances are explicit obligations here");
  return run_suite("vertex_magic", p, std::move(ob), options, std::move(notes));
}

SuiteReport verify_bimodule(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  const auto& a = *p->alphabet();
  const auto vm = vertex_matrix(*p);
  const auto em = edge_matrix(*p, g);
  std::vector<Pending> ob;
  for (std::size_t s = 0; s < em.size(); ++s)
    for (std::size_t t = 0; t < em.size(); ++t) {
      const auto& sg = em.edges[s];
      const auto& tg = em.edges[t];
      const auto& u = em.at(s, t);
      for (VertexIndex k = 0; k < vm.size; ++k) {
        const bool on = tg.src == k;
        ob.push_back({q_name(vm, a, sg.src, k) + "*" + u_name(g, em, s, t) + (on ? " = u" : " = 0"),
                      vm.at(sg.src, k) * u - (on ? u : NCPolynomial(p->alphabet())), {}});
      }
      for (VertexIndex l = 0; l < vm.size; ++l) {
        const bool on = tg.dst == l;
        ob.push_back({u_name(g, em, s, t) + "*" + q_name(vm, a, sg.dst, l) + (on ? " = u" : " = 0"),
                      u * vm.at(sg.dst, l) - (on ? u : NCPolynomial(p->alphabet())), {}});
      }
    }
  return run_suite("bimodule", p, std::move(ob), options);
}

SuiteReport verify_coproduct_identity(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  const auto em = edge_matrix(*p, g);
  std::vector<Pending> ob;
  for (std::size_t s = 0; s < em.size(); ++s)
    for (std::size_t t = 0; t < em.size(); ++t) {
      auto lhs = coproduct(em.at(s, t), *p);
      TensorPolynomial rhs(p->alphabet());
      for (std::size_t k = 0; k < em.size(); ++k) rhs += tensor(em.at(s, k), em.at(k, t));
      lhs -= rhs;
      ob.push_back({"Delta(" + u_name(g, em, s, t) + ") = sum u (x) u", NCPolynomial(p->alphabet()), std::move(lhs)});
    }
  return run_suite("coproduct_identity", p, std::move(ob), options);
}

SuiteReport verify_restricted_orthogonality(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  const auto em = edge_matrix(*p, g);
  std::vector<Pending> ob;
  for (std::size_t s = 0; s < em.size(); ++s)
    for (std::size_t s2 = 0; s2 < em.size(); ++s2) {
      const auto& a = em.edges[s];
      const auto& b = em.edges[s2];
      if (a.src != b.src || a.dst != b.dst || a.label == b.label) continue;
      for (std::size_t t = 0; t < em.size(); ++t) {
        ob.push_back({u_name(g, em, s, t) + "*" + u_name(g, em, s2, t) + "^* = 0",
                      em.at(s, t) * adjoint(em.at(s2, t)), {}});
        ob.push_back({u_name(g, em, s, t) + "^*" + "*" + u_name(g, em, s2, t) + " = 0",
                      adjoint(em.at(s, t)) * em.at(s2, t), {}});
      }
    }
  std::vector<std::string> notes;
  if (ob.empty()) notes.push_back("no parallel edges: suite is vacuous");
  return run_suite("restricted_orthogonality", p, std::move(ob), options, std::move(notes));
}

SuiteReport verify_xi_fixed(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  const auto em = edge_matrix(*p, g);
  std::vector<Pending> ob;
  for (std::size_t t = 0; t < em.size(); ++t) {
    NCPolynomial s(p->alphabet());
    for (std::size_t k = 0; k < em.size(); ++k) s += em.at(k, t);
    ob.push_back({"sum over sigma of u[sigma|" + g.edge_name(em.edges[t]) + "] = 1",
                  s - NCPolynomial::unit(p->alphabet()), {}});
  }
  return run_suite("xi_fixed", p, std::move(ob), options,
                   {"xi is read on the edge space: every column of the edge matrix sums to 1"});
}

SuiteReport verify_biunitarity(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  const auto em = edge_matrix(*p, g);
  const auto ne = em.size();
  const auto& A = p->alphabet();
  std::vector<Pending> ob;
  for (std::size_t x = 0; x < ne; ++x)
    for (std::size_t y = 0; y < ne; ++y) {
      NCPolynomial f1(A), f2(A), f3(A), f4(A);
      for (std::size_t k = 0; k < ne; ++k) {
        f1 += em.at(x, k) * adjoint(em.at(y, k));
        f2 += adjoint(em.at(k, x)) * em.at(k, y);
        f3 += adjoint(em.at(x, k)) * em.at(y, k);
        f4 += em.at(k, x) * adjoint(em.at(k, y));
      }
      const auto d = delta(A, x == y);
      const auto tag = "(" + g.edge_name(em.edges[x]) + "," + g.edge_name(em.edges[y]) + ")" + (x == y ? " = 1" : " = 0");
      ob.push_back({"UU* " + tag, f1 - d, {}});
      ob.push_back({"U*U " + tag, f2 - d, {}});
      ob.push_back({"conj(U) conj(U)* " + tag, f3 - d, {}});
      ob.push_back({"conj(U)* conj(U) " + tag, f4 - d, {}});
    }
  auto report = run_suite("biunitarity", p, std::move(ob), options);
  if (report.all_proved()) return report;

  // Numeric discharge of whatever the search left open.
  std::vector<Character> chars;
  std::string char_note;
  try {
    chars = enumerate_characters(*p, options.characters);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SearchBudgetExceeded) throw;
    char_note = e.what();
  }
  std::vector<MatrixModel> models = options.models;
  try {
    models.push_back(pauli_witness(g, 0.7853981633974483));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedUnderlyingGraph) throw;
  }
  std::vector<const MatrixModel*> usable;
  for (const auto& m : models)
    if (m.alphabet && *m.alphabet == *A && check_relations(m, *p, options.tolerance / 10).pass) usable.push_back(&m);

  for (auto& o : report.obligations) {
    if (o.status != ObligationStatus::Undecided) continue;
    if (chars.empty()) {
      o.discharge = char_note.empty() ? "no characters available" : char_note;
      continue;
    }
    bool ok = true;
    for (const auto& c : chars)
      if (evaluate(o.poly, c) != Rational(0)) {
        ok = false;
        o.discharge = "nonzero under character " + cycle_notation(c, *A);
        break;
      }
    double worst = 0;
    for (const auto* m : usable) {
      if (!ok) break;
      worst = std::max(worst, norm(evaluate(o.poly, *m)));
    }
    if (ok && worst > options.tolerance) {
      ok = false;
      o.discharge = "deviation " + std::to_string(worst) + " in a matrix model";
    }
    if (ok) {
      o.status = ObligationStatus::DischargedNumerically;
      std::ostringstream os;
      os << "exact zero in " << chars.size() << " characters";
      if (!usable.empty()) os << "; <= tolerance in " << usable.size() << " matrix models";
      o.discharge = os.str();
    }
  }
  std::ostringstream os;
  os << chars.size() << " characters and " << usable.size() << " further matrix models used for numeric discharge";
  report.notes.push_back(os.str());
  return report;
}

SuiteReport verify_permissible_preservation(PresentationPtr p, const Multigraph& g, const VerifyOptions& options) {
  std::vector<Pending> ob;
  std::vector<std::string> notes;
  const auto& a = *p->alphabet();
  if (is_uniform(g)) {
    notes.push_back("uniform graph: suite is vacuous");
  } else {
    const auto perm = permissible_pairs(g);
    auto permissible = [&](const IndexPair& x) { return std::binary_search(perm.begin(), perm.end(), x); };
    for (std::size_t c = 0; c < a.index_count(); ++c) {
      if (!permissible(a.index(c))) continue;
      for (std::size_t r = 0; r < a.index_count(); ++r) {
        if (permissible(a.index(r))) continue;
        const auto gen = a.generator(r, c);
        ob.push_back({a.generator_name(gen) + " = 0", NCPolynomial::generator(p->alphabet(), gen), {}});
      }
    }
  }
  return run_suite("permissible_preservation", p, std::move(ob), options, std::move(notes));
}

SuiteReport verify_banica_lift_membership(const Multigraph& g, const VerifyOptions& options) {
  const auto lift = banica_lift(g);
  const auto q = build_presentation(g, true);
  const auto& qa = *q->alphabet();
  std::vector<Pending> ob;
  auto push = [&](std::string what, const NCPolynomial& rel) {
    ob.push_back({"image of " + what, lift->substitute(rel), {}});
  };
  for (const auto& v : q->vanishing())
    push(qa.generator_name(v.left) + "*" + qa.generator_name(v.right) + " = 0 [" + std::string(to_string(v.reason)) +
             "]",
         NCPolynomial::monomial(q->alphabet(), Word{v.left, v.right}));
  for (const auto& r : q->rules().linear_relations()) push(r.name, r.poly);
  // Magic relations whose image is not already zero by a Kronecker delta.
  const auto& table = lift->substitutions();
  std::size_t skipped = 0;
  const auto n = qa.index_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto g1 = qa.generator(x, y);
      if (!table.count(g1)) {
        skipped += 2 * (n - 1) + 1;
        continue;
      }
      const auto one = NCPolynomial::generator(q->alphabet(), g1);
      push(qa.generator_name(g1) + " idempotent", one * one - one);
      for (std::size_t z = 0; z < n; ++z) {
        for (const auto g2 : {qa.generator(x, z), qa.generator(z, y)}) {
          if (g2 == g1) continue;
          if (!table.count(g2)) {
            ++skipped;
            continue;
          }
          push(qa.generator_name(g1) + "*" + qa.generator_name(g2) + " = 0",
               NCPolynomial::monomial(q->alphabet(), Word{g1, g2}));
        }
      }
    }
  std::vector<std::string> notes{"relations are pushed through q[k,s|i,r] -> delta(s,r) u[k|i] and checked in the lift",
                                 std::to_string(skipped) + " magic instances map to zero through a Kronecker delta"};
  return run_suite("banica_lift_membership", lift, std::move(ob), options, std::move(notes));
}

std::vector<SuiteReport> verify_all(const Multigraph& g, const VerifyOptions& options) {
  const auto q = build_presentation(g, options.include_label_independence);
  std::vector<SuiteReport> out;
  out.push_back(verify_vertex_magic(q, options));
  out.push_back(verify_bimodule(q, g, options));
  out.push_back(verify_coproduct_identity(q, g, options));
  out.push_back(verify_restricted_orthogonality(q, g, options));
  out.push_back(verify_xi_fixed(q, g, options));
  out.push_back(verify_biunitarity(q, g, options));
  out.push_back(verify_permissible_preservation(q, g, options));
  out.push_back(verify_banica_lift_membership(g, options));
  return out;
}

bool replay_obligation(const Obligation& o, const SuiteReport& report) {
  if (o.status != ObligationStatus::Proved) return false;
  const auto& rules = report.presentation->rules();
  const auto& facts = *report.facts;
  if (!o.tensor) return replay(o.poly, o.proof, rules, facts);
  const auto reduced = o.tensor->reduce_legs(rules);
  std::map<Word, NCPolynomial, WordOrder> by_left;
  for (const auto& [key, c] : reduced.terms()) {
    auto [it, inserted] = by_left.try_emplace(key.first, NCPolynomial(rules.alphabet()));
    it->second.add_term(key.second, c);
  }
  if (by_left.size() != o.components.size()) return false;
  std::size_t k = 0;
  for (const auto& [w, right] : by_left) {
    const auto& [cw, proof] = o.components[k++];
    if (!(cw == w) || !replay(right, proof, rules, facts)) return false;
  }
  return true;
}

Rational evaluate(const Obligation& o, const Character& c) {
  if (!o.tensor) return evaluate(o.poly, c);
  const auto& a = *o.tensor->ambient();
  Rational total = 0;
  for (const auto& [key, coef] : o.tensor->terms()) {
    bool one = true;
    for (const auto* w : {&key.first, &key.second})
      for (auto g : *w) one = one && c.value(a, g);
    if (one) total += coef;
  }
  return total;
}

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json obs = nlohmann::ordered_json::array();
    for (const auto& o : r.obligations) {
      nlohmann::ordered_json j;
      j["id"] = o.id;
      j["description"] = o.description;
      j["status"] = to_string(o.status);
      j["depth"] = o.depth();
      j["trace_length"] = o.trace_length();
      if (!o.discharge.empty()) j["discharge"] = o.discharge;
      if (o.status == ObligationStatus::Undecided && !o.tensor) j["residual"] = o.proof.residual.to_string();
      obs.push_back(std::move(j));
    }
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["notes"] = r.notes;
    s["summary"] = {{"obligations", r.obligations.size()},
                    {"proved", r.count(ObligationStatus::Proved)},
                    {"discharged_numerically", r.count(ObligationStatus::DischargedNumerically)},
                    {"undecided", r.count(ObligationStatus::Undecided)}};
    s["obligations"] = std::move(obs);
    out.push_back(std::move(s));
  }
  return out.dump(2);
}

std::string reports_to_text(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-26s %6s %7s %10s %9s\n", "suite", "total", "proved", "discharged", "undecided");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-26s %6zu %7zu %10zu %9zu\n", r.suite.c_str(), r.obligations.size(),
                  r.count(ObligationStatus::Proved), r.count(ObligationStatus::DischargedNumerically),
                  r.count(ObligationStatus::Undecided));
    os << line;
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
    for (const auto& o : r.obligations)
      if (o.status == ObligationStatus::Undecided) os << "    undecided " << o.id << ": " << o.description << "\n";
  }
  return os.str();
}

std::optional<std::string> explain(const std::vector<SuiteReport>& reports, const std::string& id) {
  for (const auto& r : reports) {
    const auto* o = r.find(id);
    if (!o) continue;
    const auto& rules = r.presentation->rules();
    const auto& facts = *r.facts;
    std::ostringstream os;
    os << o->id << ": " << o->description << "\nstatus: " << to_string(o->status) << "\n";
    if (!o->discharge.empty()) os << "discharge: " << o->discharge << "\n";
    auto walk = [&](NCPolynomial p, const ProofOutcome& proof) {
      os << "  start: " << p.to_string() << "\n";
      for (const auto& step : proof.trace) {
        if (!apply_step(p, step, rules, facts)) {
          os << "  step failed: " << describe(step, rules, facts) << "\n";
          return;
        }
        os << "  " << describe(step, rules, facts) << "\n    -> " << p.to_string() << "\n";
      }
    };
    if (o->tensor) {
      os << "tensor: " << o->tensor->to_string() << "\n";
      os << "leg-wise reduction: " << o->tensor->reduce_legs(rules).to_string() << "\n";
      for (const auto& [w, proof] : o->components) {
        NCPolynomial right(rules.alphabet());
        for (const auto& [key, c] : o->tensor->reduce_legs(rules).terms())
          if (key.first == w) right.add_term(key.second, c);
        os << "component at left word " << NCPolynomial::monomial(rules.alphabet(), w).to_string() << ":\n";
        walk(right, proof);
      }
    } else {
      walk(o->poly, o->proof);
      if (o->status == ObligationStatus::Undecided) os << "residual: " << o->proof.residual.to_string() << "\n";
    }
    return os.str();
  }
  return std::nullopt;
}

}  // namespace msym
