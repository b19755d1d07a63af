#include "msym/presentation.hpp"

#include <algorithm>
#include <set>

namespace msym {

std::string_view to_string(PresentationKind k) {
  switch (k) {
    case PresentationKind::Uniform: return "uniform";
    case PresentationKind::NonUniform: return "non-uniform";
    case PresentationKind::Permissible: return "permissible";
    case PresentationKind::BanicaLift: return "banica-lift";
  }
  return "?";
}

std::string_view to_string(VanishingReason r) {
  switch (r) {
    case VanishingReason::EmptyArc: return "empty-arc";
    case VanishingReason::LabelMismatch: return "label-mismatch";
    case VanishingReason::LabelOverflow: return "label-overflow";
    case VanishingReason::WeightMismatch: return "weight-mismatch";
    case VanishingReason::Adjoint: return "adjoint";
  }
  return "?";
}

Presentation::Presentation(PresentationKind kind, AlphabetPtr alphabet)
    : kind_(kind), alphabet_(alphabet), rules_(alphabet) {}

void Presentation::add_vanishing(const VanishingPair& p) {
  if (rules_.extra_pair(p.left, p.right)) return;
  rules_.add_vanishing(p.left, p.right);
  vanishing_.push_back(p);
}

void Presentation::add_label_relation(LinearRelation r) {
  label_relation_ids_.push_back(rules_.linear_relations().size());
  rules_.add_linear_relation(std::move(r));
  rules_.set_label_independence(true);
}

void Presentation::set_substitutions(AlphabetPtr source, std::map<GenId, GenId> table) {
  source_alphabet_ = std::move(source);
  substitutions_ = std::move(table);
}

NCPolynomial Presentation::substitute(const NCPolynomial& source_poly) const {
  NCPolynomial out(alphabet_);
  for (const auto& [w, c] : source_poly.terms()) {
    Word image;
    bool zero = false;
    for (auto g : w) {
      auto it = substitutions_.find(g);
      if (it == substitutions_.end()) {
        zero = true;
        break;
      }
      image.push_back(it->second);
    }
    if (!zero) out.add_term(image, c);
  }
  return out;
}

namespace {

// Adds a direct pair and its reverse; the reverse is tagged Adjoint unless it
// is itself directly implied.
template <class Classify>
void add_with_adjoint(Presentation& p, GenId g, GenId h, VanishingReason reason, Classify&& direct) {
  const auto& rules = p.rules();
  if (!rules.magic_pair(g, h)) p.add_vanishing({g, h, reason});
  if (!rules.magic_pair(h, g) && !rules.extra_pair(h, g)) {
    auto back = direct(h, g);
    p.add_vanishing({h, g, back ? *back : VanishingReason::Adjoint});
  }
}

std::vector<IndexPair> full_index_set(const Multigraph& g) {
  std::vector<IndexPair> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    for (Label s = 1; s <= g.max_multiplicity(); ++s) out.push_back({v, s});
  return out;
}

void add_column_partners(RuleSet& rules, const Multigraph& g) {
  const auto& a = *rules.alphabet();
  for (const auto& e : g.edges()) {
    auto ci = a.index_of({e.src, e.label});
    auto cj = a.index_of({e.dst, e.label});
    if (!ci || !cj || *ci == *cj) continue;
    rules.add_column_partner(*ci, *cj);
    rules.add_column_partner(*cj, *ci);
  }
}

// Sub-row sum relations sum_r q^{ks}_{ir} - sum_r q^{k s0}_{ir} over the
// pairs present in the alphabet.
void add_label_relations(Presentation& p) {
  const auto& a = *p.alphabet();
  const auto nv = a.vertex_names().size();
  std::vector<std::vector<std::size_t>> rows_of(nv), cols_of(nv);
  for (std::size_t x = 0; x < a.index_count(); ++x) {
    rows_of[a.index(x).vertex].push_back(x);
    cols_of[a.index(x).vertex].push_back(x);
  }
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& rows = rows_of[k];
    if (rows.size() < 2) continue;
    for (std::size_t i = 0; i < nv; ++i) {
      if (cols_of[i].empty()) continue;
      NCPolynomial base(p.alphabet());
      for (auto c : cols_of[i]) base.add_term(Word{a.generator(rows[0], c)}, 1);
      for (std::size_t t = 1; t < rows.size(); ++t) {
        NCPolynomial rel(p.alphabet());
        for (auto c : cols_of[i]) rel.add_term(Word{a.generator(rows[t], c)}, 1);
        rel -= base;
        p.add_label_relation({"label-indep " + a.index_name(rows[t]) + "|" + a.vertex_names()[i],
                              std::move(rel)});
      }
    }
  }
}

}  // namespace

std::optional<VanishingReason> classify_edge_pair(const Multigraph& g, const Alphabet& a, GenId left,
                                                  GenId right) {
  const auto& ks = a.index(a.row_of(left));
  const auto& ir = a.index(a.col_of(left));
  const auto& ls = a.index(a.row_of(right));
  const auto& jr = a.index(a.col_of(right));
  if (ir.label != jr.label) return std::nullopt;
  if (ir.label > g.multiplicity(ir.vertex, jr.vertex)) return std::nullopt;  // (i,j)r is not an edge
  const auto m = g.multiplicity(ks.vertex, ls.vertex);
  if (m == 0) return VanishingReason::EmptyArc;
  if (ks.label != ls.label) return VanishingReason::LabelMismatch;
  if (ks.label > m) return VanishingReason::LabelOverflow;
  return std::nullopt;
}

PresentationPtr build_presentation(const Multigraph& g, bool include_label_independence) {
  auto alphabet = std::make_shared<const Alphabet>(g.vertices(), full_index_set(g));
  auto p = std::make_shared<Presentation>(is_uniform(g) ? PresentationKind::Uniform
                                                          : PresentationKind::NonUniform,
                                          alphabet);
  const auto& a = *alphabet;
  const auto n = a.index_count();
  auto direct = [&](GenId x, GenId y) { return classify_edge_pair(g, a, x, y); };
  for (const auto& e : g.edges()) {
    const auto ci = *a.index_of({e.src, e.label});
    const auto cj = *a.index_of({e.dst, e.label});
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const GenId left = a.generator(x, ci), right = a.generator(y, cj);
        if (auto reason = direct(left, right)) add_with_adjoint(*p, left, right, *reason, direct);
      }
  }
  add_column_partners(p->rules(), g);
  if (include_label_independence) add_label_relations(*p);
  return p;
}

VertexMatrix vertex_matrix(const Presentation& p) {
  const auto& a = *p.alphabet();
  const auto nv = a.vertex_names().size();
  VertexMatrix m;
  m.size = nv;
  m.entries.assign(nv * nv, NCPolynomial(p.alphabet()));
  std::vector<std::optional<std::size_t>> first_row(nv);
  for (std::size_t x = 0; x < a.index_count(); ++x) {
    auto& f = first_row[a.index(x).vertex];
    if (!f) f = x;
  }
  for (std::size_t k = 0; k < nv; ++k) {
    if (!first_row[k]) continue;
    for (std::size_t c = 0; c < a.index_count(); ++c)
      m.entries[k * nv + a.index(c).vertex].add_term(Word{a.generator(*first_row[k], c)}, 1);
  }
  return m;
}

EdgeMatrix edge_matrix(const Presentation& p, const Multigraph& g) {
  EdgeMatrix m;
  m.edges = g.edges();
  const auto ne = m.edges.size();
  m.entries.assign(ne * ne, NCPolynomial(p.alphabet()));
  const bool lift = p.kind() == PresentationKind::BanicaLift;
  const auto& a = *p.alphabet();
  for (std::size_t s = 0; s < ne; ++s)
    for (std::size_t t = 0; t < ne; ++t) {
      const auto& sg = m.edges[s];
      const auto& tg = m.edges[t];
      if (lift) {
        if (sg.label != tg.label) continue;
        auto x = a.generator(IndexPair{sg.src, 1}, IndexPair{tg.src, 1});
        auto y = a.generator(IndexPair{sg.dst, 1}, IndexPair{tg.dst, 1});
        if (x && y) m.entries[s * ne + t].add_term(Word{*x, *y}, 1);
        continue;
      }
      auto x = a.generator(IndexPair{sg.src, sg.label}, IndexPair{tg.src, tg.label});
      auto y = a.generator(IndexPair{sg.dst, sg.label}, IndexPair{tg.dst, tg.label});
      if (x && y) m.entries[s * ne + t].add_term(Word{*x, *y}, 1);
    }
  return m;
}

// ---------------------------------------------------------------- tensors

void TensorPolynomial::add_term(const Word& left, const Word& right, const Rational& c) {
  if (c == Rational(0)) return;
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

TensorPolynomial& TensorPolynomial::operator+=(const TensorPolynomial& o) {
  if (!ambient_) ambient_ = o.ambient_;
  else if (o.ambient_ && !(*ambient_ == *o.ambient_)) throw Error(ErrorKind::MixedAmbient, "tensor sum");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPolynomial& TensorPolynomial::operator-=(const TensorPolynomial& o) {
  if (!ambient_) ambient_ = o.ambient_;
  else if (o.ambient_ && !(*ambient_ == *o.ambient_)) throw Error(ErrorKind::MixedAmbient, "tensor difference");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b) {
  if (a.ambient_ && b.ambient_ && !(*a.ambient_ == *b.ambient_))
    throw Error(ErrorKind::MixedAmbient, "tensor product");
  TensorPolynomial out(a.ambient_ ? a.ambient_ : b.ambient_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      Word l = ka.first, r = ka.second;
      l.insert(l.end(), kb.first.begin(), kb.first.end());
      r.insert(r.end(), kb.second.begin(), kb.second.end());
      out.add_term(l, r, ca * cb);
    }
  return out;
}

TensorPolynomial TensorPolynomial::reduce_legs(const RuleSet& rules) const {
  TensorPolynomial out(ambient_);
  for (const auto& [k, c] : terms_) {
    auto l = reduce_word(k.first, rules);
    if (!l) continue;
    auto r = reduce_word(k.second, rules);
    if (!r) continue;
    out.add_term(*l, *r, c);
  }
  return out;
}

std::string TensorPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  auto word_str = [&](const Word& w) {
    if (w.empty()) return std::string("1");
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += '*';
      s += ambient_ ? ambient_->generator_name(w[i]) : std::to_string(w[i]);
    }
    return s;
  };
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += msym::to_string(c) + "*(" + word_str(k.first) + " (x) " + word_str(k.second) + ")";
  }
  return out;
}

TensorPolynomial tensor(const NCPolynomial& left, const NCPolynomial& right) {
  TensorPolynomial out(left.ambient() ? left.ambient() : right.ambient());
  for (const auto& [wl, cl] : left.terms())
    for (const auto& [wr, cr] : right.terms()) out.add_term(wl, wr, cl * cr);
  return out;
}

TensorPolynomial coproduct(GenId gen, const Presentation& p) {
  const auto& a = *p.alphabet();
  const auto x = a.row_of(gen), y = a.col_of(gen);
  TensorPolynomial out(p.alphabet());
  for (std::size_t z = 0; z < a.index_count(); ++z)
    out.add_term(Word{a.generator(x, z)}, Word{a.generator(z, y)}, 1);
  return out;
}

TensorPolynomial coproduct(const NCPolynomial& poly, const Presentation& p) {
  TensorPolynomial out(p.alphabet());
  std::map<GenId, TensorPolynomial> cache;
  for (const auto& [w, c] : poly.terms()) {
    TensorPolynomial acc(p.alphabet());
    acc.add_term(Word{}, Word{}, c);
    for (auto g : w) {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, coproduct(g, p).reduce_legs(p.rules())).first;
      acc = (acc * it->second).reduce_legs(p.rules());
    }
    out += acc;
  }
  return out;
}

// ------------------------------------------------------------ sub-presentations

PermissibleSubpresentation permissible_subpresentation(const Presentation& q, const Multigraph& g,
                                                       const ProverOptions& options) {
  const auto& qa = *q.alphabet();
  const auto pairs = permissible_pairs(g);
  auto alphabet = std::make_shared<const Alphabet>(qa.vertex_names(), pairs, qa.symbol(), qa.show_labels());
  auto sub = std::make_shared<Presentation>(PresentationKind::Permissible, alphabet);
  const auto& a = *alphabet;

  // Map sub-alphabet generators to source generators.
  std::vector<std::size_t> to_source(a.index_count());
  for (std::size_t x = 0; x < a.index_count(); ++x) to_source[x] = *qa.index_of(a.index(x));
  std::vector<std::optional<std::size_t>> from_source(qa.index_count());
  for (std::size_t x = 0; x < a.index_count(); ++x) from_source[to_source[x]] = x;

  PermissibleSubpresentation out;
  for (std::size_t x = 0; x < a.index_count(); ++x)
    for (std::size_t y = 0; y < a.index_count(); ++y) out.generators.push_back(qa.generator(to_source[x], to_source[y]));
  std::sort(out.generators.begin(), out.generators.end());

  auto map_gen = [&](GenId s) -> std::optional<GenId> {
    auto r = from_source[qa.row_of(s)], c = from_source[qa.col_of(s)];
    if (!r || !c) return std::nullopt;
    return a.generator(*r, *c);
  };
  for (const auto& vp : q.vanishing()) {
    auto l = map_gen(vp.left), r = map_gen(vp.right);
    if (l && r && !sub->rules().magic_pair(*l, *r)) sub->add_vanishing({*l, *r, vp.reason});
  }
  add_column_partners(sub->rules(), g);
  if (q.includes_label_independence()) add_label_relations(*sub);
  sub->rules().set_label_independence(q.includes_label_independence());

  // Closure under the coproduct: for retained q^x_y, every term
  // q^x_z (x) q^z_y with z outside the index set must vanish. The right leg
  // does not depend on x, so each (z, y) is proved once.
  Prover prover(q.rules(), options);
  std::map<std::pair<std::size_t, std::size_t>, ProofOutcome> leg_proofs;
  for (std::size_t y = 0; y < a.index_count(); ++y) {
    const auto ys = to_source[y];
    for (std::size_t z = 0; z < qa.index_count(); ++z) {
      if (from_source[z]) continue;
      auto leg = NCPolynomial::generator(q.alphabet(), qa.generator(z, ys));
      auto outcome = prover.prove_zero(leg);
      if (!outcome.proved()) out.closed = false;
      leg_proofs.emplace(std::pair{z, ys}, std::move(outcome));
    }
  }
  for (std::size_t x = 0; x < a.index_count(); ++x)
    for (std::size_t y = 0; y < a.index_count(); ++y) {
      const auto xs = to_source[x], ys = to_source[y];
      for (std::size_t z = 0; z < qa.index_count(); ++z) {
        if (from_source[z]) continue;
        ClosureTerm t;
        t.generator = qa.generator(xs, ys);
        t.dropped_index = z;
        t.vanishing_leg = NCPolynomial::generator(q.alphabet(), qa.generator(z, ys));
        t.proof = leg_proofs.at({z, ys});
        out.closure.push_back(std::move(t));
      }
    }

  // Alternative description: generated by edge products q^{ks}_{ir} q^{ls}_{jr}.
  std::set<Word, WordOrder> products;
  const auto em = edge_matrix(*sub, g);
  for (const auto& entry : em.entries) {
    auto r = reduce(entry, sub->rules());
    for (const auto& [w, c] : r.terms()) products.insert(w);
  }
  out.edge_product_generators = products.size();
  out.presentation = std::move(sub);
  return out;
}

PresentationPtr banica_lift(const Multigraph& g) {
  std::vector<IndexPair> idx;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) idx.push_back({v, 1});
  auto alphabet = std::make_shared<const Alphabet>(g.vertices(), idx, "u", false);
  auto p = std::make_shared<Presentation>(PresentationKind::BanicaLift, alphabet);
  const auto& a = *alphabet;
  const auto n = g.vertex_count();

  auto direct = [&](GenId x, GenId y) -> std::optional<VanishingReason> {
    auto k = a.row_of(x), i = a.col_of(x), l = a.row_of(y), j = a.col_of(y);
    if (g.multiplicity(k, l) != g.multiplicity(i, j)) return VanishingReason::WeightMismatch;
    return std::nullopt;
  };
  for (std::size_t x = 0; x < a.generator_count(); ++x)
    for (std::size_t y = 0; y < a.generator_count(); ++y)
      if (auto r = direct(x, y)) add_with_adjoint(*p, x, y, *r, direct);

  // U W = W U for the weighted adjacency W.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      NCPolynomial rel(alphabet);
      for (std::size_t j = 0; j < n; ++j) {
        if (auto w = g.multiplicity(j, i)) rel.add_term(Word{a.generator(k, j)}, static_cast<std::int64_t>(w));
        if (auto w = g.multiplicity(k, j)) rel.add_term(Word{a.generator(j, i)}, -static_cast<std::int64_t>(w));
      }
      if (!rel.is_zero())
        p->rules().add_linear_relation({"commute " + a.vertex_names()[k] + "|" + a.vertex_names()[i], std::move(rel)});
    }

  auto source = build_presentation(g, false)->alphabet();
  std::map<GenId, GenId> table;
  for (std::size_t x = 0; x < source->index_count(); ++x)
    for (std::size_t y = 0; y < source->index_count(); ++y) {
      const auto& ks = source->index(x);
      const auto& ir = source->index(y);
      if (ks.label == ir.label) table.emplace(source->generator(x, y), a.generator(ks.vertex, ir.vertex));
    }
  p->set_substitutions(std::move(source), std::move(table));
  return p;
}

}  // namespace msym
