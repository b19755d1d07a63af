#include "msym/characters.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace msym {

namespace {

using Mask = std::uint64_t;
constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};

Mask bit(std::size_t k) { return Mask{1} << k; }

// Degree-one relation sum c_g g + constant = 0 with integer coefficients.
struct LinearConstraint {
  std::int64_t constant = 0;
  std::vector<std::pair<GenId, std::int64_t>> terms;
};

struct Problem {
  const Presentation& p;
  const Alphabet& a;
  std::size_t n = 0;
  Mask all = 0;
  std::vector<Mask> allowed;   // per column: rows whose generator is not zero
  std::vector<Mask> conflict;  // [(x*n + y)*n + y'] rows x' excluded in column y'
  std::vector<LinearConstraint> linear;
  std::vector<std::vector<std::size_t>> by_col, by_row;  // constraint ids touching col / row

  explicit Problem(const Presentation& pres) : p(pres), a(*pres.alphabet()), n(a.index_count()) {
    if (n > 64) throw Error(ErrorKind::InvalidArgument, "character search supports at most 64 index pairs");
    all = n == 64 ? ~Mask{0} : bit(n) - 1;
    const auto& rules = p.rules();
    allowed.assign(n, all);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const auto g = a.generator(x, y);
        if (rules.extra_pair(g, g)) allowed[y] &= ~bit(x);
      }
    conflict.assign(n * n * n, 0);
    for (const auto& v : p.vanishing()) {
      for (auto [g, h] : {std::pair{v.left, v.right}, std::pair{v.right, v.left}}) {
        const auto x = a.row_of(g), y = a.col_of(g), x2 = a.row_of(h), y2 = a.col_of(h);
        if (y == y2) continue;  // same column: handled by exclusivity (or zero generator)
        conflict[(x * n + y) * n + y2] |= bit(x2);
      }
    }
    by_col.assign(n, {});
    by_row.assign(n, {});
    const auto& rels = rules.linear_relations();
    for (std::size_t r = 2 * n; r < rels.size(); ++r) {
      const auto& poly = rels[r].poly;
      if (poly.max_length() > 1) continue;  // checked post hoc only
      std::int64_t scale = 1;
      for (const auto& [w, c] : poly.terms()) scale = std::lcm(scale, c.denominator());
      LinearConstraint lc;
      for (const auto& [w, c] : poly.terms()) {
        const auto v = c.numerator() * (scale / c.denominator());
        if (w.empty()) lc.constant += v;
        else lc.terms.emplace_back(w[0], v);
      }
      const auto id = linear.size();
      for (const auto& [g, c] : lc.terms) {
        by_col[a.col_of(g)].push_back(id);
        by_row[a.row_of(g)].push_back(id);
      }
      linear.push_back(std::move(lc));
    }
    for (auto* v : {&by_col, &by_row})
      for (auto& ids : *v) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      }
  }
};

struct State {
  std::vector<std::uint32_t> row_of_col;
  std::vector<Mask> domain;
  std::size_t assigned = 0;
};

class Worker {
 public:
  Worker(const Problem& pr, const CharacterOptions& opt, std::atomic<std::uint64_t>& nodes,
         std::atomic<bool>& stop)
      : pr_(pr), opt_(opt), nodes_(nodes), stop_(stop) {}

  std::vector<Character> out;

  std::size_t pick_column(const State& s) const {
    std::size_t best = pr_.n;
    int best_count = 65;
    for (std::size_t y = 0; y < pr_.n; ++y) {
      if (s.row_of_col[y] != kUnassigned) continue;
      if (!opt_.most_constrained_first) return y;
      const int c = std::popcount(s.domain[y]);
      if (c < best_count) best = y, best_count = c;
    }
    return best;
  }

  // Assigns (x, y) with forward checking; returns false on a dead end.
  bool assign(State& s, std::size_t x, std::size_t y) const {
    const auto n = pr_.n;
    s.row_of_col[y] = static_cast<std::uint32_t>(x);
    ++s.assigned;
    const Mask* conf = &pr_.conflict[(x * n + y) * n];
    for (std::size_t y2 = 0; y2 < n; ++y2) {
      if (s.row_of_col[y2] != kUnassigned) continue;
      s.domain[y2] &= ~(bit(x) | conf[y2]);
      if (!s.domain[y2]) return false;
    }
    for (auto id : pr_.by_col[y])
      if (!feasible(s, pr_.linear[id])) return false;
    for (auto id : pr_.by_row[x])
      if (!feasible(s, pr_.linear[id])) return false;
    return true;
  }

  bool feasible(const State& s, const LinearConstraint& lc) const {
    std::int64_t lo = lc.constant, hi = lc.constant;
    for (const auto& [g, c] : lc.terms) {
      const auto x = pr_.a.row_of(g), y = pr_.a.col_of(g);
      int v;
      if (s.row_of_col[y] != kUnassigned) v = s.row_of_col[y] == x ? 1 : 0;
      else v = (s.domain[y] & bit(x)) ? -1 : 0;
      if (v == 1) lo += c, hi += c;
      else if (v == -1) (c < 0 ? lo : hi) += c;
    }
    return lo <= 0 && hi >= 0;
  }

  void search(State& s) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (s.assigned == pr_.n) {
      for (const auto& lc : pr_.linear)
        if (!feasible(s, lc)) return;
      out.push_back({s.row_of_col});
      return;
    }
    const auto y = pick_column(s);
    Mask cand = s.domain[y];
    while (cand) {
      const auto x = static_cast<std::size_t>(std::countr_zero(cand));
      cand &= cand - 1;
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= opt_.node_budget) {
        stop_ = true;
        return;
      }
      State next = s;
      if (assign(next, x, y)) search(next);
      if (stop_.load(std::memory_order_relaxed)) return;
    }
  }

 private:
  const Problem& pr_;
  const CharacterOptions& opt_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& stop_;
};

}  // namespace

Character identity_character(const Alphabet& a) {
  Character c;
  c.row_of_col.resize(a.index_count());
  std::iota(c.row_of_col.begin(), c.row_of_col.end(), 0u);
  return c;
}

std::vector<Character> enumerate_characters(const Presentation& p, const CharacterOptions& options) {
  if (options.node_budget == 0) throw Error(ErrorKind::InvalidArgument, "node budget must be positive");
  const Problem pr(p);
  State root;
  root.row_of_col.assign(pr.n, kUnassigned);
  root.domain = pr.allowed;
  for (auto d : root.domain)
    if (!d) return {};

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  const unsigned workers = std::max(1u, options.workers);

  // Split the first column's candidates round-robin across workers.
  Worker probe(pr, options, nodes, stop);
  const auto y0 = probe.pick_column(root);
  std::vector<std::size_t> firsts;
  for (Mask m = root.domain[y0]; m; m &= m - 1) firsts.push_back(static_cast<std::size_t>(std::countr_zero(m)));

  std::vector<Worker> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(pr, options, nodes, stop);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](unsigned w) {
    try {
      for (std::size_t k = w; k < firsts.size(); k += workers) {
        if (stop) return;
        if (nodes.fetch_add(1) >= options.node_budget) {
          stop = true;
          return;
        }
        State s = root;
        if (pool[w].assign(s, firsts[k], y0)) pool[w].search(s);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<Character> out;
  for (auto& w : pool) out.insert(out.end(), w.out.begin(), w.out.end());
  if (stop)
    throw Error(ErrorKind::SearchBudgetExceeded, "character search exceeded " + std::to_string(options.node_budget) +
                                                     " nodes after " + std::to_string(out.size()) + " characters");
  std::sort(out.begin(), out.end());
  return out;
}

Rational evaluate(const NCPolynomial& poly, const Character& c) {
  Rational total = 0;
  const auto& a = *poly.ambient();
  for (const auto& [w, coef] : poly.terms()) {
    bool one = true;
    for (auto g : w)
      if (!c.value(a, g)) {
        one = false;
        break;
      }
    if (one) total += coef;
  }
  return total;
}

bool satisfies(const Presentation& p, const Character& c) {
  const auto& a = *p.alphabet();
  const auto n = a.index_count();
  if (c.row_of_col.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto x : c.row_of_col) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  std::vector<GenId> ones;
  for (std::size_t y = 0; y < n; ++y) ones.push_back(a.generator(c.row_of_col[y], y));
  for (auto g : ones)
    for (auto h : ones)
      if (p.rules().extra_pair(g, h)) return false;
  for (const auto& r : p.rules().linear_relations())
    if (evaluate(r.poly, c) != Rational(0)) return false;
  return true;
}

std::vector<VertexIndex> vertex_action(const Character& c, const VertexMatrix& vm) {
  std::vector<VertexIndex> map(vm.size);
  std::vector<bool> hit(vm.size, false);
  for (std::size_t i = 0; i < vm.size; ++i) {
    std::optional<std::size_t> image;
    for (std::size_t k = 0; k < vm.size; ++k) {
      const auto v = evaluate(vm.at(k, i), c);
      if (v == Rational(0)) continue;
      if (v != Rational(1) || image) throw Error(ErrorKind::NotAPermutation, "vertex matrix is not a permutation");
      image = k;
    }
    if (!image || hit[*image]) throw Error(ErrorKind::NotAPermutation, "vertex matrix is not a permutation");
    hit[*image] = true;
    map[i] = static_cast<VertexIndex>(*image);
  }
  return map;
}

std::vector<std::size_t> edge_action_of(const Character& c, const EdgeMatrix& em) {
  const auto ne = em.size();
  std::vector<std::size_t> map(ne);
  std::vector<bool> hit(ne, false);
  for (std::size_t t = 0; t < ne; ++t) {
    std::optional<std::size_t> image;
    for (std::size_t s = 0; s < ne; ++s) {
      const auto v = evaluate(em.at(s, t), c);
      if (v == Rational(0)) continue;
      if (v != Rational(1) || image) throw Error(ErrorKind::NotAPermutation, "edge matrix is not a permutation");
      image = s;
    }
    if (!image || hit[*image]) throw Error(ErrorKind::NotAPermutation, "edge matrix is not a permutation");
    hit[*image] = true;
    map[t] = *image;
  }
  return map;
}

Character compose(const Character& a, const Character& b) {
  if (a.row_of_col.size() != b.row_of_col.size()) throw Error(ErrorKind::DimensionMismatch, "character sizes differ");
  Character out;
  out.row_of_col.resize(b.row_of_col.size());
  for (std::size_t y = 0; y < b.row_of_col.size(); ++y) out.row_of_col[y] = a.row_of_col[b.row_of_col[y]];
  return out;
}

std::string cycle_notation(const Character& c, const Alphabet& a) {
  const auto n = c.row_of_col.size();
  std::vector<bool> seen(n, false);
  std::string out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start] || c.row_of_col[start] == start) continue;
    out += '(';
    for (std::size_t y = start; !seen[y]; y = c.row_of_col[y]) {
      seen[y] = true;
      if (y != start) out += ' ';
      out += a.index_name(y);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FaithfulnessReport faithfulness_report(const Presentation& p, const Multigraph& g,
                                       const std::vector<Character>& characters, std::size_t max_listed) {
  const auto vm = vertex_matrix(p);
  const auto em = edge_matrix(p, g);
  FaithfulnessReport r;
  r.character_count = characters.size();
  std::map<std::pair<std::vector<VertexIndex>, std::vector<std::size_t>>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < characters.size(); ++k)
    groups[{vertex_action(characters[k], vm), edge_action_of(characters[k], em)}].push_back(k);
  r.distinct_actions = groups.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [key, members] : groups) {
    r.kernel_pair_count += members.size() * (members.size() - 1) / 2;
    for (std::size_t i = 0; i < members.size() && pairs.size() < max_listed * 4; ++i)
      for (std::size_t j = i + 1; j < members.size() && pairs.size() < max_listed * 4; ++j)
        pairs.emplace_back(members[i], members[j]);
  }
  std::sort(pairs.begin(), pairs.end());
  if (pairs.size() > max_listed) pairs.resize(max_listed);
  r.kernel_pairs = std::move(pairs);
  return r;
}

namespace {

MultigraphAutomorphism induced(const Character& c, const VertexMatrix& vm, const EdgeMatrix& em,
                               const Multigraph& g) {
  MultigraphAutomorphism out;
  out.vertex_map = vertex_action(c, vm);
  const auto edge_map = edge_action_of(c, em);
  for (const auto& arc : g.arcs()) {
    std::vector<Label> labels;
    for (Label r = 1; r <= g.multiplicity(arc.src, arc.dst); ++r) {
      const auto pos = *g.edge_position({arc.src, arc.dst, r});
      labels.push_back(em.edges[edge_map[pos]].label);
    }
    out.edge_maps.push_back(std::move(labels));
  }
  return out;
}

}  // namespace

MultigraphAutomorphism induced_automorphism(const Character& c, const Presentation& p, const Multigraph& g) {
  return induced(c, vertex_matrix(p), edge_matrix(p, g), g);
}

AutomorphismComparison compare_with_automorphisms(const Presentation& p, const Multigraph& g,
                                                  const std::vector<Character>& characters,
                                                  const std::vector<MultigraphAutomorphism>& automorphisms) {
  AutomorphismComparison r;
  r.character_count = characters.size();
  r.automorphism_count = automorphisms.size();
  std::map<MultigraphAutomorphism, std::size_t> index;
  for (std::size_t k = 0; k < automorphisms.size(); ++k) index.emplace(automorphisms[k], k);
  std::vector<bool> hit(automorphisms.size(), false);
  const auto vm = vertex_matrix(p);
  const auto em = edge_matrix(p, g);
  for (std::size_t k = 0; k < characters.size(); ++k) {
    try {
      const auto a = induced(characters[k], vm, em, g);
      auto it = index.find(a);
      if (it == index.end() || hit[it->second] || !is_automorphism(g, a)) {
        r.unmatched_characters.push_back(k);
        continue;
      }
      hit[it->second] = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotAPermutation) throw;
      r.unmatched_characters.push_back(k);
    }
  }
  for (std::size_t k = 0; k < automorphisms.size(); ++k)
    if (!hit[k]) r.unmatched_automorphisms.push_back(k);
  r.bijective = r.unmatched_characters.empty() && r.unmatched_automorphisms.empty();
  return r;
}

}  // namespace msym
