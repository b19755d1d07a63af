#include "msym/multigraph.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <numeric>
#include <thread>

namespace msym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::EmptyEdgeList: return "EmptyEdgeList";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::InvalidVertexId: return "InvalidVertexId";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::MixedAmbient: return "MixedAmbient";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IncompatibleModels: return "IncompatibleModels";
    case ErrorKind::UnsupportedUnderlyingGraph: return "UnsupportedUnderlyingGraph";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool valid_vertex_id(const std::string& id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

Multigraph Multigraph::build(std::vector<std::string> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edge_pairs) {
  Multigraph g;
  std::map<std::string, VertexIndex> index;
  for (const auto& v : vertices) {
    if (!valid_vertex_id(v)) throw Error(ErrorKind::InvalidVertexId, "'" + v + "'");
    if (!index.emplace(v, static_cast<VertexIndex>(index.size())).second)
      throw Error(ErrorKind::DuplicateVertex, v);
  }
  if (edge_pairs.empty()) throw Error(ErrorKind::EmptyEdgeList, "graph has no edges");

  const std::size_t n = vertices.size();
  g.vertices_ = std::move(vertices);
  g.multiplicity_.assign(n * n, 0);
  g.edges_.reserve(edge_pairs.size());
  for (std::size_t e = 0; e < edge_pairs.size(); ++e) {
    auto s = index.find(edge_pairs[e].first);
    auto t = index.find(edge_pairs[e].second);
    if (s == index.end() || t == index.end())
      throw Error(ErrorKind::UnknownEndpoint, "edge " + std::to_string(e));
    auto& m = g.multiplicity_[s->second * n + t->second];
    ++m;
    g.edges_.push_back({s->second, t->second, static_cast<Label>(m)});
    g.max_multiplicity_ = std::max<Label>(g.max_multiplicity_, static_cast<Label>(m));
  }

  std::vector<bool> touched(n, false);
  for (const auto& e : g.edges_) touched[e.src] = touched[e.dst] = true;
  for (std::size_t v = 0; v < n; ++v)
    if (!touched[v]) throw Error(ErrorKind::IsolatedVertex, g.vertices_[v]);
  return g;
}

std::optional<VertexIndex> Multigraph::find_vertex(const std::string& id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

VertexIndex Multigraph::vertex_index(const std::string& id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error(ErrorKind::UnknownVertex, id);
}

std::size_t Multigraph::multiplicity(const std::string& i, const std::string& j) const {
  return multiplicity(vertex_index(i), vertex_index(j));
}

std::optional<std::size_t> Multigraph::edge_position(const LabeledEdge& e) const {
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<Arc> Multigraph::arcs() const {
  std::vector<Arc> out;
  const auto n = static_cast<VertexIndex>(vertices_.size());
  for (VertexIndex i = 0; i < n; ++i)
    for (VertexIndex j = 0; j < n; ++j)
      if (has_arc(i, j)) out.push_back({i, j});
  return out;
}

std::string Multigraph::edge_name(const LabeledEdge& e) const {
  return "(" + vertices_.at(e.src) + "," + vertices_.at(e.dst) + ")" + std::to_string(e.label);
}

bool is_uniform(const Multigraph& g) {
  std::size_t common = 0;
  for (const auto& a : g.arcs()) {
    auto m = g.multiplicity(a.src, a.dst);
    if (common == 0) common = m;
    if (m != common) return false;
  }
  return common > 0;
}

UnderlyingGraph underlying(const Multigraph& g) {
  UnderlyingGraph u;
  u.vertex_count = g.vertex_count();
  u.arcs = g.arcs();
  for (const auto& a : u.arcs) u.weights.push_back(g.multiplicity(a.src, a.dst));
  return u;
}

std::vector<int> UnderlyingGraph::adjacency() const {
  std::vector<int> a(vertex_count * vertex_count, 0);
  for (const auto& arc : arcs) a[arc.src * vertex_count + arc.dst] = 1;
  return a;
}

std::vector<std::size_t> UnderlyingGraph::weighted_adjacency() const {
  std::vector<std::size_t> a(vertex_count * vertex_count, 0);
  for (std::size_t k = 0; k < arcs.size(); ++k)
    a[arcs[k].src * vertex_count + arcs[k].dst] = weights[k];
  return a;
}

std::vector<IndexPair> permissible_pairs(const Multigraph& g) {
  std::vector<IndexPair> out;
  for (const auto& e : g.edges()) {
    out.push_back({e.src, e.label});
    out.push_back({e.dst, e.label});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

std::size_t arc_slot(const std::vector<Arc>& arcs, VertexIndex i, VertexIndex j) {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), Arc{i, j});
  return static_cast<std::size_t>(it - arcs.begin());
}

void vertex_maps_from(const Multigraph& g, std::vector<VertexIndex>& sigma,
                      std::vector<bool>& used, std::size_t depth,
                      std::vector<std::vector<VertexIndex>>& out) {
  const std::size_t n = g.vertex_count();
  if (depth == n) {
    out.push_back(sigma);
    return;
  }
  const auto v = static_cast<VertexIndex>(depth);
  for (VertexIndex image = 0; image < n; ++image) {
    if (used[image]) continue;
    sigma[v] = image;
    bool ok = g.multiplicity(v, v) == g.multiplicity(image, image);
    for (VertexIndex w = 0; ok && w < v; ++w)
      ok = g.multiplicity(v, w) == g.multiplicity(image, sigma[w]) &&
           g.multiplicity(w, v) == g.multiplicity(sigma[w], image);
    if (!ok) continue;
    used[image] = true;
    vertex_maps_from(g, sigma, used, depth + 1, out);
    used[image] = false;
  }
}

std::vector<std::vector<VertexIndex>> vertex_maps(const Multigraph& g, unsigned workers) {
  const std::size_t n = g.vertex_count();
  // Split on the image of vertex 0; each worker owns a disjoint subtree.
  std::vector<std::vector<std::vector<VertexIndex>>> parts(n);
  auto run = [&](VertexIndex first) {
    std::vector<VertexIndex> sigma(n, 0);
    std::vector<bool> used(n, false);
    sigma[0] = first;
    if (g.multiplicity(0, 0) != g.multiplicity(first, first)) return;
    used[first] = true;
    vertex_maps_from(g, sigma, used, 1, parts[first]);
  };
  if (workers <= 1 || n < 2) {
    for (VertexIndex f = 0; f < n; ++f) run(f);
  } else {
    std::vector<std::thread> pool;
    std::atomic<VertexIndex> next{0};
    for (unsigned w = 0; w < std::min<unsigned>(workers, n); ++w)
      pool.emplace_back([&] {
        for (VertexIndex f; (f = next++) < n;) run(f);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<std::vector<VertexIndex>> out;
  for (auto& p : parts)
    for (auto& s : p) out.push_back(std::move(s));
  return out;
}

}  // namespace

std::vector<MultigraphAutomorphism> automorphisms(const Multigraph& g,
                                                  const AutomorphismOptions& options) {
  const auto arcs = g.arcs();
  std::vector<std::vector<Label>> identity_perms;
  std::uint64_t per_vertex_map = 1;
  for (const auto& a : arcs) {
    const auto m = g.multiplicity(a.src, a.dst);
    std::vector<Label> p(m);
    std::iota(p.begin(), p.end(), Label{1});
    identity_perms.push_back(std::move(p));
    for (std::size_t f = 2; f <= m; ++f) {
      per_vertex_map *= f;
      if (per_vertex_map > options.max_results)
        throw Error(ErrorKind::SearchBudgetExceeded,
                    "label bijections per vertex map exceed " + std::to_string(options.max_results));
    }
  }

  const auto maps = vertex_maps(g, options.workers);
  if (maps.size() * per_vertex_map > options.max_results)
    throw Error(ErrorKind::SearchBudgetExceeded,
                std::to_string(maps.size()) + " vertex maps x " + std::to_string(per_vertex_map) +
                    " label bijections exceed budget " + std::to_string(options.max_results));

  std::vector<MultigraphAutomorphism> out;
  out.reserve(maps.size() * per_vertex_map);
  for (const auto& sigma : maps) {
    // Odometer over per-arc permutations; the last arc varies fastest.
    auto perms = identity_perms;
    while (true) {
      out.push_back({sigma, perms});
      std::ptrdiff_t a = static_cast<std::ptrdiff_t>(perms.size()) - 1;
      while (a >= 0 && !std::next_permutation(perms[a].begin(), perms[a].end())) --a;
      if (a < 0) break;
    }
  }
  return out;
}

LabeledEdge apply(const Multigraph& g, const MultigraphAutomorphism& a, const LabeledEdge& e) {
  const auto arcs = g.arcs();
  const auto slot = arc_slot(arcs, e.src, e.dst);
  return {a.vertex_map.at(e.src), a.vertex_map.at(e.dst), a.edge_maps.at(slot).at(e.label - 1)};
}

MultigraphAutomorphism compose(const Multigraph& g, const MultigraphAutomorphism& outer,
                               const MultigraphAutomorphism& inner) {
  const auto arcs = g.arcs();
  MultigraphAutomorphism out;
  out.vertex_map.resize(inner.vertex_map.size());
  for (std::size_t v = 0; v < inner.vertex_map.size(); ++v)
    out.vertex_map[v] = outer.vertex_map[inner.vertex_map[v]];
  out.edge_maps.resize(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto m = inner.edge_maps[a].size();
    out.edge_maps[a].resize(m);
    for (Label r = 1; r <= m; ++r) {
      const auto mid = apply(g, inner, {arcs[a].src, arcs[a].dst, r});
      out.edge_maps[a][r - 1] = apply(g, outer, mid).label;
    }
  }
  return out;
}

MultigraphAutomorphism inverse(const Multigraph& g, const MultigraphAutomorphism& a) {
  const auto arcs = g.arcs();
  MultigraphAutomorphism out;
  out.vertex_map.resize(a.vertex_map.size());
  for (std::size_t v = 0; v < a.vertex_map.size(); ++v) out.vertex_map[a.vertex_map[v]] = v;
  out.edge_maps.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    for (Label r = 1; r <= a.edge_maps[k].size(); ++r) {
      const auto img = apply(g, a, {arcs[k].src, arcs[k].dst, r});
      const auto slot = arc_slot(arcs, img.src, img.dst);
      auto& target = out.edge_maps[slot];
      if (target.size() < a.edge_maps[k].size()) target.resize(a.edge_maps[k].size());
      target[img.label - 1] = r;
    }
  }
  return out;
}

bool is_automorphism(const Multigraph& g, const MultigraphAutomorphism& a) {
  const std::size_t n = g.vertex_count();
  if (a.vertex_map.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : a.vertex_map) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (VertexIndex i = 0; i < n; ++i)
    for (VertexIndex j = 0; j < n; ++j)
      if (g.multiplicity(i, j) != g.multiplicity(a.vertex_map[i], a.vertex_map[j])) return false;
  const auto arcs = g.arcs();
  if (a.edge_maps.size() != arcs.size()) return false;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    auto p = a.edge_maps[k];
    const auto m = g.multiplicity(arcs[k].src, arcs[k].dst);
    if (p.size() != m) return false;
    std::sort(p.begin(), p.end());
    for (Label r = 1; r <= m; ++r)
      if (p[r - 1] != r) return false;
  }
  return true;
}

}  // namespace msym
