#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msym/error.hpp"

namespace msym {

using VertexIndex = std::uint32_t;
using Label = std::uint32_t;  // 1-based edge label within an arc class

/// An edge written as (source, target) with its label r, i.e. (i,j)r.
struct LabeledEdge {
  VertexIndex src = 0;
  VertexIndex dst = 0;
  Label label = 1;

  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

/// A (vertex, label) pair of V x {1..N}.
struct IndexPair {
  VertexIndex vertex = 0;
  Label label = 1;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct Arc {
  VertexIndex src = 0;
  VertexIndex dst = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Directed multigraph with loops and parallel edges. Vertices are opaque
/// string ids ordered by input position; edges keep input order, and each
/// edge is labeled 1..|E^i_j| within its arc class in that order.
class Multigraph {
 public:
  static Multigraph build(std::vector<std::string> vertices,
                          const std::vector<std::pair<std::string, std::string>>& edge_pairs);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex_name(VertexIndex v) const { return vertices_.at(v); }
  std::optional<VertexIndex> find_vertex(const std::string& id) const;
  VertexIndex vertex_index(const std::string& id) const;  // throws UnknownVertex

  /// Edges in input order with their canonical labels.
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  /// Position of (i,j)r in edges(), if that edge exists.
  std::optional<std::size_t> edge_position(const LabeledEdge& e) const;

  /// N = max |E^i_j|.
  Label max_multiplicity() const { return max_multiplicity_; }
  std::size_t multiplicity(VertexIndex i, VertexIndex j) const {
    return multiplicity_.at(i * vertices_.size() + j);
  }
  std::size_t multiplicity(const std::string& i, const std::string& j) const;

  bool has_arc(VertexIndex i, VertexIndex j) const { return multiplicity(i, j) > 0; }
  /// Arcs (i,j) with E^i_j nonempty, in row-major vertex order.
  std::vector<Arc> arcs() const;

  std::string edge_name(const LabeledEdge& e) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::size_t> multiplicity_;
  Label max_multiplicity_ = 0;
};

/// All nonzero multiplicities are equal. This is the working definition used
/// throughout; it is what makes the label-overflow relation vacuous.
bool is_uniform(const Multigraph& g);

struct UnderlyingGraph {
  std::size_t vertex_count = 0;
  std::vector<Arc> arcs;
  std::vector<std::size_t> weights;  // parallel to arcs

  /// 0/1 adjacency matrix, row-major.
  std::vector<int> adjacency() const;
  /// Weighted adjacency, row-major.
  std::vector<std::size_t> weighted_adjacency() const;
};

UnderlyingGraph underlying(const Multigraph& g);

/// Pairs (k,s) realised as (source,label) or (target,label) of some edge,
/// sorted by (vertex input order, label).
std::vector<IndexPair> permissible_pairs(const Multigraph& g);

struct MultigraphAutomorphism {
  std::vector<VertexIndex> vertex_map;
  /// One bijection per arc of g.arcs(), in that order: label r of arc (i,j)
  /// goes to label edge_maps[a][r-1] of arc (sigma i, sigma j).
  std::vector<std::vector<Label>> edge_maps;

  friend auto operator<=>(const MultigraphAutomorphism&, const MultigraphAutomorphism&) = default;
};

struct AutomorphismOptions {
  std::uint64_t max_results = 10'000'000;
  unsigned workers = 1;
};

/// Exhaustive classical automorphisms: vertex permutations preserving the
/// multiplicity matrix, each extended by every family of per-arc label
/// bijections. Order: vertex maps lexicographically, then label maps
/// lexicographically arc by arc.
std::vector<MultigraphAutomorphism> automorphisms(const Multigraph& g,
                                                  const AutomorphismOptions& options = {});

/// Image of a labeled edge under an automorphism.
LabeledEdge apply(const Multigraph& g, const MultigraphAutomorphism& a, const LabeledEdge& e);
MultigraphAutomorphism compose(const Multigraph& g, const MultigraphAutomorphism& outer,
                               const MultigraphAutomorphism& inner);
MultigraphAutomorphism inverse(const Multigraph& g, const MultigraphAutomorphism& a);
bool is_automorphism(const Multigraph& g, const MultigraphAutomorphism& a);

// Graph file formats.
Multigraph parse_graph_json(const std::string& text);
Multigraph parse_graph_text(const std::string& text);
/// Dispatches on the first non-blank character ('{' means JSON).
Multigraph parse_graph(const std::string& text);
Multigraph load_graph(const std::string& path);
std::string graph_to_json(const Multigraph& g);

}  // namespace msym
