#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "msym/multigraph.hpp"

namespace msym::test {

inline std::string data_path(const std::string& name) { return std::string(MSYM_DATA_DIR) + "/" + name; }
inline Multigraph corpus(const std::string& name) { return load_graph(data_path(name)); }

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// |Aut| from first principles: vertex permutations that preserve the
// multiplicity matrix, times prod over arcs of m! label bijections.
inline std::uint64_t automorphism_count_oracle(const Multigraph& g) {
  const auto n = g.vertex_count();
  std::vector<VertexIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t labels = 1;
  for (VertexIndex i = 0; i < n; ++i)
    for (VertexIndex j = 0; j < n; ++j) labels *= factorial(g.multiplicity(i, j));
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (VertexIndex i = 0; i < n && ok; ++i)
      for (VertexIndex j = 0; j < n && ok; ++j) ok = g.multiplicity(perm[i], perm[j]) == g.multiplicity(i, j);
    if (ok) count += labels;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Classical solutions of the full presentation, counted by brute force over
// permutations sigma of V x {1..N} (q[x|y] = 1 iff sigma(y) = x), straight
// from the relation list:
//   for every edge (i,j)r with (k,s) = sigma(i,r), (l,s') = sigma(j,r):
//     E^k_l nonempty, s = s', s <= |E^k_l|;
//   and, with label independence, #{r : sigma(i,r) = (k,s)} does not depend on s.
inline std::uint64_t classical_solution_oracle(const Multigraph& g, bool label_independence = true) {
  const auto nv = g.vertex_count();
  const auto N = g.max_multiplicity();
  const auto n = nv * N;
  auto pair_of = [&](std::size_t x) { return IndexPair{static_cast<VertexIndex>(x / N), static_cast<Label>(x % N + 1)}; };
  auto id_of = [&](VertexIndex v, Label r) { return static_cast<std::size_t>(v) * N + (r - 1); };
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (const auto& e : g.edges()) {
      const auto a = pair_of(sigma[id_of(e.src, e.label)]);
      const auto b = pair_of(sigma[id_of(e.dst, e.label)]);
      const auto m = g.multiplicity(a.vertex, b.vertex);
      if (m == 0 || a.label != b.label || a.label > m) {
        ok = false;
        break;
      }
    }
    if (ok && label_independence) {
      for (VertexIndex i = 0; i < nv && ok; ++i)
        for (VertexIndex k = 0; k < nv && ok; ++k) {
          std::vector<int> hits(N + 1, 0);
          for (Label r = 1; r <= N; ++r) {
            const auto p = pair_of(sigma[id_of(i, r)]);
            if (p.vertex == k) ++hits[p.label];
          }
          for (Label s = 2; s <= N; ++s) ok = ok && hits[s] == hits[1];
        }
    }
    if (ok) ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

}  // namespace msym::test
