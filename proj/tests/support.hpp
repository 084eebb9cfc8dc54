#pragma once

// Test-side oracles. Nothing here uses the library's adjacency rule or flow
// code, so they can be compared against it.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "augcube/family.hpp"
#include "augcube/topology.hpp"

namespace augcube::testing {

using AdjMatrix = std::vector<std::vector<bool>>;

// AQ_1 is K_2; AQ_n is two copies of AQ_{n-1} (leading bit 0 and 1) plus the
// edges 0u-1u and 0u-1(~u).
inline AdjMatrix recursive_adjacency(int n) {
  if (n == 1) return {{false, true}, {true, false}};
  const auto lower = recursive_adjacency(n - 1);
  const std::size_t half = lower.size();
  AdjMatrix adj(2 * half, std::vector<bool>(2 * half, false));
  for (std::size_t u = 0; u < half; ++u) {
    for (std::size_t v = 0; v < half; ++v) {
      adj[u][v] = adj[half + u][half + v] = lower[u][v];
    }
    const std::size_t comp = (half - 1) & ~u;
    adj[u][half + u] = adj[half + u][u] = true;
    adj[u][half + comp] = adj[half + comp][u] = true;
  }
  return adj;
}

// Is v reachable from u in AQ_n with the vertices in `removed` deleted, and
// optionally the edge u-v ignored?
inline bool reachable(const AdjMatrix& adj, std::uint32_t u, std::uint32_t v, std::uint32_t removed,
                      bool skip_direct) {
  const auto count = static_cast<std::uint32_t>(adj.size());
  std::uint32_t seen = 1U << u;
  std::vector<std::uint32_t> stack{u};
  while (!stack.empty()) {
    const auto w = stack.back();
    stack.pop_back();
    for (std::uint32_t x = 0; x < count; ++x) {
      if (!adj[w][x] || (seen >> x & 1U) || (removed >> x & 1U)) continue;
      if (skip_direct && w == u && x == v) continue;
      if (x == v) return true;
      seen |= 1U << x;
      stack.push_back(x);
    }
  }
  return false;
}

// Smallest vertex set separating u from v, plus one if they are adjacent.
// Tries every subset of the other vertices in order of size; fine up to 16
// vertices.
inline int brute_local_connectivity(const AdjMatrix& adj, std::uint32_t u, std::uint32_t v) {
  const auto count = static_cast<std::uint32_t>(adj.size());
  const int extra = adj[u][v] ? 1 : 0;
  for (int size = 0; size <= static_cast<int>(count) - 2; ++size) {
    for (std::uint32_t mask = 0; mask < (1U << count); ++mask) {
      if (std::popcount(mask) != size || (mask >> u & 1U) || (mask >> v & 1U)) continue;
      if (!reachable(adj, u, v, mask, true)) return size + extra;
    }
  }
  return static_cast<int>(count) - 2 + extra;
}

inline int brute_connectivity(const AdjMatrix& adj) {
  const auto count = static_cast<std::uint32_t>(adj.size());
  int best = static_cast<int>(count) - 1;
  for (std::uint32_t u = 0; u < count; ++u)
    for (std::uint32_t v = u + 1; v < count; ++v) best = std::min(best, brute_local_connectivity(adj, u, v));
  return best;
}

inline std::vector<std::array<Vertex, 3>> triangles(const AugmentedCube& g) {
  std::vector<std::array<Vertex, 3>> out;
  const auto count = g.vertex_count();
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = a + 1; b < count; ++b)
      for (std::uint64_t c = b + 1; c < count; ++c) {
        const auto x = g.vertex(a), y = g.vertex(b), z = g.vertex(c);
        if (g.is_adjacent(x, y) && g.is_adjacent(y, z) && g.is_adjacent(x, z)) out.push_back({x, y, z});
      }
  return out;
}

inline Vertex v(const char* text) { return Vertex::parse(text); }

inline Edge e(const char* a, const char* b) { return Edge(v(a), v(b)); }

inline SteinerTree tree(std::vector<Vertex> terminals, std::vector<Edge> edges) {
  return SteinerTree{std::move(terminals), std::move(edges)};
}

}  // namespace augcube::testing
