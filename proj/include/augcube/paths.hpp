#pragma once

// Internally disjoint path systems and small connector structures inside
// vertex-filtered views of AQ_n.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "augcube/topology.hpp"

namespace augcube {

struct Path {
  std::vector<Vertex> vertices;

  const Vertex& front() const { return vertices.front(); }
  const Vertex& back() const { return vertices.back(); }
  std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Path reversed() const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// k internally disjoint source-sink paths. Every path is stored from source
/// to sink.
struct PathSystem {
  Vertex source;
  Vertex sink;
  std::vector<Path> paths;

  std::size_t size() const { return paths.size(); }
  /// The same system with source and sink exchanged (every path reversed).
  PathSystem reversed() const;

  friend bool operator==(const PathSystem&, const PathSystem&) = default;
};

/// Vertex set separating source from sink; returned when fewer than the
/// requested number of disjoint paths exist.
struct MinCut {
  Vertex source;
  Vertex sink;
  std::vector<Vertex> separator;
  /// Set when the pair is adjacent: the direct edge is one more path that no
  /// vertex cut can destroy, so the max path count is separator.size() + 1.
  bool direct_edge = false;

  /// Maximum number of internally disjoint paths this witness certifies.
  std::size_t path_bound() const { return separator.size() + (direct_edge ? 1 : 0); }
};

using PathResult = std::variant<PathSystem, MinCut>;

/// Menger via unit vertex capacities and shortest augmenting paths; neighbours
/// are scanned in ascending label order, so results are reproducible.
PathResult disjoint_paths(const GraphView& view, const Vertex& u, const Vertex& v, int k);

/// Largest number of internally disjoint u-v paths in the view.
int local_connectivity(const GraphView& view, const Vertex& u, const Vertex& v);

/// The vertex adjacent to `endpoint` on path i.
Vertex neighbor_along(const PathSystem& ps, const Vertex& endpoint, std::size_t i);

struct Pin {
  std::size_t index;
  Vertex neighbor;
};

/// Permutes paths so that neighbor_along(result, endpoint, pin.index) equals
/// pin.neighbor for every pin; unpinned paths keep their relative order.
PathSystem reorder_paths(const PathSystem& ps, const Vertex& endpoint, std::span<const Pin> pins);

using VertexMap = std::function<Vertex(const Vertex&)>;

/// Image of a path system under a vertex map that must preserve adjacency in
/// `host` along every path.
PathSystem map_path_system(const AugmentedCube& host, const VertexMap& map, const PathSystem& ps);

/// Any tree inside the view that contains all terminals: the union of BFS-tree
/// paths from the first terminal.
std::vector<Edge> connector_tree(const GraphView& view, std::span<const Vertex> terminals);

enum class SearchStatus { Found, ProvenAbsent, BudgetExhausted };

struct HamiltonResult {
  SearchStatus status = SearchStatus::ProvenAbsent;
  std::optional<Path> path;
  std::uint64_t nodes = 0;
};

/// Backtracking search for a Hamiltonian u-v path of the view. `budget`
/// bounds the number of search nodes expanded.
HamiltonResult hamiltonian_path(const GraphView& view, const Vertex& u, const Vertex& v,
                                std::uint64_t budget = 5'000'000);

}  // namespace augcube
