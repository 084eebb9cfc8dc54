#pragma once

// Independent certificate checking and small-scale exact oracles.
//
// Nothing here calls into the constructor; trees are checked through
// topology adjacency and this module's own traversals.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "augcube/family.hpp"
#include "augcube/paths.hpp"
#include "augcube/topology.hpp"

namespace augcube {

enum class ViolationKind { NonEdge, Cycle, Disconnected, TerminalDegree, SharedVertex, SharedEdge, WrongTerminals };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> trees;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::string detail;
};

struct VerificationReport {
  std::vector<Violation> violations;

  bool accepted() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  void merge(VerificationReport other);
};

/// Edges exist in g, the edge set is a tree (acyclic and connected, with the
/// terminals counted as vertices), every terminal has degree exactly one.
/// `index` labels the tree in reported violations.
VerificationReport verify_tree(const AugmentedCube& g, const SteinerTree& tree, std::size_t index = 0);

/// verify_tree on every member, terminal agreement with the family, and
/// pairwise internal disjointness (no shared edge, no shared non-terminal).
VerificationReport verify_family(const AugmentedCube& g, const TreeFamily& family);

/// Checks the PathSystem invariants: endpoints, adjacency along paths, simple
/// paths, internal disjointness, no repeated edge. Returns a description of
/// the first problem, or nullopt. When `view` is given, paths must stay in it.
std::optional<std::string> check_path_system(const AugmentedCube& g, const PathSystem& ps,
                                             const GraphView* view = nullptr);

struct OracleResult {
  int lower = 0;
  int upper = 0;
  bool exact = false;
  std::uint64_t nodes = 0;
  /// Witness family achieving `lower`.
  std::vector<SteinerTree> witness;
};

/// Maximum number of internally disjoint pendant S-Steiner trees, by exact
/// packing over inclusion-minimal connector sets (connected vertex sets off S
/// that touch every terminal). Exact in practice up to 16 vertices; hosts up to
/// AQ_6 are accepted and return a bracket once `budget` search nodes are spent.
OracleResult oracle_tau(const AugmentedCube& g, std::span<const Vertex> terminals, std::uint64_t budget);

/// Largest m not excluded by the degree bound tau_k(G) >= m => delta >= k + m - 1.
int hager_upper_bound(const AugmentedCube& g, int k);

struct ConnectivityResult {
  int value = 0;
  /// False when only sampled pairs were examined; value is then an upper
  /// bound on the true connectivity.
  bool exact = true;
  std::size_t pairs_examined = 0;
};

/// Vertex connectivity via minimum over pairs of Menger path counts. All pairs
/// up to n = 5; for 6 <= n <= 8 pairs (0, v), exact by vertex transitivity;
/// beyond that a deterministic sample of pairs.
ConnectivityResult connectivity(const AugmentedCube& g);

}  // namespace augcube
