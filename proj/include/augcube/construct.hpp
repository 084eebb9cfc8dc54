#pragma once

// Inductive construction of 2n-3 internally disjoint pendant S-Steiner trees
// for any 3-set S of AQ_n, n >= 3.
//
// S is first normalized by an automorphism so that at least two terminals lie
// in the copy AQ^0_{n-1} (leading bit 0), and, when the third terminal is a
// cross-split image of one of them, so that it is that vertex's hypercube
// partner. The normalized set is then matched against the case tree:
//
//   Case1       all three terminals in AQ^0_{n-1}: recurse, plus one tree in
//               each quarter AQ^10 / AQ^11 of the other copy
//   Case2.1.x   z in {x^h, x^c, y^h, y^c}
//   Case2.2.x   z is none of them
//
// n in {3, 4} is solved by exhaustive search; the family keeps the case tag of
// S and its provenance records the Base3 / Base4 search. Every family is
// verified before it is returned; a builder whose output fails verification
// is replaced by a bounded search and the provenance records FallbackSearch.

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "augcube/family.hpp"
#include "augcube/topology.hpp"

namespace augcube {

struct Classification {
  CaseTag tag = CaseTag::Case1;
  /// Maps the caller's labels into the normalized frame.
  Automorphism normalization;
  /// (x, y, z) in the normalized frame. For Case1 these are the terminals in
  /// ascending order.
  std::array<Vertex, 3> roles;

  std::string describe_roles() const;
};

/// Validates S (three distinct vertices of g, n >= 3) and picks the case.
Classification classify(const AugmentedCube& g, std::span<const Vertex> terminals);

struct ConstructOptions {
  /// Case 1 quarter trees use Hamiltonian paths instead of BFS connectors.
  bool fidelity = false;
  /// When false, a builder failure raises AmbiguityError instead of searching.
  bool allow_fallback = true;
  /// Node budget for each fallback / base-case search.
  std::uint64_t search_budget = 2'000'000;
};

/// 2n-3 internally disjoint pendant S-Steiner trees, verified.
TreeFamily construct(const AugmentedCube& g, std::span<const Vertex> terminals, const ConstructOptions& options = {});

/// Exhaustive search for `target` trees in AQ_3 or AQ_4. Results are cached
/// per canonical form of S; the cache is shared by all threads.
TreeFamily base_case_search(const AugmentedCube& g, std::span<const Vertex> terminals, int target);

/// Bounded backtracking search for `target` trees in any AQ_n, starting from
/// the given trees (which must already be pairwise internally disjoint).
/// Returns nullopt when the budget runs out.
std::optional<std::vector<SteinerTree>> fallback_search(const AugmentedCube& g, std::span<const Vertex> terminals,
                                                        int target, std::vector<SteinerTree> seed,
                                                        std::uint64_t budget);

namespace detail {

/// The case builders, exposed for tests. Inputs are in the normalized frame
/// described by `c`; output trees are in that frame too.
std::vector<SteinerTree> build_case1(const AugmentedCube& g, const Classification& c, const ConstructOptions& options,
                                     TreeFamily& recursive_part);
std::vector<SteinerTree> build_case2_image(const AugmentedCube& g, const Classification& c);
std::vector<SteinerTree> build_case2_nonimage(const AugmentedCube& g, const Classification& c);

/// Number of distinct entries in the base-case cache.
std::size_t base_cache_size();

}  // namespace detail

}  // namespace augcube
