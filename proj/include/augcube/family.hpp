#pragma once

// Certificate types: pendant S-Steiner trees and internally disjoint
// families of them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "augcube/topology.hpp"

namespace augcube {

/// A tree whose vertex set contains every terminal, each as a leaf.
struct SteinerTree {
  std::vector<Vertex> terminals;
  std::vector<Edge> edges;

  /// Vertices touched by an edge, ascending.
  std::vector<Vertex> vertices() const;
  /// Sorts edges and drops duplicates.
  void canonicalize();

  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

enum class CaseTag {
  Base3,
  Base4,
  Case1,
  Case2_1_1,
  Case2_1_2,
  Case2_1_3,
  Case2_2_1a,
  Case2_2_1b,
  Case2_2_2a,
  Case2_2_2b,
  Case2_2_2c,
  Case2_2_3a,
  Case2_2_3b,
  Case2_2_3c,
  FallbackSearch,
};

inline constexpr CaseTag kAllCaseTags[] = {
    CaseTag::Base3,      CaseTag::Base4,      CaseTag::Case1,      CaseTag::Case2_1_1, CaseTag::Case2_1_2,
    CaseTag::Case2_1_3,  CaseTag::Case2_2_1a, CaseTag::Case2_2_1b, CaseTag::Case2_2_2a, CaseTag::Case2_2_2b,
    CaseTag::Case2_2_2c, CaseTag::Case2_2_3a, CaseTag::Case2_2_3b, CaseTag::Case2_2_3c, CaseTag::FallbackSearch,
};

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> parse_case_tag(std::string_view text);
/// True for the Case 2.1.x tags.
bool is_image_case(CaseTag tag);
/// True for the Case 2.2.x tags.
bool is_nonimage_case(CaseTag tag);

/// Which builder produced trees [first, first + count) of a family, at which
/// dimension, and under which normalizing automorphism.
struct ProvenanceBatch {
  CaseTag tag = CaseTag::FallbackSearch;
  int dim = 0;
  std::size_t first = 0;
  std::size_t count = 0;
  std::string normalization = "identity";
  /// Role assignment (x, y, z) in the normalized frame, when the case has one.
  std::string roles;

  friend bool operator==(const ProvenanceBatch&, const ProvenanceBatch&) = default;
};

struct TreeFamily {
  int dim = 0;
  std::vector<Vertex> terminals;
  std::vector<SteinerTree> trees;
  /// Classification of the top-level terminal set.
  CaseTag tag = CaseTag::FallbackSearch;
  std::vector<ProvenanceBatch> provenance;

  std::size_t size() const { return trees.size(); }
  bool fallback_used() const;
};

/// Relabels every tree by an automorphism.
TreeFamily apply(const Automorphism& a, const TreeFamily& family);

/// Lifts a family from a copy of AQ_{n-1} into AQ_n by prepending `bit` to
/// every label. Provenance batches keep their tags and dimensions.
TreeFamily embed(const TreeFamily& family, bool bit);

}  // namespace augcube
