#include "augcube/family.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace augcube {

namespace {

constexpr std::array<std::pair<CaseTag, std::string_view>, 15> kNames{{
    {CaseTag::Base3, "Base3"},
    {CaseTag::Base4, "Base4"},
    {CaseTag::Case1, "Case1"},
    {CaseTag::Case2_1_1, "Case2.1.1"},
    {CaseTag::Case2_1_2, "Case2.1.2"},
    {CaseTag::Case2_1_3, "Case2.1.3"},
    {CaseTag::Case2_2_1a, "Case2.2.1a"},
    {CaseTag::Case2_2_1b, "Case2.2.1b"},
    {CaseTag::Case2_2_2a, "Case2.2.2a"},
    {CaseTag::Case2_2_2b, "Case2.2.2b"},
    {CaseTag::Case2_2_2c, "Case2.2.2c"},
    {CaseTag::Case2_2_3a, "Case2.2.3a"},
    {CaseTag::Case2_2_3b, "Case2.2.3b"},
    {CaseTag::Case2_2_3c, "Case2.2.3c"},
    {CaseTag::FallbackSearch, "FallbackSearch"},
}};

}  // namespace

std::vector<Vertex> SteinerTree::vertices() const {
  std::vector<Vertex> out;
  out.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    out.push_back(e.a);
    out.push_back(e.b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void SteinerTree::canonicalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(terminals.begin(), terminals.end());
}

std::string_view to_string(CaseTag tag) {
  for (const auto& [t, name] : kNames) {
    if (t == tag) return name;
  }
  return "?";
}

std::optional<CaseTag> parse_case_tag(std::string_view text) {
  for (const auto& [t, name] : kNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

bool is_image_case(CaseTag tag) {
  return tag == CaseTag::Case2_1_1 || tag == CaseTag::Case2_1_2 || tag == CaseTag::Case2_1_3;
}

bool is_nonimage_case(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case2_2_1a:
    case CaseTag::Case2_2_1b:
    case CaseTag::Case2_2_2a:
    case CaseTag::Case2_2_2b:
    case CaseTag::Case2_2_2c:
    case CaseTag::Case2_2_3a:
    case CaseTag::Case2_2_3b:
    case CaseTag::Case2_2_3c:
      return true;
    default:
      return false;
  }
}

bool TreeFamily::fallback_used() const {
  return std::any_of(provenance.begin(), provenance.end(),
                     [](const ProvenanceBatch& b) { return b.tag == CaseTag::FallbackSearch; });
}

TreeFamily apply(const Automorphism& a, const TreeFamily& family) {
  TreeFamily out = family;
  for (auto& t : out.terminals) t = a(t);
  for (auto& tree : out.trees) {
    for (auto& t : tree.terminals) t = a(t);
    for (auto& e : tree.edges) e = a(e);
    tree.canonicalize();
  }
  return out;
}

TreeFamily embed(const TreeFamily& family, bool bit) {
  TreeFamily out = family;
  out.dim = family.dim + 1;
  auto lift = [bit](const Vertex& v) { return prepend_bit(v, bit); };
  for (auto& t : out.terminals) t = lift(t);
  for (auto& tree : out.trees) {
    for (auto& t : tree.terminals) t = lift(t);
    for (auto& e : tree.edges) e = Edge(lift(e.a), lift(e.b));
  }
  return out;
}

}  // namespace augcube
