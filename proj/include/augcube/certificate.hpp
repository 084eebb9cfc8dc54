#pragma once

// Serialized forms: the JSON certificate for a tree family, JSON for
// verification reports and path systems, and Graphviz DOT export.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "augcube/family.hpp"
#include "augcube/paths.hpp"
#include "augcube/verify.hpp"

namespace augcube {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kToolName = "augcube";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct CertificateDoc {
  std::string schema_version{kSchemaVersion};
  int n = 0;
  std::vector<std::string> s;
  std::string case_tag;
  bool fallback_used = false;
  /// One edge list per tree; each edge is a pair of vertex strings.
  std::vector<std::vector<std::pair<std::string, std::string>>> trees;
  std::string tool_name{kToolName};
  std::string tool_version{kToolVersion};

  static CertificateDoc from_family(const TreeFamily& family);
  /// Strict: unknown or missing fields, bad labels, wrong schema version and
  /// unknown case tags all raise ParseError.
  static CertificateDoc from_json(const nlohmann::json& j);
  static CertificateDoc parse(std::string_view text);

  nlohmann::json to_json() const;
  TreeFamily to_family() const;

  /// Edges ordered within each pair and sorted within each tree.
  CertificateDoc canonical() const;

  friend bool operator==(const CertificateDoc&, const CertificateDoc&) = default;
};

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json path_system_to_json(const PathSystem& ps);
nlohmann::json min_cut_to_json(const MinCut& cut);

/// One undirected graph per tree; terminals drawn with a double border and
/// every tree tagged with its index and an edge colour.
std::string family_to_dot(const TreeFamily& family);
std::string path_system_to_dot(const PathSystem& ps);

}  // namespace augcube
