#include "augcube/certificate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "augcube/errors.hpp"

namespace augcube {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParseError(std::string(where) + ": unknown field '" + key + "'");
    }
  }
  for (auto key : keys) {
    if (!j.contains(std::string(key))) throw ParseError(std::string(where) + ": missing field '" + std::string(key) + "'");
  }
}

std::string label(const json& j, int n, std::string_view where) {
  if (!j.is_string()) throw ParseError(std::string(where) + ": vertex labels must be strings");
  auto text = j.get<std::string>();
  const auto v = Vertex::parse(text);
  if (v.dim != n) {
    throw ParseError(std::string(where) + ": label '" + text + "' does not have length " + std::to_string(n));
  }
  return text;
}

const char* const kPalette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4",
                                "gold3", "gray40", "navy", "olivedrab", "deeppink", "teal", "sienna"};

std::string quoted(const Vertex& v) { return "\"" + v.to_string() + "\""; }

}  // namespace

CertificateDoc CertificateDoc::from_family(const TreeFamily& family) {
  CertificateDoc doc;
  doc.n = family.dim;
  for (const auto& t : family.terminals) doc.s.push_back(t.to_string());
  doc.case_tag = std::string(to_string(family.tag));
  doc.fallback_used = family.fallback_used();
  for (const auto& tree : family.trees) {
    auto& edges = doc.trees.emplace_back();
    for (const auto& e : tree.edges) edges.emplace_back(e.a.to_string(), e.b.to_string());
  }
  return doc;
}

CertificateDoc CertificateDoc::from_json(const json& j) {
  require_keys(j, "certificate", {"schema_version", "n", "s", "case", "fallback_used", "trees", "tool"});
  CertificateDoc doc;
  if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion) {
    throw ParseError("certificate: unsupported schema_version");
  }
  if (!j["n"].is_number_integer()) throw ParseError("certificate: n must be an integer");
  doc.n = j["n"].get<int>();
  if (doc.n < 1 || doc.n > 30) throw ParseError("certificate: n out of range");

  if (!j["s"].is_array() || j["s"].size() != 3) throw ParseError("certificate: s must list exactly 3 vertices");
  for (const auto& v : j["s"]) doc.s.push_back(label(v, doc.n, "certificate.s"));
  if (std::set<std::string>(doc.s.begin(), doc.s.end()).size() != 3) {
    throw ParseError("certificate: s contains a duplicate vertex");
  }

  if (!j["case"].is_string() || !parse_case_tag(j["case"].get<std::string>())) {
    throw ParseError("certificate: unknown case tag");
  }
  doc.case_tag = j["case"].get<std::string>();
  if (!j["fallback_used"].is_boolean()) throw ParseError("certificate: fallback_used must be a boolean");
  doc.fallback_used = j["fallback_used"].get<bool>();

  if (!j["trees"].is_array()) throw ParseError("certificate: trees must be an array");
  for (const auto& tree : j["trees"]) {
    require_keys(tree, "certificate.trees[]", {"edges"});
    if (!tree["edges"].is_array()) throw ParseError("certificate: edges must be an array");
    auto& edges = doc.trees.emplace_back();
    for (const auto& e : tree["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("certificate: every edge is a pair of labels");
      edges.emplace_back(label(e[0], doc.n, "certificate.edge"), label(e[1], doc.n, "certificate.edge"));
    }
  }

  require_keys(j["tool"], "certificate.tool", {"name", "version"});
  if (!j["tool"]["name"].is_string() || !j["tool"]["version"].is_string()) {
    throw ParseError("certificate: tool name and version must be strings");
  }
  doc.tool_name = j["tool"]["name"].get<std::string>();
  doc.tool_version = j["tool"]["version"].get<std::string>();
  return doc;
}

CertificateDoc CertificateDoc::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

json CertificateDoc::to_json() const {
  json trees_json = json::array();
  for (const auto& edges : trees) {
    json list = json::array();
    for (const auto& [a, b] : edges) list.push_back({a, b});
    trees_json.push_back({{"edges", list}});
  }
  return json{{"schema_version", schema_version},
              {"n", n},
              {"s", s},
              {"case", case_tag},
              {"fallback_used", fallback_used},
              {"trees", trees_json},
              {"tool", {{"name", tool_name}, {"version", tool_version}}}};
}

TreeFamily CertificateDoc::to_family() const {
  TreeFamily family;
  family.dim = n;
  for (const auto& v : s) family.terminals.push_back(Vertex::parse(v));
  family.tag = parse_case_tag(case_tag).value_or(CaseTag::FallbackSearch);
  for (const auto& edges : trees) {
    SteinerTree tree{family.terminals, {}};
    for (const auto& [a, b] : edges) tree.edges.emplace_back(Vertex::parse(a), Vertex::parse(b));
    family.trees.push_back(std::move(tree));
  }
  return family;
}

CertificateDoc CertificateDoc::canonical() const {
  CertificateDoc out = *this;
  for (auto& edges : out.trees) {
    for (auto& [a, b] : edges) {
      if (b < a) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
  }
  return out;
}

json report_to_json(const VerificationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json verts = json::array();
    for (const auto& x : v.vertices) verts.push_back(x.to_string());
    json edges = json::array();
    for (const auto& e : v.edges) edges.push_back({e.a.to_string(), e.b.to_string()});
    violations.push_back({{"kind", std::string(to_string(v.kind))},
                          {"trees", v.trees},
                          {"vertices", verts},
                          {"edges", edges},
                          {"detail", v.detail}});
  }
  return json{{"accepted", report.accepted()}, {"violations", violations}};
}

json path_system_to_json(const PathSystem& ps) {
  json paths = json::array();
  for (const auto& p : ps.paths) {
    json list = json::array();
    for (const auto& v : p.vertices) list.push_back(v.to_string());
    paths.push_back(list);
  }
  return json{{"source", ps.source.to_string()}, {"sink", ps.sink.to_string()}, {"k", ps.paths.size()},
              {"paths", paths}};
}

json min_cut_to_json(const MinCut& cut) {
  json sep = json::array();
  for (const auto& v : cut.separator) sep.push_back(v.to_string());
  return json{{"source", cut.source.to_string()},
              {"sink", cut.sink.to_string()},
              {"separator", sep},
              {"direct_edge", cut.direct_edge},
              {"max_paths", cut.path_bound()}};
}

std::string family_to_dot(const TreeFamily& family) {
  std::ostringstream out;
  for (std::size_t i = 0; i < family.trees.size(); ++i) {
    const auto& tree = family.trees[i];
    const char* color = kPalette[i % std::size(kPalette)];
    out << "graph tree_" << i << " {\n";
    out << "  label=\"tree " << i << " (" << to_string(family.tag) << ")\";\n";
    out << "  index=" << i << ";\n";
    out << "  color=\"" << color << "\";\n";
    out << "  node [shape=circle, fontname=\"monospace\"];\n";
    for (const auto& v : tree.vertices()) {
      const bool terminal = std::find(family.terminals.begin(), family.terminals.end(), v) != family.terminals.end();
      out << "  " << quoted(v) << (terminal ? " [peripheries=2, style=bold]" : "") << ";\n";
    }
    for (const auto& e : tree.edges) {
      out << "  " << quoted(e.a) << " -- " << quoted(e.b) << " [color=\"" << color << "\"];\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string path_system_to_dot(const PathSystem& ps) {
  std::ostringstream out;
  out << "graph paths {\n";
  out << "  node [shape=circle, fontname=\"monospace\"];\n";
  out << "  " << quoted(ps.source) << " [peripheries=2];\n";
  out << "  " << quoted(ps.sink) << " [peripheries=2];\n";
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const auto& vs = ps.paths[i].vertices;
    const char* color = kPalette[i % std::size(kPalette)];
    for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
      out << "  " << quoted(vs[j]) << " -- " << quoted(vs[j + 1]) << " [color=\"" << color << "\", path=" << i
          << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace augcube
