#include "augcube/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "augcube/certificate.hpp"
#include "augcube/construct.hpp"
#include "augcube/errors.hpp"
#include "augcube/paths.hpp"
#include "augcube/sweep.hpp"
#include "augcube/verify.hpp"

namespace augcube {

namespace {

using nlohmann::json;

// Comma separated labels, no whitespace, all of length n and distinct.
std::vector<Vertex> parse_set(const std::string& text, int n) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = Vertex::parse(item);
    if (v.dim != n) {
      throw ParseError("vertex '" + item + "' has length " + std::to_string(v.dim) + ", expected " + std::to_string(n));
    }
    for (const auto& w : out) {
      if (w == v) throw ParseError("duplicate vertex '" + item + "' in terminal set");
    }
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw ParseError("empty vertex label in terminal set");
  return out;
}

Vertex parse_one(const std::string& text, int n) {
  const auto v = Vertex::parse(text);
  if (v.dim != n) throw ParseError("vertex '" + text + "' does not have length " + std::to_string(n));
  return v;
}

json labels(std::span<const Vertex> vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

std::string summary_text(const TreeFamily& family) {
  std::ostringstream out;
  out << "AQ_" << family.dim << ", S = {";
  for (std::size_t i = 0; i < family.terminals.size(); ++i) out << (i ? "," : "") << family.terminals[i].to_string();
  out << "}\n";
  out << "case: " << to_string(family.tag) << (family.fallback_used() ? " (fallback search used)" : "") << "\n";
  out << "trees: " << family.size() << "\n";
  for (std::size_t i = 0; i < family.trees.size(); ++i) {
    out << "  T" << i << ":";
    for (const auto& e : family.trees[i].edges) out << " " << e.a.to_string() << "-" << e.b.to_string();
    out << "\n";
  }
  for (const auto& p : family.provenance) {
    out << "  batch " << to_string(p.tag) << " dim " << p.dim << " trees [" << p.first << ", " << p.first + p.count
        << ") via " << p.normalization;
    if (!p.roles.empty()) out << " roles " << p.roles;
    out << "\n";
  }
  return out.str();
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_info(int n, const std::string& format, Streams io) {
  const AugmentedCube g(n);
  const auto conn = connectivity(g);
  const int hager = hager_upper_bound(g, 3);
  if (format == "json") {
    io.out << json{{"n", n},
                   {"vertices", g.vertex_count()},
                   {"degree", g.degree()},
                   {"edges", g.vertex_count() * static_cast<std::uint64_t>(g.degree()) / 2},
                   {"connectivity", conn.value},
                   {"connectivity_exact", conn.exact},
                   {"connectivity_pairs", conn.pairs_examined},
                   {"hager_bound_k3", hager}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "AQ_" << n << "\n";
    io.out << "vertices: " << g.vertex_count() << "\n";
    io.out << "degree: " << g.degree() << "\n";
    io.out << "connectivity: " << conn.value << (conn.exact ? "" : " (upper bound from sampled pairs)") << "\n";
    io.out << "hager bound (k=3): " << hager << "\n";
  }
  return kExitOk;
}

struct ConstructArgs {
  int n = 0;
  std::string set;
  std::string format = "json";
  std::string output;
  bool fidelity = false;
  bool no_fallback = false;
  std::uint64_t budget = ConstructOptions{}.search_budget;
};

int cmd_construct(const ConstructArgs& a, Streams io) {
  const AugmentedCube g(a.n);
  const auto s = parse_set(a.set, a.n);
  if (s.size() != 3) throw ParseError("construct needs exactly 3 vertices, got " + std::to_string(s.size()));

  ConstructOptions options;
  options.fidelity = a.fidelity;
  options.allow_fallback = !a.no_fallback;
  options.search_budget = a.budget;
  const auto family = construct(g, s, options);
  const auto report = verify_family(g, family);

  std::string text;
  if (a.format == "json") {
    text = CertificateDoc::from_family(family).to_json().dump(2) + "\n";
  } else if (a.format == "dot") {
    text = family_to_dot(family);
  } else {
    text = summary_text(family);
  }
  if (a.output.empty()) {
    io.out << text;
  } else {
    std::ofstream file(a.output, std::ios::binary);
    if (!file || !(file << text)) {
      io.err << "error: cannot write " << a.output << "\n";
      return kExitUsage;
    }
  }
  if (!report.accepted() || static_cast<int>(family.size()) != 2 * a.n - 3) {
    io.err << "error: constructed family failed verification\n" << report_to_json(report).dump(2) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, Streams io) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot read " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto doc = CertificateDoc::parse(buffer.str());
  const AugmentedCube g(doc.n);
  const auto report = verify_family(g, doc.to_family());
  auto j = report_to_json(report);
  j["n"] = doc.n;
  j["trees"] = doc.trees.size();
  j["expected_trees"] = std::max(0, 2 * doc.n - 3);
  io.out << j.dump(2) << "\n";
  return report.accepted() ? kExitOk : kExitFailure;
}

struct SweepArgs {
  int n = 0;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool force = false;
  bool no_fallback = false;
  std::string format = "text";
};

int cmd_sweep(const SweepArgs& a, Streams io) {
  if (a.exhaustive == (a.samples > 0)) throw ParseError("sweep needs exactly one of --exhaustive or --samples N");
  if (a.exhaustive && a.n > 5 && !a.force) throw ParseError("exhaustive sweep above n = 5 needs --force");
  const AugmentedCube g(a.n);
  const auto start = std::chrono::steady_clock::now();
  const auto triples = a.exhaustive ? all_triples(g) : sample_triples(g, a.samples, a.seed);
  SweepOptions options;
  options.jobs = a.jobs;
  options.construct.allow_fallback = !a.no_fallback;
  const auto result = run_sweep(g, triples, options);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  if (a.format == "json") {
    io.out << sweep_to_json(result).dump(2) << "\n";
  } else {
    io.out << sweep_to_text(result);
  }
  // Timing varies run to run, so it stays off stdout.
  io.err << "runtime: " << std::fixed << std::setprecision(3) << elapsed.count() << " s\n";
  return result.clean() ? kExitOk : kExitFailure;
}

struct OracleArgs {
  int n = 0;
  std::string set;
  std::uint64_t budget = 50'000'000;
  bool force = false;
  std::string format = "text";
};

int cmd_oracle(const OracleArgs& a, Streams io) {
  if ((std::uint64_t{1} << a.n) > 16 && !a.force) throw ParseError("oracle above 16 vertices needs --force");
  const AugmentedCube g(a.n);
  const auto s = parse_set(a.set, a.n);
  if (s.size() < 2) throw ParseError("oracle needs at least 2 terminals");
  const auto r = oracle_tau(g, s, a.budget);
  if (a.format == "json") {
    json witness = json::array();
    for (const auto& t : r.witness) {
      json edges = json::array();
      for (const auto& e : t.edges) edges.push_back({e.a.to_string(), e.b.to_string()});
      witness.push_back({{"edges", edges}});
    }
    io.out << json{{"n", a.n},     {"s", labels(s)},       {"lower", r.lower},     {"upper", r.upper},
                   {"exact", r.exact}, {"nodes", r.nodes}, {"witness", witness}}
                  .dump(2)
           << "\n";
  } else if (r.exact) {
    io.out << "tau = " << r.lower << " (exact)\n";
  } else {
    io.out << "tau in [" << r.lower << ", " << r.upper << "] (budget exhausted)\n";
  }
  return kExitOk;
}

struct PathsArgs {
  int n = 0;
  std::string u, v;
  int k = 1;
  std::string format = "json";
};

int cmd_paths(const PathsArgs& a, Streams io) {
  const AugmentedCube g(a.n);
  const auto u = parse_one(a.u, a.n);
  const auto v = parse_one(a.v, a.n);
  const auto result = disjoint_paths(GraphView::full(g), u, v, a.k);
  if (const auto* cut = std::get_if<MinCut>(&result)) {
    io.out << min_cut_to_json(*cut).dump(2) << "\n";
    io.err << "only " << cut->path_bound() << " internally disjoint paths exist\n";
    return kExitFailure;
  }
  const auto& ps = std::get<PathSystem>(result);
  if (a.format == "dot") {
    io.out << path_system_to_dot(ps);
  } else if (a.format == "text") {
    for (const auto& p : ps.paths) {
      for (std::size_t i = 0; i < p.vertices.size(); ++i) io.out << (i ? " " : "") << p.vertices[i].to_string();
      io.out << "\n";
    }
  } else {
    io.out << path_system_to_json(ps).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Pendant Steiner tree packings in augmented cubes"};
  app.name("augcube");
  app.require_subcommand(1);

  int info_n = 0;
  std::string info_format = "text";
  auto* info = app.add_subcommand("info", "Basic facts about AQ_n");
  info->add_option("-n", info_n, "dimension")->required()->check(CLI::Range(1, 10));
  info->add_option("--format", info_format)->check(CLI::IsMember({"text", "json"}));

  ConstructArgs ca;
  auto* con = app.add_subcommand("construct", "Build 2n-3 pendant Steiner trees for a 3-set");
  con->add_option("-n", ca.n, "dimension")->required()->check(CLI::Range(3, 20));
  con->add_option("-S", ca.set, "comma separated terminals")->required();
  con->add_option("--format", ca.format)->check(CLI::IsMember({"json", "dot", "text"}));
  con->add_option("--output,-o", ca.output, "write to a file instead of stdout");
  con->add_flag("--fidelity", ca.fidelity, "Hamiltonian paths for the Case1 quarter trees");
  con->add_flag("--no-fallback", ca.no_fallback, "fail instead of searching when a case builder fails");
  con->add_option("--budget", ca.budget, "search node budget");

  std::string verify_path;
  auto* ver = app.add_subcommand("verify", "Check a certificate file");
  ver->add_option("path", verify_path)->required();

  SweepArgs sa;
  auto* swp = app.add_subcommand("sweep", "Construct and verify over many terminal sets");
  swp->add_option("-n", sa.n, "dimension")->required()->check(CLI::Range(3, 20));
  swp->add_flag("--exhaustive", sa.exhaustive);
  swp->add_option("--samples", sa.samples);
  swp->add_option("--seed", sa.seed);
  swp->add_option("--jobs,-j", sa.jobs)->check(CLI::Range(1U, 256U));
  swp->add_flag("--force", sa.force);
  swp->add_flag("--no-fallback", sa.no_fallback);
  swp->add_option("--format", sa.format)->check(CLI::IsMember({"text", "json"}));

  OracleArgs oa;
  auto* ora = app.add_subcommand("oracle", "Exact pendant tree packing number by search");
  ora->add_option("-n", oa.n, "dimension")->required()->check(CLI::Range(1, 6));
  ora->add_option("-S", oa.set, "comma separated terminals")->required();
  ora->add_option("--budget", oa.budget);
  ora->add_flag("--force", oa.force);
  ora->add_option("--format", oa.format)->check(CLI::IsMember({"text", "json"}));

  PathsArgs pa;
  auto* pth = app.add_subcommand("paths", "Internally disjoint u-v paths");
  pth->add_option("-n", pa.n, "dimension")->required()->check(CLI::Range(1, 24));
  pth->add_option("-u", pa.u)->required();
  pth->add_option("-v", pa.v)->required();
  pth->add_option("-k", pa.k)->required();
  pth->add_option("--format", pa.format)->check(CLI::IsMember({"json", "dot", "text"}));

  std::vector<const char*> argv{"augcube"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (info->parsed()) return cmd_info(info_n, info_format, io);
    if (con->parsed()) return cmd_construct(ca, io);
    if (ver->parsed()) return cmd_verify(verify_path, io);
    if (swp->parsed()) return cmd_sweep(sa, io);
    if (ora->parsed()) return cmd_oracle(oa, io);
    if (pth->parsed()) return cmd_paths(pa, io);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AmbiguityError& e) {
    err << "construction failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace augcube
