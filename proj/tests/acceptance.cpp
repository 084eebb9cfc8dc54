// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "augcube/cli.hpp"
#include "augcube/construct.hpp"
#include "augcube/sweep.hpp"
#include "augcube/verify.hpp"
#include "support.hpp"

using namespace augcube;
using augcube::testing::v;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string cli_stdout(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  if (code) *code = rc;
  return out.str();
}

Outcome exhaustive_small() {
  std::ostringstream detail;
  bool pass = true;
  for (int n : {3, 4}) {
    const AugmentedCube g(n);
    const auto r = run_sweep(g, all_triples(g));
    pass = pass && r.clean() && r.min_size == static_cast<std::size_t>(2 * n - 3);
    detail << "n=" << n << ": " << r.triples << " triples, sizes " << r.min_size << ".." << r.max_size
           << ", rejected " << r.verification_failures + r.construct_errors << (n == 3 ? "; " : "");
  }
  return {pass, detail.str()};
}

Outcome exhaustive_five() {
  const AugmentedCube g(5);
  const auto r = run_sweep(g, all_triples(g));
  bool image = false, nonimage = false;
  for (const auto& [tag, count] : r.tag_counts) {
    image = image || is_image_case(tag);
    nonimage = nonimage || is_nonimage_case(tag);
  }
  const bool case1 = r.tag_counts.count(CaseTag::Case1) > 0;
  std::ostringstream detail;
  detail << r.triples << " triples, sizes " << r.min_size << ".." << r.max_size << ", rejected "
         << r.verification_failures + r.construct_errors << ", Case1 " << (case1 ? "seen" : "missing") << ", 2.1.* "
         << (image ? "seen" : "missing") << ", 2.2.* " << (nonimage ? "seen" : "missing");
  return {r.triples == 4960 && r.clean() && r.min_size == 7 && case1 && image && nonimage, detail.str()};
}

Outcome tightness() {
  const AugmentedCube g(3);
  const auto tris = augcube::testing::triangles(g);
  bool pass = !tris.empty();
  for (const auto& t : tris) {
    const auto r = oracle_tau(g, t, 50'000'000);
    pass = pass && r.exact && r.lower == 3;
  }
  const int hager = hager_upper_bound(g, 3);
  return {pass && hager == 3,
          std::to_string(tris.size()) + " triangles, oracle 3 on each, hager bound " + std::to_string(hager)};
}

Outcome small_sets() {
  const AugmentedCube g(3);
  const std::vector<Vertex> b{v("001"), v("010"), v("100")}, a{v("000"), v("001"), v("011")};
  const auto rb = oracle_tau(g, b, 50'000'000);
  const auto ra = oracle_tau(g, a, 50'000'000);
  const auto four = base_case_search(g, b, 4);
  const bool four_ok = four.size() == 4 && verify_family(g, four).accepted();
  return {rb.lower >= 4 && four_ok && ra.lower >= 3,
          "tau{001,010,100} = " + std::to_string(rb.lower) + ", 4-family verified " + (four_ok ? "yes" : "no") +
              ", tau{000,001,011} = " + std::to_string(ra.lower)};
}

Outcome connectivity_facts() {
  const int expected[] = {0, 0, 0, 4, 7, 9};
  bool pass = true;
  std::ostringstream detail;
  for (int n = 3; n <= 5; ++n) {
    const auto c = connectivity(AugmentedCube(n));
    pass = pass && c.exact && c.value == expected[n];
    detail << "kappa(AQ_" << n << ") = " << c.value << "; ";
  }
  for (int n = 1; n <= 4; ++n) {
    const int brute = augcube::testing::brute_connectivity(augcube::testing::recursive_adjacency(n));
    pass = pass && brute == connectivity(AugmentedCube(n)).value;
  }
  detail << "brute force agrees for n <= 4";
  return {pass, detail.str()};
}

Outcome property_suites() {
  std::string failed;
  auto need = [&failed](bool ok, const char* what) {
    if (!ok && failed.empty()) failed = what;
  };
  for (int n = 1; n <= 8; ++n) {
    const AugmentedCube g(n);
    const auto adj = augcube::testing::recursive_adjacency(n);
    for (std::uint64_t a = 0; a < g.vertex_count(); ++a) {
      const auto nb = g.neighbors(g.vertex(a));
      need(static_cast<int>(nb.size()) == 2 * n - 1, "regularity");
      std::vector<bool> row(g.vertex_count(), false);
      for (const auto& w : nb) row[w.bits] = true;
      need(row == adj[a], "recursive definition");
    }
  }
  for (int n = 2; n <= 6; ++n) {
    const AugmentedCube g(n);
    std::set<Vertex> h_ends, c_ends;
    for (const auto& x : sub_cube_vertices(g, "0")) {
      h_ends.insert(h_image(x));
      c_ends.insert(c_image(x));
      need(h_image(x) != c_image(x), "matchings disjoint");
    }
    need(h_ends.size() == g.vertex_count() / 2 && c_ends.size() == g.vertex_count() / 2, "perfect matchings");
    for (std::uint64_t a = 0; a < g.vertex_count(); ++a)
      for (std::uint64_t b = 0; b < g.vertex_count(); ++b) {
        const auto x = g.vertex(a), y = g.vertex(b);
        need(g.is_adjacent(x, y) == g.is_adjacent(complement_automorphism(x), complement_automorphism(y)),
             "complement automorphism");
      }
  }

  const AugmentedCube g(5);
  const std::vector<Vertex> s{v("00000"), v("00111"), v("10101")};
  const auto family = construct(g, s);
  auto cut = family;
  cut.trees[0].edges.pop_back();
  need(verify_family(g, cut).has(ViolationKind::Disconnected), "mutation: deleted edge");
  auto dup = family;
  dup.trees[1] = dup.trees[0];
  need(verify_family(g, dup).has(ViolationKind::SharedVertex), "mutation: shared vertex");
  const auto ps = std::get<PathSystem>(disjoint_paths(GraphView::full(g), v("00000"), v("11111"), 9));
  auto bad = ps;
  bad.paths.push_back(bad.paths.front());
  need(!check_path_system(g, ps).has_value() && check_path_system(g, bad).has_value(), "path system mutation");

  const std::vector<std::string> args{"sweep", "-n", "5", "--exhaustive", "--jobs", "2"};
  need(cli_stdout(args) == cli_stdout(args), "determinism");
  need(cli_stdout({"construct", "-n", "7", "-S", "0000000,0101010,1110001"}) ==
           cli_stdout({"construct", "-n", "7", "-S", "0000000,0101010,1110001"}),
       "determinism");
  return {failed.empty(), failed.empty() ? "topology n<=8, mutations, determinism" : "failed: " + failed};
}

Outcome fidelity_accounting() {
  std::ostringstream detail;
  bool pass = true;
  for (int n = 3; n <= 5; ++n) {
    const AugmentedCube g(n);
    const auto r = run_sweep(g, all_triples(g));
    detail << "fallback n=" << n << ": " << r.fallback_count << "/" << r.triples << "; ";
    SweepOptions strict;
    strict.construct.allow_fallback = false;
    const auto s = run_sweep(g, all_triples(g), strict);
    if (!s.clean()) {
      pass = false;
      detail << "--no-fallback fails at n=" << n << ": "
             << (s.failures.empty() ? std::string("?") : s.failures.front().message) << "; ";
    }
  }
  detail << "--no-fallback " << (pass ? "clean" : "not clean");
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 exhaustive n=3,4 families have size 2n-3 and verify", exhaustive_small},
      {"2 exhaustive n=5 families have size 7; Case1, 2.1.*, 2.2.* occur", exhaustive_five},
      {"3 triangles in AQ_3 have tau = 3 = hager bound", tightness},
      {"4 AQ_3 sets {001,010,100} and {000,001,011}", small_sets},
      {"5 connectivity 4, 7, 9 for n = 3, 4, 5", connectivity_facts},
      {"6 property suites", property_suites},
      {"7 fallback accounting", fidelity_accounting},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    std::printf("%s criterion %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                secs.count());
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
