#include <doctest.h>

#include <set>
#include <thread>

#include "augcube/construct.hpp"
#include "augcube/errors.hpp"
#include "augcube/sweep.hpp"
#include "augcube/verify.hpp"
#include "support.hpp"

using namespace augcube;
using augcube::testing::v;

namespace {

std::vector<Vertex> set_of(std::initializer_list<const char*> labels) {
  std::vector<Vertex> out;
  for (const auto* l : labels) out.push_back(v(l));
  return out;
}

void check_family(const AugmentedCube& g, const std::vector<Vertex>& s, const TreeFamily& f) {
  CHECK(f.size() == static_cast<std::size_t>(2 * g.dim() - 3));
  CHECK(verify_family(g, f).accepted());
  CHECK(f.terminals == s);
}

}  // namespace

TEST_CASE("classify examples") {
  const AugmentedCube g(4);
  CHECK(classify(g, set_of({"0000", "0001", "0010"})).tag == CaseTag::Case1);
  CHECK(is_image_case(classify(g, set_of({"0000", "0011", "1100"})).tag));
  CHECK(is_nonimage_case(classify(g, set_of({"0000", "0011", "1110"})).tag));
  CHECK(is_image_case(classify(g, set_of({"0000", "0111", "1000"})).tag));
  // Two terminals on side One: normalized by an automorphism first.
  const auto c = classify(g, set_of({"1000", "1011", "0001"}));
  CHECK_FALSE(c.normalization.is_identity());
  int zero = 0;
  for (const auto& r : c.roles) zero += split_side(r) == Side::Zero ? 1 : 0;
  CHECK(zero >= 2);
}

TEST_CASE("classify contract") {
  const AugmentedCube g(4);
  CHECK_THROWS_AS(classify(g, set_of({"0000", "0000", "0001"})), ContractViolation);
  CHECK_THROWS_AS(classify(g, set_of({"0000", "0001"})), ContractViolation);
  CHECK_THROWS_AS(classify(g, set_of({"0000", "0001", "001"})), ContractViolation);
  CHECK_THROWS_AS(classify(AugmentedCube(2), set_of({"00", "01", "10"})), ContractViolation);
  CHECK_THROWS_AS(construct(AugmentedCube(2), set_of({"00", "01", "10"})), ContractViolation);
}

TEST_CASE("subcase 2.1.1 trigger") {
  // y is the full trailing complement of x, so x^h = y^c and x^c = y^h.
  const AugmentedCube g(5);
  const auto s = set_of({"00000", "01111", "10000"});
  CHECK(classify(g, s).tag == CaseTag::Case2_1_1);
  check_family(g, s, construct(g, s));
}

TEST_CASE("construct examples") {
  const AugmentedCube g3(3);
  check_family(g3, set_of({"000", "001", "011"}), construct(g3, set_of({"000", "001", "011"})));

  const AugmentedCube g4(4);
  const auto image = construct(g4, set_of({"0000", "0011", "1100"}));
  check_family(g4, set_of({"0000", "0011", "1100"}), image);
  CHECK(is_image_case(image.tag));
  CHECK(image.provenance.front().tag == CaseTag::Base4);
  check_family(g4, set_of({"0000", "0111", "1000"}), construct(g4, set_of({"0000", "0111", "1000"})));
  const auto nonimage = construct(g4, set_of({"0000", "0011", "1110"}));
  check_family(g4, set_of({"0000", "0011", "1110"}), nonimage);
  CHECK(is_nonimage_case(nonimage.tag));

  const AugmentedCube g5(5);
  const auto s = set_of({"00000", "00001", "00010"});
  const auto case1 = construct(g5, s);
  check_family(g5, s, case1);
  CHECK(case1.tag == CaseTag::Case1);
  std::size_t recursive = 0, quarters = 0;
  for (const auto& b : case1.provenance) {
    if (b.dim == 4) recursive += b.count;
    if (b.tag == CaseTag::Case1 && b.dim == 5) quarters += b.count;
  }
  CHECK(recursive == 5);
  CHECK(quarters == 2);
}

TEST_CASE("every triple gets 2n-3 verified trees for n = 3, 4, 5") {
  for (int n = 3; n <= 5; ++n) {
    const AugmentedCube g(n);
    const auto r = run_sweep(g, all_triples(g));
    CAPTURE(n);
    CHECK(r.triples == (n == 3 ? 56U : n == 4 ? 560U : 4960U));
    CHECK(r.clean());
    CHECK(r.min_size == static_cast<std::size_t>(2 * n - 3));
  }
}

TEST_CASE("sampled triples for n = 6..9") {
  for (int n = 6; n <= 9; ++n) {
    const AugmentedCube g(n);
    const auto r = run_sweep(g, sample_triples(g, n == 6 ? 500 : 150, 7 + n));
    CAPTURE(n);
    CHECK(r.clean());
    CHECK(r.min_size == static_cast<std::size_t>(2 * n - 3));
  }
}

TEST_CASE("case coverage at n = 5") {
  const AugmentedCube g(5);
  const auto r = run_sweep(g, all_triples(g));
  bool image = false, nonimage = false;
  for (const auto& [tag, count] : r.tag_counts) {
    image = image || is_image_case(tag);
    nonimage = nonimage || is_nonimage_case(tag);
  }
  CHECK(r.tag_counts.count(CaseTag::Case1) == 1);
  CHECK(image);
  CHECK(nonimage);
  MESSAGE("fallback fraction at n = 5: " << r.fallback_fraction());
}

TEST_CASE("case builders need no fallback for n = 5, 6") {
  SweepOptions strict;
  strict.construct.allow_fallback = false;
  const AugmentedCube g5(5);
  CHECK(run_sweep(g5, all_triples(g5), strict).clean());
  const AugmentedCube g6(6);
  CHECK(run_sweep(g6, sample_triples(g6, 600, 99), strict).clean());
}

TEST_CASE("fidelity mode uses Hamiltonian quarter paths and still verifies") {
  ConstructOptions fidelity;
  fidelity.fidelity = true;
  for (int n = 5; n <= 7; ++n) {
    const AugmentedCube g(n);
    const std::vector<Vertex> s{g.vertex(0), g.vertex(5), g.vertex(6)};
    const auto f = construct(g, s, fidelity);
    CHECK(f.tag == CaseTag::Case1);
    check_family(g, s, f);
  }
}

TEST_CASE("automorphism equivariance") {
  for (int n = 3; n <= 6; ++n) {
    const AugmentedCube g(n);
    const auto triples = sample_triples(g, 40, 1000 + n);
    for (const auto& t : triples) {
      const auto f = construct(g, t);
      for (std::uint64_t shift : {std::uint64_t{0}, std::uint64_t{0b101}, g.vertex_count() - 1}) {
        for (bool twist : {false, true}) {
          const Automorphism a(n, shift, twist);
          const auto img = apply(a, f);
          CHECK(verify_family(g, img).accepted());
          CHECK(img.terminals == std::vector<Vertex>{a(t[0]), a(t[1]), a(t[2])});
        }
      }
      const auto comp = apply(Automorphism::complement(n), f);
      CHECK(verify_family(g, comp).accepted());
    }
  }
}

TEST_CASE("embedding lifts families into a copy") {
  const AugmentedCube g3(3), g4(4);
  const auto f = construct(g3, set_of({"000", "001", "011"}));
  for (bool bit : {false, true}) {
    const auto lifted = embed(f, bit);
    CHECK(lifted.dim == 4);
    CHECK(verify_family(g4, lifted).accepted());
    for (const auto& t : lifted.terminals) CHECK(t.leading_bit() == bit);
  }
  const TreeFamily empty{3, set_of({"000", "001", "011"}), {}, CaseTag::Base3, {}};
  CHECK(embed(empty, false).trees.empty());
}

TEST_CASE("base case search") {
  const AugmentedCube g3(3);
  const auto four = base_case_search(g3, set_of({"001", "010", "100"}), 4);
  CHECK(four.size() == 4);
  CHECK(verify_family(g3, four).accepted());
  const auto three = base_case_search(g3, set_of({"000", "001", "011"}), 3);
  CHECK(three.size() == 3);
  CHECK(verify_family(g3, three).accepted());
  CHECK_THROWS_AS(base_case_search(AugmentedCube(5), set_of({"00000", "00001", "00011"}), 7), ContractViolation);

  // Orbits under translations and the twist share a cache entry.
  const auto before = detail::base_cache_size();
  for (const auto& t : all_triples(g3)) base_case_search(g3, t, 3);
  const auto after = detail::base_cache_size();
  CHECK(after - before < 56);
}

TEST_CASE("base cache tolerates concurrent callers") {
  const AugmentedCube g(4);
  const auto triples = all_triples(g);
  std::vector<std::size_t> sizes(triples.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < triples.size(); i += 4) sizes[i] = base_case_search(g, triples[i], 5).size();
      });
    }
  }
  for (auto s : sizes) CHECK(s == 5);
}

TEST_CASE("fallback search completes families on its own") {
  for (int n = 3; n <= 6; ++n) {
    const AugmentedCube g(n);
    const std::vector<Vertex> s{g.vertex(1), g.vertex(2), g.vertex(g.vertex_count() - 3)};
    const auto trees = fallback_search(g, s, 2 * n - 3, {}, 5'000'000);
    REQUIRE(trees.has_value());
    TreeFamily f{n, s, *trees, CaseTag::FallbackSearch, {}};
    CHECK(f.size() == static_cast<std::size_t>(2 * n - 3));
    CHECK(verify_family(g, f).accepted());
  }
}

TEST_CASE("fallback search keeps a valid seed and reports budget exhaustion") {
  const AugmentedCube g(5);
  const auto s = set_of({"00000", "00111", "10101"});
  const auto full = construct(g, s);
  std::vector<SteinerTree> seed(full.trees.begin(), full.trees.begin() + 4);
  const auto done = fallback_search(g, s, 7, seed, 5'000'000);
  REQUIRE(done.has_value());
  CHECK(std::equal(seed.begin(), seed.end(), done->begin()));
  // A triangle leaves each terminal 2n-3 free neighbours, so 8 is impossible.
  const auto tri = set_of({"00000", "00001", "00011"});
  CHECK_FALSE(fallback_search(g, tri, 8, {}, 2000).has_value());
  CHECK_FALSE(fallback_search(g, tri, 8, {}, 200'000).has_value());
}

TEST_CASE("construct is deterministic") {
  const AugmentedCube g(6);
  for (const auto& t : sample_triples(g, 30, 5)) CHECK(construct(g, t).trees == construct(g, t).trees);
}
