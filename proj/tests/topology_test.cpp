#include <doctest.h>

#include <set>

#include "augcube/errors.hpp"
#include "augcube/topology.hpp"
#include "support.hpp"

using namespace augcube;
using augcube::testing::v;

namespace {

std::vector<std::string> labels(const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (const auto& x : vs) out.push_back(x.to_string());
  return out;
}

}  // namespace

TEST_CASE("neighbors of small vertices") {
  CHECK(labels(AugmentedCube(3).neighbors(v("000"))) == std::vector<std::string>{"001", "010", "011", "100", "111"});
  CHECK(labels(AugmentedCube(1).neighbors(v("0"))) == std::vector<std::string>{"1"});
  CHECK(labels(AugmentedCube(4).neighbors(v("0000"))) ==
        std::vector<std::string>{"0001", "0010", "0011", "0100", "0111", "1000", "1111"});
  CHECK_THROWS_AS(AugmentedCube(4).neighbors(v("000")), ContractViolation);
}

TEST_CASE("is_adjacent examples") {
  const AugmentedCube g(3);
  CHECK(g.is_adjacent(v("000"), v("111")));
  CHECK_FALSE(g.is_adjacent(v("001"), v("100")));
  CHECK_FALSE(g.is_adjacent(v("000"), v("000")));
  CHECK_THROWS_AS(g.is_adjacent(v("000"), v("0000")), ContractViolation);
}

TEST_CASE("vertex labels") {
  CHECK(v("0101").bits == 5);
  CHECK(v("0101").dim == 4);
  CHECK(Vertex(5, 4).to_string() == "0101");
  CHECK_THROWS_AS(Vertex::parse(""), ParseError);
  CHECK_THROWS_AS(Vertex::parse("01a"), ParseError);
  CHECK_THROWS_AS(Vertex(8, 3), ContractViolation);
}

TEST_CASE("closed form agrees with the recursive definition for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    const AugmentedCube g(n);
    const auto adj = augcube::testing::recursive_adjacency(n);
    REQUIRE(adj.size() == g.vertex_count());
    bool same = true;
    for (std::uint64_t a = 0; a < g.vertex_count(); ++a) {
      std::vector<bool> row(g.vertex_count(), false);
      for (const auto& w : g.neighbors(g.vertex(a))) row[w.bits] = true;
      same = same && row == adj[a];
    }
    CHECK(same);
  }
}

TEST_CASE("regularity and symmetry for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    const AugmentedCube g(n);
    bool ok = true;
    for (std::uint64_t a = 0; a < g.vertex_count(); ++a) {
      const auto nb = g.neighbors(g.vertex(a));
      ok = ok && static_cast<int>(std::set<Vertex>(nb.begin(), nb.end()).size()) == 2 * n - 1;
      for (const auto& w : nb) ok = ok && g.is_adjacent(w, g.vertex(a)) && w != g.vertex(a);
    }
    CHECK_MESSAGE(ok, "n = " << n);
  }
}

TEST_CASE("split side and images") {
  CHECK(split_side(v("0110")) == Side::Zero);
  CHECK(split_side(v("1001")) == Side::One);
  CHECK_THROWS_AS(split_side(v("1")), ContractViolation);
  CHECK(h_image(v("0101")) == v("1101"));
  CHECK(c_image(v("0101")) == v("1010"));
  CHECK(c_image(v("001")) == v("110"));
  CHECK_THROWS_AS(h_image(v("0")), ContractViolation);
  CHECK_THROWS_AS(c_image(v("1")), ContractViolation);
}

TEST_CASE("cross edges form two disjoint perfect matchings for n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    const AugmentedCube g(n);
    std::set<Edge> hs, cs;
    for (const auto& x : sub_cube_vertices(g, "0")) {
      const auto h = h_image(x), c = c_image(x);
      CHECK(split_side(h) == Side::One);
      CHECK(split_side(c) == Side::One);
      CHECK(h != c);
      CHECK(g.is_adjacent(x, h));
      CHECK(g.is_adjacent(x, c));
      hs.insert(Edge(x, h));
      cs.insert(Edge(x, c));
    }
    std::set<Vertex> h_ends, c_ends;
    for (const auto& e : hs) h_ends.insert(e.b);
    for (const auto& e : cs) c_ends.insert(e.b);
    CHECK(h_ends.size() == g.vertex_count() / 2);
    CHECK(c_ends.size() == g.vertex_count() / 2);
    for (const auto& e : hs) CHECK(cs.count(e) == 0);
  }
}

TEST_CASE("quarter property") {
  for (int n = 3; n <= 8; ++n) {
    const AugmentedCube g(n);
    for (const auto& x : sub_cube_vertices(g, "0")) {
      const bool h0 = !((h_image(x).bits >> (n - 2)) & 1U);
      const bool c0 = !((c_image(x).bits >> (n - 2)) & 1U);
      REQUIRE(h0 != c0);
    }
  }
}

TEST_CASE("complement automorphism for n <= 6") {
  CHECK(complement_automorphism(v("0000")) == v("1111"));
  const AugmentedCube g3(3);
  CHECK(g3.is_adjacent(v("000"), v("011")));
  CHECK(g3.is_adjacent(complement_automorphism(v("000")), complement_automorphism(v("011"))));
  CHECK(complement_automorphism(v("011")) == v("100"));
  for (int n = 1; n <= 6; ++n) {
    const AugmentedCube g(n);
    bool ok = true;
    for (std::uint64_t a = 0; a < g.vertex_count(); ++a) {
      const auto x = g.vertex(a);
      ok = ok && complement_automorphism(complement_automorphism(x)) == x;
      for (std::uint64_t b = 0; b < g.vertex_count(); ++b) {
        const auto y = g.vertex(b);
        ok = ok && g.is_adjacent(x, y) == g.is_adjacent(complement_automorphism(x), complement_automorphism(y));
      }
    }
    CHECK_MESSAGE(ok, "n = " << n);
  }
}

TEST_CASE("side isomorphisms for n <= 6") {
  CHECK(side_isomorphism(ImageKind::H, v("0011")) == v("1011"));
  CHECK(side_isomorphism(ImageKind::C, v("0011")) == v("1100"));
  CHECK(side_isomorphism(ImageKind::C, v("000")) == v("111"));
  CHECK(side_isomorphism(ImageKind::C, v("001")) == v("110"));
  CHECK_THROWS_AS(side_isomorphism(ImageKind::H, v("1011")), ContractViolation);
  CHECK_THROWS_AS(side_preimage(ImageKind::C, v("0011")), ContractViolation);
  for (int n = 2; n <= 6; ++n) {
    const AugmentedCube g(n);
    const auto zero = sub_cube_vertices(g, "0");
    for (auto kind : {ImageKind::H, ImageKind::C}) {
      bool ok = true;
      for (const auto& x : zero) {
        ok = ok && side_preimage(kind, side_isomorphism(kind, x)) == x;
        for (const auto& y : zero) {
          ok = ok && g.is_adjacent(x, y) == g.is_adjacent(side_isomorphism(kind, x), side_isomorphism(kind, y));
        }
      }
      CHECK_MESSAGE(ok, "n = " << n);
    }
  }
}

TEST_CASE("translations and the twist are automorphisms for n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    const AugmentedCube g(n);
    for (std::uint64_t t = 0; t < g.vertex_count(); t += (n > 4 ? 7 : 1)) {
      for (bool twist : {false, true}) {
        const Automorphism a(n, t, twist);
        bool ok = a.inverse()(a(g.vertex(t))) == g.vertex(t);
        std::set<Vertex> image;
        for (std::uint64_t x = 0; x < g.vertex_count(); ++x) {
          image.insert(a(g.vertex(x)));
          for (const auto& y : g.neighbors(g.vertex(x))) ok = ok && g.is_adjacent(a(g.vertex(x)), a(y));
        }
        ok = ok && image.size() == g.vertex_count();
        CHECK_MESSAGE(ok, "n = " << n << " t = " << t << " twist = " << twist);
      }
    }
  }
}

TEST_CASE("automorphism composition and complement") {
  const int n = 5;
  const Automorphism a(n, 0b10110, true), b(n, 0b00111, false);
  const auto ab = a.after(b);
  for (std::uint64_t x = 0; x < 32; ++x) {
    const Vertex w(x, n);
    CHECK(ab(w) == a(b(w)));
    CHECK(Automorphism::complement(n)(w) == complement_automorphism(w));
  }
  CHECK(Automorphism::identity(n).is_identity());
  CHECK(Automorphism::identity(n).describe() == "identity");
}

TEST_CASE("twist fixes side Zero and swaps h and c edges") {
  const int n = 5;
  const auto t = Automorphism::twist(n);
  const AugmentedCube g(n);
  for (const auto& x : sub_cube_vertices(g, "0")) {
    CHECK(t(x) == x);
    CHECK(t(h_image(x)) == c_image(x));
    CHECK(t(c_image(x)) == h_image(x));
  }
}

TEST_CASE("sub cubes") {
  const AugmentedCube g3(3);
  CHECK(labels(sub_cube_vertices(g3, "1")) == std::vector<std::string>{"100", "101", "110", "111"});
  CHECK(sub_cube_vertices(g3, "").size() == 8);
  CHECK_THROWS_AS(sub_cube_vertices(g3, "101"), ContractViolation);

  const AugmentedCube g4(4);
  const auto q = sub_cube_vertices(g4, "10");
  REQUIRE(q.size() == 4);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) CHECK(g4.is_adjacent(q[i], q[j]));

  for (int n = 3; n <= 6; ++n) {
    const AugmentedCube g(n), lower(n - 2);
    for (const char* prefix : {"10", "11", "01"}) {
      const auto sub = sub_cube_vertices(g, prefix);
      for (const auto& x : sub)
        for (const auto& y : sub) {
          const Vertex xs(x.bits & ((1ULL << (n - 2)) - 1), n - 2), ys(y.bits & ((1ULL << (n - 2)) - 1), n - 2);
          REQUIRE(g.is_adjacent(x, y) == lower.is_adjacent(xs, ys));
        }
    }
  }
}

TEST_CASE("prefix helpers and views") {
  CHECK(strip_leading(v("1011")) == v("011"));
  CHECK(prepend_bit(v("011"), true) == v("1011"));
  const AugmentedCube g(4);
  const auto view = GraphView::prefix(g, "0");
  CHECK(view.size() == 8);
  CHECK(view.contains(v("0111")));
  CHECK_FALSE(view.contains(v("1111")));
  CHECK(view.neighbors(v("0000")).size() == 5);
  CHECK(view.without({v("0001")}).size() == 7);
  CHECK(GraphView::full(g).size() == 16);
}
