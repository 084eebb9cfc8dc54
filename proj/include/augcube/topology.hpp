#pragma once

// Bit-level model of the n-dimensional augmented cube AQ_n.
//
// A vertex is an n-bit label x1 x2 ... xn, with x1 stored as the most
// significant bit. Two vertices are adjacent iff their labels differ in
// exactly one position, or differ exactly on a suffix x_i ... x_n of length
// at least two. That closed form is equivalent to the usual recursive
// definition (two copies of AQ_{n-1} joined by the hypercube matching and the
// complement matching); the test suite checks the equivalence.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace augcube {

inline constexpr int kMaxDim = 62;

struct Vertex {
  std::uint64_t bits = 0;
  int dim = 0;

  Vertex() = default;
  Vertex(std::uint64_t b, int d);

  /// Zero-padded binary string of length dim, leading bit first.
  std::string to_string() const;
  static Vertex parse(std::string_view text);

  bool leading_bit() const { return (bits >> (dim - 1)) & 1U; }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

/// Unordered vertex pair, stored with a < b.
struct Edge {
  Vertex a;
  Vertex b;

  Edge() = default;
  Edge(Vertex u, Vertex v);

  bool touches(const Vertex& v) const { return a == v || b == v; }
  const Vertex& other(const Vertex& v) const { return a == v ? b : a; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    return std::hash<std::uint64_t>{}(v.bits * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(v.dim));
  }
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    VertexHash h;
    return h(e.a) * 31U ^ h(e.b);
  }
};

enum class Side { Zero, One };
enum class ImageKind { H, C };

class AugmentedCube {
 public:
  explicit AugmentedCube(int dim);

  int dim() const { return dim_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << dim_; }
  int degree() const { return 2 * dim_ - 1; }

  bool contains(const Vertex& v) const { return v.dim == dim_; }
  Vertex vertex(std::uint64_t bits) const { return Vertex(bits, dim_); }

  /// The 2n-1 neighbours of v in ascending label order.
  std::vector<Vertex> neighbors(const Vertex& v) const;
  bool is_adjacent(const Vertex& u, const Vertex& v) const;

  /// Difference masks d with u ~ v iff u ^ v == d, ascending.
  const std::vector<std::uint64_t>& generators() const { return generators_; }

 private:
  void require(const Vertex& v) const;

  int dim_;
  std::vector<std::uint64_t> generators_;
};

/// True iff u ^ v is a generator of AQ_dim. Dimensions are not checked.
bool adjacent_bits(std::uint64_t u, std::uint64_t v, int dim);

Side split_side(const Vertex& v);

/// v with only the leading bit flipped.
Vertex h_image(const Vertex& v);
/// v with every bit complemented.
Vertex c_image(const Vertex& v);

/// Full bitwise complement; an involutive automorphism swapping the two copies.
Vertex complement_automorphism(const Vertex& v);

/// Maps a side-Zero vertex to its H or C partner on side One. Restricted to
/// the copies, both maps are isomorphisms AQ^0_{n-1} -> AQ^1_{n-1}.
Vertex side_isomorphism(ImageKind kind, const Vertex& v);
/// Inverse of side_isomorphism: a side-One vertex back to side Zero.
Vertex side_preimage(ImageKind kind, const Vertex& v);

/// All vertices whose label starts with `prefix` (a string over {0,1}).
std::vector<Vertex> sub_cube_vertices(const AugmentedCube& g, std::string_view prefix);

/// Drops the leading bit (dim -> dim-1). Used to move between AQ_n and a copy.
Vertex strip_leading(const Vertex& v);
/// Prepends one bit (dim -> dim+1).
Vertex prepend_bit(const Vertex& v, bool bit);

/// Automorphisms of the form v -> L(v) ^ t, where L is either the identity or
/// the "twist" that complements the trailing n-1 bits of side-One vertices.
/// Translations (XOR by a fixed label) are automorphisms because AQ_n is a
/// Cayley graph on Z_2^n; the twist is a linear map that fixes the generator
/// set, so it is one as well. It exchanges hypercube and complement
/// cross-edges while fixing side Zero pointwise.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(int dim, std::uint64_t translate, bool twist);

  static Automorphism identity(int dim) { return {dim, 0, false}; }
  static Automorphism complement(int dim);
  static Automorphism translation(int dim, std::uint64_t t) { return {dim, t, false}; }
  static Automorphism twist(int dim) { return {dim, 0, true}; }

  Vertex operator()(const Vertex& v) const;
  Edge operator()(const Edge& e) const { return Edge((*this)(e.a), (*this)(e.b)); }

  /// (*this) after `inner`.
  Automorphism after(const Automorphism& inner) const;
  Automorphism inverse() const;

  bool is_identity() const { return translate_ == 0 && !twist_; }
  std::uint64_t translate() const { return translate_; }
  bool twisted() const { return twist_; }
  std::string describe() const;

 private:
  std::uint64_t linear(std::uint64_t bits) const;

  int dim_ = 0;
  std::uint64_t translate_ = 0;
  bool twist_ = false;
};

/// A vertex-filtered induced subgraph of AQ_n. Membership is a bitmap, so
/// views are meant for moderate n (2^n bytes).
class GraphView {
 public:
  static GraphView full(const AugmentedCube& g);
  static GraphView prefix(const AugmentedCube& g, std::string_view prefix);
  static GraphView of(const AugmentedCube& g, const std::vector<Vertex>& vertices);

  const AugmentedCube& host() const { return host_; }
  bool contains(const Vertex& v) const;
  std::size_t size() const { return size_; }

  /// Members in ascending order.
  std::vector<Vertex> vertices() const;
  /// Neighbours of v inside the view, ascending.
  std::vector<Vertex> neighbors(const Vertex& v) const;

  GraphView without(const std::vector<Vertex>& removed) const;

 private:
  explicit GraphView(const AugmentedCube& g);

  AugmentedCube host_;
  std::vector<bool> member_;
  std::size_t size_ = 0;
};

}  // namespace augcube
