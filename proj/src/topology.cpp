#include "augcube/topology.hpp"

#include <algorithm>
#include <bit>

#include "augcube/errors.hpp"

namespace augcube {

namespace {

std::uint64_t mask_of(int dim) {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

std::uint64_t trailing_mask(int dim) { return mask_of(dim - 1); }

void require_split(const Vertex& v, const char* op) {
  if (v.dim < 2) {
    throw ContractViolation(std::string(op) + ": vertex " + v.to_string() + " has no split (dim < 2)");
  }
}

}  // namespace

Vertex::Vertex(std::uint64_t b, int d) : bits(b), dim(d) {
  if (d < 1 || d > kMaxDim) {
    throw ContractViolation("vertex dimension " + std::to_string(d) + " outside 1.." + std::to_string(kMaxDim));
  }
  if ((b & ~mask_of(d)) != 0) {
    throw ContractViolation("vertex bits exceed dimension " + std::to_string(d));
  }
}

std::string Vertex::to_string() const {
  std::string out(static_cast<std::size_t>(dim), '0');
  for (int i = 0; i < dim; ++i) {
    if ((bits >> (dim - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Vertex Vertex::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ParseError("vertex label must have 1.." + std::to_string(kMaxDim) + " binary digits, got '" +
                     std::string(text) + "'");
  }
  std::uint64_t bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw ParseError("vertex label '" + std::string(text) + "' is not binary");
    bits = (bits << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return Vertex(bits, static_cast<int>(text.size()));
}

Edge::Edge(Vertex u, Vertex v) : a(std::min(u, v)), b(std::max(u, v)) {}

AugmentedCube::AugmentedCube(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ContractViolation("dimension " + std::to_string(dim) + " outside 1.." + std::to_string(kMaxDim));
  }
  for (int j = 0; j < dim; ++j) generators_.push_back(std::uint64_t{1} << j);
  for (int len = 2; len <= dim; ++len) generators_.push_back(mask_of(len));
  std::sort(generators_.begin(), generators_.end());
}

void AugmentedCube::require(const Vertex& v) const {
  if (v.dim != dim_) {
    throw ContractViolation("vertex " + v.to_string() + " does not belong to AQ_" + std::to_string(dim_));
  }
}

std::vector<Vertex> AugmentedCube::neighbors(const Vertex& v) const {
  require(v);
  std::vector<Vertex> out;
  out.reserve(generators_.size());
  for (auto d : generators_) out.emplace_back(v.bits ^ d, dim_);
  std::sort(out.begin(), out.end());
  return out;
}

bool AugmentedCube::is_adjacent(const Vertex& u, const Vertex& v) const {
  require(u);
  require(v);
  return adjacent_bits(u.bits, v.bits, dim_);
}

bool adjacent_bits(std::uint64_t u, std::uint64_t v, int dim) {
  const std::uint64_t d = u ^ v;
  if (d == 0 || (d & ~mask_of(dim)) != 0) return false;
  if (std::has_single_bit(d)) return true;
  // suffix of ones: d + 1 is a power of two
  return std::has_single_bit(d + 1);
}

Side split_side(const Vertex& v) {
  require_split(v, "split_side");
  return v.leading_bit() ? Side::One : Side::Zero;
}

Vertex h_image(const Vertex& v) {
  require_split(v, "h_image");
  return Vertex(v.bits ^ (std::uint64_t{1} << (v.dim - 1)), v.dim);
}

Vertex c_image(const Vertex& v) {
  require_split(v, "c_image");
  return Vertex(v.bits ^ mask_of(v.dim), v.dim);
}

Vertex complement_automorphism(const Vertex& v) { return Vertex(v.bits ^ mask_of(v.dim), v.dim); }

Vertex side_isomorphism(ImageKind kind, const Vertex& v) {
  if (split_side(v) != Side::Zero) {
    throw ContractViolation("side_isomorphism: " + v.to_string() + " is not on side Zero");
  }
  return kind == ImageKind::H ? h_image(v) : c_image(v);
}

Vertex side_preimage(ImageKind kind, const Vertex& v) {
  if (split_side(v) != Side::One) {
    throw ContractViolation("side_preimage: " + v.to_string() + " is not on side One");
  }
  return kind == ImageKind::H ? h_image(v) : c_image(v);
}

std::vector<Vertex> sub_cube_vertices(const AugmentedCube& g, std::string_view prefix) {
  const int len = static_cast<int>(prefix.size());
  if (len >= g.dim()) {
    throw ContractViolation("prefix '" + std::string(prefix) + "' too long for AQ_" + std::to_string(g.dim()));
  }
  std::uint64_t head = 0;
  for (char ch : prefix) {
    if (ch != '0' && ch != '1') throw ParseError("prefix '" + std::string(prefix) + "' is not binary");
    head = (head << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  const int free_bits = g.dim() - len;
  std::vector<Vertex> out;
  out.reserve(std::size_t{1} << free_bits);
  for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << free_bits); ++tail) {
    out.emplace_back((head << free_bits) | tail, g.dim());
  }
  return out;
}

Vertex strip_leading(const Vertex& v) {
  require_split(v, "strip_leading");
  return Vertex(v.bits & trailing_mask(v.dim), v.dim - 1);
}

Vertex prepend_bit(const Vertex& v, bool bit) {
  return Vertex(v.bits | (bit ? std::uint64_t{1} << v.dim : 0), v.dim + 1);
}

// ---------------------------------------------------------------------------
// Automorphism

Automorphism::Automorphism(int dim, std::uint64_t translate, bool twist)
    : dim_(dim), translate_(translate & mask_of(dim)), twist_(twist && dim >= 2) {}

Automorphism Automorphism::complement(int dim) { return {dim, mask_of(dim), false}; }

std::uint64_t Automorphism::linear(std::uint64_t bits) const {
  if (!twist_) return bits;
  if ((bits >> (dim_ - 1)) & 1U) return bits ^ trailing_mask(dim_);
  return bits;
}

Vertex Automorphism::operator()(const Vertex& v) const {
  if (v.dim != dim_) throw ContractViolation("automorphism applied across dimensions");
  return Vertex(linear(v.bits) ^ translate_, dim_);
}

Automorphism Automorphism::after(const Automorphism& inner) const {
  if (inner.dim_ != dim_) throw ContractViolation("composing automorphisms of different dimensions");
  // L_a(L_b(v) ^ t_b) ^ t_a = L_a L_b (v) ^ (L_a(t_b) ^ t_a)
  return {dim_, linear(inner.translate_) ^ translate_, twist_ != inner.twist_};
}

Automorphism Automorphism::inverse() const {
  // v = L(w) ^ t  =>  w = L(v) ^ L(t), L being an involution
  return {dim_, linear(translate_), twist_};
}

std::string Automorphism::describe() const {
  if (is_identity()) return "identity";
  std::string out;
  if (twist_) out = "twist";
  if (translate_ == mask_of(dim_)) {
    out += out.empty() ? "complement" : "+complement";
  } else if (translate_ != 0) {
    out += (out.empty() ? "xor:" : "+xor:") + Vertex(translate_, dim_).to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// GraphView

GraphView::GraphView(const AugmentedCube& g) : host_(g) {
  if (g.dim() > 30) throw ContractViolation("graph views are limited to dim <= 30");
  member_.assign(g.vertex_count(), false);
}

GraphView GraphView::full(const AugmentedCube& g) {
  GraphView view(g);
  std::fill(view.member_.begin(), view.member_.end(), true);
  view.size_ = view.member_.size();
  return view;
}

GraphView GraphView::prefix(const AugmentedCube& g, std::string_view prefix) {
  return of(g, sub_cube_vertices(g, prefix));
}

GraphView GraphView::of(const AugmentedCube& g, const std::vector<Vertex>& vertices) {
  GraphView view(g);
  for (const auto& v : vertices) {
    if (!g.contains(v)) throw ContractViolation("vertex " + v.to_string() + " outside host graph");
    if (!view.member_[v.bits]) {
      view.member_[v.bits] = true;
      ++view.size_;
    }
  }
  return view;
}

bool GraphView::contains(const Vertex& v) const { return host_.contains(v) && member_[v.bits]; }

std::vector<Vertex> GraphView::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size_);
  for (std::uint64_t b = 0; b < member_.size(); ++b) {
    if (member_[b]) out.emplace_back(b, host_.dim());
  }
  return out;
}

std::vector<Vertex> GraphView::neighbors(const Vertex& v) const {
  auto all = host_.neighbors(v);
  std::erase_if(all, [&](const Vertex& w) { return !member_[w.bits]; });
  return all;
}

GraphView GraphView::without(const std::vector<Vertex>& removed) const {
  GraphView copy = *this;
  for (const auto& v : removed) {
    if (copy.contains(v)) {
      copy.member_[v.bits] = false;
      --copy.size_;
    }
  }
  return copy;
}

}  // namespace augcube
