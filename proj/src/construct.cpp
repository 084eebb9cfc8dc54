#include "augcube/construct.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <variant>

#include "augcube/errors.hpp"
#include "augcube/paths.hpp"
#include "augcube/verify.hpp"

namespace augcube {

namespace {

// Raised inside a case builder when one of its ingredients is missing (a path
// system of the required order, a Hamiltonian path); handled like a
// verification failure.
class BuilderFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string list_vertices(std::span<const Vertex> vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : ",") + v.to_string();
  return out;
}

std::uint64_t trailing_mask(int dim) { return (std::uint64_t{1} << (dim - 1)) - 1; }

Vertex image(ImageKind kind, const Vertex& v) { return side_isomorphism(kind, v); }

// ---------------------------------------------------------------------------
// Tree assembly helpers

class TreeBuilder {
 public:
  explicit TreeBuilder(std::vector<Vertex> terminals) { tree_.terminals = std::move(terminals); }

  TreeBuilder& edge(const Vertex& a, const Vertex& b) {
    tree_.edges.emplace_back(a, b);
    return *this;
  }

  TreeBuilder& path(const Path& p, std::size_t from = 0) {
    for (std::size_t j = from; j + 1 < p.vertices.size(); ++j) edge(p.vertices[j], p.vertices[j + 1]);
    return *this;
  }

  SteinerTree done() {
    tree_.canonicalize();
    return std::move(tree_);
  }

 private:
  SteinerTree tree_;
};

Vertex anchor_neighbor(const Path& p, const Vertex& anchor) {
  return p.front() == anchor ? p.vertices[1] : p.vertices[p.vertices.size() - 2];
}

// P_i  u  (Q_i minus its first edge)  u  <a_i, a_i'>, where a_i is the
// neighbour of `anchor` on P_i and Q_i leaves the anchor's image through a_i'.
SteinerTree attached_tree(const std::vector<Vertex>& terms, const Path& p, const Path& q, const Vertex& anchor) {
  return TreeBuilder(terms).path(p).path(q, 1).edge(anchor_neighbor(p, anchor), q.vertices[1]).done();
}

PathSystem path_system(const GraphView& view, const Vertex& u, const Vertex& v, int k) {
  auto result = disjoint_paths(view, u, v, k);
  if (auto* ps = std::get_if<PathSystem>(&result)) return std::move(*ps);
  throw BuilderFailure("no " + std::to_string(k) + " disjoint paths between " + u.to_string() + " and " +
                       v.to_string());
}

// Q-system from `start` to z inside side One whose i-th path leaves `start`
// through the image of the anchor's neighbour on P_i.
PathSystem aligned_system(const GraphView& one, const Vertex& start, const Vertex& z, const PathSystem& p,
                          const Vertex& anchor, ImageKind kind, int k) {
  auto q = path_system(one, start, z, k);
  std::vector<Pin> pins;
  for (std::size_t i = 0; i < p.size(); ++i) pins.push_back({i, image(kind, neighbor_along(p, anchor, i))});
  try {
    return reorder_paths(q, start, pins);
  } catch (const ContractViolation& e) {
    throw BuilderFailure(std::string("cannot align path systems: ") + e.what());
  }
}

PathSystem pinned(const PathSystem& ps, const Vertex& endpoint, std::vector<Pin> pins) {
  try {
    return reorder_paths(ps, endpoint, pins);
  } catch (const ContractViolation& e) {
    throw BuilderFailure(std::string("cannot pin path system: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Base-case cache

struct CacheKey {
  int dim;
  int target;
  std::array<std::uint64_t, 3> terminals;
  auto operator<=>(const CacheKey&) const = default;
};

std::mutex g_cache_mutex;
std::map<CacheKey, std::vector<SteinerTree>> g_cache;

using Mask = std::uint64_t;

Mask bit(std::uint64_t i) { return Mask{1} << i; }

// Exhaustive search over connector sets in AQ_3 / AQ_4: every tree is a
// spanning tree of a connected vertex set U off S plus one pendant edge per
// terminal, and internally disjoint trees correspond to disjoint sets U.
class BaseSearch {
 public:
  BaseSearch(const AugmentedCube& g, std::span<const Vertex> terms) : g_(g), terms_(terms.begin(), terms.end()) {
    const auto n = g.vertex_count();
    adj_.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      for (const auto& w : g.neighbors(g.vertex(v))) adj_[v] |= bit(w.bits);
    }
    Mask term = 0;
    for (const auto& t : terms_) term |= bit(t.bits);
    for (std::uint64_t v = 0; v < n; ++v) {
      if (!(term & bit(v))) free_list_.push_back(v);
    }
    for (const auto& t : terms_) reach_.push_back(adj_[t.bits] & ~term);
  }

  std::optional<std::vector<Mask>> find(int target, std::string& trace) {
    collect();
    std::vector<Mask> chosen;
    const bool ok = dfs(0, target, chosen);
    trace = "candidates=" + std::to_string(sets_.size()) + " nodes=" + std::to_string(nodes_);
    if (!ok) return std::nullopt;
    return chosen;
  }

  SteinerTree tree_of(Mask set) const {
    TreeBuilder builder(terms_);
    const int dim = g_.dim();
    std::vector<std::uint64_t> stack{static_cast<std::uint64_t>(std::countr_zero(set))};
    Mask seen = bit(stack.back());
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (Mask f = adj_[cur] & set & ~seen; f != 0; f &= f - 1) {
        const auto w = static_cast<std::uint64_t>(std::countr_zero(f));
        seen |= bit(w);
        stack.push_back(w);
        builder.edge(Vertex(cur, dim), Vertex(w, dim));
      }
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      builder.edge(terms_[i], Vertex(static_cast<std::uint64_t>(std::countr_zero(reach_[i] & set)), dim));
    }
    return builder.done();
  }

 private:
  bool connected(Mask set) const {
    Mask seen = set & (~set + 1);
    for (Mask grow = seen; grow != 0;) {
      Mask next = 0;
      for (Mask m = grow; m != 0; m &= m - 1) next |= adj_[std::countr_zero(m)];
      grow = next & set & ~seen;
      seen |= grow;
    }
    return seen == set;
  }

  void collect() {
    const std::size_t free_count = free_list_.size();
    std::vector<Mask> all;
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << free_count); ++sub) {
      Mask set = 0;
      for (std::size_t i = 0; i < free_count; ++i) {
        if (sub & bit(i)) set |= bit(free_list_[i]);
      }
      bool touches = true;
      for (auto r : reach_) touches = touches && (r & set) != 0;
      if (touches && connected(set)) all.push_back(set);
    }
    std::sort(all.begin(), all.end(), [](Mask a, Mask b) {
      return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    for (Mask s : all) {
      if (std::none_of(sets_.begin(), sets_.end(), [s](Mask c) { return (c & s) == c; })) sets_.push_back(s);
    }
  }

  bool dfs(Mask used, int target, std::vector<Mask>& chosen) {
    ++nodes_;
    if (static_cast<int>(chosen.size()) == target) return true;
    // the terminal with the fewest unused neighbours decides the branching
    std::size_t pivot = 0;
    int room = 1 << 20;
    for (std::size_t i = 0; i < reach_.size(); ++i) {
      const int avail = std::popcount(reach_[i] & ~used);
      if (avail < room) {
        room = avail;
        pivot = i;
      }
    }
    if (static_cast<int>(chosen.size()) + room < target) return false;
    const Mask avail = reach_[pivot] & ~used;
    const auto v = static_cast<std::uint64_t>(std::countr_zero(avail));
    for (Mask s : sets_) {
      if (!(s & bit(v)) || (s & used)) continue;
      chosen.push_back(s);
      if (dfs(used | s, target, chosen)) return true;
      chosen.pop_back();
    }
    return dfs(used | bit(v), target, chosen);
  }

  const AugmentedCube& g_;
  std::vector<Vertex> terms_;
  std::vector<Mask> adj_;
  std::vector<std::uint64_t> free_list_;
  std::vector<Mask> reach_;
  std::vector<Mask> sets_;
  std::uint64_t nodes_ = 0;
};

void require_terminals(const AugmentedCube& g, std::span<const Vertex> terminals) {
  if (terminals.size() != 3) {
    throw ContractViolation("expected exactly 3 terminals, got " + std::to_string(terminals.size()));
  }
  std::set<Vertex> distinct;
  for (const auto& t : terminals) {
    if (!g.contains(t)) {
      throw ContractViolation("terminal " + t.to_string() + " is not a vertex of AQ_" + std::to_string(g.dim()));
    }
    if (!distinct.insert(t).second) throw ContractViolation("duplicate terminal " + t.to_string());
  }
}

// Trees of `trees` that verify on their own and stay internally disjoint
// from the ones kept before them.
std::vector<SteinerTree> salvage(const AugmentedCube& g, std::span<const Vertex> terms,
                                 const std::vector<SteinerTree>& trees) {
  TreeFamily kept{g.dim(), {terms.begin(), terms.end()}, {}, CaseTag::FallbackSearch, {}};
  for (const auto& t : trees) {
    kept.trees.push_back(t);
    if (!verify_family(g, kept).accepted()) kept.trees.pop_back();
  }
  return kept.trees;
}

}  // namespace

std::string Classification::describe_roles() const {
  return "x=" + roles[0].to_string() + ",y=" + roles[1].to_string() + ",z=" + roles[2].to_string();
}

// ---------------------------------------------------------------------------
// classify

Classification classify(const AugmentedCube& g, std::span<const Vertex> terminals) {
  require_terminals(g, terminals);
  const int n = g.dim();
  if (n < 3) throw ContractViolation("classification needs n >= 3, got " + std::to_string(n));

  Classification c;
  c.normalization = Automorphism::identity(n);
  const auto ones = std::count_if(terminals.begin(), terminals.end(), [](const Vertex& v) { return v.leading_bit(); });
  if (ones >= 2) c.normalization = Automorphism::complement(n);

  std::vector<Vertex> zero;
  std::vector<Vertex> one;
  for (const auto& t : terminals) {
    const auto v = c.normalization(t);
    (v.leading_bit() ? one : zero).push_back(v);
  }
  std::sort(zero.begin(), zero.end());
  if (one.empty()) {
    c.tag = CaseTag::Case1;
    c.roles = {zero[0], zero[1], zero[2]};
    return c;
  }

  const Vertex a = zero[0];
  const Vertex b = zero[1];
  Vertex z = one[0];
  const auto trailing = trailing_mask(n);
  auto adj = [&](const Vertex& u, const Vertex& v) { return g.is_adjacent(u, v); };

  // Subcase 2.1: z is a cross-split image of a or b. Prefer hypercube
  // partners; a complement partner is turned into one by the twist.
  struct Option {
    Vertex x, y;
    ImageKind kind;
  };
  const Option options[] = {{a, b, ImageKind::H}, {b, a, ImageKind::H}, {a, b, ImageKind::C}, {b, a, ImageKind::C}};
  for (const auto& opt : options) {
    if (image(opt.kind, opt.x) != z) continue;
    if (opt.kind == ImageKind::C) {
      const auto tw = Automorphism::twist(n);
      c.normalization = tw.after(c.normalization);
      z = tw(z);
    }
    const Vertex& x = opt.x;
    const Vertex& y = opt.y;
    c.roles = {x, y, z};
    if ((x.bits ^ y.bits) == trailing) {
      c.tag = CaseTag::Case2_1_1;
    } else if (!adj(z, h_image(y))) {
      c.tag = CaseTag::Case2_1_2;
    } else {
      c.tag = CaseTag::Case2_1_3;
    }
    return c;
  }

  // Subcase 2.2: z is none of the four images.
  const bool ah = adj(z, h_image(a));
  const bool ac = adj(z, c_image(a));
  const bool bh = adj(z, h_image(b));
  const bool bc = adj(z, c_image(b));

  if ((a.bits ^ b.bits) == trailing) {
    // x^h = y^c and x^c = y^h; a and b play symmetric roles
    c.roles = {a, b, z};
    if (ah && ac) {
      c.tag = CaseTag::Case2_2_1b;
    } else {
      // z adjacent to exactly one of x^h, x^c (or to neither, which is
      // handled by the same recipe); make it x^c
      if (ah) {
        const auto tw = Automorphism::twist(n);
        c.normalization = tw.after(c.normalization);
        c.roles[2] = tw(z);
      }
      c.tag = CaseTag::Case2_2_1a;
    }
    return c;
  }

  const bool a_touched = ah || ac;
  const bool b_touched = bh || bc;
  const bool adjacent = adj(a, b);
  if (!a_touched && !b_touched) {
    c.roles = {a, b, z};
    c.tag = adjacent ? CaseTag::Case2_2_3a : CaseTag::Case2_2_2a;
  } else if (a_touched != b_touched) {
    // y is the vertex whose images z touches
    c.roles = a_touched ? std::array{b, a, z} : std::array{a, b, z};
    c.tag = adjacent ? CaseTag::Case2_2_3b : CaseTag::Case2_2_2b;
  } else {
    // z touches images of both; x^h, x^c, y^h with y^c free is the written
    // pattern, the mirrored one swaps roles, any other mix keeps label order
    c.roles = (ah && bc && bh && !ac) ? std::array{b, a, z} : std::array{a, b, z};
    c.tag = adjacent ? CaseTag::Case2_2_3c : CaseTag::Case2_2_2c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Case builders

namespace detail {

std::vector<SteinerTree> build_case1(const AugmentedCube& g, const Classification& c, const ConstructOptions& options,
                                     TreeFamily& recursive_part) {
  const int n = g.dim();
  const AugmentedCube sub(n - 1);
  std::vector<Vertex> lowered;
  for (const auto& v : c.roles) lowered.push_back(strip_leading(v));
  recursive_part = embed(construct(sub, lowered, options), false);

  const std::vector<Vertex> terms(c.roles.begin(), c.roles.end());
  std::vector<SteinerTree> trees;
  for (const char* quarter : {"10", "11"}) {
    const auto view = GraphView::prefix(g, quarter);
    // each terminal has exactly one of its two cross-split partners here
    std::vector<std::pair<Vertex, Vertex>> attach;
    std::vector<Vertex> spots;
    for (const auto& s : terms) {
      const Vertex h = h_image(s);
      const Vertex spot = view.contains(h) ? h : c_image(s);
      attach.emplace_back(s, spot);
      spots.push_back(spot);
    }
    std::sort(spots.begin(), spots.end());
    spots.erase(std::unique(spots.begin(), spots.end()), spots.end());

    TreeBuilder builder(terms);
    if (options.fidelity) {
      const auto members = view.vertices();
      const auto ham = hamiltonian_path(view, members.front(), members.back(), options.search_budget);
      if (!ham.path) throw BuilderFailure(std::string("no Hamiltonian path found in quarter ") + quarter);
      builder.path(*ham.path);
    } else {
      for (const auto& e : connector_tree(view, spots)) builder.edge(e.a, e.b);
    }
    for (const auto& [s, spot] : attach) builder.edge(s, spot);
    trees.push_back(builder.done());
  }
  return trees;
}

std::vector<SteinerTree> build_case2_image(const AugmentedCube& g, const Classification& c) {
  const int n = g.dim();
  const int k = 2 * n - 3;
  const auto zero = GraphView::prefix(g, "0");
  const auto one = GraphView::prefix(g, "1");
  const auto [x, y, z] = c.roles;
  const std::vector<Vertex> terms{x, y, z};
  std::vector<SteinerTree> trees;

  switch (c.tag) {
    case CaseTag::Case2_1_1: {
      // x ~ y, x^h = y^c = z, x^c = y^h. P_1 is the edge xy; the Q-system is
      // the C-image of the P-system, between x^c and y^c = z.
      const auto p = pinned(path_system(zero, x, y, k), y, {{0, x}});
      const auto q = map_path_system(g, [](const Vertex& v) { return c_image(v); }, p);
      const Vertex xc = c_image(x);
      trees.push_back(TreeBuilder(terms).edge(x, xc).edge(y, xc).edge(xc, z).done());
      for (std::size_t i = 1; i < p.size(); ++i) {
        const Vertex yi = neighbor_along(p, y, i);
        const Vertex yic = neighbor_along(q, z, i);
        trees.push_back(TreeBuilder(terms).path(p.paths[i]).edge(yi, yic).edge(yic, z).done());
      }
      break;
    }
    case CaseTag::Case2_1_2: {
      // x !~ y; the Q-system is the H-image of the P-system, run from y^h to
      // z = x^h, so Q_i leaves y^h through y_i^h.
      const auto p = path_system(zero, x, y, k);
      const auto q = map_path_system(g, [](const Vertex& v) { return h_image(v); }, p).reversed();
      for (std::size_t i = 0; i < p.size(); ++i) trees.push_back(attached_tree(terms, p.paths[i], q.paths[i], y));
      break;
    }
    case CaseTag::Case2_1_3: {
      // x ~ y and z = x^h ~ y^h. Pin x_1 = y and x_2 = x^{ch}; then
      // Q_2 = <x^c, x^h> and T_1 runs along P_2 into z.
      const Vertex xc = c_image(x);
      const Vertex xch = side_preimage(ImageKind::H, xc);
      const auto p = pinned(path_system(zero, x, y, k), x, {{0, y}, {1, xch}});
      const auto q = aligned_system(one, xc, z, p, x, ImageKind::C, k);
      trees.push_back(TreeBuilder(terms).path(p.paths[1]).edge(neighbor_along(p, x, 1), z).done());
      trees.push_back(TreeBuilder(terms).edge(x, xc).edge(y, c_image(y)).path(q.paths[0]).done());
      for (std::size_t i = 2; i < p.size(); ++i) trees.push_back(attached_tree(terms, p.paths[i], q.paths[i], x));
      break;
    }
    default:
      throw ContractViolation("build_case2_image: tag " + std::string(to_string(c.tag)) + " is not a 2.1 case");
  }
  return trees;
}

std::vector<SteinerTree> build_case2_nonimage(const AugmentedCube& g, const Classification& c) {
  const int n = g.dim();
  const int k = 2 * n - 3;
  const auto zero = GraphView::prefix(g, "0");
  const auto one = GraphView::prefix(g, "1");
  const auto [x, y, z] = c.roles;
  const std::vector<Vertex> terms{x, y, z};
  std::vector<SteinerTree> trees;

  // Generic trees P_i u (Q_i \ first edge) u <a_i, a_i'> from index `from` on.
  auto attach_rest = [&](const PathSystem& p, const PathSystem& q, const Vertex& anchor, std::size_t from) {
    for (std::size_t i = from; i < p.size(); ++i) trees.push_back(attached_tree(terms, p.paths[i], q.paths[i], anchor));
  };

  switch (c.tag) {
    case CaseTag::Case2_2_1a: {
      // x^h = y^c, x^c = y^h, z ~ x^c. Q runs from y^c = x^h to z; Q_1 leaves
      // through x^c, which becomes the hub of T_1.
      const auto p = pinned(path_system(zero, x, y, k), y, {{0, x}});
      const auto q = aligned_system(one, c_image(y), z, p, y, ImageKind::C, k);
      const Vertex xc = c_image(x);
      trees.push_back(TreeBuilder(terms).edge(x, xc).edge(y, xc).path(q.paths[0], 1).done());
      attach_rest(p, q, y, 1);
      break;
    }
    case CaseTag::Case2_2_1b: {
      // z ~ x^h and z ~ x^c; z^c ~ y. Pin y_1 = z^c, y_2 = x.
      const Vertex zc = side_preimage(ImageKind::C, z);
      const auto p = pinned(path_system(zero, x, y, k), y, {{0, zc}, {1, x}});
      const auto q = aligned_system(one, c_image(y), z, p, y, ImageKind::C, k);
      trees.push_back(attached_tree(terms, p.paths[0], q.paths[0], y));
      trees.push_back(TreeBuilder(terms).edge(x, h_image(x)).edge(y, h_image(y)).path(q.paths[1]).done());
      attach_rest(p, q, y, 2);
      break;
    }
    case CaseTag::Case2_2_2a:
    case CaseTag::Case2_2_2b:
    case CaseTag::Case2_2_2c: {
      // x !~ y, so every P_i has an interior neighbour of y to hang Q_i on.
      const auto kind = c.tag == CaseTag::Case2_2_2c ? ImageKind::C : ImageKind::H;
      const auto p = path_system(zero, x, y, k);
      const auto q = aligned_system(one, image(kind, y), z, p, y, kind, k);
      attach_rest(p, q, y, 0);
      break;
    }
    case CaseTag::Case2_2_3a:
    case CaseTag::Case2_2_3c: {
      // x ~ y; P_1 = <x, y>, Q_1 leaves y's image through x's image.
      const auto kind = c.tag == CaseTag::Case2_2_3c ? ImageKind::C : ImageKind::H;
      const auto p = pinned(path_system(zero, x, y, k), y, {{0, x}});
      const auto q = aligned_system(one, image(kind, y), z, p, y, kind, k);
      trees.push_back(TreeBuilder(terms).edge(x, image(kind, x)).edge(y, image(kind, y)).path(q.paths[0]).done());
      attach_rest(p, q, y, 1);
      break;
    }
    case CaseTag::Case2_2_3b: {
      // x ~ y and z touches only y's images: anchor the Q-system at x^h.
      const auto p = pinned(path_system(zero, x, y, k), x, {{0, y}});
      const auto q = aligned_system(one, h_image(x), z, p, x, ImageKind::H, k);
      trees.push_back(TreeBuilder(terms).edge(x, h_image(x)).edge(y, h_image(y)).path(q.paths[0]).done());
      attach_rest(p, q, x, 1);
      break;
    }
    default:
      throw ContractViolation("build_case2_nonimage: tag " + std::string(to_string(c.tag)) + " is not a 2.2 case");
  }
  return trees;
}

std::size_t base_cache_size() {
  std::lock_guard lock(g_cache_mutex);
  return g_cache.size();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Base cases

TreeFamily base_case_search(const AugmentedCube& g, std::span<const Vertex> terminals, int target) {
  require_terminals(g, terminals);
  const int n = g.dim();
  if (n != 3 && n != 4) throw ContractViolation("base_case_search handles n = 3 or 4 only");
  if (target < 1) throw ContractViolation("base_case_search: target must be positive");

  // canonical representative under translations and the twist
  Automorphism best_map;
  std::array<std::uint64_t, 3> best_key{};
  bool first = true;
  for (int twist = 0; twist < 2; ++twist) {
    for (std::uint64_t t = 0; t < g.vertex_count(); ++t) {
      const Automorphism a(n, t, twist == 1);
      std::array<std::uint64_t, 3> key{};
      for (std::size_t i = 0; i < 3; ++i) key[i] = a(terminals[i]).bits;
      std::sort(key.begin(), key.end());
      if (first || key < best_key) {
        best_key = key;
        best_map = a;
        first = false;
      }
    }
  }

  const CacheKey cache_key{n, target, best_key};
  std::vector<SteinerTree> canonical;
  {
    std::lock_guard lock(g_cache_mutex);
    auto it = g_cache.find(cache_key);
    if (it == g_cache.end()) {
      std::vector<Vertex> terms;
      for (auto b : best_key) terms.push_back(g.vertex(b));
      BaseSearch search(g, terms);
      std::string trace;
      auto found = search.find(target, trace);
      if (!found) {
        throw InternalError("base_case_search: no " + std::to_string(target) + " trees for S={" +
                            list_vertices(terms) + "} in AQ_" + std::to_string(n) + " (" + trace + ")");
      }
      std::vector<SteinerTree> trees;
      for (Mask m : *found) trees.push_back(search.tree_of(m));
      it = g_cache.emplace(cache_key, std::move(trees)).first;
    }
    canonical = it->second;
  }

  const auto back = best_map.inverse();
  TreeFamily family;
  family.dim = n;
  family.terminals.assign(terminals.begin(), terminals.end());
  family.tag = n == 3 ? CaseTag::Base3 : CaseTag::Base4;
  for (auto& tree : canonical) {
    for (auto& e : tree.edges) e = back(e);
    tree.terminals = family.terminals;
    tree.canonicalize();
    family.trees.push_back(std::move(tree));
  }
  family.provenance.push_back({family.tag, n, 0, family.trees.size(), best_map.describe(), ""});
  return family;
}

// ---------------------------------------------------------------------------
// Fallback search

namespace {

class FallbackSearch {
 public:
  FallbackSearch(const AugmentedCube& g, std::span<const Vertex> terms, std::uint64_t budget)
      : g_(g), terms_(terms.begin(), terms.end()), budget_(budget), used_(g.vertex_count(), 0),
        near_terminal_(g.vertex_count(), 0) {
    for (const auto& t : terms_) used_[t.bits] = 1;
    for (const auto& t : terms_) {
      for (const auto& w : g.neighbors(t)) ++near_terminal_[w.bits];
    }
  }

  void occupy(const SteinerTree& tree, char flag) {
    for (const auto& v : tree.vertices()) {
      if (std::find(terms_.begin(), terms_.end(), v) == terms_.end()) used_[v.bits] = flag;
    }
  }

  bool run(std::vector<SteinerTree>& trees, int target) {
    if (static_cast<int>(trees.size()) >= target) return true;
    if (++nodes_ > budget_) return false;
    std::size_t pivot = 0;
    int room = 1 << 30;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      int avail = 0;
      for (const auto& w : g_.neighbors(terms_[i])) avail += used_[w.bits] ? 0 : 1;
      if (avail < room) {
        room = avail;
        pivot = i;
      }
    }
    if (static_cast<int>(trees.size()) + room < target) return false;
    for (auto& cand : candidates(pivot)) {
      occupy(cand, 1);
      trees.push_back(std::move(cand));
      if (run(trees, target)) return true;
      occupy(trees.back(), 0);
      trees.pop_back();
      if (nodes_ > budget_) return false;
    }
    return false;
  }

 private:
  // One tree per free neighbour r of the pivot terminal: cheapest paths from
  // r to a free neighbour of every other terminal, where vertices next to a
  // terminal cost extra so they are left for later trees.
  std::vector<SteinerTree> candidates(std::size_t pivot) {
    std::vector<std::pair<std::vector<Vertex>, SteinerTree>> found;
    const auto nv = g_.vertex_count();
    for (const auto& r : g_.neighbors(terms_[pivot])) {
      if (used_[r.bits]) continue;
      std::vector<int> dist(nv, -1);
      std::vector<std::uint64_t> parent(nv, r.bits);
      std::set<std::pair<int, std::uint64_t>> queue{{0, r.bits}};
      dist[r.bits] = 0;
      while (!queue.empty()) {
        const auto [d, cur] = *queue.begin();
        queue.erase(queue.begin());
        if (d != dist[cur]) continue;
        for (const auto& w : g_.neighbors(g_.vertex(cur))) {
          if (used_[w.bits]) continue;
          const int nd = d + 1 + 3 * near_terminal_[w.bits];
          if (dist[w.bits] < 0 || nd < dist[w.bits]) {
            dist[w.bits] = nd;
            parent[w.bits] = cur;
            queue.insert({nd, w.bits});
          }
        }
      }
      TreeBuilder builder(terms_);
      std::set<std::uint64_t> members{r.bits};
      bool ok = true;
      for (std::size_t i = 0; i < terms_.size() && ok; ++i) {
        if (i == pivot) {
          builder.edge(terms_[i], r);
          continue;
        }
        std::optional<std::uint64_t> best;
        for (const auto& w : g_.neighbors(terms_[i])) {
          if (used_[w.bits] || dist[w.bits] < 0) continue;
          if (!best || dist[w.bits] < dist[*best]) best = w.bits;
        }
        if (!best) {
          ok = false;
          break;
        }
        builder.edge(terms_[i], g_.vertex(*best));
        for (auto cur = *best; members.insert(cur).second; cur = parent[cur]) {
          builder.edge(g_.vertex(cur), g_.vertex(parent[cur]));
        }
      }
      if (!ok) continue;
      auto tree = builder.done();
      // a terminal may have picked a spot that another path also reaches;
      // keep only genuine pendant trees
      if (!verify_tree(g_, tree).accepted()) continue;
      auto verts = tree.vertices();
      found.emplace_back(std::move(verts), std::move(tree));
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    std::vector<SteinerTree> out;
    for (std::size_t i = 0; i < found.size() && out.size() < 6; ++i) {
      if (i > 0 && found[i].first == found[i - 1].first) continue;
      out.push_back(std::move(found[i].second));
    }
    return out;
  }

  const AugmentedCube& g_;
  std::vector<Vertex> terms_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<char> used_;
  std::vector<int> near_terminal_;
};

}  // namespace

std::optional<std::vector<SteinerTree>> fallback_search(const AugmentedCube& g, std::span<const Vertex> terminals,
                                                        int target, std::vector<SteinerTree> seed,
                                                        std::uint64_t budget) {
  require_terminals(g, terminals);
  FallbackSearch search(g, terminals, budget);
  for (const auto& t : seed) search.occupy(t, 1);
  if (search.run(seed, target)) return seed;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// construct

namespace {

TreeFamily construct_any_order(const AugmentedCube& g, std::span<const Vertex> terminals,
                                const ConstructOptions& options) {
  require_terminals(g, terminals);
  const int n = g.dim();
  if (n < 3) throw ContractViolation("construct needs n >= 3, got " + std::to_string(n));
  const int k = 2 * n - 3;

  if (n <= 4) {
    auto family = base_case_search(g, terminals, k);
    // The trees come from search; the tag still names the case S falls into.
    family.tag = classify(g, terminals).tag;
    if (!verify_family(g, family).accepted()) {
      throw InternalError("base case family for S={" + list_vertices(terminals) + "} failed verification");
    }
    return family;
  }

  const auto c = classify(g, terminals);
  const std::vector<Vertex> terms(c.roles.begin(), c.roles.end());
  TreeFamily family;
  family.dim = n;
  family.terminals = terms;
  family.tag = c.tag;

  std::vector<SteinerTree> built;
  std::string failure;
  try {
    if (c.tag == CaseTag::Case1) {
      TreeFamily lower;
      auto quarters = detail::build_case1(g, c, options, lower);
      for (auto& t : lower.trees) t.terminals = terms;
      built = std::move(lower.trees);
      family.provenance = std::move(lower.provenance);
      for (auto& t : quarters) built.push_back(std::move(t));
    } else if (is_image_case(c.tag)) {
      built = detail::build_case2_image(g, c);
    } else {
      built = detail::build_case2_nonimage(g, c);
    }
  } catch (const BuilderFailure& e) {
    failure = e.what();
  }

  family.trees = built;
  family.provenance.push_back({c.tag, n, family.provenance.empty() ? 0 : static_cast<std::size_t>(k - 2),
                               c.tag == CaseTag::Case1 ? 2 : static_cast<std::size_t>(k),
                               c.normalization.describe(), c.describe_roles()});
  if (failure.empty()) {
    const auto report = verify_family(g, family);
    if (report.accepted() && static_cast<int>(family.trees.size()) == k) {
      return apply(c.normalization.inverse(), family);
    }
    failure = "builder output rejected";
    if (!report.accepted()) failure += " (" + std::string(to_string(report.violations.front().kind)) + ")";
    if (static_cast<int>(family.trees.size()) != k) failure += " (" + std::to_string(family.trees.size()) + " trees)";
  }

  const std::string context = std::string(to_string(c.tag)) + " for S={" + list_vertices(terminals) + "} in AQ_" +
                              std::to_string(n) + ": " + failure;
  if (!options.allow_fallback) throw AmbiguityError(context);

  auto completed = fallback_search(g, terms, k, salvage(g, terms, built), options.search_budget);
  if (!completed) completed = fallback_search(g, terms, k, {}, options.search_budget);
  if (!completed) throw InternalError("fallback search exhausted its budget; " + context);

  family.trees = std::move(*completed);
  family.provenance = {{CaseTag::FallbackSearch, n, 0, family.trees.size(), c.normalization.describe(),
                        c.describe_roles()}};
  if (!verify_family(g, family).accepted()) throw InternalError("fallback family failed verification; " + context);
  return apply(c.normalization.inverse(), family);
}

}  // namespace

TreeFamily construct(const AugmentedCube& g, std::span<const Vertex> terminals, const ConstructOptions& options) {
  auto family = construct_any_order(g, terminals, options);
  // Report terminals in the caller's order rather than the normalized one.
  family.terminals.assign(terminals.begin(), terminals.end());
  for (auto& t : family.trees) t.terminals = family.terminals;
  return family;
}

}  // namespace augcube
