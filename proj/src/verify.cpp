#include "augcube/verify.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "augcube/errors.hpp"

namespace augcube {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonEdge: return "NonEdge";
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::TerminalDegree: return "TerminalDegree";
    case ViolationKind::SharedVertex: return "SharedVertex";
    case ViolationKind::SharedEdge: return "SharedEdge";
    case ViolationKind::WrongTerminals: return "WrongTerminals";
  }
  return "?";
}

bool VerificationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

void VerificationReport::merge(VerificationReport other) {
  for (auto& v : other.violations) violations.push_back(std::move(v));
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

VerificationReport verify_tree(const AugmentedCube& g, const SteinerTree& tree, std::size_t index) {
  VerificationReport report;
  auto add = [&](ViolationKind kind, std::vector<Vertex> vs, std::vector<Edge> es, std::string detail) {
    report.violations.push_back({kind, {index}, std::move(vs), std::move(es), std::move(detail)});
  };

  std::unordered_map<Vertex, std::size_t, VertexHash> id;
  std::vector<Vertex> verts;
  auto intern = [&](const Vertex& v) {
    auto [it, fresh] = id.emplace(v, verts.size());
    if (fresh) verts.push_back(v);
    return it->second;
  };
  for (const auto& t : tree.terminals) intern(t);

  std::unordered_map<Vertex, int, VertexHash> degree;
  std::unordered_set<Edge, EdgeHash> seen;
  DisjointSets sets(tree.terminals.size() + 2 * tree.edges.size());
  for (const auto& e : tree.edges) {
    if (!g.contains(e.a) || !g.contains(e.b) || !g.is_adjacent(e.a, e.b)) {
      add(ViolationKind::NonEdge, {e.a, e.b}, {e}, "not an edge of AQ_" + std::to_string(g.dim()));
    }
    if (!seen.insert(e).second) {
      add(ViolationKind::Cycle, {e.a, e.b}, {e}, "edge listed twice");
      continue;
    }
    ++degree[e.a];
    ++degree[e.b];
    if (!sets.unite(intern(e.a), intern(e.b))) {
      add(ViolationKind::Cycle, {e.a, e.b}, {e}, "edge closes a cycle");
    }
  }

  if (!verts.empty()) {
    const auto root = sets.find(0);
    std::vector<Vertex> stray;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      if (sets.find(i) != root) stray.push_back(verts[i]);
    }
    if (!stray.empty()) add(ViolationKind::Disconnected, std::move(stray), {}, "not connected to " + verts[0].to_string());
  }

  for (const auto& t : tree.terminals) {
    const int d = degree.contains(t) ? degree.at(t) : 0;
    if (d != 1) add(ViolationKind::TerminalDegree, {t}, {}, "terminal has degree " + std::to_string(d));
  }
  return report;
}

VerificationReport verify_family(const AugmentedCube& g, const TreeFamily& family) {
  VerificationReport report;
  auto expected = family.terminals;
  std::sort(expected.begin(), expected.end());
  const std::set<Vertex> terminal_set(expected.begin(), expected.end());

  std::unordered_map<Edge, std::size_t, EdgeHash> edge_owner;
  std::unordered_map<Vertex, std::size_t, VertexHash> vertex_owner;

  for (std::size_t i = 0; i < family.trees.size(); ++i) {
    const auto& tree = family.trees[i];
    report.merge(verify_tree(g, tree, i));

    auto got = tree.terminals;
    std::sort(got.begin(), got.end());
    if (got != expected) {
      report.violations.push_back({ViolationKind::WrongTerminals, {i}, got, {}, "terminals differ from the family's"});
    }

    std::unordered_set<Vertex, VertexHash> mine;
    for (const auto& e : tree.edges) {
      auto [it, fresh] = edge_owner.emplace(e, i);
      if (!fresh && it->second != i) {
        report.violations.push_back({ViolationKind::SharedEdge, {it->second, i}, {e.a, e.b}, {e}, "edge in two trees"});
      }
      for (const auto& v : {e.a, e.b}) {
        if (terminal_set.contains(v) || !mine.insert(v).second) continue;
        auto [vit, vfresh] = vertex_owner.emplace(v, i);
        if (!vfresh) {
          report.violations.push_back(
              {ViolationKind::SharedVertex, {vit->second, i}, {v}, {}, "non-terminal vertex in two trees"});
        }
      }
    }
  }
  return report;
}

std::optional<std::string> check_path_system(const AugmentedCube& g, const PathSystem& ps, const GraphView* view) {
  if (ps.source == ps.sink) return "source equals sink";
  std::unordered_set<Vertex, VertexHash> interior;
  std::unordered_set<Edge, EdgeHash> edges;
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const auto& vs = ps.paths[i].vertices;
    const auto tag = "path " + std::to_string(i) + ": ";
    if (vs.size() < 2) return tag + "fewer than two vertices";
    if (vs.front() != ps.source || vs.back() != ps.sink) return tag + "wrong endpoints";
    std::unordered_set<Vertex, VertexHash> on_path;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (!g.contains(vs[j])) return tag + "vertex outside host";
      if (view != nullptr && !view->contains(vs[j])) return tag + "vertex " + vs[j].to_string() + " outside view";
      if (!on_path.insert(vs[j]).second) return tag + "repeats " + vs[j].to_string();
      if (j > 0) {
        if (!g.is_adjacent(vs[j - 1], vs[j])) return tag + "non-edge " + vs[j - 1].to_string() + "-" + vs[j].to_string();
        if (!edges.emplace(vs[j - 1], vs[j]).second) return tag + "edge reused";
      }
      if (j > 0 && j + 1 < vs.size() && !interior.insert(vs[j]).second) {
        return tag + "interior vertex " + vs[j].to_string() + " shared";
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact packing oracle

namespace {

using Mask = std::uint64_t;

Mask bit(std::uint64_t i) { return Mask{1} << i; }

class PackingOracle {
 public:
  PackingOracle(const AugmentedCube& g, std::span<const Vertex> terminals, std::uint64_t budget)
      : g_(g), terminals_(terminals.begin(), terminals.end()), budget_(budget) {
    const auto n = g.vertex_count();
    adj_.assign(n, 0);
    for (std::uint64_t v = 0; v < n; ++v) {
      for (auto d : g.generators()) adj_[v] |= bit(v ^ d);
    }
    for (const auto& t : terminals_) term_mask_ |= bit(t.bits);
    free_ = (n == 64 ? ~Mask{0} : bit(n) - 1) & ~term_mask_;
    for (const auto& t : terminals_) term_adj_.push_back(adj_[t.bits] & free_);
  }

  OracleResult run() {
    OracleResult result;
    int extra = 0;
    if (terminals_.size() == 2 && g_.is_adjacent(terminals_[0], terminals_[1])) {
      extra = 1;
      direct_edge_ = true;
    }
    int root_bound = 64;
    for (auto m : term_adj_) root_bound = std::min(root_bound, std::popcount(m));
    const bool enumerated = enumerate_connectors();
    if (enumerated) {
      by_vertex_.assign(g_.vertex_count(), {});
      for (std::size_t c = 0; c < connectors_.size(); ++c) {
        for (Mask m = connectors_[c]; m != 0; m &= m - 1) by_vertex_[std::countr_zero(m)].push_back(c);
      }
      std::vector<std::size_t> chosen;
      search(0, chosen);
    }
    result.nodes = nodes_;
    result.lower = static_cast<int>(best_.size()) + extra;
    result.exact = enumerated && !exhausted_;
    result.upper = result.exact ? result.lower : root_bound + extra;
    result.witness = witness(extra == 1);
    return result;
  }

 private:
  bool is_connector(Mask m) const {
    for (auto t : term_adj_) {
      if ((t & m) == 0) return false;
    }
    return true;
  }

  // Connected vertex sets off the terminals, grown one vertex at a time in
  // increasing size. Sets that already reach every terminal are not grown
  // further; the ones with no smaller connector inside are kept.
  bool enumerate_connectors() {
    std::unordered_set<Mask> level;
    for (Mask m = free_; m != 0; m &= m - 1) level.insert(m & (~m + 1));
    while (!level.empty()) {
      std::vector<Mask> sorted(level.begin(), level.end());
      std::sort(sorted.begin(), sorted.end());
      std::unordered_set<Mask> next;
      for (Mask s : sorted) {
        if (++nodes_ > budget_) return false;
        if (is_connector(s)) {
          const bool minimal = std::none_of(connectors_.begin(), connectors_.end(),
                                            [s](Mask c) { return (c & s) == c; });
          if (minimal) connectors_.push_back(s);
          continue;
        }
        Mask frontier = 0;
        for (Mask m = s; m != 0; m &= m - 1) frontier |= adj_[std::countr_zero(m)];
        frontier &= free_ & ~s;
        for (Mask f = frontier; f != 0; f &= f - 1) next.insert(s | (f & (~f + 1)));
      }
      level = std::move(next);
    }
    return true;
  }

  void search(Mask blocked, std::vector<std::size_t>& chosen) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (chosen.size() > best_.size()) best_ = chosen;
    std::size_t pivot = 0;
    int room = 64;
    for (std::size_t i = 0; i < term_adj_.size(); ++i) {
      const int avail = std::popcount(term_adj_[i] & ~blocked);
      if (avail < room) {
        room = avail;
        pivot = i;
      }
    }
    if (static_cast<int>(chosen.size()) + room <= static_cast<int>(best_.size())) return;
    const Mask avail = term_adj_[pivot] & ~blocked;
    const auto v = static_cast<std::size_t>(std::countr_zero(avail));
    for (auto c : by_vertex_[v]) {
      if ((connectors_[c] & blocked) != 0) continue;
      chosen.push_back(c);
      search(blocked | connectors_[c], chosen);
      chosen.pop_back();
      if (exhausted_) return;
    }
    search(blocked | bit(v), chosen);
  }

  std::vector<SteinerTree> witness(bool direct) const {
    std::vector<SteinerTree> out;
    const int dim = g_.dim();
    if (direct) out.push_back({terminals_, {Edge(terminals_[0], terminals_[1])}});
    for (auto c : best_) {
      const Mask set = connectors_[c];
      SteinerTree tree{terminals_, {}};
      const auto root = static_cast<std::uint64_t>(std::countr_zero(set));
      Mask reached = bit(root);
      std::vector<std::uint64_t> queue{root};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto cur = queue[head];
        for (Mask f = adj_[cur] & set & ~reached; f != 0; f &= f - 1) {
          const auto w = static_cast<std::uint64_t>(std::countr_zero(f));
          reached |= bit(w);
          queue.push_back(w);
          tree.edges.emplace_back(Vertex(cur, dim), Vertex(w, dim));
        }
      }
      for (std::size_t i = 0; i < terminals_.size(); ++i) {
        const auto w = static_cast<std::uint64_t>(std::countr_zero(term_adj_[i] & set));
        tree.edges.emplace_back(terminals_[i], Vertex(w, dim));
      }
      tree.canonicalize();
      out.push_back(std::move(tree));
    }
    return out;
  }

  const AugmentedCube& g_;
  std::vector<Vertex> terminals_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  bool direct_edge_ = false;
  std::vector<Mask> adj_;
  Mask term_mask_ = 0;
  Mask free_ = 0;
  std::vector<Mask> term_adj_;
  std::vector<Mask> connectors_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<std::size_t> best_;
};

}  // namespace

OracleResult oracle_tau(const AugmentedCube& g, std::span<const Vertex> terminals, std::uint64_t budget) {
  if (budget == 0) throw ContractViolation("oracle_tau: budget must be positive");
  if (terminals.size() < 2) throw ContractViolation("oracle_tau: need at least two terminals");
  if (g.dim() > 6) throw ContractViolation("oracle_tau: host too large for the exact oracle");
  std::set<Vertex> distinct;
  for (const auto& t : terminals) {
    if (!g.contains(t)) throw ContractViolation("oracle_tau: terminal " + t.to_string() + " outside host");
    if (!distinct.insert(t).second) throw ContractViolation("oracle_tau: duplicate terminal " + t.to_string());
  }
  return PackingOracle(g, terminals, budget).run();
}

int hager_upper_bound(const AugmentedCube& g, int k) {
  if (k < 2) throw ContractViolation("hager_upper_bound: k must be at least 2");
  // a count of trees is never negative, even when the bound excludes m = 0
  return std::max(0, g.degree() - k + 1);
}

ConnectivityResult connectivity(const AugmentedCube& g) {
  ConnectivityResult result;
  const auto view = GraphView::full(g);
  const auto n = g.vertex_count();
  int best = g.degree();
  if (n == 2) {
    result.value = local_connectivity(view, g.vertex(0), g.vertex(1));
    result.pairs_examined = 1;
    return result;
  }
  auto visit = [&](std::uint64_t a, std::uint64_t b) {
    best = std::min(best, local_connectivity(view, g.vertex(a), g.vertex(b)));
    ++result.pairs_examined;
  };
  if (g.dim() <= 5) {
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a + 1; b < n; ++b) visit(a, b);
    }
  } else if (g.dim() <= 8) {
    for (std::uint64_t b = 1; b < n; ++b) visit(0, b);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
    for (int i = 0; i < 64; ++i) visit(0, pick(rng));
    result.exact = false;
  }
  result.value = best;
  return result;
}

}  // namespace augcube
