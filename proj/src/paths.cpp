#include "augcube/paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "augcube/errors.hpp"

namespace augcube {

Path Path::reversed() const {
  Path out{vertices};
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

PathSystem PathSystem::reversed() const {
  PathSystem out{sink, source, {}};
  out.paths.reserve(paths.size());
  for (const auto& p : paths) out.paths.push_back(p.reversed());
  return out;
}

namespace {

// Split network: view vertex i becomes in-node 2i and out-node 2i+1.
class SplitNetwork {
 public:
  SplitNetwork(const GraphView& view, const Vertex& source, const Vertex& sink)
      : vertices_(view.vertices()) {
    index_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], static_cast<int>(i));
    adj_.resize(2 * vertices_.size());
    const int big = std::numeric_limits<int>::max() / 4;
    const int s = index_.at(source);
    const int t = index_.at(sink);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const int id = static_cast<int>(i);
      add_arc(in(id), out(id), (id == s || id == t) ? big : 1);
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      for (const auto& w : view.neighbors(vertices_[i])) {
        const int j = index_.at(w);
        // only the direct source-sink edge is capacitated, so minimum cuts
        // consist of vertices plus possibly that edge
        add_arc(out(static_cast<int>(i)), in(j), (static_cast<int>(i) == s && j == t) ? 1 : big);
      }
    }
    source_ = out(s);
    sink_ = in(t);
  }

  // Adds at most `limit` units of flow; returns the total.
  int augment(int limit) {
    int flow = 0;
    std::vector<int> parent_arc(adj_.size());
    while (flow < limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::vector<bool> seen(adj_.size(), false);
      std::queue<int> queue;
      queue.push(source_);
      seen[static_cast<std::size_t>(source_)] = true;
      while (!queue.empty() && !seen[static_cast<std::size_t>(sink_)]) {
        const int node = queue.front();
        queue.pop();
        for (int a : adj_[static_cast<std::size_t>(node)]) {
          const auto& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
            seen[static_cast<std::size_t>(arc.to)] = true;
            parent_arc[static_cast<std::size_t>(arc.to)] = a;
            queue.push(arc.to);
          }
        }
      }
      if (!seen[static_cast<std::size_t>(sink_)]) break;
      for (int node = sink_; node != source_;) {
        const int a = parent_arc[static_cast<std::size_t>(node)];
        arcs_[static_cast<std::size_t>(a)].cap -= 1;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += 1;
        node = arcs_[static_cast<std::size_t>(a ^ 1)].to;
      }
      ++flow;
    }
    flow_ += flow;
    return flow;
  }

  std::vector<Path> decompose() const {
    // flow on a forward graph arc = residual capacity of its reverse arc
    std::vector<Path> paths;
    std::vector<std::size_t> cursor(adj_.size(), 0);
    for (int p = 0; p < flow_; ++p) {
      Path path;
      int node = source_;
      path.vertices.push_back(vertices_[static_cast<std::size_t>(node / 2)]);
      while (node != sink_) {
        const auto& arcs = adj_[static_cast<std::size_t>(node)];
        auto& pos = cursor[static_cast<std::size_t>(node)];
        int next = -1;
        for (; pos < arcs.size(); ++pos) {
          const int a = arcs[pos];
          if (a % 2 == 0 && arcs_[static_cast<std::size_t>(a ^ 1)].cap > 0 && is_graph_arc(a)) {
            next = arcs_[static_cast<std::size_t>(a)].to;
            ++pos;
            break;
          }
        }
        if (next < 0) throw InternalError("flow decomposition lost a path");
        // in-node -> out-node of the same vertex
        node = next;
        path.vertices.push_back(vertices_[static_cast<std::size_t>(node / 2)]);
        if (node != sink_) node = out(node / 2);
      }
      paths.push_back(std::move(path));
    }
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
      return a.vertices.size() != b.vertices.size() ? a.vertices.size() < b.vertices.size()
                                                    : a.vertices < b.vertices;
    });
    return paths;
  }

  // Vertices whose in-node is reachable in the residual graph but whose
  // out-node is not.
  std::vector<Vertex> cut() const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> queue;
    queue.push(source_);
    seen[static_cast<std::size_t>(source_)] = true;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop();
      for (int a : adj_[static_cast<std::size_t>(node)]) {
        const auto& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
          seen[static_cast<std::size_t>(arc.to)] = true;
          queue.push(arc.to);
        }
      }
    }
    std::vector<Vertex> out_set;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (seen[2 * i] && !seen[2 * i + 1]) out_set.push_back(vertices_[i]);
    }
    return out_set;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };

  static int in(int id) { return 2 * id; }
  static int out(int id) { return 2 * id + 1; }

  void add_arc(int from, int to, int cap) {
    adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  // forward arcs between different vertices (out-node -> in-node)
  bool is_graph_arc(int a) const {
    const int to = arcs_[static_cast<std::size_t>(a)].to;
    const int from = arcs_[static_cast<std::size_t>(a ^ 1)].to;
    return from % 2 == 1 && to % 2 == 0;
  }

  std::vector<Vertex> vertices_;
  std::unordered_map<Vertex, int, VertexHash> index_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  int source_ = 0;
  int sink_ = 0;
  int flow_ = 0;
};

void require_endpoints(const GraphView& view, const Vertex& u, const Vertex& v) {
  if (u == v) throw ContractViolation("disjoint_paths: endpoints coincide (" + u.to_string() + ")");
  if (!view.contains(u) || !view.contains(v)) {
    throw ContractViolation("disjoint_paths: endpoint outside the view");
  }
}

}  // namespace

PathResult disjoint_paths(const GraphView& view, const Vertex& u, const Vertex& v, int k) {
  require_endpoints(view, u, v);
  if (k < 1) throw ContractViolation("disjoint_paths: k must be positive");
  SplitNetwork net(view, u, v);
  const int flow = net.augment(k);
  if (flow >= k) return PathSystem{u, v, net.decompose()};
  MinCut cut{u, v, {}, view.host().is_adjacent(u, v)};
  cut.separator = net.cut();
  return cut;
}

int local_connectivity(const GraphView& view, const Vertex& u, const Vertex& v) {
  require_endpoints(view, u, v);
  SplitNetwork net(view, u, v);
  return net.augment(std::numeric_limits<int>::max());
}

Vertex neighbor_along(const PathSystem& ps, const Vertex& endpoint, std::size_t i) {
  if (i >= ps.paths.size()) {
    throw ContractViolation("neighbor_along: index " + std::to_string(i) + " out of range");
  }
  const auto& vs = ps.paths[i].vertices;
  if (vs.size() < 2) throw ContractViolation("neighbor_along: degenerate path");
  if (endpoint == ps.source) return vs[1];
  if (endpoint == ps.sink) return vs[vs.size() - 2];
  throw ContractViolation("neighbor_along: " + endpoint.to_string() + " is not an endpoint");
}

PathSystem reorder_paths(const PathSystem& ps, const Vertex& endpoint, std::span<const Pin> pins) {
  const std::size_t count = ps.paths.size();
  std::vector<std::optional<std::size_t>> slot(count);  // slot -> source path
  std::vector<bool> taken(count, false);
  for (const auto& pin : pins) {
    if (pin.index >= count) throw ContractViolation("reorder_paths: pin index out of range");
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < count; ++j) {
      if (neighbor_along(ps, endpoint, j) == pin.neighbor) {
        found = j;
        break;
      }
    }
    if (!found) {
      throw ContractViolation("reorder_paths: no path leaves " + endpoint.to_string() + " through " +
                              pin.neighbor.to_string());
    }
    if (slot[pin.index] && *slot[pin.index] != *found) {
      throw ContractViolation("reorder_paths: conflicting pins at index " + std::to_string(pin.index));
    }
    if (taken[*found] && slot[pin.index] != found) {
      throw ContractViolation("reorder_paths: neighbour " + pin.neighbor.to_string() + " pinned twice");
    }
    slot[pin.index] = found;
    taken[*found] = true;
  }
  PathSystem out{ps.source, ps.sink, std::vector<Path>(count)};
  std::size_t next = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!slot[i]) {
      while (taken[next]) ++next;
      slot[i] = next++;
    }
    out.paths[i] = ps.paths[*slot[i]];
  }
  return out;
}

PathSystem map_path_system(const AugmentedCube& host, const VertexMap& map, const PathSystem& ps) {
  PathSystem out{map(ps.source), map(ps.sink), {}};
  out.paths.reserve(ps.paths.size());
  for (const auto& p : ps.paths) {
    Path image;
    image.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) {
      image.vertices.push_back(map(v));
      const auto n = image.vertices.size();
      if (n >= 2 && !host.is_adjacent(image.vertices[n - 2], image.vertices[n - 1])) {
        throw ContractViolation("map_path_system: map does not preserve adjacency at " + v.to_string());
      }
    }
    out.paths.push_back(std::move(image));
  }
  return out;
}

std::vector<Edge> connector_tree(const GraphView& view, std::span<const Vertex> terminals) {
  if (terminals.empty()) return {};
  for (const auto& t : terminals) {
    if (!view.contains(t)) throw ContractViolation("connector_tree: terminal " + t.to_string() + " outside view");
  }
  const Vertex root = terminals.front();
  std::unordered_map<Vertex, Vertex, VertexHash> parent;
  parent.emplace(root, root);
  std::queue<Vertex> queue;
  queue.push(root);
  while (!queue.empty()) {
    const Vertex cur = queue.front();
    queue.pop();
    for (const auto& w : view.neighbors(cur)) {
      if (parent.emplace(w, cur).second) queue.push(w);
    }
  }
  std::vector<Edge> edges;
  std::unordered_set<Vertex, VertexHash> in_tree{root};
  for (const auto& t : terminals) {
    if (!parent.contains(t)) throw ContractViolation("connector_tree: view is disconnected");
    for (Vertex cur = t; !in_tree.contains(cur); cur = parent.at(cur)) {
      in_tree.insert(cur);
      edges.emplace_back(cur, parent.at(cur));
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

HamiltonResult hamiltonian_path(const GraphView& view, const Vertex& u, const Vertex& v, std::uint64_t budget) {
  if (u == v) throw ContractViolation("hamiltonian_path: endpoints coincide");
  if (!view.contains(u) || !view.contains(v)) throw ContractViolation("hamiltonian_path: endpoint outside view");

  const auto verts = view.vertices();
  std::unordered_map<Vertex, std::size_t, VertexHash> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);
  std::vector<std::vector<std::size_t>> adj(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (const auto& w : view.neighbors(verts[i])) adj[i].push_back(index.at(w));
  }

  HamiltonResult result;
  const std::size_t target = index.at(v);
  std::vector<bool> visited(verts.size(), false);
  std::vector<std::size_t> stack{index.at(u)};
  visited[stack.back()] = true;
  bool exhausted = false;

  // Plain DFS; unvisited neighbours with fewer free neighbours go first.
  std::function<bool()> extend = [&]() -> bool {
    if (++result.nodes > budget) {
      exhausted = true;
      return false;
    }
    const std::size_t cur = stack.back();
    if (stack.size() == verts.size()) return cur == target;
    if (cur == target) return false;
    std::vector<std::pair<int, std::size_t>> order;
    for (auto w : adj[cur]) {
      if (visited[w]) continue;
      int free_deg = 0;
      for (auto x : adj[w]) free_deg += visited[x] ? 0 : 1;
      order.emplace_back(free_deg, w);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [deg, w] : order) {
      visited[w] = true;
      stack.push_back(w);
      if (extend()) return true;
      stack.pop_back();
      visited[w] = false;
      if (exhausted) return false;
    }
    return false;
  };

  if (extend()) {
    Path path;
    for (auto i : stack) path.vertices.push_back(verts[i]);
    result.status = SearchStatus::Found;
    result.path = std::move(path);
  } else {
    result.status = exhausted ? SearchStatus::BudgetExhausted : SearchStatus::ProvenAbsent;
  }
  return result;
}

}  // namespace augcube
