#include "treemagic/tree.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <utility>

namespace treemagic {

namespace {

class DisjointSets {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }

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
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::pair<VertexId, VertexId> ordered(VertexId a, VertexId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::string line_prefix(std::size_t line) {
  return line == 0 ? std::string{} : "line " + std::to_string(line) + ": ";
}

}  // namespace

std::string_view to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::EmptyInput: return "EmptyInput";
    case TreeErrorKind::MalformedLine: return "MalformedLine";
    case TreeErrorKind::SelfLoop: return "SelfLoop";
    case TreeErrorKind::DuplicateEdge: return "DuplicateEdge";
    case TreeErrorKind::CycleDetected: return "CycleDetected";
    case TreeErrorKind::Disconnected: return "Disconnected";
    case TreeErrorKind::UnknownVertex: return "UnknownVertex";
    case TreeErrorKind::InvalidStructure: return "InvalidStructure";
  }
  return "Unknown";
}

TreeError::TreeError(TreeErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + line_prefix(line) + what),
      kind_(kind),
      line_(line) {}

Tree Tree::from_edges(std::vector<std::string> names, std::vector<Edge> edges) {
  if (names.empty()) throw TreeError(TreeErrorKind::EmptyInput, 0, "tree has no vertices");

  Tree t;
  t.names_ = std::move(names);
  t.index_.reserve(t.names_.size());
  for (VertexId v = 0; v < t.names_.size(); ++v) {
    if (!t.index_.emplace(t.names_[v], v).second)
      throw TreeError(TreeErrorKind::InvalidStructure, 0, "vertex name '" + t.names_[v] + "' repeated");
  }

  const std::size_t n = t.names_.size();
  DisjointSets sets;
  for (std::size_t i = 0; i < n; ++i) sets.add();
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : edges) {
    if (e.a >= n || e.b >= n)
      throw TreeError(TreeErrorKind::UnknownVertex, 0, "edge endpoint out of range");
    if (e.a == e.b) throw TreeError(TreeErrorKind::SelfLoop, 0, "self-loop at '" + t.names_[e.a] + "'");
    if (!seen.insert(ordered(e.a, e.b)).second)
      throw TreeError(TreeErrorKind::DuplicateEdge, 0,
                      "edge '" + t.names_[e.a] + " " + t.names_[e.b] + "' repeated");
    if (!sets.unite(e.a, e.b))
      throw TreeError(TreeErrorKind::CycleDetected, 0,
                      "edge '" + t.names_[e.a] + " " + t.names_[e.b] + "' closes a cycle");
  }
  if (edges.size() + 1 != n)
    throw TreeError(TreeErrorKind::Disconnected, 0,
                    std::to_string(n) + " vertices but " + std::to_string(edges.size()) + " edges");

  t.edges_ = std::move(edges);
  t.adjacency_.resize(n);
  for (EdgeId id = 0; id < t.edges_.size(); ++id) {
    const Edge& e = t.edges_[id];
    t.adjacency_[e.a].push_back({e.b, id});
    t.adjacency_[e.b].push_back({e.a, id});
  }
  return t;
}

std::optional<VertexId> Tree::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Tree::other_end(EdgeId e, VertexId v) const {
  const Edge& edge = edges_.at(e);
  if (edge.a == v) return edge.b;
  if (edge.b == v) return edge.a;
  throw std::invalid_argument("vertex is not an endpoint of the edge");
}

Tree parse_tree(std::string_view text) {
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> index;
  std::vector<Edge> edges;
  // Line on which each vertex first appeared, for error reporting.
  std::vector<std::size_t> vertex_line;
  std::set<std::pair<VertexId, VertexId>> seen;
  DisjointSets sets;

  auto intern = [&](const std::string& name, std::size_t line) {
    auto [it, inserted] = index.emplace(name, names.size());
    if (inserted) {
      names.push_back(name);
      vertex_line.push_back(line);
      sets.add();
    }
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (tokens.size() == 1) {
      intern(tokens[0], line_no);
      continue;
    }
    if (tokens.size() != 2)
      throw TreeError(TreeErrorKind::MalformedLine, line_no,
                      "expected two vertex tokens, got " + std::to_string(tokens.size()));
    if (tokens[0] == tokens[1])
      throw TreeError(TreeErrorKind::SelfLoop, line_no, "self-loop at '" + tokens[0] + "'");

    VertexId a = intern(tokens[0], line_no);
    VertexId b = intern(tokens[1], line_no);
    if (!seen.insert(ordered(a, b)).second)
      throw TreeError(TreeErrorKind::DuplicateEdge, line_no, "edge '" + tokens[0] + " " + tokens[1] + "' repeated");
    if (!sets.unite(a, b))
      throw TreeError(TreeErrorKind::CycleDetected, line_no,
                      "edge '" + tokens[0] + " " + tokens[1] + "' closes a cycle");
    edges.push_back({a, b});
  }

  if (names.empty()) throw TreeError(TreeErrorKind::EmptyInput, 0, "no vertices or edges in input");

  // Vertices are in first-appearance order, so the first stray one names the
  // earliest line that starts a second component.
  const std::size_t root = sets.find(0);
  for (VertexId v = 1; v < names.size(); ++v) {
    if (sets.find(v) != root)
      throw TreeError(TreeErrorKind::Disconnected, vertex_line[v],
                      "'" + names[v] + "' is not reachable from '" + names[0] + "'");
  }

  return Tree::from_edges(std::move(names), std::move(edges));
}

std::vector<std::size_t> distances_from(const Tree& t, VertexId source) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(t.vertex_count(), unseen);
  std::deque<VertexId> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const Incidence& inc : t.incident(v)) {
      if (dist[inc.neighbor] == unseen) {
        dist[inc.neighbor] = dist[v] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

namespace {

std::vector<VertexId> bfs_parents(const Tree& t, VertexId source) {
  std::vector<VertexId> parent(t.vertex_count(), t.vertex_count());
  std::deque<VertexId> queue{source};
  parent[source] = source;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const Incidence& inc : t.incident(v)) {
      if (parent[inc.neighbor] == t.vertex_count()) {
        parent[inc.neighbor] = v;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return parent;
}

Center make_center(const Tree& t, VertexId a, std::optional<VertexId> b, int diameter) {
  Center c;
  c.diameter = diameter;
  c.k = diameter / 2;
  c.c1 = a;
  if (b) {
    if (t.name(*b) < t.name(a)) {
      c.c1 = *b;
      c.c2 = a;
    } else {
      c.c2 = b;
    }
  }
  return c;
}

}  // namespace

std::vector<VertexId> path_between(const Tree& t, VertexId u, VertexId v) {
  if (u >= t.vertex_count() || v >= t.vertex_count())
    throw TreeError(TreeErrorKind::UnknownVertex, 0, "vertex id out of range");
  auto parent = bfs_parents(t, v);
  std::vector<VertexId> path{u};
  while (path.back() != v) path.push_back(parent[path.back()]);
  return path;
}

std::vector<VertexId> path_between(const Tree& t, std::string_view u, std::string_view v) {
  auto a = t.find(u);
  if (!a) throw TreeError(TreeErrorKind::UnknownVertex, 0, "unknown vertex '" + std::string(u) + "'");
  auto b = t.find(v);
  if (!b) throw TreeError(TreeErrorKind::UnknownVertex, 0, "unknown vertex '" + std::string(v) + "'");
  return path_between(t, *a, *b);
}

Center diameter_and_center(const Tree& t) {
  const std::size_t n = t.vertex_count();
  if (n == 1) return make_center(t, 0, std::nullopt, 0);

  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<VertexId> leaves;
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) leaves.push_back(v);
  }

  std::size_t remaining = n;
  int rounds = 0;
  while (remaining > 2) {
    std::vector<VertexId> next;
    for (VertexId leaf : leaves) {
      removed[leaf] = true;
      --remaining;
      for (const Incidence& inc : t.incident(leaf)) {
        if (!removed[inc.neighbor] && --degree[inc.neighbor] == 1) next.push_back(inc.neighbor);
      }
    }
    leaves = std::move(next);
    ++rounds;
  }

  std::vector<VertexId> core;
  for (VertexId v = 0; v < n; ++v)
    if (!removed[v]) core.push_back(v);
  if (core.size() == 1) return make_center(t, core[0], std::nullopt, 2 * rounds);
  return make_center(t, core[0], core[1], 2 * rounds + 1);
}

Center diameter_and_center_bfs(const Tree& t) {
  if (t.vertex_count() == 1) return make_center(t, 0, std::nullopt, 0);
  auto farthest = [&](VertexId from) {
    auto dist = distances_from(t, from);
    return static_cast<VertexId>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  };
  VertexId a = farthest(0);
  VertexId b = farthest(a);
  auto path = path_between(t, a, b);
  const int diameter = static_cast<int>(path.size()) - 1;
  const auto mid = static_cast<std::size_t>(diameter / 2);
  if (diameter % 2 == 0) return make_center(t, path[mid], std::nullopt, diameter);
  return make_center(t, path[mid], path[mid + 1], diameter);
}

LayeredTree::LayeredTree(Tree tree, Center center) : tree_(std::move(tree)), center_(center) {
  const std::size_t n = tree_.vertex_count();
  const int k = center_.k;
  const VertexId none = n;

  layer_.assign(n, -1);
  side_.assign(n, CenterSide::None);
  parent_.assign(n, none);
  children_.resize(n);
  layer_sizes_.assign(static_cast<std::size_t>(k) + 1, 0);

  std::vector<VertexId> order;
  order.reserve(n);
  layer_[center_.c1] = 0;
  order.push_back(center_.c1);
  if (center_.odd()) {
    layer_[*center_.c2] = 0;
    side_[center_.c1] = CenterSide::C1;
    side_[*center_.c2] = CenterSide::C2;
    order.push_back(*center_.c2);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    VertexId v = order[head];
    for (const Incidence& inc : tree_.incident(v)) {
      VertexId w = inc.neighbor;
      if (layer_[w] != -1) continue;
      layer_[w] = layer_[v] + 1;
      side_[w] = side_[v];
      parent_[w] = v;
      children_[v].push_back(w);
      order.push_back(w);
    }
  }

  for (VertexId v = 0; v < n; ++v) {
    if (layer_[v] > k)
      throw TreeError(TreeErrorKind::InvalidStructure, 0, "center does not belong to this tree");
    ++layer_sizes_[static_cast<std::size_t>(layer_[v])];
  }

  branch_.resize(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId u = *it;
    const int m = layer_[u];
    auto& counts = branch_[u];
    counts.assign(static_cast<std::size_t>(k - m + 1), 0);
    counts[0] = 1;
    for (VertexId w : children_[u]) {
      const auto& sub = branch_[w];
      for (std::size_t j = 0; j < sub.size(); ++j) counts[j + 1] += sub[j];
    }
  }
}

std::int64_t LayeredTree::layer_size(int d) const {
  if (d < 0 || d > k()) return 0;
  return layer_sizes_[static_cast<std::size_t>(d)];
}

std::optional<VertexId> LayeredTree::parent(VertexId v) const {
  VertexId p = parent_.at(v);
  if (p == tree_.vertex_count()) return std::nullopt;
  return p;
}

std::int64_t LayeredTree::branch_count(VertexId u, int d) const {
  const int m = layer_.at(u);
  if (d < m || d > k()) return 0;
  return branch_[u][static_cast<std::size_t>(d - m)];
}

bool LayeredTree::is_center_edge(EdgeId e) const {
  const Edge& edge = tree_.edge(e);
  return layer_[edge.a] == 0 && layer_[edge.b] == 0;
}

VertexId LayeredTree::deeper_endpoint(EdgeId e) const {
  if (is_center_edge(e)) return center_.c1;
  const Edge& edge = tree_.edge(e);
  return layer_[edge.a] > layer_[edge.b] ? edge.a : edge.b;
}

LayeredTree layer_decomposition(Tree t, const Center& center) { return LayeredTree(std::move(t), center); }

LayeredTree layer_decomposition(Tree t) {
  Center c = diameter_and_center(t);
  return LayeredTree(std::move(t), c);
}

bool check_partition_identity(const LayeredTree& lt, VertexId u, int p, int d) {
  const int m = lt.layer(u);
  if (p <= m || d <= p) throw std::invalid_argument("partition identity requires layer(u) < p < d");

  std::int64_t total = 0;
  for (VertexId w = 0; w < lt.tree().vertex_count(); ++w) {
    if (lt.layer(w) != p) continue;
    VertexId up = w;
    for (int step = p; step > m; --step) up = *lt.parent(up);
    if (up == u) total += lt.branch_count(w, d);
  }
  return total == lt.branch_count(u, d);
}

}  // namespace treemagic
