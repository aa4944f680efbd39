#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treemagic {

using VertexId = std::size_t;
using EdgeId = std::size_t;

enum class TreeErrorKind {
  EmptyInput,
  MalformedLine,
  SelfLoop,
  DuplicateEdge,
  CycleDetected,
  Disconnected,
  UnknownVertex,
  InvalidStructure,
};

std::string_view to_string(TreeErrorKind kind);

/// Raised for every structural or parse failure. `line()` is the 1-based
/// input line that triggered the error, or 0 when the tree was not parsed
/// from text.
class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, std::size_t line, const std::string& what);

  TreeErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  TreeErrorKind kind_;
  std::size_t line_;
};

struct Edge {
  VertexId a;
  VertexId b;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Immutable finite tree with string vertex names. Vertex ids are dense and
/// follow the order in which names were supplied.
class Tree {
 public:
  /// Validates and builds. Throws TreeError on self-loops, duplicate edges,
  /// cycles, disconnection or out-of-range endpoints.
  static Tree from_edges(std::vector<std::string> names, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& name(VertexId v) const { return names_.at(v); }
  std::span<const std::string> names() const noexcept { return names_; }
  std::optional<VertexId> find(std::string_view name) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Incidence> incident(VertexId v) const { return adjacency_.at(v); }

  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  bool is_pendant(VertexId v) const { return degree(v) == 1; }
  VertexId other_end(EdgeId e, VertexId v) const;

 private:
  Tree() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Parses the edge-list text format: one edge per line as two whitespace
/// separated tokens; blank lines and lines starting with '#' are skipped.
/// A line holding a single token declares an isolated vertex, which is only
/// valid when it is the whole tree.
Tree parse_tree(std::string_view text);

/// Unique shortest path, both endpoints included.
std::vector<VertexId> path_between(const Tree& t, VertexId u, VertexId v);
std::vector<VertexId> path_between(const Tree& t, std::string_view u, std::string_view v);

/// Breadth-first distances from `source`.
std::vector<std::size_t> distances_from(const Tree& t, VertexId source);

/// Center of a tree. For odd diameter `c2` is set and `c1` is the endpoint
/// whose name sorts first.
struct Center {
  VertexId c1 = 0;
  std::optional<VertexId> c2;
  int diameter = 0;
  int k = 0;

  bool odd() const noexcept { return c2.has_value(); }
};

/// Center and diameter by repeated leaf peeling.
Center diameter_and_center(const Tree& t);

/// Same result computed by two breadth-first sweeps and the midpoint of the
/// resulting longest path.
Center diameter_and_center_bfs(const Tree& t);

enum class CenterSide : std::uint8_t { None, C1, C2 };

/// A tree with its layer decomposition D_0..D_k around the center and the
/// branch layer counts |D^u_d| of every vertex.
class LayeredTree {
 public:
  LayeredTree(Tree tree, Center center);

  const Tree& tree() const noexcept { return tree_; }
  const Center& center() const noexcept { return center_; }
  int k() const noexcept { return center_.k; }
  int diameter() const noexcept { return center_.diameter; }

  int layer(VertexId v) const { return layer_.at(v); }
  /// |D_d|; zero outside [0, k].
  std::int64_t layer_size(int d) const;
  std::span<const std::int64_t> layer_sizes() const noexcept { return layer_sizes_; }

  /// Which center vertex a vertex hangs off. Always None for even diameter.
  CenterSide side(VertexId v) const { return side_.at(v); }

  /// Neighbor one layer closer to the center; empty for center vertices.
  std::optional<VertexId> parent(VertexId v) const;
  std::span<const VertexId> children(VertexId v) const { return children_.at(v); }

  /// |D^u_d|, the number of layer-d vertices in the branch of u. Zero for
  /// d < layer(u) or d > k.
  std::int64_t branch_count(VertexId u, int d) const;

  /// For an edge uv with u in D_m and v in D_{m-1}, returns u. The center
  /// edge c1c2 of an odd tree returns c1.
  VertexId deeper_endpoint(EdgeId e) const;
  bool is_center_edge(EdgeId e) const;

 private:
  Tree tree_;
  Center center_;
  std::vector<int> layer_;
  std::vector<std::int64_t> layer_sizes_;
  std::vector<CenterSide> side_;
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> children_;
  // branch_[u][d - layer(u)] for layer(u) <= d <= k
  std::vector<std::vector<std::int64_t>> branch_;
};

LayeredTree layer_decomposition(Tree t, const Center& center);
LayeredTree layer_decomposition(Tree t);

/// Whether the layer-p vertices of B^u partition its layer-d vertices,
/// i.e. sum over w in D^u_p of |D^w_d| equals |D^u_d|. Requires
/// p > layer(u) and d > p.
bool check_partition_identity(const LayeredTree& lt, VertexId u, int p, int d);

}  // namespace treemagic
