#include "treemagic/treegen.hpp"

#include <functional>
#include <queue>
#include <random>
#include <string>

namespace treemagic {

namespace {

std::vector<std::string> numbered_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

}  // namespace

Tree decode_prufer(const PruferCode& code, std::size_t n) {
  if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
  if (n == 1) return Tree::from_edges(numbered_names(1), {});
  if (code.size() != n - 2) throw std::invalid_argument("Prüfer code must have n-2 entries");

  std::vector<std::size_t> degree(n, 1);
  for (std::size_t v : code) {
    if (v >= n) throw std::invalid_argument("Prüfer entry out of range");
    ++degree[v];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t v : code) {
    const std::size_t leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, v});
    if (--degree[v] == 1) leaves.push(v);
  }
  const std::size_t a = leaves.top();
  leaves.pop();
  edges.push_back({a, leaves.top()});
  return Tree::from_edges(numbered_names(n), std::move(edges));
}

PruferCode encode_prufer(const Tree& t) {
  const std::size_t n = t.vertex_count();
  PruferCode code;
  if (n <= 2) return code;
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) leaves.push(v);
  }
  while (code.size() < n - 2) {
    const VertexId leaf = leaves.top();
    leaves.pop();
    removed[leaf] = true;
    for (const Incidence& inc : t.incident(leaf)) {
      if (removed[inc.neighbor]) continue;
      code.push_back(inc.neighbor);
      if (--degree[inc.neighbor] == 1) leaves.push(inc.neighbor);
    }
  }
  return code;
}

Tree random_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PruferCode code(n >= 2 ? n - 2 : 0);
  if (n >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto& v : code) v = pick(rng);
  }
  return decode_prufer(code, n);
}

LabeledTreeEnumerator::LabeledTreeEnumerator(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
  if (n > kMaxEnumerationN) throw NTooLarge(n);
  code_.assign(n >= 2 ? n - 2 : 0, 0);
  total_ = 1;
  for (std::size_t i = 0; i < code_.size(); ++i) total_ *= n;
}

std::optional<Tree> LabeledTreeEnumerator::next() {
  if (emitted_ == total_) return std::nullopt;
  Tree t = decode_prufer(code_, n_);
  ++emitted_;
  for (std::size_t i = code_.size(); i > 0; --i) {
    if (++code_[i - 1] < n_) break;
    code_[i - 1] = 0;
  }
  return t;
}

LabeledTreeEnumerator all_labeled_trees(std::size_t n) { return LabeledTreeEnumerator(n); }

void for_each_labeled_tree(std::size_t n, const std::function<void(const Tree&)>& visit) {
  auto trees = all_labeled_trees(n);
  while (auto t = trees.next()) visit(*t);
}

}  // namespace treemagic
