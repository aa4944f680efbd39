#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "treemagic/tree.hpp"

namespace treemagic {

/// Prüfer code of a labeled tree on n vertices: n-2 entries in [0, n).
using PruferCode = std::vector<std::size_t>;

class NTooLarge : public std::out_of_range {
 public:
  explicit NTooLarge(std::size_t n)
      : std::out_of_range("NTooLarge: exhaustive enumeration supports n <= 8, got " + std::to_string(n)) {}
};

/// Tree on vertices named "v0".."v{n-1}" whose edges are listed in decode
/// order.
Tree decode_prufer(const PruferCode& code, std::size_t n);

/// Code of a tree whose vertices are numbered by VertexId.
PruferCode encode_prufer(const Tree& t);

/// Uniform labeled tree on n vertices, deterministic in `seed`.
Tree random_tree(std::size_t n, std::uint64_t seed);

/// Yields every labeled tree on n vertices, one per Prüfer code, in
/// lexicographic code order.
class LabeledTreeEnumerator {
 public:
  explicit LabeledTreeEnumerator(std::size_t n);

  std::optional<Tree> next();
  std::uint64_t total() const noexcept { return total_; }

 private:
  std::size_t n_;
  PruferCode code_;
  std::uint64_t total_;
  std::uint64_t emitted_ = 0;
};

inline constexpr std::size_t kMaxEnumerationN = 8;

LabeledTreeEnumerator all_labeled_trees(std::size_t n);

void for_each_labeled_tree(std::size_t n, const std::function<void(const Tree&)>& visit);

}  // namespace treemagic
