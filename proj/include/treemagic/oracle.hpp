#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treemagic/spectrum.hpp"
#include "treemagic/tree.hpp"

namespace treemagic {

inline constexpr std::uint64_t kDefaultOracleCap = 5'000'000;

class LabelEdgeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct VerifyResult {
  bool valid = false;
  std::optional<std::int64_t> constant;  // common value of l+ when valid
  std::string diagnostic;                // first offending edge or vertex

  explicit operator bool() const noexcept { return valid; }
};

/// Checks a labeling directly against the definition: every label in
/// [1, h) and all vertex sums equal mod h. Throws LabelEdgeMismatch when
/// the label count differs from the edge count.
VerifyResult verify_labeling(const Tree& t, const MagicLabeling& labeling);

enum class VerdictKind { Magic, NotMagic, Unknown };

struct OracleVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<MagicLabeling> witness;
  std::uint64_t states_explored = 0;
  std::string reason;
};

enum class SearchStrategy {
  Exhaustive,  // every labeling in odometer order
  Pruned,      // same order, cut as soon as a completed vertex disagrees
};

/// (h-1)^|E|, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> search_space_size(std::size_t edges, std::int64_t h);

/// Brute-force decision of h-magic. Labelings are visited in lexicographic
/// order of their edge-indexed label vectors, so the witness is the
/// lexicographically first magic labeling under either strategy. Returns
/// Unknown without searching when (h-1)^|E| exceeds `cap`.
OracleVerdict is_h_magic_bruteforce(const Tree& t, std::int64_t h, std::uint64_t cap = kDefaultOracleCap,
                                    SearchStrategy strategy = SearchStrategy::Pruned);

/// Every h-magic labeling in odometer order, or nullopt over the cap.
std::optional<std::vector<MagicLabeling>> enumerate_magic_labelings(
    const Tree& t, std::int64_t h, std::uint64_t cap = kDefaultOracleCap,
    SearchStrategy strategy = SearchStrategy::Pruned);

}  // namespace treemagic
