#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treemagic/oracle.hpp"

namespace treemagic {

struct AtlasOptions {
  std::size_t n_max = 6;
  std::int64_t h_max = 6;
  std::uint64_t cap = kDefaultOracleCap;
  std::uint64_t seed = 1;
  std::size_t random_trees = 0;
  std::size_t random_n = 12;
  bool use_oracle = true;
};

struct Discrepancy {
  std::string tree;  // edge list "a-b c-d ..."
  std::int64_t h = 0;
  bool closed_form = false;
  std::optional<bool> witness;  // absent for the single vertex tree
  std::optional<bool> oracle;   // absent when skipped
};

struct AtlasReport {
  std::vector<std::uint64_t> trees_per_n;  // index n, exhaustive part
  std::uint64_t random_trees = 0;
  std::uint64_t pairs = 0;
  std::uint64_t oracle_checked = 0;
  std::uint64_t oracle_skipped = 0;
  std::uint64_t discrepancies = 0;
  std::optional<Discrepancy> first;
};

std::string describe_edges(const Tree& t);

/// Verdicts of the three routes for one (tree, h) pair.
Discrepancy compare_routes(const Tree& t, std::int64_t h, std::uint64_t cap, bool use_oracle = true);
bool routes_agree(const Discrepancy& d);

/// Sweeps every labeled tree with n <= n_max plus `random_trees` random
/// trees on `random_n` vertices, for every h in [2, h_max], comparing the
/// closed form, the witness search and the brute-force oracle.
AtlasReport run_atlas(const AtlasOptions& options);

}  // namespace treemagic
