#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treemagic/tree.hpp"

namespace treemagic {

/// Raised when an operation needs at least one edge.
class DegenerateTree : public std::domain_error {
 public:
  DegenerateTree() : std::domain_error("DegenerateTree: tree has a single vertex and no edges") {}
};

class NotInSpectrum : public std::domain_error {
 public:
  explicit NotInSpectrum(std::int64_t h)
      : std::domain_error("NotInSpectrum: tree is not " + std::to_string(h) + "-magic"), modulus(h) {}
  std::int64_t modulus;
};

/// The integer edge function f that every h-magic labeling is a multiple
/// of: l(e) = x f(e) mod h where x is the pendant label.
struct ForcedLabeling {
  std::vector<std::int64_t> values;  // indexed by EdgeId
  std::vector<int> edge_layer;       // m with the edge joining D_m and D_{m-1}; 0 for c1c2
  std::vector<std::int64_t> range;   // sorted distinct values

  std::int64_t operator[](EdgeId e) const { return values.at(e); }
};

ForcedLabeling forced_labeling(const LayeredTree& lt);

/// Alternating layer-count sum whose products with x must vanish mod h for
/// the center vertices to carry the magic constant.
std::int64_t sigma(const LayeredTree& lt);

/// Whether m divides some element of `range`. Every m divides 0, 0 divides
/// only 0 and signs are ignored.
bool in_C(std::int64_t m, std::span<const std::int64_t> range);

/// Positive divisors of |n| in increasing order; empty for n = 0.
std::vector<std::int64_t> positive_divisors(std::int64_t n);

enum class SpectrumKind {
  Empty,
  CoDivisors,        // { h >= 2 : h divides no element of range_f }
  UnionOfMultiples,  // union of g*N over the generators
  TriviallyMagic,    // single vertex tree, every h
};

struct SpectrumDescription {
  SpectrumKind kind = SpectrumKind::Empty;
  std::int64_t sigma = 0;
  std::vector<std::int64_t> range_f;
  std::vector<std::int64_t> generators;
};

SpectrumDescription spectrum(const LayeredTree& lt);
SpectrumDescription spectrum(const LayeredTree& lt, const ForcedLabeling& fl);

bool spectrum_contains(const SpectrumDescription& s, std::int64_t h);

/// Structured form, e.g. {"kind":"union_of_multiples","generators":[3],"sigma":3}.
nlohmann::json to_json(const SpectrumDescription& s);

/// Human-readable form, e.g. "IM = 3N = {3,6,9,...}" or "IM = N \ {1,2}".
std::string render(const SpectrumDescription& s);

/// Edge labels in Z_h together with the shared pendant label x.
struct MagicLabeling {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> labels;  // indexed by EdgeId, residues in [0, h)
  std::int64_t pendant_label = 0;
};

/// Smallest x in [1, h) with x f(e) != 0 mod h for every edge and
/// sigma * x = 0 mod h, if any.
std::optional<std::int64_t> find_witness_x(const LayeredTree& lt, const ForcedLabeling& fl, std::int64_t h);

/// Builds l(e) = x f(e) mod h from the smallest witness. Throws
/// NotInSpectrum when h is outside the closed-form spectrum and
/// std::logic_error if no witness exists despite membership.
MagicLabeling construct_labeling(const LayeredTree& lt, const ForcedLabeling& fl, std::int64_t h);

/// Whether l(e) = x f(e) (mod h) for every edge, x the pendant label.
bool conforms_to_forced(const ForcedLabeling& fl, const MagicLabeling& labeling);

/// Non-negative residue of a mod h.
std::int64_t mod_floor(std::int64_t a, std::int64_t h);

/// a * b mod h without overflow, result in [0, h).
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t h);

}  // namespace treemagic
