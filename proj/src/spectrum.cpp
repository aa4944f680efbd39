#include "treemagic/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace treemagic {

namespace {

constexpr std::int64_t sign_of_power(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

void require_edges(const LayeredTree& lt) {
  if (lt.diameter() == 0) throw DegenerateTree();
}

}  // namespace

std::int64_t mod_floor(std::int64_t a, std::int64_t h) {
  std::int64_t r = a % h;
  return r < 0 ? r + h : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t h) {
  const __int128 p = static_cast<__int128>(mod_floor(a, h)) * mod_floor(b, h);
  return static_cast<std::int64_t>(p % h);
}

ForcedLabeling forced_labeling(const LayeredTree& lt) {
  require_edges(lt);
  const Tree& t = lt.tree();
  const int k = lt.k();

  ForcedLabeling fl;
  fl.values.resize(t.edge_count());
  fl.edge_layer.resize(t.edge_count());
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const VertexId u = lt.deeper_endpoint(e);
    std::int64_t sum = 0;
    if (lt.is_center_edge(e)) {
      for (int i = 1; i <= k + 1; ++i) sum += sign_of_power(i) * lt.branch_count(u, k - i + 1);
      fl.values[e] = sign_of_power(k + 1) * sum;
      fl.edge_layer[e] = 0;
    } else {
      const int m = lt.layer(u);
      for (int i = 1; i <= k - m + 1; ++i) sum += sign_of_power(i) * lt.branch_count(u, k - i + 1);
      fl.values[e] = sign_of_power(k - m + 1) * sum;
      fl.edge_layer[e] = m;
    }
  }

  fl.range = fl.values;
  std::sort(fl.range.begin(), fl.range.end());
  fl.range.erase(std::unique(fl.range.begin(), fl.range.end()), fl.range.end());
  return fl;
}

std::int64_t sigma(const LayeredTree& lt) {
  require_edges(lt);
  const int k = lt.k();
  std::int64_t s = 0;
  if (!lt.center().odd()) {
    for (int i = 1; i <= k + 1; ++i) s += sign_of_power(k + i) * lt.layer_size(k - i + 1);
  } else {
    const VertexId c1 = lt.center().c1;
    const VertexId c2 = *lt.center().c2;
    for (int i = 1; i <= k; ++i)
      s += sign_of_power(i) * (lt.branch_count(c1, k - i + 1) - lt.branch_count(c2, k - i + 1));
  }
  return s;
}

bool in_C(std::int64_t m, std::span<const std::int64_t> range) {
  m = abs64(m);
  return std::any_of(range.begin(), range.end(), [m](std::int64_t r) {
    if (m == 0) return r == 0;
    return r % m == 0;
  });
}

std::vector<std::int64_t> positive_divisors(std::int64_t n) {
  n = abs64(n);
  std::vector<std::int64_t> low;
  std::vector<std::int64_t> high;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

SpectrumDescription spectrum(const LayeredTree& lt) {
  if (lt.diameter() == 0) return {SpectrumKind::TriviallyMagic, 0, {}, {}};
  return spectrum(lt, forced_labeling(lt));
}

SpectrumDescription spectrum(const LayeredTree& lt, const ForcedLabeling& fl) {
  if (lt.diameter() == 0) return {SpectrumKind::TriviallyMagic, 0, {}, {}};

  SpectrumDescription s;
  s.sigma = sigma(lt);
  s.range_f = fl.range;
  if (in_C(s.sigma, s.range_f)) {
    s.kind = SpectrumKind::Empty;
  } else if (s.sigma == 0) {
    s.kind = SpectrumKind::CoDivisors;
  } else {
    s.kind = SpectrumKind::UnionOfMultiples;
    for (std::int64_t d : positive_divisors(s.sigma))
      if (!in_C(d, s.range_f)) s.generators.push_back(d);
  }
  return s;
}

bool spectrum_contains(const SpectrumDescription& s, std::int64_t h) {
  if (h < 1) return false;
  switch (s.kind) {
    case SpectrumKind::Empty: return false;
    case SpectrumKind::TriviallyMagic: return true;
    case SpectrumKind::CoDivisors: return h >= 2 && !in_C(h, s.range_f);
    case SpectrumKind::UnionOfMultiples:
      return std::any_of(s.generators.begin(), s.generators.end(), [h](std::int64_t g) { return h % g == 0; });
  }
  return false;
}

nlohmann::json to_json(const SpectrumDescription& s) {
  switch (s.kind) {
    case SpectrumKind::Empty: return {{"kind", "empty"}};
    case SpectrumKind::TriviallyMagic: return {{"kind", "trivially_magic"}};
    case SpectrumKind::CoDivisors: return {{"kind", "co_divisors"}, {"range_f", s.range_f}, {"sigma", s.sigma}};
    case SpectrumKind::UnionOfMultiples:
      return {{"kind", "union_of_multiples"}, {"generators", s.generators}, {"sigma", s.sigma}};
  }
  return nullptr;
}

namespace {

std::string join(const std::vector<std::int64_t>& xs, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

}  // namespace

std::string render(const SpectrumDescription& s) {
  switch (s.kind) {
    case SpectrumKind::Empty: return "IM = ∅";
    case SpectrumKind::TriviallyMagic: return "IM = N (trivially magic: single vertex, no edges)";
    case SpectrumKind::CoDivisors: {
      std::set<std::int64_t> excluded;
      for (std::int64_t r : s.range_f)
        for (std::int64_t d : positive_divisors(r)) excluded.insert(d);
      return "IM = N \\ {" + join({excluded.begin(), excluded.end()}, ",") + "}";
    }
    case SpectrumKind::UnionOfMultiples: {
      std::ostringstream out;
      out << "IM = ";
      for (std::size_t i = 0; i < s.generators.size(); ++i)
        out << (i ? " ∪ " : "") << s.generators[i] << "N";
      std::vector<std::int64_t> first;
      for (std::int64_t h = 2; first.size() < 3 * s.generators.size(); ++h)
        if (spectrum_contains(s, h)) first.push_back(h);
      out << " = {" << join(first, ",") << ",...}";
      return out.str();
    }
  }
  return {};
}

std::optional<std::int64_t> find_witness_x(const LayeredTree& lt, const ForcedLabeling& fl, std::int64_t h) {
  require_edges(lt);
  if (h < 2) return std::nullopt;
  const std::int64_t s = sigma(lt);
  // sigma * x = 0 (mod h) holds exactly for multiples of h / gcd(sigma, h).
  const std::int64_t step = s == 0 ? 1 : h / std::gcd(abs64(s), h);
  for (std::int64_t x = step; x < h; x += step) {
    const bool nonzero = std::all_of(fl.range.begin(), fl.range.end(),
                                     [&](std::int64_t f) { return mul_mod(x, f, h) != 0; });
    if (nonzero) return x;
  }
  return std::nullopt;
}

MagicLabeling construct_labeling(const LayeredTree& lt, const ForcedLabeling& fl, std::int64_t h) {
  require_edges(lt);
  if (!spectrum_contains(spectrum(lt, fl), h)) throw NotInSpectrum(h);
  const auto x = find_witness_x(lt, fl, h);
  if (!x)
    throw std::logic_error("InternalError: no pendant label found for h=" + std::to_string(h) +
                           " although the closed form contains it");

  MagicLabeling labeling;
  labeling.modulus = h;
  labeling.pendant_label = *x;
  labeling.labels.reserve(fl.values.size());
  for (std::int64_t f : fl.values) labeling.labels.push_back(mul_mod(*x, f, h));
  return labeling;
}

bool conforms_to_forced(const ForcedLabeling& fl, const MagicLabeling& labeling) {
  if (labeling.labels.size() != fl.values.size()) return false;
  const std::int64_t h = labeling.modulus;
  for (std::size_t e = 0; e < fl.values.size(); ++e) {
    if (mod_floor(labeling.labels[e], h) != mul_mod(labeling.pendant_label, fl.values[e], h)) return false;
  }
  return true;
}

}  // namespace treemagic
