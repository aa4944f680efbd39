#include "treemagic/atlas.hpp"

#include <random>

#include "treemagic/treegen.hpp"

namespace treemagic {

std::string describe_edges(const Tree& t) {
  if (t.edge_count() == 0) return t.name(0);
  std::string out;
  for (const Edge& e : t.edges()) {
    if (!out.empty()) out += ' ';
    out += t.name(e.a) + "-" + t.name(e.b);
  }
  return out;
}

namespace {

struct Analysis {
  LayeredTree lt;
  std::optional<ForcedLabeling> fl;
  SpectrumDescription spec;
};

Analysis analyze(const Tree& t) {
  LayeredTree lt = layer_decomposition(t);
  if (lt.diameter() == 0) {
    auto s = spectrum(lt);
    return {std::move(lt), std::nullopt, std::move(s)};
  }
  ForcedLabeling fl = forced_labeling(lt);
  auto s = spectrum(lt, fl);
  return {std::move(lt), std::move(fl), std::move(s)};
}

Discrepancy compare(const Tree& t, const Analysis& a, std::int64_t h, std::uint64_t cap, bool use_oracle,
                    AtlasReport* report) {
  Discrepancy d;
  d.h = h;
  d.closed_form = spectrum_contains(a.spec, h);
  if (a.fl) d.witness = find_witness_x(a.lt, *a.fl, h).has_value();
  if (use_oracle) {
    const auto verdict = is_h_magic_bruteforce(t, h, cap);
    if (verdict.kind != VerdictKind::Unknown) d.oracle = verdict.kind == VerdictKind::Magic;
  }
  if (report) {
    ++report->pairs;
    ++(d.oracle ? report->oracle_checked : report->oracle_skipped);
  }
  return d;
}

void sweep(const Tree& t, const AtlasOptions& options, AtlasReport& report) {
  const Analysis a = analyze(t);
  for (std::int64_t h = 2; h <= options.h_max; ++h) {
    Discrepancy d = compare(t, a, h, options.cap, options.use_oracle, &report);
    if (routes_agree(d)) continue;
    ++report.discrepancies;
    if (!report.first) {
      d.tree = describe_edges(t);
      report.first = std::move(d);
    }
  }
}

}  // namespace

bool routes_agree(const Discrepancy& d) {
  if (d.witness && *d.witness != d.closed_form) return false;
  if (d.oracle && *d.oracle != d.closed_form) return false;
  return true;
}

Discrepancy compare_routes(const Tree& t, std::int64_t h, std::uint64_t cap, bool use_oracle) {
  Discrepancy d = compare(t, analyze(t), h, cap, use_oracle, nullptr);
  d.tree = describe_edges(t);
  return d;
}

AtlasReport run_atlas(const AtlasOptions& options) {
  AtlasReport report;
  report.trees_per_n.assign(options.n_max + 1, 0);
  for (std::size_t n = 1; n <= options.n_max; ++n) {
    for_each_labeled_tree(n, [&](const Tree& t) {
      ++report.trees_per_n[n];
      sweep(t, options, report);
    });
  }
  std::mt19937_64 seeds(options.seed);
  for (std::size_t i = 0; i < options.random_trees; ++i) {
    sweep(random_tree(options.random_n, seeds()), options, report);
    ++report.random_trees;
  }
  return report;
}

}  // namespace treemagic
