#include "treemagic/oracle.hpp"

#include <algorithm>
#include <limits>

namespace treemagic {

namespace {

std::string edge_text(const Tree& t, EdgeId e) {
  return "'" + t.name(t.edge(e).a) + " " + t.name(t.edge(e).b) + "'";
}

std::int64_t pendant_label_of(const Tree& t, const std::vector<std::int64_t>& labels) {
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    if (t.is_pendant(t.edge(e).a) || t.is_pendant(t.edge(e).b)) return labels[e];
  }
  return 0;
}

MagicLabeling make_labeling(const Tree& t, std::int64_t h, const std::vector<std::int64_t>& labels) {
  return {h, labels, pendant_label_of(t, labels)};
}

class Search {
 public:
  Search(const Tree& t, std::int64_t h, bool collect_all) : t_(t), h_(h), collect_all_(collect_all) {
    labels_.assign(t.edge_count(), 1);
  }

  std::uint64_t states() const noexcept { return states_; }
  std::vector<MagicLabeling>& found() noexcept { return found_; }

  void exhaustive() {
    const std::size_t m = labels_.size();
    if (h_ < 2 && m > 0) return;
    while (true) {
      ++states_;
      if (is_magic()) {
        found_.push_back(make_labeling(t_, h_, labels_));
        if (!collect_all_) return;
      }
      // Odometer step: last edge turns fastest.
      std::size_t i = m;
      while (i > 0 && labels_[i - 1] == h_ - 1) labels_[--i] = 1;
      if (i == 0) return;
      ++labels_[i - 1];
    }
  }

  void pruned() {
    const std::size_t n = t_.vertex_count();
    if (labels_.empty()) {
      ++states_;
      found_.push_back(make_labeling(t_, h_, labels_));
      return;
    }
    if (h_ < 2) return;
    last_edge_.assign(n, 0);
    for (VertexId v = 0; v < n; ++v)
      for (const Incidence& inc : t_.incident(v)) last_edge_[v] = std::max(last_edge_[v], inc.edge);
    sums_.assign(n, 0);
    descend(0);
  }

 private:
  bool is_magic() const {
    std::vector<std::int64_t> sums(t_.vertex_count(), 0);
    for (EdgeId e = 0; e < labels_.size(); ++e) {
      sums[t_.edge(e).a] = (sums[t_.edge(e).a] + labels_[e]) % h_;
      sums[t_.edge(e).b] = (sums[t_.edge(e).b] + labels_[e]) % h_;
    }
    for (std::int64_t s : sums)
      if (s != sums.front()) return false;
    return true;
  }

  // Returns true once the search should stop.
  bool descend(EdgeId e) {
    if (e == labels_.size()) {
      found_.push_back(make_labeling(t_, h_, labels_));
      return !collect_all_;
    }
    const VertexId a = t_.edge(e).a;
    const VertexId b = t_.edge(e).b;
    for (std::int64_t label = 1; label < h_; ++label) {
      ++states_;
      labels_[e] = label;
      sums_[a] = (sums_[a] + label) % h_;
      sums_[b] = (sums_[b] + label) % h_;

      const bool had_target = target_.has_value();
      bool consistent = true;
      for (VertexId v : {a, b}) {
        if (last_edge_[v] != e) continue;
        if (!target_) target_ = sums_[v];
        consistent = consistent && sums_[v] == *target_;
      }
      const bool stop = consistent && descend(e + 1);

      if (!had_target) target_.reset();
      sums_[a] = (sums_[a] - label + h_) % h_;
      sums_[b] = (sums_[b] - label + h_) % h_;
      if (stop) return true;
    }
    labels_[e] = 1;
    return false;
  }

  const Tree& t_;
  std::int64_t h_;
  bool collect_all_;
  std::vector<std::int64_t> labels_;
  std::vector<EdgeId> last_edge_;
  std::vector<std::int64_t> sums_;
  std::optional<std::int64_t> target_;
  std::uint64_t states_ = 0;
  std::vector<MagicLabeling> found_;
};

void run(Search& search, SearchStrategy strategy) {
  if (strategy == SearchStrategy::Exhaustive)
    search.exhaustive();
  else
    search.pruned();
}

}  // namespace

VerifyResult verify_labeling(const Tree& t, const MagicLabeling& labeling) {
  if (labeling.labels.size() != t.edge_count())
    throw LabelEdgeMismatch("LabelEdgeMismatch: " + std::to_string(labeling.labels.size()) + " labels for " +
                            std::to_string(t.edge_count()) + " edges");
  const std::int64_t h = labeling.modulus;
  VerifyResult result;
  if (h < 1) {
    result.diagnostic = "modulus must be positive";
    return result;
  }
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const std::int64_t l = labeling.labels[e];
    if (l < 1 || l >= h) {
      result.diagnostic = "edge " + edge_text(t, e) + " has label " + std::to_string(l) + " outside [1," +
                          std::to_string(h - 1) + "]";
      return result;
    }
  }
  std::vector<std::int64_t> sums(t.vertex_count(), 0);
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    sums[t.edge(e).a] = (sums[t.edge(e).a] + labeling.labels[e]) % h;
    sums[t.edge(e).b] = (sums[t.edge(e).b] + labeling.labels[e]) % h;
  }
  for (VertexId v = 1; v < t.vertex_count(); ++v) {
    if (sums[v] != sums[0]) {
      result.diagnostic = "vertex '" + t.name(v) + "' sums to " + std::to_string(sums[v]) + " but vertex '" +
                          t.name(0) + "' sums to " + std::to_string(sums[0]) + " (mod " + std::to_string(h) + ")";
      return result;
    }
  }
  result.valid = true;
  result.constant = sums[0];
  return result;
}

std::optional<std::uint64_t> search_space_size(std::size_t edges, std::int64_t h) {
  if (h < 1) return std::nullopt;
  const auto base = static_cast<std::uint64_t>(h - 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < edges; ++i) {
    if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    total *= base;
  }
  return total;
}

OracleVerdict is_h_magic_bruteforce(const Tree& t, std::int64_t h, std::uint64_t cap, SearchStrategy strategy) {
  OracleVerdict verdict;
  const auto size = search_space_size(t.edge_count(), h);
  if (!size || *size > cap) {
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = "search space (h-1)^|E| exceeds cap of " + std::to_string(cap);
    return verdict;
  }
  Search search(t, h, false);
  run(search, strategy);
  verdict.states_explored = search.states();
  if (search.found().empty()) {
    verdict.kind = VerdictKind::NotMagic;
  } else {
    verdict.kind = VerdictKind::Magic;
    verdict.witness = std::move(search.found().front());
  }
  return verdict;
}

std::optional<std::vector<MagicLabeling>> enumerate_magic_labelings(const Tree& t, std::int64_t h,
                                                                    std::uint64_t cap, SearchStrategy strategy) {
  const auto size = search_space_size(t.edge_count(), h);
  if (!size || *size > cap) return std::nullopt;
  Search search(t, h, true);
  run(search, strategy);
  return std::move(search.found());
}

}  // namespace treemagic
