// imspec: integer-magic spectra of trees from the command line.
//
// Exit codes: 0 success, 1 usage or parse error, 2 internal invariant
// violation (for example the closed form disagreeing with witness search).

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "treemagic/atlas.hpp"
#include "treemagic/oracle.hpp"
#include "treemagic/spectrum.hpp"
#include "treemagic/tree.hpp"

namespace {

using nlohmann::json;
using namespace treemagic;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

struct InternalViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path;
  std::string text;
  std::string sha256;
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

Input read_input(const std::string& path) {
  Input in{path, {}, {}};
  if (path == "-") {
    in.text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    in.text.assign(std::istreambuf_iterator<char>(file), {});
  }
  in.sha256 = sha256_hex(in.text);
  return in;
}

/// Envelope shared by every command; `result` is the reproducible part.
struct RunReport {
  std::string command;
  json parameters = json::object();
  json input = nullptr;
  json result = json::object();
  double elapsed_ms = 0;

  json to_json() const {
    return {{"schema_version", 1}, {"command", command},   {"parameters", parameters},
            {"input", input},      {"result", result},     {"timing_ms", elapsed_ms}};
  }
};

struct Common {
  std::string format = "text";
  bool structured() const { return format == "structured" || format == "json"; }
};

json labeling_json(const Tree& t, const MagicLabeling& l) {
  json edges = json::array();
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    edges.push_back({{"u", t.name(t.edge(e).a)}, {"v", t.name(t.edge(e).b)}, {"label", l.labels[e]}});
  return {{"modulus", l.modulus}, {"pendant_label", l.pendant_label}, {"edges", edges}};
}

void print_labeling(const Tree& t, const MagicLabeling& l) {
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    fmt::print("  {} {} {}\n", t.name(t.edge(e).a), t.name(t.edge(e).b), l.labels[e]);
}

std::string center_text(const LayeredTree& lt) {
  const Tree& t = lt.tree();
  if (!lt.center().odd()) return t.name(lt.center().c1);
  return t.name(lt.center().c1) + "," + t.name(*lt.center().c2);
}

json tree_summary(const LayeredTree& lt) {
  json center = json::array({lt.tree().name(lt.center().c1)});
  if (lt.center().odd()) center.push_back(lt.tree().name(*lt.center().c2));
  return {{"vertices", lt.tree().vertex_count()},
          {"edges", lt.tree().edge_count()},
          {"diameter", lt.diameter()},
          {"center", center},
          {"layer_sizes", std::vector<std::int64_t>(lt.layer_sizes().begin(), lt.layer_sizes().end())}};
}

void print_tree_summary(const LayeredTree& lt) {
  fmt::print("tree: {} vertices, {} edges, diameter {}, center {}\n", lt.tree().vertex_count(),
             lt.tree().edge_count(), lt.diameter(), center_text(lt));
}

int cmd_spectrum(const Input& in, RunReport& report, bool text) {
  LayeredTree lt = layer_decomposition(parse_tree(in.text));
  const SpectrumDescription s = spectrum(lt);
  report.result = {{"tree", tree_summary(lt)}, {"spectrum", to_json(s)}, {"rendered", render(s)}};
  if (lt.diameter() > 0) {
    report.result["sigma"] = s.sigma;
    report.result["range_f"] = s.range_f;
  }
  if (text) {
    print_tree_summary(lt);
    if (lt.diameter() > 0) fmt::print("sigma = {}\nRange(f) = {{{}}}\n", s.sigma, fmt::join(s.range_f, ","));
    fmt::print("{}\n", render(s));
  }
  return kExitOk;
}

int cmd_check(const Input& in, std::int64_t h, RunReport& report, bool text) {
  LayeredTree lt = layer_decomposition(parse_tree(in.text));
  const SpectrumDescription s = spectrum(lt);
  const bool member = spectrum_contains(s, h);
  report.result = {{"h", h}, {"closed_form_member", member}, {"spectrum", to_json(s)}};

  std::optional<bool> witness_member;
  std::optional<std::int64_t> x;
  if (lt.diameter() > 0) {
    x = find_witness_x(lt, forced_labeling(lt), h);
    witness_member = x.has_value();
    report.result["witness_member"] = *witness_member;
    report.result["witness_x"] = x ? json(*x) : json(nullptr);
  } else {
    report.result["witness_member"] = nullptr;
  }
  const bool agree = !witness_member || *witness_member == member;
  report.result["agree"] = agree;

  if (text) {
    fmt::print("h = {}: {}\n", h, member ? "member" : "not member");
    fmt::print("closed form: {}\n", member ? "member" : "not member");
    if (witness_member)
      fmt::print("witness search: {}\n", x ? fmt::format("member (x = {})", *x) : std::string("no witness"));
    else
      fmt::print("witness search: not applicable (no edges)\n");
  }
  if (!agree) throw InternalViolation("closed form and witness search disagree for h=" + std::to_string(h));
  return kExitOk;
}

int cmd_label(const Input& in, std::int64_t h, RunReport& report, bool text) {
  const Tree tree = parse_tree(in.text);
  LayeredTree lt = layer_decomposition(tree);
  report.result = {{"h", h}};
  if (lt.diameter() == 0) {
    report.result["status"] = "trivially_magic";
    if (text) fmt::print("trivially magic: no edges to label\n");
    return kExitOk;
  }
  try {
    const MagicLabeling labeling = construct_labeling(lt, forced_labeling(lt), h);
    const VerifyResult check = verify_labeling(tree, labeling);
    if (!check) throw InternalViolation("constructed labeling failed verification: " + check.diagnostic);
    report.result["status"] = "labeled";
    report.result["labeling"] = labeling_json(tree, labeling);
    report.result["magic_constant"] = *check.constant;
    if (text) {
      fmt::print("h = {}, pendant label x = {}, every vertex sums to {} (mod {})\n", h, labeling.pendant_label,
                 *check.constant, h);
      print_labeling(tree, labeling);
    }
  } catch (const NotInSpectrum& e) {
    report.result["status"] = "not_in_spectrum";
    if (text) fmt::print("{}\n", e.what());
  } catch (const std::logic_error& e) {
    throw InternalViolation(e.what());
  }
  return kExitOk;
}

std::string_view verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Magic: return "magic";
    case VerdictKind::NotMagic: return "not_magic";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

int cmd_oracle(const Input& in, std::int64_t h, std::uint64_t cap, bool all, bool exhaustive, RunReport& report,
               bool text) {
  const Tree tree = parse_tree(in.text);
  LayeredTree lt = layer_decomposition(tree);
  const auto strategy = exhaustive ? SearchStrategy::Exhaustive : SearchStrategy::Pruned;
  const OracleVerdict verdict = is_h_magic_bruteforce(tree, h, cap, strategy);

  report.result = {{"h", h}, {"verdict", verdict_name(verdict.kind)}, {"states_explored", verdict.states_explored}};
  if (verdict.witness) report.result["witness"] = labeling_json(tree, *verdict.witness);
  if (verdict.kind == VerdictKind::Unknown) report.result["reason"] = verdict.reason;
  if (text) {
    fmt::print("h = {}: {} ({} states explored)\n", h, verdict_name(verdict.kind), verdict.states_explored);
    if (verdict.kind == VerdictKind::Unknown) fmt::print("{}\n", verdict.reason);
    if (verdict.witness && !all) {
      fmt::print("first witness, pendant label x = {}:\n", verdict.witness->pendant_label);
      print_labeling(tree, *verdict.witness);
    }
  }

  if (all && verdict.kind != VerdictKind::Unknown) {
    const auto labelings = enumerate_magic_labelings(tree, h, cap, strategy);
    std::optional<ForcedLabeling> fl;
    std::int64_t sig = 0;
    if (lt.diameter() > 0) {
      fl = forced_labeling(lt);
      sig = sigma(lt);
    }
    json list = json::array();
    std::size_t violations = 0;
    for (std::size_t i = 0; i < labelings->size(); ++i) {
      const MagicLabeling& l = (*labelings)[i];
      json entry = labeling_json(tree, l);
      if (fl) {
        const bool forced = conforms_to_forced(*fl, l);
        const bool center = mul_mod(sig, l.pendant_label, h) == 0;
        entry["forced_conformance"] = forced;
        entry["sigma_conformance"] = center;
        violations += !(forced && center);
      }
      list.push_back(entry);
      if (text) {
        fmt::print("labeling {} (x = {}){}\n", i + 1, l.pendant_label,
                   fl ? fmt::format(": l(e) = x f(e) {}, sigma x = 0 {}", entry["forced_conformance"] ? "ok" : "VIOLATED",
                                    entry["sigma_conformance"] ? "ok" : "VIOLATED")
                      : std::string());
        print_labeling(tree, l);
      }
    }
    report.result["labelings"] = list;
    report.result["count"] = labelings->size();
    report.result["conformance_violations"] = violations;
    if (text) fmt::print("{} magic labelings, {} conformance violations\n", labelings->size(), violations);
    if (violations) throw InternalViolation("oracle labeling violates the forced-labeling relation");
  }
  return kExitOk;
}

int cmd_atlas(const AtlasOptions& options, RunReport& report, bool text) {
  const AtlasReport r = run_atlas(options);
  std::uint64_t exhaustive = 0;
  for (auto c : r.trees_per_n) exhaustive += c;
  report.result = {{"trees_per_n", r.trees_per_n},
                   {"exhaustive_trees", exhaustive},
                   {"random_trees", r.random_trees},
                   {"pairs", r.pairs},
                   {"oracle_checked", r.oracle_checked},
                   {"oracle_skipped", r.oracle_skipped},
                   {"discrepancies", r.discrepancies}};
  if (r.first) {
    const auto& d = *r.first;
    report.result["first_discrepancy"] = {{"tree", d.tree},
                                          {"h", d.h},
                                          {"closed_form", d.closed_form},
                                          {"witness", d.witness ? json(*d.witness) : json(nullptr)},
                                          {"oracle", d.oracle ? json(*d.oracle) : json(nullptr)}};
  }
  if (text) {
    for (std::size_t n = 1; n < r.trees_per_n.size(); ++n) fmt::print("n = {}: {} trees\n", n, r.trees_per_n[n]);
    if (r.random_trees) fmt::print("random: {} trees on {} vertices (seed {})\n", r.random_trees, options.random_n,
                                   options.seed);
    fmt::print("pairs: {} (oracle checked {}, skipped {})\n", r.pairs, r.oracle_checked, r.oracle_skipped);
    fmt::print("discrepancies: {}\n", r.discrepancies);
    if (r.first)
      fmt::print("first discrepancy: tree [{}] h={} closed_form={} witness={} oracle={}\n", r.first->tree, r.first->h,
                 r.first->closed_form, r.first->witness ? (*r.first->witness ? "true" : "false") : "n/a",
                 r.first->oracle ? (*r.first->oracle ? "true" : "false") : "n/a");
  }
  if (r.discrepancies) throw InternalViolation("routes disagree on " + std::to_string(r.discrepancies) + " pairs");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer-magic spectra of finite trees"};
  app.require_subcommand(1);
  // "-h" would clash with the modulus option "--h".
  app.set_help_flag("--help", "Print this help message and exit");

  Common common;
  std::string file;
  std::int64_t h = 0;
  std::uint64_t cap = kDefaultOracleCap;
  bool all = false;
  bool exhaustive = false;
  AtlasOptions atlas;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "structured", "json"}))
        ->capture_default_str();
  };
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Edge-list file, '-' for stdin")->required();
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Closed-form integer-magic spectrum");
  add_file(spectrum_cmd);
  add_format(spectrum_cmd);

  auto* check_cmd = app.add_subcommand("check", "Membership of h by closed form and by witness search");
  add_file(check_cmd);
  check_cmd->add_option("--h", h, "Modulus")->required()->check(CLI::PositiveNumber);
  add_format(check_cmd);

  auto* label_cmd = app.add_subcommand("label", "Construct a verified h-magic labeling");
  add_file(label_cmd);
  label_cmd->add_option("--h", h, "Modulus")->required()->check(CLI::PositiveNumber);
  add_format(label_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force search over all labelings");
  add_file(oracle_cmd);
  oracle_cmd->add_option("--h", h, "Modulus")->required()->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--cap", cap, "Largest search space (h-1)^|E| to attempt")->capture_default_str();
  oracle_cmd->add_flag("--all", all, "List every magic labeling with conformance status");
  oracle_cmd->add_flag("--exhaustive", exhaustive, "Disable pruning");
  add_format(oracle_cmd);

  auto* atlas_cmd = app.add_subcommand("atlas", "Agreement sweep over small and random trees");
  atlas_cmd->add_option("--n-max", atlas.n_max, "Enumerate all labeled trees up to this size")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  atlas_cmd->add_option("--h-max", atlas.h_max, "Largest modulus")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  atlas_cmd->add_option("--cap", atlas.cap, "Oracle search-space cap")->capture_default_str();
  atlas_cmd->add_option("--seed", atlas.seed, "Seed for random trees")->capture_default_str();
  atlas_cmd->add_option("--random", atlas.random_trees, "Number of random trees")->capture_default_str();
  atlas_cmd->add_option("--random-n", atlas.random_n, "Vertices per random tree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(atlas_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunReport report;
  const bool text = !common.structured();
  const auto start = std::chrono::steady_clock::now();
  int status = kExitOk;
  std::string error;
  try {
    Input in;
    if (!app.got_subcommand(atlas_cmd)) {
      in = read_input(file);
      report.input = {{"path", in.path}, {"sha256", in.sha256}};
    }
    if (app.got_subcommand(spectrum_cmd)) {
      report.command = "spectrum";
      status = cmd_spectrum(in, report, text);
    } else if (app.got_subcommand(check_cmd)) {
      report.command = "check";
      report.parameters = {{"h", h}};
      status = cmd_check(in, h, report, text);
    } else if (app.got_subcommand(label_cmd)) {
      report.command = "label";
      report.parameters = {{"h", h}};
      status = cmd_label(in, h, report, text);
    } else if (app.got_subcommand(oracle_cmd)) {
      report.command = "oracle";
      report.parameters = {{"h", h}, {"cap", cap}, {"all", all}, {"exhaustive", exhaustive}};
      status = cmd_oracle(in, h, cap, all, exhaustive, report, text);
    } else {
      report.command = "atlas";
      report.parameters = {{"n_max", atlas.n_max},        {"h_max", atlas.h_max}, {"cap", atlas.cap},
                           {"seed", atlas.seed},          {"random", atlas.random_trees},
                           {"random_n", atlas.random_n}};
      status = cmd_atlas(atlas, report, text);
    }
  } catch (const InternalViolation& e) {
    status = kExitInternal;
    error = e.what();
  } catch (const std::exception& e) {
    status = kExitUsage;
    error = e.what();
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!error.empty()) fmt::print(stderr, "error: {}\n", error);
  if (!text) {
    json out = report.to_json();
    out["exit_code"] = status;
    if (!error.empty()) out["error"] = error;
    fmt::print("{}\n", out.dump(2));
  }
  return status;
}
