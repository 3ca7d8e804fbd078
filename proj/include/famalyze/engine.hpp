#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <variant>

#include "famalyze/tree_dom.hpp"
#include "famalyze/tuple_dom.hpp"

namespace famalyze {

enum class backend_kind { tuple, tree, brute };

const char *to_string(backend_kind k);
std::optional<backend_kind> parse_backend(const std::string &s);

struct analysis_options {
  backend_kind backend = backend_kind::tree;
  domain_kind leaf_domain = domain_kind::polyhedra;
  domain_kind node_domain = domain_kind::interval;
  unsigned widen_delay = 2;
  unsigned narrow_iters = 2;
  std::size_t enum_cap = 1000000;
  bool parallel = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class verdict_kind { valid, violated, unknown };
const char *to_string(verdict_kind v);

struct assert_partition {
  std::string cond_text;
  verdict_kind verdict;
};

// lifted state collected at one program location
using location_state = std::variant<std::monostate, tuple_state, dtree_ptr, abstract_elem>;

struct invariant_map {
  analysis_options opts;
  int num_labels = 0;
  std::vector<location_state> locations; // index = label - 1
  std::map<int, std::vector<assert_partition>> asserts;
  bool loops_post_fixpoint = true; // every loop head verified F(inv) <= inv
  std::shared_ptr<const tree_ctx> tctx;
  std::shared_ptr<const feature_space> space;
  std::shared_ptr<const std::vector<config>> configs; // tuple/brute runs

  const location_state &at(int label) const {
    return locations[static_cast<size_t>(label - 1)];
  }
  bool all_asserts_valid() const;
};

// per-variant reference: one single-program analysis per configuration
struct oracle_result {
  std::shared_ptr<const feature_space> space;
  std::vector<config> configs;
  // labels inside untaken #if arms are absent from a variant's map
  std::vector<std::map<int, abstract_elem>> per_config;
  std::vector<std::map<int, verdict_kind>> verdicts_per_config;
};

invariant_map analyze(const program &p, const analysis_options &opts);
oracle_result analyze_brute(const program &p, const analysis_options &opts);

enum class cmp_class { equal, sound_over, unsound };

struct compare_report {
  std::size_t n_equal = 0, n_over = 0, n_unsound = 0;
  struct diff {
    int label;
    std::string config_text;
    cmp_class cls;
  };
  std::vector<diff> diffs; // every non-equal cell, in scan order
  bool all_equal() const { return n_over == 0 && n_unsound == 0; }
  bool any_unsound() const { return n_unsound > 0; }
};

// per-location, per-configuration three-way classification of a lifted
// result against the brute-force reference
compare_report compare(const invariant_map &fam, const oracle_result &oracle);

// true when every feature expression in the program is affine (products
// involve at most one non-constant side)
bool all_feat_exprs_affine(const program &p);

} // namespace famalyze
