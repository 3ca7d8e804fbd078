#pragma once

#include <optional>
#include <string>
#include <vector>

#include "famalyze/ast.hpp"
#include "famalyze/linexpr.hpp"

namespace famalyze {

// The feature set F with per-feature integer domains and the global
// constraints restricting the valid-configuration set K. The universe
// order is the declaration order and doubles as the priority order
// A1 > A2 > ... used by constraint sorting.
struct feature_space {
  var_universe feats;
  std::vector<std::pair<int_t, int_t>> dom; // aligned with feats
  std::vector<cond_ptr> global_constraints;

  bool is_bool(int i) const { return dom[static_cast<size_t>(i)].first == 0 &&
                                     dom[static_cast<size_t>(i)].second == 1; }
};

// Total valuation of all features, aligned with the space's universe.
struct config {
  std::vector<int_t> val;
  bool operator==(const config &o) const { return val == o.val; }
};

feature_space space_of(const program &p);

// Exact integer evaluation of a feature expression under a valuation,
// including nonlinear products.
bool sat(const feature_space &sp, const config &k, const cond &theta);

// Product size of the feature domains (before global-constraint filtering).
int_t domain_product(const feature_space &sp);

// All valid configurations, lexicographic by feature order. Domains that
// are exactly [0,1] iterate enabled-first (1 then 0); other domains iterate
// ascending. Throws cap_exceeded when the domain product exceeds the cap,
// reporting the exact product.
std::vector<config> enumerate(const feature_space &sp, std::size_t cap);

// Configurations of K satisfying theta.
std::vector<config> models(const feature_space &sp, const cond &theta, std::size_t cap);

// Canonical conjunction text: Boolean sugar (B / !B) for [0,1] features,
// NAME=value otherwise; "true" for an empty feature set.
std::string describe(const feature_space &sp, const config &k);

// Variant projection: resolves every #if by k, leaving no #if nodes and no
// feature references; the replacement block keeps the #if's label.
program project(const program &p, const feature_space &sp, const config &k);

} // namespace famalyze
