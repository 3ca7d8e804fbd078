#pragma once

#include <memory>
#include <vector>

#include "famalyze/absdom.hpp"
#include "famalyze/featspace.hpp"

namespace famalyze {

// Baseline lifted domain: one abstract element per valid configuration,
// materialized with no sharing of work across components.
struct tuple_state {
  std::shared_ptr<const feature_space> space;
  std::shared_ptr<const std::vector<config>> configs; // enumeration order of K
  std::vector<abstract_elem> elems;

  size_t width() const { return elems.size(); }
};

tuple_state tuple_top(std::shared_ptr<const feature_space> sp,
                      std::shared_ptr<const std::vector<config>> ks, domain_kind leaf,
                      var_universe vars);
tuple_state tuple_bottom_like(const tuple_state &s);

bool tuple_leq(const tuple_state &a, const tuple_state &b);
tuple_state tuple_join(const tuple_state &a, const tuple_state &b, bool parallel);
tuple_state tuple_meet(const tuple_state &a, const tuple_state &b, bool parallel);
tuple_state tuple_widen(const tuple_state &a, const tuple_state &b, bool parallel);
tuple_state tuple_narrow(const tuple_state &a, const tuple_state &b, bool parallel);
bool tuple_is_bottom(const tuple_state &s);

tuple_state tuple_assign(const tuple_state &s, const std::string &var, const expr &e,
                         bool parallel);
tuple_state tuple_havoc(const tuple_state &s, const std::string &var, bool parallel);
tuple_state tuple_filter(const tuple_state &s, const cond &c, bool parallel);
// component k survives iff k satisfies theta, exactly, nonlinear included
tuple_state tuple_feat_filter(const tuple_state &s, const cond &theta);

} // namespace famalyze
