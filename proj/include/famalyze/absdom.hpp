#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "famalyze/ast.hpp"
#include "famalyze/diag.hpp"
#include "famalyze/linexpr.hpp"

namespace famalyze {

enum class domain_kind { interval, octagon, polyhedra };

const char *to_string(domain_kind k);
std::optional<domain_kind> parse_domain(const std::string &s);

// Interval over Z with extended bounds; empty iff lo > hi.
struct itv {
  ext_int lo = ext_int::neg_inf();
  ext_int hi = ext_int::pos_inf();

  static itv empty() { return {ext_int(0), ext_int(-1)}; }
  static itv top() { return {}; }
  static itv point(int_t v) { return {ext_int(v), ext_int(v)}; }

  bool is_empty() const { return hi < lo; }
  bool is_top() const { return lo.is_neg_inf() && hi.is_pos_inf(); }
  bool contains(const int_t &v) const {
    return !(ext_int(v) < lo) && !(hi < ext_int(v));
  }
  bool operator==(const itv &o) const {
    return (is_empty() && o.is_empty()) || (lo == o.lo && hi == o.hi);
  }
};

itv itv_join(const itv &a, const itv &b);
itv itv_meet(const itv &a, const itv &b);
itv itv_add(const itv &a, const itv &b);
itv itv_sub(const itv &a, const itv &b);
itv itv_neg(const itv &a);
itv itv_mul(const itv &a, const itv &b);
bool itv_leq(const itv &a, const itv &b);
// sound superset of { u | exists v in f : u*v in t }; nullopt when no
// refinement is derivable
std::optional<itv> itv_mul_inv(const itv &t, const itv &f);

// One abstract value of a numerical property domain over a fixed variable
// universe. Values are immutable; copying shares the representation.
class abstract_elem {
public:
  abstract_elem() = default;

  static abstract_elem top(domain_kind k, var_universe u);
  static abstract_elem bottom(domain_kind k, var_universe u);
  // Best abstraction of a constraint conjunction. A constraint that the
  // domain cannot encode is dropped when drop_unrepresentable, otherwise
  // not_representable is thrown.
  static abstract_elem from_constraints(domain_kind k, var_universe u,
                                        const std::vector<lin_constraint> &cs,
                                        bool drop_unrepresentable);

  domain_kind kind() const;
  const var_universe &universe() const;
  bool is_bottom() const;
  bool is_top() const;

  // Minimized conjunction describing the element; empty for top, the
  // designated unsatisfiable constraint alone for bottom.
  std::vector<lin_constraint> to_constraints() const;

  abstract_elem assign(const std::string &var, const expr &e) const;
  abstract_elem havoc(const std::string &var) const;
  abstract_elem filter(const cond &c) const;

  itv var_bounds(int var) const;
  bool contains(std::span<const int_t> point) const;
  std::string render() const;

  friend bool leq(const abstract_elem &a, const abstract_elem &b);
  friend abstract_elem join(const abstract_elem &a, const abstract_elem &b);
  friend abstract_elem meet(const abstract_elem &a, const abstract_elem &b);
  friend abstract_elem widen(const abstract_elem &a, const abstract_elem &b);
  friend abstract_elem narrow(const abstract_elem &a, const abstract_elem &b);

  struct impl;

private:
  explicit abstract_elem(std::shared_ptr<const impl> p) : p_(std::move(p)) {}
  std::shared_ptr<const impl> p_;
};

inline bool equiv(const abstract_elem &a, const abstract_elem &b) {
  return leq(a, b) && leq(b, a);
}

// Exactly { v in bounds | v in gamma(elem) }. Throws cap_exceeded when the
// grid has more than cap points.
std::vector<std::vector<long>>
concrete_points(const abstract_elem &a,
                const std::vector<std::pair<long, long>> &bounds,
                std::size_t cap = 1000000);

} // namespace famalyze
