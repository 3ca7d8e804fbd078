#pragma once

// Internal representations behind abstract_elem. Not installed.

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "famalyze/absdom.hpp"

namespace famalyze {

using bounds_fn = std::function<itv(int)>;

// --- shared expression machinery -------------------------------------------

// sum(coef * v) + cst, with exact = false when a nonlinear subterm was
// collapsed into the interval constant.
struct lin_form {
  std::map<int, int_t> coef;
  itv cst = itv::point(0);
  bool exact = true;
};

itv itv_eval(const expr &e, const var_universe &u, const bounds_fn &bounds);
lin_form linearize(const expr &e, const var_universe &u, const bounds_fn &bounds);

// One forward/backward propagation pass through g >= 0, refining box in
// place. Returns false when the test is definitely unsatisfiable.
bool hc4_refine_ge0(const expr &g, const var_universe &u, std::vector<itv> &box);

// --- interval boxes ----------------------------------------------------------

struct box_impl {
  bool bot = false;
  std::vector<itv> v; // per variable; empty when bot

  static box_impl top(int n) { return box_impl{false, std::vector<itv>(static_cast<size_t>(n))}; }
  static box_impl bottom(int n) {
    box_impl b;
    b.bot = true;
    b.v.resize(static_cast<size_t>(n)); // keep the size for uniformity
    return b;
  }
  int n() const { return static_cast<int>(v.size()); }
  // any empty component collapses to the canonical bottom
  void normalize();
};

bool box_leq(const box_impl &a, const box_impl &b);
box_impl box_join(const box_impl &a, const box_impl &b);
box_impl box_meet(const box_impl &a, const box_impl &b);
box_impl box_widen(const box_impl &a, const box_impl &b);
box_impl box_narrow(const box_impl &a, const box_impl &b);

// --- octagons ----------------------------------------------------------------

// DBM over 2n nodes, m[i*2n+j] = upper bound on V_j - V_i where V_{2k} = +x_k
// and V_{2k+1} = -x_k. `raw` is the as-built matrix (what widening iterates
// on), `closed` its tight closure (what every query reads); both are fixed at
// construction.
struct oct_impl {
  bool bot = false;
  int nv = 0;
  std::vector<ext_int> raw, closed;

  static oct_impl top(int n);
  static oct_impl bottom(int n);
  static oct_impl from_raw(int n, std::vector<ext_int> raw);

  int dim() const { return 2 * nv; }
  const ext_int &at(const std::vector<ext_int> &m, int i, int j) const {
    return m[static_cast<size_t>(i) * static_cast<size_t>(dim()) + static_cast<size_t>(j)];
  }
  itv var_bounds(int k) const;
};

bool oct_leq(const oct_impl &a, const oct_impl &b);
oct_impl oct_join(const oct_impl &a, const oct_impl &b);
oct_impl oct_meet(const oct_impl &a, const oct_impl &b);
oct_impl oct_widen(const oct_impl &a, const oct_impl &b);
oct_impl oct_narrow(const oct_impl &a, const oct_impl &b);
oct_impl oct_havoc(const oct_impl &a, int var);
oct_impl oct_assign(const oct_impl &a, int var, const lin_form &f);
// meet with a unary/pairwise bound; ok=false when the shape does not fit
bool oct_constrain(std::vector<ext_int> &m, int n, const lin_constraint &c);
std::vector<lin_constraint> oct_constraints(const oct_impl &a);
bool oct_contains(const oct_impl &a, std::span<const int_t> p);

// --- polyhedra ---------------------------------------------------------------

// Homogeneous double description: vectors of length n+1 with component 0
// the homogenizing coordinate (constant for rows, lambda for generators).
// Rows and generators are kept minimal and in sync; inequality rows are
// integer-tightened so exporting and reloading is the identity.
using hvec = std::vector<int_t>;

struct poly_impl {
  bool bot = false;
  int nv = 0;
  std::vector<hvec> ineq, eq;    // a . (1,x) >= 0 / = 0
  std::vector<hvec> rays, lines; // cone gens; rays have [0] >= 0

  static poly_impl top(int n);
  static poly_impl bottom(int n);
  itv var_bounds(int k) const;
};

poly_impl poly_from_rows(int n, std::vector<hvec> ineq, std::vector<hvec> eq);
poly_impl poly_from_gens(int n, std::vector<hvec> rays, std::vector<hvec> lines);
bool poly_leq(const poly_impl &a, const poly_impl &b);
poly_impl poly_join(const poly_impl &a, const poly_impl &b);
poly_impl poly_meet(const poly_impl &a, const poly_impl &b);
poly_impl poly_widen(const poly_impl &a, const poly_impl &b);
poly_impl poly_havoc(const poly_impl &a, int var);
poly_impl poly_assign(const poly_impl &a, int var, const lin_form &f);
bool poly_contains(const poly_impl &a, std::span<const int_t> p);

struct abstract_elem::impl {
  domain_kind kind;
  var_universe u;
  std::variant<box_impl, oct_impl, poly_impl> d;
};

} // namespace famalyze
