#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "famalyze/ints.hpp"

namespace famalyze {

// Ordered, immutable set of variable names shared by abstract elements.
// The order is fixed for an element's lifetime and doubles as the
// priority order used by constraint sorting.
class var_universe {
public:
  var_universe() : names_(std::make_shared<std::vector<std::string>>()) {}
  explicit var_universe(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_->size()); }
  const std::string &name(int i) const { return (*names_)[static_cast<size_t>(i)]; }
  const std::vector<std::string> &names() const { return *names_; }
  // -1 when absent
  int index_of(const std::string &n) const;

  bool operator==(const var_universe &o) const {
    return names_ == o.names_ || *names_ == *o.names_;
  }

private:
  std::shared_ptr<const std::vector<std::string>> names_;
  std::shared_ptr<const std::map<std::string, int>> index_;
};

// Affine form sum(coef[i] * v_i) + cst with integer coefficients.
// Zero coefficients are never stored.
struct lin_expr {
  std::map<int, int_t> coef;
  int_t cst = 0;

  void add_term(int var, const int_t &c);
  bool operator==(const lin_expr &o) const { return coef == o.coef && cst == o.cst; }
};

// Linear constraint meaning expr >= 0, in integer-canonical form:
// coefficients divided by their gcd with the constant floored, so
// gcd(|coefficients|, |constant|) = 1 and double negation is the identity.
// The designated unsatisfiable constraint is the empty form with cst = -1.
struct lin_constraint {
  lin_expr e;

  bool is_trivial_true() const { return e.coef.empty() && e.cst >= 0; }
  bool is_false() const { return e.coef.empty() && e.cst < 0; }
  bool operator==(const lin_constraint &o) const { return e == o.e; }
};

// Canonicalize in place: integer tightening plus trivial-form collapse.
lin_constraint canonicalize(lin_expr e);

inline lin_constraint false_constraint() {
  lin_expr e;
  e.cst = -1;
  return lin_constraint{std::move(e)};
}

// not(sum a_i v_i + b >= 0) = sum -a_i v_i - b - 1 >= 0
lin_constraint negate(const lin_constraint &c);

// Total order: lexicographic on the coefficient tuple read from the
// last universe position up to the first, then on the constant, so
// constraints over earlier (higher-priority) variables sort first and
// end up nearer the root of decision trees.
int cmp_constraint(const lin_constraint &a, const lin_constraint &b, int nvars);

bool eval(const lin_constraint &c, std::span<const int_t> valuation);

// "x+y-10>=0" with terms in universe order; "0>=0" / "-1>=0" for the
// trivial forms.
std::string render(const lin_constraint &c, const var_universe &u);
std::string render_expr(const lin_expr &e, const var_universe &u);

} // namespace famalyze
