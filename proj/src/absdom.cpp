#include "dom_impl.hpp"

#include <sstream>

namespace famalyze {

namespace {

constexpr int poly_dim_cap = 16;

std::shared_ptr<const abstract_elem::impl> make_impl(domain_kind k, var_universe u,
                                                     auto &&d) {
  auto p = std::make_shared<abstract_elem::impl>();
  p->kind = k;
  p->u = std::move(u);
  p->d = std::forward<decltype(d)>(d);
  return p;
}

void check_poly_cap(domain_kind k, const var_universe &u) {
  if (k == domain_kind::polyhedra && u.size() > poly_dim_cap)
    throw not_representable("polyhedra domain capped at " +
                            std::to_string(poly_dim_cap) + " variables, got " +
                            std::to_string(u.size()));
}

} // namespace

abstract_elem abstract_elem::top(domain_kind k, var_universe u) {
  check_poly_cap(k, u);
  int n = u.size();
  switch (k) {
  case domain_kind::interval:
    return abstract_elem(make_impl(k, std::move(u), box_impl::top(n)));
  case domain_kind::octagon:
    return abstract_elem(make_impl(k, std::move(u), oct_impl::top(n)));
  case domain_kind::polyhedra:
    return abstract_elem(make_impl(k, std::move(u), poly_impl::top(n)));
  }
  throw std::logic_error("bad domain kind");
}

abstract_elem abstract_elem::bottom(domain_kind k, var_universe u) {
  check_poly_cap(k, u);
  int n = u.size();
  switch (k) {
  case domain_kind::interval:
    return abstract_elem(make_impl(k, std::move(u), box_impl::bottom(n)));
  case domain_kind::octagon:
    return abstract_elem(make_impl(k, std::move(u), oct_impl::bottom(n)));
  case domain_kind::polyhedra:
    return abstract_elem(make_impl(k, std::move(u), poly_impl::bottom(n)));
  }
  throw std::logic_error("bad domain kind");
}

domain_kind abstract_elem::kind() const { return p_->kind; }
const var_universe &abstract_elem::universe() const { return p_->u; }

bool abstract_elem::is_bottom() const {
  return std::visit([](const auto &d) { return d.bot; }, p_->d);
}

bool abstract_elem::is_top() const {
  return leq(top(kind(), universe()), *this);
}

abstract_elem abstract_elem::from_constraints(domain_kind k, var_universe u,
                                              const std::vector<lin_constraint> &cs,
                                              bool drop_unrepresentable) {
  check_poly_cap(k, u);
  int n = u.size();
  for (const auto &c : cs)
    if (c.is_false())
      return bottom(k, std::move(u));
  switch (k) {
  case domain_kind::interval: {
    box_impl b = box_impl::top(n);
    for (const auto &c : cs) {
      if (c.is_trivial_true())
        continue;
      if (c.e.coef.size() != 1) {
        if (drop_unrepresentable)
          continue;
        throw not_representable("interval domain cannot represent '" +
                                ::famalyze::render(c, u) + "'");
      }
      auto [v, k2] = *c.e.coef.begin();
      itv &x = b.v[static_cast<size_t>(v)];
      // canonical single-variable constraints have coefficient +-1
      if (k2 == 1)
        x = itv_meet(x, itv{ext_int(-c.e.cst), ext_int::pos_inf()});
      else
        x = itv_meet(x, itv{ext_int::neg_inf(), ext_int(c.e.cst)});
    }
    b.normalize();
    return abstract_elem(make_impl(k, std::move(u), std::move(b)));
  }
  case domain_kind::octagon: {
    std::vector<ext_int> m = oct_impl::top(n).raw;
    for (const auto &c : cs) {
      if (c.is_trivial_true())
        continue;
      if (!oct_constrain(m, n, c)) {
        if (drop_unrepresentable)
          continue;
        throw not_representable("octagon domain cannot represent '" +
                                ::famalyze::render(c, u) + "'");
      }
    }
    return abstract_elem(make_impl(k, std::move(u), oct_impl::from_raw(n, std::move(m))));
  }
  case domain_kind::polyhedra: {
    std::vector<hvec> rows;
    for (const auto &c : cs) {
      if (c.is_trivial_true())
        continue;
      hvec row(static_cast<size_t>(n) + 1, 0);
      row[0] = c.e.cst;
      for (const auto &[v, k2] : c.e.coef)
        row[static_cast<size_t>(v) + 1] = k2;
      rows.push_back(std::move(row));
    }
    return abstract_elem(
        make_impl(k, std::move(u), poly_from_rows(n, std::move(rows), {})));
  }
  }
  throw std::logic_error("bad domain kind");
}

std::vector<lin_constraint> abstract_elem::to_constraints() const {
  std::vector<lin_constraint> out;
  if (is_bottom()) {
    out.push_back(false_constraint());
    return out;
  }
  switch (kind()) {
  case domain_kind::interval: {
    const auto &b = std::get<box_impl>(p_->d);
    for (int i = 0; i < b.n(); ++i) {
      const itv &x = b.v[static_cast<size_t>(i)];
      if (x.lo.is_finite()) {
        lin_expr e;
        e.add_term(i, 1);
        e.cst = -x.lo.v;
        out.push_back(canonicalize(std::move(e)));
      }
      if (x.hi.is_finite()) {
        lin_expr e;
        e.add_term(i, -1);
        e.cst = x.hi.v;
        out.push_back(canonicalize(std::move(e)));
      }
    }
    return out;
  }
  case domain_kind::octagon:
    return oct_constraints(std::get<oct_impl>(p_->d));
  case domain_kind::polyhedra: {
    const auto &p = std::get<poly_impl>(p_->d);
    auto row_to_cons = [&](const hvec &row, bool flip) {
      lin_expr e;
      e.cst = flip ? int_t(-row[0]) : row[0];
      for (int i = 0; i < p.nv; ++i) {
        const int_t &c = row[static_cast<size_t>(i) + 1];
        if (c != 0)
          e.coef.emplace(i, flip ? int_t(-c) : c);
      }
      return canonicalize(std::move(e));
    };
    for (const auto &row : p.ineq)
      out.push_back(row_to_cons(row, false));
    for (const auto &row : p.eq) {
      out.push_back(row_to_cons(row, false));
      out.push_back(row_to_cons(row, true));
    }
    return out;
  }
  }
  return out;
}

itv abstract_elem::var_bounds(int var) const {
  return std::visit(
      [&](const auto &d) -> itv {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, box_impl>) {
          return d.bot ? itv::empty() : d.v[static_cast<size_t>(var)];
        } else {
          return d.var_bounds(var);
        }
      },
      p_->d);
}

bool abstract_elem::contains(std::span<const int_t> point) const {
  return std::visit(
      [&](const auto &d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, box_impl>) {
          if (d.bot)
            return false;
          for (int i = 0; i < d.n(); ++i)
            if (!d.v[static_cast<size_t>(i)].contains(point[static_cast<size_t>(i)]))
              return false;
          return true;
        } else if constexpr (std::is_same_v<T, oct_impl>) {
          return oct_contains(d, point);
        } else {
          return poly_contains(d, point);
        }
      },
      p_->d);
}

namespace {

void check_same(const abstract_elem &a, const abstract_elem &b) {
  if (a.kind() != b.kind() || !(a.universe() == b.universe()))
    throw universe_mismatch("abstract elements over different universes/domains");
}

} // namespace

bool leq(const abstract_elem &a, const abstract_elem &b) {
  check_same(a, b);
  switch (a.kind()) {
  case domain_kind::interval:
    return box_leq(std::get<box_impl>(a.p_->d), std::get<box_impl>(b.p_->d));
  case domain_kind::octagon:
    return oct_leq(std::get<oct_impl>(a.p_->d), std::get<oct_impl>(b.p_->d));
  case domain_kind::polyhedra:
    return poly_leq(std::get<poly_impl>(a.p_->d), std::get<poly_impl>(b.p_->d));
  }
  return false;
}

abstract_elem join(const abstract_elem &a, const abstract_elem &b) {
  check_same(a, b);
  if (a.is_bottom() || a.p_ == b.p_)
    return b;
  if (b.is_bottom())
    return a;
  auto p = std::make_shared<abstract_elem::impl>();
  p->kind = a.kind();
  p->u = a.universe();
  switch (a.kind()) {
  case domain_kind::interval:
    p->d = box_join(std::get<box_impl>(a.p_->d), std::get<box_impl>(b.p_->d));
    break;
  case domain_kind::octagon:
    p->d = oct_join(std::get<oct_impl>(a.p_->d), std::get<oct_impl>(b.p_->d));
    break;
  case domain_kind::polyhedra:
    p->d = poly_join(std::get<poly_impl>(a.p_->d), std::get<poly_impl>(b.p_->d));
    break;
  }
  return abstract_elem(std::move(p));
}

abstract_elem meet(const abstract_elem &a, const abstract_elem &b) {
  check_same(a, b);
  if (a.is_bottom() || a.p_ == b.p_)
    return a;
  if (b.is_bottom())
    return b;
  auto p = std::make_shared<abstract_elem::impl>();
  p->kind = a.kind();
  p->u = a.universe();
  switch (a.kind()) {
  case domain_kind::interval:
    p->d = box_meet(std::get<box_impl>(a.p_->d), std::get<box_impl>(b.p_->d));
    break;
  case domain_kind::octagon:
    p->d = oct_meet(std::get<oct_impl>(a.p_->d), std::get<oct_impl>(b.p_->d));
    break;
  case domain_kind::polyhedra:
    p->d = poly_meet(std::get<poly_impl>(a.p_->d), std::get<poly_impl>(b.p_->d));
    break;
  }
  return abstract_elem(std::move(p));
}

abstract_elem widen(const abstract_elem &a, const abstract_elem &b) {
  check_same(a, b);
  if (a.is_bottom())
    return b;
  if (b.is_bottom())
    return a;
  auto p = std::make_shared<abstract_elem::impl>();
  p->kind = a.kind();
  p->u = a.universe();
  switch (a.kind()) {
  case domain_kind::interval:
    p->d = box_widen(std::get<box_impl>(a.p_->d), std::get<box_impl>(b.p_->d));
    break;
  case domain_kind::octagon:
    p->d = oct_widen(std::get<oct_impl>(a.p_->d), std::get<oct_impl>(b.p_->d));
    break;
  case domain_kind::polyhedra:
    p->d = poly_widen(std::get<poly_impl>(a.p_->d), std::get<poly_impl>(b.p_->d));
    break;
  }
  return abstract_elem(std::move(p));
}

abstract_elem narrow(const abstract_elem &a, const abstract_elem &b) {
  check_same(a, b);
  if (a.is_bottom())
    return a;
  if (b.is_bottom())
    return b;
  auto p = std::make_shared<abstract_elem::impl>();
  p->kind = a.kind();
  p->u = a.universe();
  switch (a.kind()) {
  case domain_kind::interval:
    p->d = box_narrow(std::get<box_impl>(a.p_->d), std::get<box_impl>(b.p_->d));
    break;
  case domain_kind::octagon:
    p->d = oct_narrow(std::get<oct_impl>(a.p_->d), std::get<oct_impl>(b.p_->d));
    break;
  case domain_kind::polyhedra:
    // bounded descending iteration: the meet never drops below the
    // concrete intersection and narrow_iters caps the descent
    p->d = poly_meet(std::get<poly_impl>(a.p_->d), std::get<poly_impl>(b.p_->d));
    break;
  }
  return abstract_elem(std::move(p));
}

namespace {

bounds_fn bounds_of(const abstract_elem &a) {
  return [a](int i) { return a.var_bounds(i); };
}

} // namespace

abstract_elem abstract_elem::havoc(const std::string &var) const {
  int i = universe().index_of(var);
  if (i < 0)
    throw universe_mismatch("variable '" + var + "' not in universe");
  if (is_bottom())
    return *this;
  auto p = std::make_shared<impl>();
  p->kind = kind();
  p->u = universe();
  switch (kind()) {
  case domain_kind::interval: {
    box_impl b = std::get<box_impl>(p_->d);
    b.v[static_cast<size_t>(i)] = itv::top();
    p->d = std::move(b);
    break;
  }
  case domain_kind::octagon:
    p->d = oct_havoc(std::get<oct_impl>(p_->d), i);
    break;
  case domain_kind::polyhedra:
    p->d = poly_havoc(std::get<poly_impl>(p_->d), i);
    break;
  }
  return abstract_elem(std::move(p));
}

abstract_elem abstract_elem::assign(const std::string &var, const expr &e) const {
  int i = universe().index_of(var);
  if (i < 0)
    throw universe_mismatch("variable '" + var + "' not in universe");
  if (is_bottom())
    return *this;
  auto p = std::make_shared<impl>();
  p->kind = kind();
  p->u = universe();
  switch (kind()) {
  case domain_kind::interval: {
    box_impl b = std::get<box_impl>(p_->d);
    itv v = itv_eval(e, universe(), bounds_of(*this));
    b.v[static_cast<size_t>(i)] = v;
    b.normalize();
    p->d = std::move(b);
    break;
  }
  case domain_kind::octagon: {
    lin_form f = linearize(e, universe(), bounds_of(*this));
    if (!f.exact) // collapsed products: fall back to the interval value
      f = lin_form{{}, itv_eval(e, universe(), bounds_of(*this)), false};
    p->d = oct_assign(std::get<oct_impl>(p_->d), i, f);
    break;
  }
  case domain_kind::polyhedra: {
    lin_form f = linearize(e, universe(), bounds_of(*this));
    if (!f.exact)
      f = lin_form{{}, itv_eval(e, universe(), bounds_of(*this)), false};
    p->d = poly_assign(std::get<poly_impl>(p_->d), i, f);
    break;
  }
  }
  return abstract_elem(std::move(p));
}

namespace {

// g >= 0 in the may-semantics of nondeterministic subterms
abstract_elem filter_ge0(const abstract_elem &a, const expr &g);

cmpop negate_op(cmpop op) {
  switch (op) {
  case cmpop::eq: return cmpop::ne;
  case cmpop::ne: return cmpop::eq;
  case cmpop::lt: return cmpop::ge;
  case cmpop::le: return cmpop::gt;
  case cmpop::gt: return cmpop::le;
  case cmpop::ge: return cmpop::lt;
  }
  return op;
}

// rewrite e1 op e2 (op in {le, lt, ge, gt}) as g >= 0; < over integers
// becomes <= with a shifted constant
expr_ptr ge0_of(cmpop op, const expr_ptr &a, const expr_ptr &b) {
  switch (op) {
  case cmpop::ge:
    return expr::bin(binop::sub, a, b);
  case cmpop::gt:
    return expr::bin(binop::sub, expr::bin(binop::sub, a, b), expr::num(1));
  case cmpop::le:
    return expr::bin(binop::sub, b, a);
  case cmpop::lt:
    return expr::bin(binop::sub, expr::bin(binop::sub, b, a), expr::num(1));
  default:
    throw std::logic_error("ge0_of on eq/ne");
  }
}

abstract_elem filter_rec(const abstract_elem &a, const cond &c, bool positive) {
  switch (c.k) {
  case cond::kind::tt:
    return positive ? a : abstract_elem::bottom(a.kind(), a.universe());
  case cond::kind::lnot:
    return filter_rec(a, *c.c1, !positive);
  case cond::kind::land:
    if (positive)
      return meet(filter_rec(a, *c.c1, true), filter_rec(a, *c.c2, true));
    return join(filter_rec(a, *c.c1, false), filter_rec(a, *c.c2, false));
  case cond::kind::lor:
    if (positive)
      return join(filter_rec(a, *c.c1, true), filter_rec(a, *c.c2, true));
    return meet(filter_rec(a, *c.c1, false), filter_rec(a, *c.c2, false));
  case cond::kind::cmp: {
    cmpop op = positive ? c.op : negate_op(c.op);
    switch (op) {
    case cmpop::ne:
      return join(filter_ge0(a, *ge0_of(cmpop::lt, c.a, c.b)),
                  filter_ge0(a, *ge0_of(cmpop::gt, c.a, c.b)));
    case cmpop::eq:
      return meet(filter_ge0(a, *ge0_of(cmpop::le, c.a, c.b)),
                  filter_ge0(a, *ge0_of(cmpop::ge, c.a, c.b)));
    default:
      return filter_ge0(a, *ge0_of(op, c.a, c.b));
    }
  }
  }
  return a;
}

// refine through one forward/backward interval pass and meet the improved
// variable bounds back into the element
abstract_elem box_refine_path(const abstract_elem &a, const expr &g) {
  const var_universe &u = a.universe();
  int n = u.size();
  std::vector<itv> box(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    box[static_cast<size_t>(i)] = a.var_bounds(i);
  if (!hc4_refine_ge0(g, u, box))
    return abstract_elem::bottom(a.kind(), a.universe());
  if (a.kind() == domain_kind::interval) {
    std::vector<lin_constraint> cs;
    for (int i = 0; i < n; ++i) {
      const itv &x = box[static_cast<size_t>(i)];
      if (x.lo.is_finite()) {
        lin_expr e;
        e.add_term(i, 1);
        e.cst = -x.lo.v;
        cs.push_back(canonicalize(std::move(e)));
      }
      if (x.hi.is_finite()) {
        lin_expr e;
        e.add_term(i, -1);
        e.cst = x.hi.v;
        cs.push_back(canonicalize(std::move(e)));
      }
    }
    return meet(a, abstract_elem::from_constraints(a.kind(), u, cs, true));
  }
  // only bounds that strictly improved matter for relational domains
  std::vector<lin_constraint> cs;
  for (int i = 0; i < n; ++i) {
    itv before = a.var_bounds(i);
    const itv &x = box[static_cast<size_t>(i)];
    if (x.lo.is_finite() && (!before.lo.is_finite() || before.lo < x.lo)) {
      lin_expr e;
      e.add_term(i, 1);
      e.cst = -x.lo.v;
      cs.push_back(canonicalize(std::move(e)));
    }
    if (x.hi.is_finite() && (!before.hi.is_finite() || x.hi < before.hi)) {
      lin_expr e;
      e.add_term(i, -1);
      e.cst = x.hi.v;
      cs.push_back(canonicalize(std::move(e)));
    }
  }
  if (cs.empty())
    return a;
  return meet(a, abstract_elem::from_constraints(a.kind(), u, cs, true));
}

abstract_elem filter_ge0(const abstract_elem &a, const expr &g) {
  if (a.is_bottom())
    return a;
  const var_universe &u = a.universe();
  if (a.kind() == domain_kind::interval)
    return box_refine_path(a, g);
  lin_form f = linearize(g, u, bounds_of(a));
  if (!f.exact)
    return box_refine_path(a, g);
  // sum coef + [lo,hi] >= 0 is satisfiable iff sum coef + hi >= 0
  if (f.cst.hi.is_pos_inf())
    return a;
  if (f.coef.empty())
    return f.cst.hi < ext_int(0) ? abstract_elem::bottom(a.kind(), u) : a;
  lin_expr e;
  for (const auto &[v, k] : f.coef)
    e.coef.emplace(v, k);
  e.cst = f.cst.hi.v;
  lin_constraint c = canonicalize(std::move(e));
  if (a.kind() == domain_kind::polyhedra)
    return meet(a, abstract_elem::from_constraints(a.kind(), u, {c}, false));
  // octagon: exact when the shape fits, otherwise bound refinement
  if (c.e.coef.size() <= 2) {
    bool units = true;
    for (const auto &[v, k] : c.e.coef)
      units &= (k == 1 || k == -1);
    if (units)
      return meet(a, abstract_elem::from_constraints(a.kind(), u, {c}, false));
  }
  return box_refine_path(a, g);
}

} // namespace

abstract_elem abstract_elem::filter(const cond &c) const {
  if (is_bottom())
    return *this;
  return filter_rec(*this, c, true);
}

std::string abstract_elem::render() const {
  if (is_bottom())
    return "bottom";
  auto cs = to_constraints();
  if (cs.empty())
    return "top";
  std::ostringstream os;
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i)
      os << ", ";
    os << famalyze::render(cs[i], universe());
  }
  return os.str();
}

std::vector<std::vector<long>>
concrete_points(const abstract_elem &a, const std::vector<std::pair<long, long>> &bounds,
                std::size_t cap) {
  size_t total = 1;
  for (const auto &[lo, hi] : bounds) {
    if (hi < lo)
      return {};
    size_t w = static_cast<size_t>(hi - lo + 1);
    if (total > cap / w + 1)
      throw cap_exceeded("concrete enumeration grid too large", "");
    total *= w;
  }
  if (total > cap)
    throw cap_exceeded("concrete enumeration grid too large", std::to_string(total));
  std::vector<std::vector<long>> out;
  std::vector<long> cur(bounds.size());
  std::vector<int_t> pt(bounds.size());
  auto rec = [&](auto &&self, size_t i) -> void {
    if (i == bounds.size()) {
      for (size_t j = 0; j < cur.size(); ++j)
        pt[j] = cur[j];
      if (a.contains(pt))
        out.push_back(cur);
      return;
    }
    for (long v = bounds[i].first; v <= bounds[i].second; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

} // namespace famalyze
