#include "famalyze/tree_dom.hpp"

#include <algorithm>

namespace famalyze {

dtree_ptr make_leaf(abstract_elem a) {
  auto t = std::make_shared<dtree>();
  t->leaf = std::move(a);
  return t;
}

dtree_ptr make_node(lin_constraint c, dtree_ptr l, dtree_ptr r) {
  auto t = std::make_shared<dtree>();
  t->c = std::move(c);
  t->l = std::move(l);
  t->r = std::move(r);
  return t;
}

abstract_elem tree_ctx::elem_of(const lin_constraint &c) const {
  return abstract_elem::from_constraints(node_dom, feats, {c}, true);
}

abstract_elem tree_ctx::ctx_and(const abstract_elem &ctx, const lin_constraint &c) const {
  return meet(ctx, elem_of(c));
}

bool tree_ctx::redundant(const lin_constraint &c, const abstract_elem &ctx) const {
  return leq(ctx, elem_of(c));
}

tree_ctx make_tree_ctx(const feature_space &sp, domain_kind node_dom) {
  tree_ctx ctx;
  ctx.feats = sp.feats;
  ctx.node_dom = node_dom;
  std::vector<lin_constraint> bounds;
  for (int i = 0; i < sp.feats.size(); ++i) {
    lin_expr lo;
    lo.add_term(i, 1);
    lo.cst = -sp.dom[static_cast<size_t>(i)].first;
    bounds.push_back(canonicalize(std::move(lo)));
    lin_expr hi;
    hi.add_term(i, -1);
    hi.cst = sp.dom[static_cast<size_t>(i)].second;
    bounds.push_back(canonicalize(std::move(hi)));
  }
  ctx.k_ctx = abstract_elem::from_constraints(node_dom, sp.feats, bounds, true);
  for (const auto &gc : sp.global_constraints)
    ctx.k_ctx = ctx.k_ctx.filter(*gc);
  return ctx;
}

std::pair<lin_constraint, bool> orient(const lin_constraint &c, const tree_ctx &ctx) {
  lin_constraint n = negate(c);
  if (ctx.cmp(c, n) >= 0)
    return {c, true};
  return {std::move(n), false};
}

// ---- unification -----------------------------------------------------------

namespace {

std::pair<dtree_ptr, dtree_ptr> unify_rec(const dtree_ptr &t1, const dtree_ptr &t2,
                                          const abstract_elem &C, const tree_ctx &ctx) {
  if (t1->is_leaf() && t2->is_leaf())
    return {t1, t2};
  bool take2 = t1->is_leaf() ||
               (!t2->is_leaf() && ctx.cmp(t2->c, t1->c) < 0);
  if (take2) {
    if (ctx.redundant(t2->c, C))
      return unify_rec(t1, t2->l, C, ctx);
    if (ctx.redundant(negate(t2->c), C))
      return unify_rec(t1, t2->r, C, ctx);
    auto [l1, l2] = unify_rec(t1, t2->l, ctx.ctx_and(C, t2->c), ctx);
    auto [r1, r2] = unify_rec(t1, t2->r, ctx.ctx_and(C, negate(t2->c)), ctx);
    return {make_node(t2->c, l1, r1), make_node(t2->c, l2, r2)};
  }
  bool take1 = t2->is_leaf() || ctx.cmp(t1->c, t2->c) < 0;
  if (take1) {
    if (ctx.redundant(t1->c, C))
      return unify_rec(t1->l, t2, C, ctx);
    if (ctx.redundant(negate(t1->c), C))
      return unify_rec(t1->r, t2, C, ctx);
    auto [l1, l2] = unify_rec(t1->l, t2, ctx.ctx_and(C, t1->c), ctx);
    auto [r1, r2] = unify_rec(t1->r, t2, ctx.ctx_and(C, negate(t1->c)), ctx);
    return {make_node(t1->c, l1, r1), make_node(t1->c, l2, r2)};
  }
  // equal root constraints
  if (ctx.redundant(t1->c, C))
    return unify_rec(t1->l, t2->l, C, ctx);
  if (ctx.redundant(negate(t1->c), C))
    return unify_rec(t1->r, t2->r, C, ctx);
  auto [l1, l2] = unify_rec(t1->l, t2->l, ctx.ctx_and(C, t1->c), ctx);
  auto [r1, r2] = unify_rec(t1->r, t2->r, ctx.ctx_and(C, negate(t1->c)), ctx);
  return {make_node(t1->c, l1, r1), make_node(t1->c, l2, r2)};
}

bool leq_unified(const dtree_ptr &a, const dtree_ptr &b) {
  if (a->is_leaf())
    return leq(a->leaf, b->leaf);
  return leq_unified(a->l, b->l) && leq_unified(a->r, b->r);
}

template <class F>
dtree_ptr map_unified(const dtree_ptr &a, const dtree_ptr &b, F f) {
  if (a->is_leaf())
    return make_leaf(f(a->leaf, b->leaf));
  return make_node(a->c, map_unified(a->l, b->l, f), map_unified(a->r, b->r, f));
}

template <class F> dtree_ptr map_leaves(const dtree_ptr &t, F f) {
  if (t->is_leaf())
    return make_leaf(f(t->leaf));
  return make_node(t->c, map_leaves(t->l, f), map_leaves(t->r, f));
}

} // namespace

std::pair<dtree_ptr, dtree_ptr> unify(const dtree_ptr &t1, const dtree_ptr &t2,
                                      const tree_ctx &ctx) {
  return unify_rec(t1, t2, ctx.k_ctx, ctx);
}

bool tree_leq(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx) {
  auto [ua, ub] = unify(a, b, ctx);
  return leq_unified(ua, ub);
}

dtree_ptr tree_join(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx) {
  auto [ua, ub] = unify(a, b, ctx);
  return map_unified(ua, ub, [](const auto &x, const auto &y) { return join(x, y); });
}

dtree_ptr tree_meet(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx) {
  auto [ua, ub] = unify(a, b, ctx);
  return map_unified(ua, ub, [](const auto &x, const auto &y) { return meet(x, y); });
}

dtree_ptr tree_widen(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx) {
  auto [ua, ub] = unify(a, b, ctx);
  return map_unified(ua, ub, [](const auto &x, const auto &y) { return widen(x, y); });
}

dtree_ptr tree_narrow(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx) {
  auto [ua, ub] = unify(a, b, ctx);
  return map_unified(ua, ub, [](const auto &x, const auto &y) { return narrow(x, y); });
}

// ---- transfer functions -----------------------------------------------------

dtree_ptr tree_assign(const dtree_ptr &t, const std::string &var, const expr &e,
                      const tree_ctx &ctx) {
  return compress(map_leaves(t, [&](const auto &a) { return a.assign(var, e); }), ctx);
}

dtree_ptr tree_havoc(const dtree_ptr &t, const std::string &var, const tree_ctx &ctx) {
  return compress(map_leaves(t, [&](const auto &a) { return a.havoc(var); }), ctx);
}

dtree_ptr tree_filter(const dtree_ptr &t, const cond &c, const tree_ctx &ctx) {
  return compress(map_leaves(t, [&](const auto &a) { return a.filter(c); }), ctx);
}

// ---- restrict ---------------------------------------------------------------

namespace {

abstract_elem bottom_leaf_like(const dtree_ptr &t) {
  const dtree *p = t.get();
  while (!p->is_leaf())
    p = p->l.get();
  return abstract_elem::bottom(p->leaf.kind(), p->leaf.universe());
}

dtree_ptr restrict_rec(const dtree_ptr &t, const abstract_elem &C,
                       const std::vector<jitem> &J, size_t ji,
                       const abstract_elem &bot, const tree_ctx &ctx) {
  if (ji >= J.size()) {
    if (t->is_leaf())
      return t;
    if (ctx.redundant(t->c, C))
      return restrict_rec(t->l, C, J, ji, bot, ctx);
    if (ctx.redundant(negate(t->c), C))
      return restrict_rec(t->r, C, J, ji, bot, ctx);
    return make_node(t->c, restrict_rec(t->l, ctx.ctx_and(C, t->c), J, ji, bot, ctx),
                     restrict_rec(t->r, ctx.ctx_and(C, negate(t->c)), J, ji, bot, ctx));
  }
  const jitem &j = J[ji];
  lin_constraint eff = j.pol ? j.c : negate(j.c);
  if (t->is_leaf() || ctx.cmp(j.c, t->c) <= 0) {
    if (ctx.redundant(eff, C))
      return restrict_rec(t, C, J, ji + 1, bot, ctx);
    if (ctx.redundant(negate(eff), C))
      return make_leaf(bot);
    dtree_ptr base = t;
    if (!t->is_leaf() && ctx.cmp(j.c, t->c) == 0)
      base = j.pol ? t->l : t->r;
    dtree_ptr inner = restrict_rec(base, ctx.ctx_and(C, eff), J, ji + 1, bot, ctx);
    if (j.pol)
      return make_node(j.c, inner, make_leaf(bot));
    return make_node(j.c, make_leaf(bot), inner);
  }
  if (ctx.redundant(t->c, C))
    return restrict_rec(t->l, C, J, ji, bot, ctx);
  if (ctx.redundant(negate(t->c), C))
    return restrict_rec(t->r, C, J, ji, bot, ctx);
  return make_node(t->c, restrict_rec(t->l, ctx.ctx_and(C, t->c), J, ji, bot, ctx),
                   restrict_rec(t->r, ctx.ctx_and(C, negate(t->c)), J, ji, bot, ctx));
}

} // namespace

dtree_ptr restrict_tree(const dtree_ptr &t, const abstract_elem &path_ctx,
                        std::vector<jitem> J, const tree_ctx &ctx) {
  std::sort(J.begin(), J.end(), [&](const jitem &a, const jitem &b) {
    return ctx.cmp(a.c, b.c) < 0;
  });
  // duplicate nodes: same polarity collapses, opposite polarities are an
  // unsatisfiable restriction
  for (size_t i = 0; i + 1 < J.size();) {
    if (ctx.cmp(J[i].c, J[i + 1].c) == 0) {
      if (J[i].pol != J[i + 1].pol)
        return make_leaf(bottom_leaf_like(t));
      J.erase(J.begin() + static_cast<long>(i + 1));
    } else {
      ++i;
    }
  }
  return restrict_rec(t, path_ctx, J, 0, bottom_leaf_like(t), ctx);
}

// ---- feature-based tests ----------------------------------------------------

namespace {

dtree_ptr bottom_tree_like(const dtree_ptr &t) { return make_leaf(bottom_leaf_like(t)); }

dtree_ptr feat_filter_atom(const dtree_ptr &t, cmpop op, const expr_ptr &a,
                           const expr_ptr &b, const tree_ctx &ctx) {
  abstract_elem d = ctx.k_ctx.filter(*cond::cmp(op, a, b));
  if (d.is_bottom())
    return bottom_tree_like(t);
  std::vector<jitem> J;
  for (const auto &c : d.to_constraints()) {
    if (c.is_trivial_true())
      continue;
    auto [node, pol] = orient(c, ctx);
    J.push_back(jitem{std::move(node), pol});
  }
  return restrict_tree(t, ctx.k_ctx, std::move(J), ctx);
}

dtree_ptr feat_filter_rec(const dtree_ptr &t, const cond &theta, bool positive,
                          const tree_ctx &ctx) {
  switch (theta.k) {
  case cond::kind::tt:
    return positive ? t : bottom_tree_like(t);
  case cond::kind::lnot:
    return feat_filter_rec(t, *theta.c1, !positive, ctx);
  case cond::kind::land:
    if (positive)
      return tree_meet(feat_filter_rec(t, *theta.c1, true, ctx),
                       feat_filter_rec(t, *theta.c2, true, ctx), ctx);
    return tree_join(feat_filter_rec(t, *theta.c1, false, ctx),
                     feat_filter_rec(t, *theta.c2, false, ctx), ctx);
  case cond::kind::lor:
    if (positive)
      return tree_join(feat_filter_rec(t, *theta.c1, true, ctx),
                       feat_filter_rec(t, *theta.c2, true, ctx), ctx);
    return tree_meet(feat_filter_rec(t, *theta.c1, false, ctx),
                     feat_filter_rec(t, *theta.c2, false, ctx), ctx);
  case cond::kind::cmp: {
    cmpop op = theta.op;
    if (!positive) {
      switch (op) {
      case cmpop::eq: op = cmpop::ne; break;
      case cmpop::ne: op = cmpop::eq; break;
      case cmpop::lt: op = cmpop::ge; break;
      case cmpop::le: op = cmpop::gt; break;
      case cmpop::gt: op = cmpop::le; break;
      case cmpop::ge: op = cmpop::lt; break;
      }
    }
    if (op == cmpop::ne) {
      // exact integer split keeps both sides as separate partitions
      return tree_join(feat_filter_atom(t, cmpop::lt, theta.a, theta.b, ctx),
                       feat_filter_atom(t, cmpop::gt, theta.a, theta.b, ctx), ctx);
    }
    return feat_filter_atom(t, op, theta.a, theta.b, ctx);
  }
  }
  return t;
}

} // namespace

dtree_ptr tree_feat_filter(const dtree_ptr &t, const cond &theta, const tree_ctx &ctx) {
  return feat_filter_rec(t, theta, true, ctx);
}

// ---- compression ------------------------------------------------------------

namespace {

bool leaves_equal(const dtree_ptr &a, const dtree_ptr &b) {
  return equiv(a->leaf, b->leaf);
}

// k |= c implies k |= c2, tested in the node domain
bool entails(const lin_constraint &c, const lin_constraint &c2, const tree_ctx &ctx) {
  return leq(ctx.elem_of(c), ctx.elem_of(c2));
}

dtree_ptr compress_rec(const dtree_ptr &t, const abstract_elem &C, const tree_ctx &ctx) {
  if (t->is_leaf())
    return t;
  abstract_elem ctx_l = ctx.ctx_and(C, t->c);
  abstract_elem ctx_r = ctx.ctx_and(C, negate(t->c));
  dtree_ptr l = compress_rec(t->l, ctx_l, ctx);
  dtree_ptr r = compress_rec(t->r, ctx_r, ctx);
  if (ctx.unsat(ctx_l))
    return r;
  if (ctx.unsat(ctx_r))
    return l;
  if (l->is_leaf() && r->is_leaf() && leaves_equal(l, r))
    return l;
  if (!l->is_leaf() && !r->is_leaf() && tree_equal(l, r))
    return l;
  // a leaf absorbed by the adjacent subtree when the decision is implied
  if (l->is_leaf() && !r->is_leaf() && r->l->is_leaf() && leaves_equal(l, r->l) &&
      entails(t->c, r->c, ctx))
    return r;
  if (!l->is_leaf() && r->is_leaf() && l->r->is_leaf() && leaves_equal(r, l->r) &&
      entails(negate(t->c), negate(l->c), ctx))
    return l;
  if (l == t->l && r == t->r)
    return t;
  return make_node(t->c, l, r);
}

} // namespace

dtree_ptr compress(const dtree_ptr &t, const tree_ctx &ctx) {
  return compress_rec(t, ctx.k_ctx, ctx);
}

bool tree_equal(const dtree_ptr &a, const dtree_ptr &b) {
  if (a == b)
    return true;
  if (a->is_leaf() != b->is_leaf())
    return false;
  if (a->is_leaf())
    return equiv(a->leaf, b->leaf);
  return a->c == b->c && tree_equal(a->l, b->l) && tree_equal(a->r, b->r);
}

int leaf_count(const dtree_ptr &t) {
  if (t->is_leaf())
    return 1;
  return leaf_count(t->l) + leaf_count(t->r);
}

bool tree_is_bottom(const dtree_ptr &t) {
  if (t->is_leaf())
    return t->leaf.is_bottom();
  return tree_is_bottom(t->l) && tree_is_bottom(t->r);
}

const abstract_elem &gamma_tree_one(const dtree_ptr &t, const config &k) {
  const dtree *p = t.get();
  while (!p->is_leaf())
    p = eval(p->c, k.val) ? p->l.get() : p->r.get();
  return p->leaf;
}

std::vector<abstract_elem> gamma_tree(const dtree_ptr &t,
                                      const std::vector<config> &ks) {
  std::vector<abstract_elem> out;
  out.reserve(ks.size());
  for (const auto &k : ks)
    out.push_back(gamma_tree_one(t, k));
  return out;
}

namespace {

bool audit_rec(const dtree_ptr &t, std::vector<lin_constraint> &path,
               const tree_ctx &ctx) {
  if (t->is_leaf())
    return true;
  for (const auto &pc : path) {
    if (ctx.cmp(pc, t->c) >= 0)
      return false; // node not strictly larger than an ancestor
  }
  path.push_back(t->c);
  bool ok = audit_rec(t->l, path, ctx) && audit_rec(t->r, path, ctx);
  path.pop_back();
  return ok;
}

bool audit_red_rec(const dtree_ptr &t, const abstract_elem &C, const tree_ctx &ctx) {
  if (t->is_leaf())
    return true;
  if (!ctx.unsat(C) &&
      (ctx.redundant(t->c, C) || ctx.redundant(negate(t->c), C)))
    return false;
  return audit_red_rec(t->l, ctx.ctx_and(C, t->c), ctx) &&
         audit_red_rec(t->r, ctx.ctx_and(C, negate(t->c)), ctx);
}

} // namespace

bool audit_canonical(const dtree_ptr &t, const tree_ctx &ctx) {
  // the path-ordering audit also rules out a constraint and its negation
  // on one path: both orientations are never stored, and equal canonical
  // nodes cannot repeat under strict ordering
  std::vector<lin_constraint> path;
  return audit_rec(t, path, ctx);
}

bool audit_no_redundant(const dtree_ptr &t, const tree_ctx &ctx) {
  return audit_red_rec(t, ctx.k_ctx, ctx);
}

namespace {

void partitions_rec(const dtree_ptr &t, std::string path, const tree_ctx &ctx,
                    std::vector<std::pair<std::string, abstract_elem>> &out) {
  if (t->is_leaf()) {
    out.emplace_back(path.empty() ? "true" : path, t->leaf);
    return;
  }
  std::string sep = path.empty() ? "" : " && ";
  partitions_rec(t->l, path + sep + render(t->c, ctx.feats), ctx, out);
  partitions_rec(t->r, path + sep + render(negate(t->c), ctx.feats), ctx, out);
}

} // namespace

std::vector<std::pair<std::string, abstract_elem>>
tree_partitions(const dtree_ptr &t, const tree_ctx &ctx) {
  std::vector<std::pair<std::string, abstract_elem>> out;
  partitions_rec(t, "", ctx, out);
  return out;
}

} // namespace famalyze
