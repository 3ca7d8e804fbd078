#pragma once

#include <memory>
#include <vector>

#include "famalyze/absdom.hpp"
#include "famalyze/featspace.hpp"

namespace famalyze {

// Constraint-based decision tree: decision nodes hold linear constraints
// over features in canonical orientation (of c and !c only the larger with
// respect to the constraint order is ever stored), leaves hold abstract
// elements over program variables. Trees are immutable and may share
// subtrees.
struct dtree;
using dtree_ptr = std::shared_ptr<const dtree>;

struct dtree {
  abstract_elem leaf;  // valid when l is null
  lin_constraint c;    // valid when l is non-null; true branch = l
  dtree_ptr l, r;

  bool is_leaf() const { return !l; }
};

dtree_ptr make_leaf(abstract_elem a);
dtree_ptr make_node(lin_constraint c, dtree_ptr l, dtree_ptr r);

// Shared per-analysis data: the feature universe with its order, the node
// domain D, and alpha(K) combining feature-domain bounds with the global
// constraints. Every redundancy and unsatisfiability test runs against the
// node domain.
struct tree_ctx {
  var_universe feats;
  domain_kind node_dom = domain_kind::interval;
  abstract_elem k_ctx;

  int cmp(const lin_constraint &a, const lin_constraint &b) const {
    return cmp_constraint(a, b, feats.size());
  }
  abstract_elem elem_of(const lin_constraint &c) const;
  abstract_elem ctx_and(const abstract_elem &ctx, const lin_constraint &c) const;
  bool redundant(const lin_constraint &c, const abstract_elem &ctx) const;
  bool unsat(const abstract_elem &ctx) const { return ctx.is_bottom(); }
};

tree_ctx make_tree_ctx(const feature_space &sp, domain_kind node_dom);

// canonical orientation for a raw constraint: the stored node plus the
// polarity that recovers the original (true = the node itself)
std::pair<lin_constraint, bool> orient(const lin_constraint &c, const tree_ctx &ctx);

// Algorithm: common refinement of two trees without information loss;
// both results share one decision structure.
std::pair<dtree_ptr, dtree_ptr> unify(const dtree_ptr &t1, const dtree_ptr &t2,
                                      const tree_ctx &ctx);

bool tree_leq(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx);
dtree_ptr tree_join(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx);
dtree_ptr tree_meet(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx);
dtree_ptr tree_widen(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx);
dtree_ptr tree_narrow(const dtree_ptr &a, const dtree_ptr &b, const tree_ctx &ctx);

// leaf-wise transfer, then compression
dtree_ptr tree_assign(const dtree_ptr &t, const std::string &var, const expr &e,
                      const tree_ctx &ctx);
dtree_ptr tree_havoc(const dtree_ptr &t, const std::string &var, const tree_ctx &ctx);
dtree_ptr tree_filter(const dtree_ptr &t, const cond &c, const tree_ctx &ctx);

struct jitem {
  lin_constraint c; // canonical node orientation
  bool pol;         // restrict to c when true, to !c when false
};

// Algorithm: add the constraints of J to t in ascending order, replacing
// paths incompatible with J by bottom leaves and pruning redundancy.
dtree_ptr restrict_tree(const dtree_ptr &t, const abstract_elem &path_ctx,
                        std::vector<jitem> J, const tree_ctx &ctx);

// Feature-based test: atoms go through the node domain's filter seeded
// with alpha(K) and then restrict_tree; conjunction and disjunction map to
// meet and join; disequalities split into the two strict sides.
dtree_ptr tree_feat_filter(const dtree_ptr &t, const cond &theta, const tree_ctx &ctx);

// Algorithm: bottom-up reduction (unsatisfiable paths, equal subtrees,
// absorption of a leaf into an adjacent subtree when the node constraint
// entails the subtree's root); gamma-preserving and idempotent.
dtree_ptr compress(const dtree_ptr &t, const tree_ctx &ctx);

bool tree_equal(const dtree_ptr &a, const dtree_ptr &b);
int leaf_count(const dtree_ptr &t);
bool tree_is_bottom(const dtree_ptr &t);

// per-configuration reading of the tree, total over the given configs
std::vector<abstract_elem> gamma_tree(const dtree_ptr &t,
                                      const std::vector<config> &ks);
const abstract_elem &gamma_tree_one(const dtree_ptr &t, const config &k);

// structural invariants: root-minimal ordering, no c/!c pair on a path
bool audit_canonical(const dtree_ptr &t, const tree_ctx &ctx);
// no node constraint redundant w.r.t. its path context plus K
bool audit_no_redundant(const dtree_ptr &t, const tree_ctx &ctx);

// partition rendering: (path condition text, leaf) pairs in tree order
std::vector<std::pair<std::string, abstract_elem>>
tree_partitions(const dtree_ptr &t, const tree_ctx &ctx);

} // namespace famalyze
