#include "famalyze/engine.hpp"

#include <set>

namespace famalyze {

const char *to_string(backend_kind k) {
  switch (k) {
  case backend_kind::tuple: return "tuple";
  case backend_kind::tree: return "tree";
  case backend_kind::brute: return "brute";
  }
  return "?";
}

std::optional<backend_kind> parse_backend(const std::string &s) {
  if (s == "tuple")
    return backend_kind::tuple;
  if (s == "tree")
    return backend_kind::tree;
  if (s == "brute")
    return backend_kind::brute;
  return std::nullopt;
}

const char *to_string(verdict_kind v) {
  switch (v) {
  case verdict_kind::valid: return "valid";
  case verdict_kind::violated: return "violated";
  case verdict_kind::unknown: return "unknown";
  }
  return "?";
}

bool invariant_map::all_asserts_valid() const {
  for (const auto &[label, parts] : asserts)
    for (const auto &p : parts)
      if (p.verdict != verdict_kind::valid)
        return false;
  return true;
}

namespace {

verdict_kind judge(const abstract_elem &s, const cond &c) {
  if (s.is_bottom())
    return verdict_kind::valid; // unreachable: vacuously valid
  if (s.filter(*cond::lnot(std::make_shared<cond>(c))).is_bottom())
    return verdict_kind::valid;
  if (s.filter(c).is_bottom())
    return verdict_kind::violated;
  return verdict_kind::unknown;
}

// ---- backend policies -------------------------------------------------------

struct tuple_policy {
  using state = tuple_state;
  const analysis_options *opts;

  bool leq_(const state &a, const state &b) const { return tuple_leq(a, b); }
  state join_(const state &a, const state &b) const {
    return tuple_join(a, b, opts->parallel);
  }
  state widen_(const state &a, const state &b) const {
    return tuple_widen(a, b, opts->parallel);
  }
  state narrow_(const state &a, const state &b) const {
    return tuple_narrow(a, b, opts->parallel);
  }
  state assign_(const state &s, const std::string &v, const expr &e) const {
    return tuple_assign(s, v, e, opts->parallel);
  }
  state havoc_(const state &s, const std::string &v) const {
    return tuple_havoc(s, v, opts->parallel);
  }
  state filter_(const state &s, const cond &c) const {
    return tuple_filter(s, c, opts->parallel);
  }
  state feat_filter_(const state &s, const cond &theta) const {
    return tuple_feat_filter(s, theta);
  }
  state squash_(state s) const { return s; }
  std::vector<assert_partition> verdicts_(const state &s, const cond &c) const {
    std::vector<assert_partition> out;
    for (size_t i = 0; i < s.elems.size(); ++i)
      out.push_back({describe(*s.space, (*s.configs)[i]), judge(s.elems[i], c)});
    return out;
  }
  location_state pack_(const state &s) const { return s; }
};

struct tree_policy {
  using state = dtree_ptr;
  const tree_ctx *ctx;

  bool leq_(const state &a, const state &b) const { return tree_leq(a, b, *ctx); }
  state join_(const state &a, const state &b) const { return tree_join(a, b, *ctx); }
  state widen_(const state &a, const state &b) const { return tree_widen(a, b, *ctx); }
  state narrow_(const state &a, const state &b) const { return tree_narrow(a, b, *ctx); }
  state assign_(const state &s, const std::string &v, const expr &e) const {
    return tree_assign(s, v, e, *ctx);
  }
  state havoc_(const state &s, const std::string &v) const {
    return tree_havoc(s, v, *ctx);
  }
  state filter_(const state &s, const cond &c) const { return tree_filter(s, c, *ctx); }
  state feat_filter_(const state &s, const cond &theta) const {
    return tree_feat_filter(s, theta, *ctx);
  }
  state squash_(state s) const { return compress(s, *ctx); }
  std::vector<assert_partition> verdicts_(const state &s, const cond &c) const {
    std::vector<assert_partition> out;
    for (const auto &[text, leaf] : tree_partitions(s, *ctx))
      out.push_back({text, judge(leaf, c)});
    return out;
  }
  location_state pack_(const state &s) const { return s; }
};

struct single_policy {
  using state = abstract_elem;

  bool leq_(const state &a, const state &b) const { return leq(a, b); }
  state join_(const state &a, const state &b) const { return join(a, b); }
  state widen_(const state &a, const state &b) const { return widen(a, b); }
  state narrow_(const state &a, const state &b) const { return narrow(a, b); }
  state assign_(const state &s, const std::string &v, const expr &e) const {
    return s.assign(v, e);
  }
  state havoc_(const state &s, const std::string &v) const { return s.havoc(v); }
  state filter_(const state &s, const cond &c) const { return s.filter(c); }
  state feat_filter_(const state &, const cond &) const {
    throw std::logic_error("feature test in a projected variant");
  }
  state squash_(state s) const { return s; }
  std::vector<assert_partition> verdicts_(const state &s, const cond &c) const {
    return {{"true", judge(s, c)}};
  }
  location_state pack_(const state &s) const { return s; }
};

// ---- structural interpreter --------------------------------------------------

template <class P> struct engine {
  const P &pol;
  const analysis_options &opts;
  invariant_map *rec = nullptr; // non-null only during the recording pass
  bool post_fix_ok = true;
  unsigned loop_iter_cap = 1000;

  void check_deadline() const {
    if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
      throw timeout_error("analysis exceeded its time budget");
  }

  void record(int label, const typename P::state &s) {
    if (rec && label > 0)
      rec->locations[static_cast<size_t>(label - 1)] = pol.pack_(s);
  }

  typename P::state exec_block(const block &b, typename P::state s) {
    for (const auto &st : b.stmts)
      s = exec_stmt(*st, std::move(s));
    if (b.exit_label)
      record(b.exit_label, s);
    return s;
  }

  typename P::state exec_stmt(const stmt &s, typename P::state in) {
    check_deadline();
    switch (s.k) {
    case stmt::kind::skip:
      record(s.label, in);
      return in;
    case stmt::kind::decl: {
      record(s.label, in);
      auto cur = std::move(in);
      for (const auto &d : s.decls)
        cur = d.init ? pol.assign_(cur, d.name, *d.init) : pol.havoc_(cur, d.name);
      return cur;
    }
    case stmt::kind::assign:
      record(s.label, in);
      return pol.assign_(in, s.lhs, *s.rhs);
    case stmt::kind::check: {
      record(s.label, in);
      if (rec)
        rec->asserts[s.label] = pol.verdicts_(in, *s.c);
      return in; // the check does not refine downstream states
    }
    case stmt::kind::nested:
      record(s.label, in);
      return exec_block(s.then_b, std::move(in));
    case stmt::kind::ifelse: {
      record(s.label, in);
      auto t = exec_block(s.then_b, pol.filter_(in, *s.c));
      auto e = exec_block(s.else_b, pol.filter_(in, *cond::lnot(s.c)));
      return pol.squash_(pol.join_(t, e));
    }
    case stmt::kind::ifdef: {
      record(s.label, in);
      auto t = exec_block(s.then_b, pol.feat_filter_(in, *s.c));
      auto e = exec_block(s.else_b, pol.feat_filter_(in, *cond::lnot(s.c)));
      return pol.squash_(pol.join_(t, e));
    }
    case stmt::kind::wloop: {
      auto head = fixpoint(s, in);
      record(s.label, head);
      if (rec) {
        // one body pass under the stable head populates inner labels
        exec_block(s.then_b, pol.filter_(head, *s.c));
      }
      return pol.filter_(head, *cond::lnot(s.c));
    }
    }
    throw std::logic_error("bad statement kind");
  }

  typename P::state body_round(const stmt &s, const typename P::state &entry,
                               const typename P::state &x) {
    engine<P> sub{pol, opts, nullptr, true, loop_iter_cap};
    auto out = sub.exec_block(s.then_b, pol.filter_(x, *s.c));
    post_fix_ok &= sub.post_fix_ok;
    return pol.join_(entry, out);
  }

  typename P::state fixpoint(const stmt &s, const typename P::state &entry) {
    auto x = entry;
    for (unsigned iter = 0;; ++iter) {
      check_deadline();
      if (iter > loop_iter_cap)
        throw nontermination_error("widening sequence exceeded the iteration cap");
      auto arg = body_round(s, entry, x);
      auto nxt = iter < opts.widen_delay ? pol.join_(x, arg) : pol.widen_(x, arg);
      nxt = pol.squash_(std::move(nxt));
      if (pol.leq_(nxt, x)) {
        x = std::move(nxt);
        break;
      }
      x = std::move(nxt);
    }
    for (unsigned i = 0; i < opts.narrow_iters; ++i) {
      auto f = body_round(s, entry, x);
      auto cand = pol.squash_(pol.narrow_(x, f));
      auto fc = body_round(s, entry, cand);
      if (!pol.leq_(fc, cand))
        break; // narrowing broke the post-fixpoint: keep the wider invariant
      bool stable = pol.leq_(x, cand);
      x = std::move(cand);
      if (stable)
        break;
    }
    if (!pol.leq_(body_round(s, entry, x), x))
      post_fix_ok = false;
    return x;
  }
};

template <class P>
invariant_map run_engine(const program &p, const analysis_options &opts, const P &pol,
                         typename P::state init) {
  invariant_map out;
  out.opts = opts;
  out.num_labels = p.num_labels;
  out.locations.resize(static_cast<size_t>(p.num_labels));
  engine<P> e{pol, opts, &out, true, 1000};
  e.exec_block(p.body, std::move(init));
  out.loops_post_fixpoint = e.post_fix_ok;
  return out;
}

invariant_map analyze_single(const program &p, const analysis_options &opts,
                             var_universe vars) {
  single_policy pol;
  return run_engine(p, opts, pol, abstract_elem::top(opts.leaf_domain, std::move(vars)));
}

} // namespace

oracle_result analyze_brute(const program &p, const analysis_options &opts) {
  auto sp = std::make_shared<feature_space>(space_of(p));
  oracle_result out;
  out.space = sp;
  out.configs = enumerate(*sp, opts.enum_cap);
  var_universe vars(p.variables);
  for (const auto &k : out.configs) {
    program variant = project(p, *sp, k);
    invariant_map one = analyze_single(variant, opts, vars);
    std::map<int, abstract_elem> states;
    for (int label = 1; label <= one.num_labels; ++label) {
      const auto &st = one.at(label);
      if (std::holds_alternative<abstract_elem>(st))
        states.emplace(label, std::get<abstract_elem>(st));
    }
    std::map<int, verdict_kind> vs;
    for (const auto &[label, parts] : one.asserts)
      if (!parts.empty())
        vs.emplace(label, parts.front().verdict);
    out.per_config.push_back(std::move(states));
    out.verdicts_per_config.push_back(std::move(vs));
  }
  return out;
}

invariant_map analyze(const program &p, const analysis_options &opts) {
  auto sp = std::make_shared<feature_space>(space_of(p));
  var_universe vars(p.variables);
  switch (opts.backend) {
  case backend_kind::tree: {
    auto ctx = std::make_shared<tree_ctx>(make_tree_ctx(*sp, opts.node_domain));
    tree_policy pol{ctx.get()};
    auto init = make_leaf(abstract_elem::top(opts.leaf_domain, vars));
    invariant_map out = run_engine(p, opts, pol, std::move(init));
    out.tctx = ctx;
    out.space = sp;
    return out;
  }
  case backend_kind::tuple: {
    auto ks = std::make_shared<std::vector<config>>(enumerate(*sp, opts.enum_cap));
    tuple_policy pol{&opts};
    auto init = tuple_top(sp, ks, opts.leaf_domain, vars);
    invariant_map out = run_engine(p, opts, pol, std::move(init));
    out.space = sp;
    out.configs = ks;
    return out;
  }
  case backend_kind::brute: {
    oracle_result oracle = analyze_brute(p, opts);
    // presented tuple-style: one component per configuration
    invariant_map out;
    out.opts = opts;
    out.num_labels = p.num_labels;
    out.space = sp;
    auto ks = std::make_shared<std::vector<config>>(oracle.configs);
    out.configs = ks;
    abstract_elem bot = abstract_elem::bottom(opts.leaf_domain, vars);
    out.locations.resize(static_cast<size_t>(p.num_labels));
    for (int label = 1; label <= p.num_labels; ++label) {
      tuple_state ts;
      ts.space = sp;
      ts.configs = ks;
      for (const auto &m : oracle.per_config) {
        auto it = m.find(label);
        ts.elems.push_back(it == m.end() ? bot : it->second);
      }
      out.locations[static_cast<size_t>(label - 1)] = std::move(ts);
    }
    // collect the union of assert labels, then fill per configuration
    std::map<int, std::vector<assert_partition>> out_asserts;
    std::set<int> labels;
    for (const auto &m : oracle.verdicts_per_config)
      for (const auto &[label, v] : m)
        labels.insert(label);
    for (int label : labels) {
      std::vector<assert_partition> parts;
      for (size_t ki = 0; ki < oracle.configs.size(); ++ki) {
        const auto &m = oracle.verdicts_per_config[ki];
        auto it = m.find(label);
        verdict_kind v = it == m.end() ? verdict_kind::valid : it->second;
        parts.push_back({describe(*sp, oracle.configs[ki]), v});
      }
      out_asserts.emplace(label, std::move(parts));
    }
    out.asserts = std::move(out_asserts);
    return out;
  }
  }
  throw std::logic_error("bad backend");
}

compare_report compare(const invariant_map &fam, const oracle_result &oracle) {
  compare_report rep;
  var_universe vars;
  abstract_elem bot;
  bool bot_ready = false;
  for (int label = 1; label <= fam.num_labels; ++label) {
    const location_state &st = fam.at(label);
    for (size_t ki = 0; ki < oracle.configs.size(); ++ki) {
      const abstract_elem *fam_elem = nullptr;
      if (std::holds_alternative<tuple_state>(st)) {
        fam_elem = &std::get<tuple_state>(st).elems[ki];
      } else if (std::holds_alternative<dtree_ptr>(st)) {
        fam_elem = &gamma_tree_one(std::get<dtree_ptr>(st), oracle.configs[ki]);
      } else if (std::holds_alternative<abstract_elem>(st)) {
        fam_elem = &std::get<abstract_elem>(st);
      } else {
        continue;
      }
      if (!bot_ready) {
        bot = abstract_elem::bottom(fam_elem->kind(), fam_elem->universe());
        bot_ready = true;
      }
      const auto &m = oracle.per_config[ki];
      auto it = m.find(label);
      const abstract_elem &ref = it == m.end() ? bot : it->second;
      cmp_class cls;
      if (leq(ref, *fam_elem))
        cls = leq(*fam_elem, ref) ? cmp_class::equal : cmp_class::sound_over;
      else
        cls = cmp_class::unsound;
      switch (cls) {
      case cmp_class::equal:
        ++rep.n_equal;
        break;
      case cmp_class::sound_over:
        ++rep.n_over;
        rep.diffs.push_back({label, describe(*oracle.space, oracle.configs[ki]), cls});
        break;
      case cmp_class::unsound:
        ++rep.n_unsound;
        rep.diffs.push_back({label, describe(*oracle.space, oracle.configs[ki]), cls});
        break;
      }
    }
  }
  return rep;
}

namespace {

bool expr_affine(const expr &e) {
  switch (e.k) {
  case expr::kind::num:
  case expr::kind::ivl:
  case expr::kind::var:
    return true;
  case expr::kind::neg:
    return expr_affine(*e.a);
  case expr::kind::bin: {
    if (!expr_affine(*e.a) || !expr_affine(*e.b))
      return false;
    if (e.op != binop::mul)
      return true;
    auto constant = [](const expr &x) {
      // purely numeric subtree
      auto rec = [](auto &&self, const expr &y) -> bool {
        switch (y.k) {
        case expr::kind::num: return true;
        case expr::kind::neg: return self(self, *y.a);
        case expr::kind::bin: return self(self, *y.a) && self(self, *y.b);
        default: return false;
        }
      };
      return rec(rec, x);
    };
    return constant(*e.a) || constant(*e.b);
  }
  }
  return false;
}

bool cond_affine(const cond &c) {
  switch (c.k) {
  case cond::kind::tt:
    return true;
  case cond::kind::cmp:
    return expr_affine(*c.a) && expr_affine(*c.b);
  case cond::kind::lnot:
    return cond_affine(*c.c1);
  case cond::kind::land:
  case cond::kind::lor:
    return cond_affine(*c.c1) && cond_affine(*c.c2);
  }
  return false;
}

bool block_affine(const block &b);

bool stmt_affine(const stmt &s) {
  switch (s.k) {
  case stmt::kind::ifdef:
    return cond_affine(*s.c) && block_affine(s.then_b) && block_affine(s.else_b);
  case stmt::kind::ifelse:
    return block_affine(s.then_b) && block_affine(s.else_b);
  case stmt::kind::wloop:
  case stmt::kind::nested:
    return block_affine(s.then_b);
  default:
    return true;
  }
}

bool block_affine(const block &b) {
  for (const auto &s : b.stmts)
    if (!stmt_affine(*s))
      return false;
  return true;
}

} // namespace

bool all_feat_exprs_affine(const program &p) {
  for (const auto &c : p.constraints)
    if (!cond_affine(*c))
      return false;
  return block_affine(p.body);
}

} // namespace famalyze
