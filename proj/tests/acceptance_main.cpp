// Acceptance suite: end-to-end checks of the analyzer against its pinned
// reference results, one printed line per criterion.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "famalyze/gen.hpp"
#include "prop_suites.hpp"

using namespace famalyze;
using namespace famalyze::testing;

namespace {

int failures = 0;

void report(int number, const std::string &what, bool ok, const std::string &detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << what;
  if (!ok && !detail.empty())
    std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok)
    ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixture(const std::string &name) {
  return std::string(FAMALYZE_FIXTURE_DIR) + "/" + name;
}

program parse_file(const std::string &path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

abstract_elem xy_point(domain_kind k, long x, long y) {
  var_universe u({"x", "y"});
  std::vector<lin_constraint> cs;
  auto bound = [&](int v, long val) {
    lin_expr lo, hi;
    lo.add_term(v, 1);
    lo.cst = -val;
    hi.add_term(v, -1);
    hi.cst = val;
    cs.push_back(canonicalize(std::move(lo)));
    cs.push_back(canonicalize(std::move(hi)));
  };
  bound(0, x);
  bound(1, y);
  return abstract_elem::from_constraints(k, u, cs, false);
}

std::multiset<std::string> leaf_signatures(const dtree_ptr &t) {
  std::multiset<std::string> out;
  auto rec = [&](auto &&self, const dtree_ptr &n) -> void {
    if (n->is_leaf()) {
      out.insert(n->leaf.render());
      return;
    }
    self(self, n->l);
    self(self, n->r);
  };
  rec(rec, t);
  return out;
}

// ---- criterion 1: SIMPLE end-to-end, decision trees --------------------------

void criterion_1() {
  program p = parse_file(fixture("simple.fam"));
  analysis_options opts; // tree, polyhedra leaves, interval nodes
  auto t0 = std::chrono::steady_clock::now();
  invariant_map inv = analyze(p, opts);
  double dt = seconds_since(t0);
  bool ok = inv.num_labels == 7;
  std::string detail;
  const auto &t = std::get<dtree_ptr>(inv.at(7));
  feature_space sp = space_of(p);
  auto ks = enumerate(sp, 100);
  for (size_t ki = 0; ki < ks.size() && ok; ++ki) {
    long y = ki < 3 ? 10 : ki == 3 ? -10 : 0;
    if (!equiv(gamma_tree_one(t, ks[ki]), xy_point(domain_kind::polyhedra, 0, y))) {
      ok = false;
      detail = "gamma mismatch at " + describe(sp, ks[ki]);
    }
  }
  // exact leaf constraint sets: the three expected value sets, nothing else
  std::multiset<std::string> expect = {xy_point(domain_kind::polyhedra, 0, 10).render(),
                                       xy_point(domain_kind::polyhedra, 0, -10).render(),
                                       xy_point(domain_kind::polyhedra, 0, 0).render()};
  if (ok && leaf_signatures(t) != expect) {
    ok = false;
    detail = "leaf constraint sets differ";
  }
  if (ok && dt >= 1.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s";
  }
  report(1, "SIMPLE end-to-end decision tree at the final location", ok, detail);
}

// ---- criterion 2: SIMPLE tuple baseline ---------------------------------------

void criterion_2() {
  program p = parse_file(fixture("simple.fam"));
  analysis_options opts;
  opts.backend = backend_kind::tuple;
  opts.leaf_domain = domain_kind::polyhedra;
  auto t0 = std::chrono::steady_clock::now();
  invariant_map inv = analyze(p, opts);
  double dt = seconds_since(t0);
  bool ok = true;
  std::string detail;
  const auto &st = std::get<tuple_state>(inv.at(7));
  if (st.elems.size() != 8) {
    ok = false;
    detail = "expected 8 components";
  }
  for (size_t i = 0; ok && i < 8; ++i) {
    long y = i < 3 ? 10 : i == 3 ? -10 : 0;
    if (!equiv(st.elems[i], xy_point(domain_kind::polyhedra, 0, y))) {
      ok = false;
      detail = "component " + std::to_string(i) + " differs";
    }
  }
  if (ok) {
    const auto &parts = inv.asserts.at(7);
    for (size_t i = 0; i < 8; ++i) {
      verdict_kind expect = i < 3 ? verdict_kind::valid : verdict_kind::violated;
      if (parts[i].verdict != expect) {
        ok = false;
        detail = "verdict differs on " + parts[i].cond_text;
      }
    }
  }
  if (ok && dt >= 1.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s";
  }
  report(2, "SIMPLE tuple baseline with polyhedra, verdicts 3 valid / 5 violated", ok,
         detail);
}

// ---- criterion 3: algebraic micro-checks ---------------------------------------

void criterion_3() {
  bool ok = true;
  std::string detail;

  // negation: not (A - 3 >= 0) = -A + 2 >= 0
  var_universe ua({"A"});
  lin_expr a3e;
  a3e.add_term(0, 1);
  a3e.cst = -3;
  lin_constraint a3 = canonicalize(std::move(a3e));
  if (render(negate(a3), ua) != "-A+2>=0" || !(negate(negate(a3)) == a3)) {
    ok = false;
    detail = "negation law";
  }

  // unification and the leaf-wise order/join on the worked trees
  program host = parse("#feature SIZE in [1,4]\nint y := 0;");
  feature_space sp = space_of(host);
  tree_ctx ctx = make_tree_ctx(sp, domain_kind::interval);
  var_universe uy({"y"});
  auto iv = [&](std::optional<long> lo, std::optional<long> hi) {
    std::vector<lin_constraint> cs;
    if (lo) {
      lin_expr e;
      e.add_term(0, 1);
      e.cst = -*lo;
      cs.push_back(canonicalize(std::move(e)));
    }
    if (hi) {
      lin_expr e;
      e.add_term(0, -1);
      e.cst = *hi;
      cs.push_back(canonicalize(std::move(e)));
    }
    return abstract_elem::from_constraints(domain_kind::interval, uy, cs, false);
  };
  auto size_ge = [&](long c) {
    lin_expr e;
    e.add_term(0, 1);
    e.cst = -c;
    return canonicalize(std::move(e));
  };
  dtree_ptr t1 =
      make_node(size_ge(4), make_leaf(iv(2, {})), make_leaf(iv(0, 0)));
  dtree_ptr t2 =
      make_node(size_ge(2), make_leaf(iv(0, {})), make_leaf(iv({}, 0)));
  auto [u1, u2] = unify(t1, t2, ctx);
  auto expect_u1 = make_node(size_ge(4), make_leaf(iv(2, {})),
                             make_node(size_ge(2), make_leaf(iv(0, 0)),
                                       make_leaf(iv(0, 0))));
  auto expect_u2 = make_node(size_ge(4), make_leaf(iv(0, {})),
                             make_node(size_ge(2), make_leaf(iv(0, {})),
                                       make_leaf(iv({}, 0))));
  if (ok && (!tree_equal(u1, expect_u1) || !tree_equal(u2, expect_u2))) {
    ok = false;
    detail = "unification shape";
  }
  if (ok && (!tree_leq(t1, t2, ctx) || tree_leq(t2, t1, ctx))) {
    ok = false;
    detail = "tree ordering";
  }
  if (ok && !tree_equal(tree_join(t1, t2, ctx), expect_u2)) {
    ok = false;
    detail = "tree join";
  }

  // the step-function family ends in exactly the two-leaf tree
  if (ok) {
    program p = parse_file(fixture("stepfun.fam"));
    analysis_options opts;
    opts.leaf_domain = domain_kind::interval;
    invariant_map inv = analyze(p, opts);
    const auto &t = std::get<dtree_ptr>(inv.at(inv.num_labels));
    feature_space spf = space_of(p);
    var_universe ux({"x"});
    auto pt = [&](long v) {
      lin_expr lo, hi;
      lo.add_term(0, 1);
      lo.cst = -v;
      hi.add_term(0, -1);
      hi.cst = v;
      return abstract_elem::from_constraints(
          domain_kind::interval, ux,
          {canonicalize(std::move(lo)), canonicalize(std::move(hi))}, false);
    };
    bool shape = !t->is_leaf() && render(t->c, spf.feats) == "SIZE-3>=0" &&
                 t->l->is_leaf() && t->r->is_leaf() && equiv(t->l->leaf, pt(-1)) &&
                 equiv(t->r->leaf, pt(1));
    if (!shape) {
      ok = false;
      detail = "step-function tree differs";
    }
  }
  report(3, "micro-checks: negation, unification, order/join, inferred split",
         ok, detail);
}

// ---- criterion 4: nonlinear soundness window ----------------------------------

void criterion_4() {
  program p = parse_file(fixture("nonlinear.fam"));
  analysis_options opts;
  opts.leaf_domain = domain_kind::interval;
  invariant_map inv = analyze(p, opts);
  oracle_result oracle = analyze_brute(p, opts);
  bool ok = true;
  std::string detail;
  const auto &t = std::get<dtree_ptr>(inv.at(3));
  var_universe ux({"x"});
  auto between = [&](long lo, long hi) {
    lin_expr a, b;
    a.add_term(0, 1);
    a.cst = -lo;
    b.add_term(0, -1);
    b.cst = hi;
    return abstract_elem::from_constraints(
        domain_kind::interval, ux,
        {canonicalize(std::move(a)), canonicalize(std::move(b))}, false);
  };
  for (size_t ki = 0; ki < oracle.configs.size(); ++ki) {
    const config &k = oracle.configs[ki];
    const abstract_elem &got = gamma_tree_one(t, k);
    const abstract_elem &brute = oracle.per_config[ki].at(3);
    if (!leq(brute, got)) {
      ok = false;
      detail = "not above the per-variant result at " + describe(*oracle.space, k);
      break;
    }
    bool small = k.val[0] <= 2;
    abstract_elem precise = small ? between(1, 1) : between(-1, -1);
    abstract_elem coarse = small ? between(1, 1) : between(-1, 1);
    if (!leq(precise, got) || !leq(got, coarse)) {
      ok = false;
      detail = "outside the precision window at " + describe(*oracle.space, k);
      break;
    }
  }
  report(4, "nonlinear presence condition bounded between the precise and coarse trees",
         ok, detail);
}

// ---- criterion 5: equivalence with the tuple result ---------------------------

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  rng_t rng(987654);
  int affine_count = 200, nonlinear_count = 60;
  for (int round = 0; round < affine_count && ok; ++round) {
    progen gen(rng, progen_opts{});
    std::string src = gen.generate();
    program p = parse(src);
    analysis_options opts;
    opts.leaf_domain = round % 2 ? domain_kind::interval : domain_kind::polyhedra;
    opts.node_domain = domain_kind::polyhedra;
    opts.backend = backend_kind::tree;
    invariant_map tre = analyze(p, opts);
    opts.backend = backend_kind::tuple;
    invariant_map tup = analyze(p, opts);
    feature_space sp = space_of(p);
    auto ks = enumerate(sp, opts.enum_cap);
    for (int label = 1; label <= p.num_labels && ok; ++label) {
      const auto &dt = std::get<dtree_ptr>(tre.at(label));
      const auto &ts = std::get<tuple_state>(tup.at(label));
      for (size_t ki = 0; ki < ks.size(); ++ki) {
        if (!equiv(gamma_tree_one(dt, ks[ki]), ts.elems[ki])) {
          ok = false;
          detail = "program " + std::to_string(round) + " label " +
                   std::to_string(label) + " config " + describe(sp, ks[ki]);
          break;
        }
      }
    }
  }
  for (int round = 0; round < nonlinear_count && ok; ++round) {
    progen gen(rng, progen_opts{.nonlinear_atoms = true});
    program p = parse(gen.generate());
    analysis_options opts;
    opts.leaf_domain = domain_kind::interval;
    opts.backend = backend_kind::tree;
    invariant_map tre = analyze(p, opts);
    oracle_result oracle = analyze_brute(p, opts);
    compare_report rep = compare(tre, oracle);
    if (rep.n_unsound != 0) {
      ok = false;
      detail = "UNSOUND cell in nonlinear program " + std::to_string(round);
    }
  }
  double dt = seconds_since(t0);
  if (ok && dt >= 300.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s";
  }
  report(5,
         "tree/tuple equivalence on 200 affine families; soundness on nonlinear ones",
         ok, detail);
}

// ---- criterion 6: scalability family structure --------------------------------

void criterion_6() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 8 && ok; ++n) {
    for (int k : {3, 5, 7}) {
      program p = parse(gen_test(n, k));
      analysis_options opts;
      invariant_map inv = analyze(p, opts);
      const auto &t = std::get<dtree_ptr>(inv.at(inv.num_labels));
      if (leaf_count(t) != n + 1) {
        ok = false;
        detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " has " +
                 std::to_string(leaf_count(t)) + " leaves";
        break;
      }
      // per-leaf values are exactly i = n, n-1, ..., 0
      std::multiset<std::string> got = leaf_signatures(t);
      std::multiset<std::string> expect;
      var_universe ui({"i"});
      for (int v = 0; v <= n; ++v) {
        lin_expr lo, hi;
        lo.add_term(0, 1);
        lo.cst = -v;
        hi.add_term(0, -1);
        hi.cst = v;
        expect.insert(abstract_elem::from_constraints(
                          opts.leaf_domain, ui,
                          {canonicalize(std::move(lo)), canonicalize(std::move(hi))},
                          false)
                          .render());
      }
      if (got != expect) {
        ok = false;
        detail = "leaf values differ at n=" + std::to_string(n) +
                 " k=" + std::to_string(k);
        break;
      }
      double width = std::pow(k, n);
      if (width <= 100000.0) {
        analysis_options to;
        to.backend = backend_kind::tuple;
        invariant_map tub = analyze(p, to);
        const auto &ts = std::get<tuple_state>(tub.at(inv.num_labels));
        if (ts.width() != static_cast<size_t>(width)) {
          ok = false;
          detail = "tuple width differs at n=" + std::to_string(n) +
                   " k=" + std::to_string(k);
          break;
        }
      }
    }
  }
  report(6, "test families keep n+1 leaves with counting values; tuple width is k^n",
         ok, detail);
}

// ---- criterion 7: scaling direction --------------------------------------------

double time_backend(const program &p, backend_kind b, double budget_s, bool &timed_out) {
  analysis_options opts;
  opts.backend = b;
  auto t0 = std::chrono::steady_clock::now();
  opts.deadline = t0 + std::chrono::milliseconds(static_cast<long>(budget_s * 1000));
  timed_out = false;
  try {
    analyze(p, opts);
  } catch (const timeout_error &) {
    timed_out = true;
  }
  return seconds_since(t0);
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  // n=6, k=5: the tree representation is at least five times faster
  {
    program p = parse(gen_test(6, 5));
    bool to_tu = false, to_tr = false;
    double tu = time_backend(p, backend_kind::tuple, 120, to_tu);
    double tr = time_backend(p, backend_kind::tree, 120, to_tr);
    if (to_tr || (!to_tu && tu < 5 * tr)) {
      ok = false;
      std::ostringstream os;
      os << "n=6,k=5: tuple " << tu << " s vs tree " << tr << " s";
      detail = os.str();
    }
  }
  // tree times are essentially independent of k
  if (ok) {
    double times[3];
    int i = 0;
    for (int k : {3, 5, 7}) {
      program p = parse(gen_test(6, k));
      bool to = false;
      times[i++] = time_backend(p, backend_kind::tree, 120, to);
      if (to) {
        ok = false;
        detail = "tree timed out at n=6";
      }
    }
    // guard against timer noise on very fast runs
    double lo = std::min({times[0], times[1], times[2]});
    double hi = std::max({times[0], times[1], times[2]});
    if (ok && lo > 0.005 && hi / lo >= 2.0) {
      std::ostringstream os;
      os << "tree times vary with k: " << times[0] << "/" << times[1] << "/"
         << times[2];
      detail = os.str();
      ok = false;
    }
  }
  // n=10, k=3: tuples blow up, trees stay comfortable
  if (ok) {
    program p = parse(gen_test(10, 3));
    bool to_tr = false, to_tu = false;
    double tr = time_backend(p, backend_kind::tree, 60, to_tr);
    double tu = time_backend(p, backend_kind::tuple, 60, to_tu);
    if (to_tr || tr >= 60.0) {
      ok = false;
      detail = "tree exceeded its budget at n=10";
    } else if (!to_tu && tu < 20 * tr) {
      ok = false;
      std::ostringstream os;
      os << "n=10,k=3: tuple " << tu << " s vs tree " << tr << " s";
      detail = os.str();
    }
  }
  report(7, "tree backend beats tuples 5x at (6,5), 20x or budget-out at (10,3), k-independent",
         ok, detail);
}

// ---- criterion 8: numerical domain property suites ------------------------------

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  struct {
    domain_kind k;
    int lattice, transfer, widen, round;
  } plans[] = {
      {domain_kind::interval, 400, 250, 250, 100},
      {domain_kind::octagon, 350, 250, 250, 150},
      {domain_kind::polyhedra, 350, 250, 250, 150},
  };
  for (const auto &plan : plans) {
    int done = 0;
    for (auto run : {lattice_soundness_suite(plan.k, plan.lattice, 1001),
                     transfer_soundness_suite(plan.k, plan.transfer, 1002),
                     widening_suite(plan.k, plan.widen, 1003),
                     roundtrip_suite(plan.k, plan.round, 1004),
                     narrowing_suite(plan.k, 150, 1005)}) {
      ++done;
      if (!run.ok) {
        ok = false;
        detail = std::string(to_string(plan.k)) + " suite " + std::to_string(done) +
                 ": " + run.note;
      }
    }
  }
  double dt = seconds_since(t0);
  if (ok && dt >= 120.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s";
  }
  report(8, "numerical domain property suites (1000+ randomized cases per domain)", ok,
         detail);
}

// ---- criterion 9: compression ----------------------------------------------------

void criterion_9() {
  bool ok = true;
  std::string detail;
  rng_t rng(424243);
  program host = parse("#feature F0 in [0,4]\n#feature F1 in [0,2]\n#feature F2 bool\n"
                       "int y := 0;");
  feature_space sp = space_of(host);
  var_universe vars({"y"});
  tree_ctx ctx = make_tree_ctx(sp, domain_kind::interval);
  auto ks = enumerate(sp, 100000);
  for (int i = 0; i < 500 && ok; ++i) {
    // grow a tree through real operations, then check the compressor
    dtree_ptr t = make_leaf(random_elem(rng, domain_kind::interval, vars));
    int steps = pick(rng, 1, 4);
    for (int s = 0; s < steps; ++s) {
      cond_ptr atom = cond::cmp(static_cast<cmpop>(pick(rng, 0, 5)),
                                expr::var(sp.feats.name(pick(rng, 0, 2))),
                                expr::num(pick(rng, -1, 5)));
      dtree_ptr f = tree_feat_filter(t, *atom, ctx);
      t = chance(rng, 0.5)
              ? f
              : tree_join(f, make_leaf(random_elem(rng, domain_kind::interval, vars)),
                          ctx);
    }
    dtree_ptr c = compress(t, ctx);
    for (const auto &k : ks) {
      if (!equiv(gamma_tree_one(t, k), gamma_tree_one(c, k))) {
        ok = false;
        detail = "compression changed gamma";
        break;
      }
    }
    if (ok && !tree_equal(compress(c, ctx), c)) {
      ok = false;
      detail = "compression not idempotent";
    }
    if (ok && !audit_no_redundant(c, ctx)) {
      ok = false;
      detail = "redundant constraint survived compression";
    }
  }
  report(9, "compression is gamma-preserving, idempotent, and leaves no redundancy",
         ok, detail);
}

} // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
