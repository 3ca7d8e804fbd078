#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// generators for elements, trees and programs, and a concrete set-of-states
// interpreter of the mini language used as the soundness reference.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "famalyze/engine.hpp"
#include "famalyze/parse.hpp"

namespace famalyze::testing {

using rng_t = std::mt19937;

inline int pick(rng_t &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(rng_t &rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

// ---- random abstract elements ------------------------------------------------

inline lin_constraint random_constraint(rng_t &rng, int nvars, int max_vars) {
  lin_expr e;
  int terms = pick(rng, 1, std::min(nvars, max_vars));
  std::vector<int> vars(static_cast<size_t>(nvars));
  for (int i = 0; i < nvars; ++i)
    vars[static_cast<size_t>(i)] = i;
  std::shuffle(vars.begin(), vars.end(), rng);
  for (int t = 0; t < terms; ++t) {
    int c = pick(rng, -2, 2);
    if (c == 0)
      c = 1;
    e.add_term(vars[static_cast<size_t>(t)], c);
  }
  e.cst = pick(rng, -5, 5);
  return canonicalize(std::move(e));
}

// element built from random bounds and, for relational domains, a few
// random relational constraints
inline abstract_elem random_elem(rng_t &rng, domain_kind k, const var_universe &u) {
  if (chance(rng, 0.05))
    return abstract_elem::bottom(k, u);
  std::vector<lin_constraint> cs;
  for (int i = 0; i < u.size(); ++i) {
    if (chance(rng, 0.8)) {
      int lo = pick(rng, -5, 3);
      lin_expr e;
      e.add_term(i, 1);
      e.cst = -lo;
      cs.push_back(canonicalize(std::move(e)));
    }
    if (chance(rng, 0.8)) {
      int hi = pick(rng, -3, 5);
      lin_expr e;
      e.add_term(i, -1);
      e.cst = hi;
      cs.push_back(canonicalize(std::move(e)));
    }
  }
  if (k != domain_kind::interval && u.size() >= 2) {
    int extra = pick(rng, 0, 2);
    for (int i = 0; i < extra; ++i)
      cs.push_back(random_constraint(rng, u.size(), 2));
  }
  return abstract_elem::from_constraints(k, u, cs, true);
}

// ---- random programs -----------------------------------------------------------

struct progen_opts {
  int max_features = 3;
  int max_dom_size = 5;
  int max_loops = 2;
  bool nonlinear_atoms = false; // when set: loop-free with nonlinear presence conds
  bool with_asserts = true;
};

class progen {
public:
  progen(rng_t &rng, progen_opts o) : rng_(rng), o_(o) {}

  std::string generate() {
    std::ostringstream os;
    nfeat_ = pick(rng_, 1, o_.max_features);
    for (int i = 0; i < nfeat_; ++i) {
      int lo = pick(rng_, 0, 2);
      int width = pick(rng_, 1, o_.max_dom_size) - 1;
      doms_.emplace_back(lo, lo + width);
      os << "#feature F" << i << " in [" << lo << "," << lo + width << "]\n";
    }
    nvars_ = pick(rng_, 1, 2);
    os << "int";
    for (int i = 0; i < nvars_; ++i)
      os << (i ? ", v" : " v") << i << " := " << pick(rng_, -3, 3);
    os << ";\n";
    loops_left_ = o_.nonlinear_atoms ? 0 : o_.max_loops;
    int stmts = pick(rng_, 2, 6);
    for (int i = 0; i < stmts; ++i)
      emit_stmt(os, 0, /*in_arm=*/false);
    if (o_.with_asserts && chance(rng_, 0.7))
      os << "assert (" << var(0) << " " << relop() << " " << pick(rng_, -5, 5)
         << ");\n";
    return os.str();
  }

private:
  std::string var(int i) { return "v" + std::to_string(i); }
  std::string feat(int i) { return "F" + std::to_string(i); }
  std::string relop() {
    static const char *ops[] = {"==", "!=", "<", "<=", ">", ">="};
    return ops[pick(rng_, 0, 5)];
  }

  std::string rand_expr(int depth) {
    int c = pick(rng_, 0, depth > 0 ? 3 : 4);
    switch (c) {
    case 0:
      return std::to_string(pick(rng_, -4, 4));
    case 1:
      return var(pick(rng_, 0, nvars_ - 1));
    case 2: {
      int lo = pick(rng_, -2, 2);
      return "[" + std::to_string(lo) + "," + std::to_string(lo + pick(rng_, 0, 2)) +
             "]";
    }
    case 3:
      return var(pick(rng_, 0, nvars_ - 1)) + (chance(rng_, 0.5) ? " + " : " - ") +
             std::to_string(pick(rng_, 0, 3));
    default:
      return std::to_string(pick(rng_, 1, 2)) + " * " + var(pick(rng_, 0, nvars_ - 1)) +
             " + " + rand_expr(depth + 1);
    }
  }

  std::string feat_atom() {
    if (o_.nonlinear_atoms && chance(rng_, 0.5)) {
      int f = pick(rng_, 0, nfeat_ - 1);
      int g = pick(rng_, 0, nfeat_ - 1);
      return feat(f) + " * " + feat(g) + " " + relop() + " " +
             std::to_string(pick(rng_, 0, 8));
    }
    int f = pick(rng_, 0, nfeat_ - 1);
    std::string lhs = feat(f);
    if (nfeat_ > 1 && chance(rng_, 0.4)) {
      int g = pick(rng_, 0, nfeat_ - 1);
      lhs += std::string(chance(rng_, 0.5) ? " + " : " - ") + feat(g);
    }
    return lhs + " " + relop() + " " + std::to_string(pick(rng_, -1, 5));
  }

  std::string feat_expr(int depth) {
    if (depth > 1 || chance(rng_, 0.5))
      return feat_atom();
    int c = pick(rng_, 0, 2);
    if (c == 0)
      return "(" + feat_expr(depth + 1) + ") && (" + feat_expr(depth + 1) + ")";
    if (c == 1)
      return "(" + feat_expr(depth + 1) + ") || (" + feat_expr(depth + 1) + ")";
    return "!(" + feat_expr(depth + 1) + ")";
  }

  std::string var_cond() {
    return var(pick(rng_, 0, nvars_ - 1)) + " " + relop() + " " +
           std::to_string(pick(rng_, -3, 3));
  }

  void emit_stmt(std::ostringstream &os, int depth, bool in_arm) {
    std::string pad(static_cast<size_t>(depth) * 2, ' ');
    int kind = pick(rng_, 0, 9);
    if (kind <= 3 || depth >= 2) {
      os << pad << var(pick(rng_, 0, nvars_ - 1)) << " := " << rand_expr(0) << ";\n";
      return;
    }
    if (kind <= 5) {
      os << pad << "#if (" << feat_expr(0) << ")\n";
      os << pad << "  " << var(pick(rng_, 0, nvars_ - 1)) << " := " << rand_expr(1)
         << ";\n";
      if (chance(rng_, 0.6)) {
        os << pad << "#else\n";
        os << pad << "  " << var(pick(rng_, 0, nvars_ - 1)) << " := " << rand_expr(1)
           << ";\n";
      }
      os << pad << "#endif\n";
      return;
    }
    if (kind <= 7) {
      os << pad << "if (" << var_cond() << ") {\n";
      emit_stmt(os, depth + 1, in_arm);
      os << pad << "} else {\n";
      emit_stmt(os, depth + 1, in_arm);
      os << pad << "}\n";
      return;
    }
    if (loops_left_ > 0 && !in_arm) {
      --loops_left_;
      int v = pick(rng_, 0, nvars_ - 1);
      int bound = pick(rng_, 1, 6);
      os << pad << "while (" << var(v) << " < " << bound << ") {\n";
      os << pad << "  " << var(v) << " := " << var(v) << " + " << pick(rng_, 1, 2)
         << ";\n";
      if (chance(rng_, 0.5))
        emit_stmt(os, depth + 1, in_arm);
      os << pad << "}\n";
      return;
    }
    os << pad << "skip;\n";
  }

  rng_t &rng_;
  progen_opts o_;
  int nfeat_ = 0, nvars_ = 0, loops_left_ = 0;
  std::vector<std::pair<int, int>> doms_;
};

// ---- concrete reference interpreter -------------------------------------------

// Exhaustive set-of-states execution of one variant; interval literals fan
// out, loops iterate to a reachability fixpoint. Overflowing the caps marks
// the run inconclusive rather than wrong.
class concrete_interp {
public:
  concrete_interp(const program &p, const feature_space &sp, const config &k)
      : p_(p), sp_(sp), k_(k) {
    for (size_t i = 0; i < p.variables.size(); ++i)
      var_index_[p.variables[i]] = static_cast<int>(i);
  }

  bool run() {
    states init;
    init.insert(std::vector<long>(p_.variables.size(), 0)); // decls re-havoc
    run_block(p_.body, std::move(init));
    return !overflow_;
  }

  const std::map<int, std::set<std::vector<long>>> &reached() const { return at_label_; }
  // label -> did some reachable state violate the assert condition
  const std::map<int, bool> &assert_violations() const { return violated_; }

private:
  using state_t = std::vector<long>;
  using states = std::set<state_t>;

  std::set<long> eval(const expr &e, const state_t &s) {
    switch (e.k) {
    case expr::kind::num:
      return {e.lo.get_si()};
    case expr::kind::ivl: {
      std::set<long> out;
      for (long v = e.lo.get_si(); v <= e.hi.get_si(); ++v) {
        out.insert(v);
        if (out.size() > 16) {
          overflow_ = true;
          break;
        }
      }
      return out;
    }
    case expr::kind::var:
      return {s[static_cast<size_t>(var_index_.at(e.name))]};
    case expr::kind::neg: {
      std::set<long> out;
      for (long v : eval(*e.a, s))
        out.insert(-v);
      return out;
    }
    case expr::kind::bin: {
      std::set<long> out;
      for (long a : eval(*e.a, s))
        for (long b : eval(*e.b, s)) {
          long v = e.op == binop::add ? a + b : e.op == binop::sub ? a - b : a * b;
          if (v > value_cap_ || v < -value_cap_)
            overflow_ = true;
          out.insert(v);
          if (out.size() > 64) {
            overflow_ = true;
            return out;
          }
        }
      return out;
    }
    }
    return {};
  }

  bool truth(const cond &c, const state_t &s) {
    switch (c.k) {
    case cond::kind::tt:
      return true;
    case cond::kind::lnot:
      return !truth(*c.c1, s);
    case cond::kind::land:
      return truth(*c.c1, s) && truth(*c.c2, s);
    case cond::kind::lor:
      return truth(*c.c1, s) || truth(*c.c2, s);
    case cond::kind::cmp: {
      // conditions are deterministic (no interval literals)
      long a = *eval(*c.a, s).begin();
      long b = *eval(*c.b, s).begin();
      switch (c.op) {
      case cmpop::eq: return a == b;
      case cmpop::ne: return a != b;
      case cmpop::lt: return a < b;
      case cmpop::le: return a <= b;
      case cmpop::gt: return a > b;
      case cmpop::ge: return a >= b;
      }
      return false;
    }
    }
    return false;
  }

  void note(int label, const states &ss) {
    if (label > 0)
      at_label_[label].insert(ss.begin(), ss.end());
  }

  states run_block(const block &b, states in) {
    for (const auto &st : b.stmts)
      in = run_stmt(*st, std::move(in));
    if (b.exit_label)
      note(b.exit_label, in);
    return in;
  }

  states run_stmt(const stmt &s, states in) {
    if (overflow_ || in.size() > state_cap_) {
      overflow_ = true;
      return in;
    }
    note(s.label, in);
    switch (s.k) {
    case stmt::kind::skip:
      return in;
    case stmt::kind::decl: {
      states cur = std::move(in);
      for (const auto &d : s.decls) {
        if (!d.init) // uninitialized: keep 0 as the sample value
          continue;
        cur = apply_assign(cur, d.name, *d.init);
      }
      return cur;
    }
    case stmt::kind::assign:
      return apply_assign(in, s.lhs, *s.rhs);
    case stmt::kind::check: {
      bool bad = false;
      for (const auto &st : in)
        if (!truth(*s.c, st))
          bad = true;
      violated_[s.label] = violated_[s.label] || bad;
      return in;
    }
    case stmt::kind::nested:
      return run_block(s.then_b, std::move(in));
    case stmt::kind::ifelse: {
      states t, e;
      for (const auto &st : in)
        (truth(*s.c, st) ? t : e).insert(st);
      states a = run_block(s.then_b, std::move(t));
      states b = run_block(s.else_b, std::move(e));
      a.insert(b.begin(), b.end());
      return a;
    }
    case stmt::kind::ifdef: {
      bool taken = sat(sp_, k_, *s.c);
      return run_block(taken ? s.then_b : s.else_b, std::move(in));
    }
    case stmt::kind::wloop: {
      states head = in;
      states frontier = std::move(in);
      int guard = 0;
      while (!frontier.empty()) {
        if (++guard > 300 || head.size() > state_cap_) {
          overflow_ = true;
          break;
        }
        note(s.label, frontier);
        states body_in;
        for (const auto &st : frontier)
          if (truth(*s.c, st))
            body_in.insert(st);
        states out = run_block(s.then_b, std::move(body_in));
        frontier.clear();
        for (const auto &st : out)
          if (head.insert(st).second)
            frontier.insert(st);
      }
      states exit;
      for (const auto &st : head)
        if (!truth(*s.c, st))
          exit.insert(st);
      return exit;
    }
    }
    return {};
  }

  states apply_assign(const states &in, const std::string &name, const expr &e) {
    states out;
    int idx = var_index_.at(name);
    for (const auto &st : in) {
      for (long v : eval(e, st)) {
        state_t t = st;
        t[static_cast<size_t>(idx)] = v;
        out.insert(std::move(t));
        if (out.size() > state_cap_) {
          overflow_ = true;
          return out;
        }
      }
    }
    return out;
  }

  const program &p_;
  const feature_space &sp_;
  const config &k_;
  std::map<std::string, int> var_index_;
  std::map<int, std::set<std::vector<long>>> at_label_;
  std::map<int, bool> violated_;
  bool overflow_ = false;
  size_t state_cap_ = 4000;
  long value_cap_ = 1000000;
};

} // namespace famalyze::testing
