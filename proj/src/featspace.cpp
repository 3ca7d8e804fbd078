#include "famalyze/featspace.hpp"

#include <sstream>

namespace famalyze {

feature_space space_of(const program &p) {
  feature_space sp;
  std::vector<std::string> names;
  names.reserve(p.features.size());
  for (const auto &f : p.features) {
    names.push_back(f.name);
    sp.dom.emplace_back(f.lo, f.hi);
  }
  sp.feats = var_universe(std::move(names));
  sp.global_constraints = p.constraints;
  return sp;
}

namespace {

int_t eval_expr(const feature_space &sp, const config &k, const expr &e) {
  switch (e.k) {
  case expr::kind::num:
    return e.lo;
  case expr::kind::ivl:
    // excluded from feature expressions by the frontend
    throw std::logic_error("interval literal in feature expression");
  case expr::kind::var: {
    int i = sp.feats.index_of(e.name);
    if (i < 0)
      throw std::logic_error("unknown feature '" + e.name + "'");
    return k.val[static_cast<size_t>(i)];
  }
  case expr::kind::bin: {
    int_t a = eval_expr(sp, k, *e.a);
    int_t b = eval_expr(sp, k, *e.b);
    switch (e.op) {
    case binop::add: return a + b;
    case binop::sub: return a - b;
    case binop::mul: return a * b;
    }
    break;
  }
  case expr::kind::neg:
    return -eval_expr(sp, k, *e.a);
  }
  throw std::logic_error("bad expression");
}

} // namespace

bool sat(const feature_space &sp, const config &k, const cond &theta) {
  switch (theta.k) {
  case cond::kind::tt:
    return true;
  case cond::kind::cmp: {
    int_t a = eval_expr(sp, k, *theta.a);
    int_t b = eval_expr(sp, k, *theta.b);
    switch (theta.op) {
    case cmpop::eq: return a == b;
    case cmpop::ne: return a != b;
    case cmpop::lt: return a < b;
    case cmpop::le: return a <= b;
    case cmpop::gt: return a > b;
    case cmpop::ge: return a >= b;
    }
    return false;
  }
  case cond::kind::lnot:
    return !sat(sp, k, *theta.c1);
  case cond::kind::land:
    return sat(sp, k, *theta.c1) && sat(sp, k, *theta.c2);
  case cond::kind::lor:
    return sat(sp, k, *theta.c1) || sat(sp, k, *theta.c2);
  }
  return false;
}

int_t domain_product(const feature_space &sp) {
  int_t total = 1;
  for (const auto &[lo, hi] : sp.dom)
    total *= hi - lo + 1;
  return total;
}

std::vector<config> enumerate(const feature_space &sp, std::size_t cap) {
  int_t total = domain_product(sp);
  if (total > static_cast<unsigned long>(cap))
    throw cap_exceeded("configuration space of size " + total.get_str() +
                           " exceeds the enumeration cap of " + std::to_string(cap),
                       total.get_str());
  int n = sp.feats.size();
  std::vector<config> out;
  config cur;
  cur.val.resize(static_cast<size_t>(n));
  // recursive product in feature order; [0,1] domains iterate 1 then 0
  auto rec = [&](auto &&self, int i) -> void {
    if (i == n) {
      for (const auto &gc : sp.global_constraints)
        if (!sat(sp, cur, *gc))
          return;
      out.push_back(cur);
      return;
    }
    auto [lo, hi] = sp.dom[static_cast<size_t>(i)];
    if (sp.is_bool(i)) {
      cur.val[static_cast<size_t>(i)] = 1;
      self(self, i + 1);
      cur.val[static_cast<size_t>(i)] = 0;
      self(self, i + 1);
      return;
    }
    for (int_t v = lo; v <= hi; ++v) {
      cur.val[static_cast<size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<config> models(const feature_space &sp, const cond &theta, std::size_t cap) {
  std::vector<config> out;
  for (auto &k : enumerate(sp, cap))
    if (sat(sp, k, theta))
      out.push_back(std::move(k));
  return out;
}

std::string describe(const feature_space &sp, const config &k) {
  if (sp.feats.size() == 0)
    return "true";
  std::ostringstream os;
  for (int i = 0; i < sp.feats.size(); ++i) {
    if (i)
      os << " && ";
    const int_t &v = k.val[static_cast<size_t>(i)];
    if (sp.is_bool(i))
      os << (v == 1 ? "" : "!") << sp.feats.name(i);
    else
      os << sp.feats.name(i) << "=" << v.get_str();
  }
  return os.str();
}

namespace {

block project_block(const block &b, const feature_space &sp, const config &k);

stmt_ptr project_stmt(const stmt &s, const feature_space &sp, const config &k) {
  auto out = std::make_shared<stmt>(s);
  switch (s.k) {
  case stmt::kind::ifdef: {
    // the chosen arm replaces the #if; the #if's label moves onto the block
    out->k = stmt::kind::nested;
    out->c = nullptr;
    bool taken = sat(sp, k, *s.c);
    out->then_b = project_block(taken ? s.then_b : s.else_b, sp, k);
    out->else_b = block{};
    return out;
  }
  case stmt::kind::ifelse:
    out->then_b = project_block(s.then_b, sp, k);
    out->else_b = project_block(s.else_b, sp, k);
    return out;
  case stmt::kind::wloop:
  case stmt::kind::nested:
    out->then_b = project_block(s.then_b, sp, k);
    return out;
  default:
    return out;
  }
}

block project_block(const block &b, const feature_space &sp, const config &k) {
  block out;
  out.exit_label = b.exit_label;
  for (const auto &s : b.stmts)
    out.stmts.push_back(project_stmt(*s, sp, k));
  return out;
}

} // namespace

program project(const program &p, const feature_space &sp, const config &k) {
  program out;
  out.features = p.features; // kept but unused by the variant body
  out.body = project_block(p.body, sp, k);
  out.variables = p.variables;
  out.num_labels = p.num_labels;
  return out;
}

} // namespace famalyze
