#include "famalyze/ast.hpp"

#include <sstream>

namespace famalyze {

expr_ptr expr::num(int_t v, source_pos p) {
  auto e = std::make_shared<expr>();
  e->k = kind::num;
  e->lo = v;
  e->hi = std::move(v);
  e->pos = p;
  return e;
}

expr_ptr expr::ivl(int_t lo, int_t hi, source_pos p) {
  auto e = std::make_shared<expr>();
  e->k = kind::ivl;
  e->lo = std::move(lo);
  e->hi = std::move(hi);
  e->pos = p;
  return e;
}

expr_ptr expr::var(std::string n, source_pos p) {
  auto e = std::make_shared<expr>();
  e->k = kind::var;
  e->name = std::move(n);
  e->pos = p;
  return e;
}

expr_ptr expr::bin(binop op, expr_ptr a, expr_ptr b, source_pos p) {
  auto e = std::make_shared<expr>();
  e->k = kind::bin;
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  e->pos = p;
  return e;
}

expr_ptr expr::neg(expr_ptr a, source_pos p) {
  auto e = std::make_shared<expr>();
  e->k = kind::neg;
  e->a = std::move(a);
  e->pos = p;
  return e;
}

cond_ptr cond::tt(source_pos p) {
  auto c = std::make_shared<cond>();
  c->k = kind::tt;
  c->pos = p;
  return c;
}

cond_ptr cond::cmp(cmpop op, expr_ptr a, expr_ptr b, source_pos p) {
  auto c = std::make_shared<cond>();
  c->k = kind::cmp;
  c->op = op;
  c->a = std::move(a);
  c->b = std::move(b);
  c->pos = p;
  return c;
}

cond_ptr cond::lnot(cond_ptr inner, source_pos p) {
  auto c = std::make_shared<cond>();
  c->k = kind::lnot;
  c->c1 = std::move(inner);
  c->pos = p;
  return c;
}

cond_ptr cond::land(cond_ptr a, cond_ptr b, source_pos p) {
  auto c = std::make_shared<cond>();
  c->k = kind::land;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  c->pos = p;
  return c;
}

cond_ptr cond::lor(cond_ptr a, cond_ptr b, source_pos p) {
  auto c = std::make_shared<cond>();
  c->k = kind::lor;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  c->pos = p;
  return c;
}

namespace {

void label_block(block &b, bool in_arm, int &next);

void label_stmt(stmt &s, bool in_arm, int &next) {
  s.label = 0;
  if (!in_arm || s.k == stmt::kind::check)
    s.label = next++;
  switch (s.k) {
  case stmt::kind::ifelse:
    label_block(s.then_b, in_arm, next);
    label_block(s.else_b, in_arm, next);
    break;
  case stmt::kind::wloop: {
    label_block(s.then_b, in_arm, next);
    bool ends_in_check =
        !s.then_b.stmts.empty() && s.then_b.stmts.back()->k == stmt::kind::check;
    s.then_b.exit_label = (!in_arm && !ends_in_check) ? next++ : 0;
    break;
  }
  case stmt::kind::ifdef:
    label_block(s.then_b, true, next);
    label_block(s.else_b, true, next);
    break;
  case stmt::kind::nested:
    label_block(s.then_b, in_arm, next);
    break;
  default:
    break;
  }
}

void label_block(block &b, bool in_arm, int &next) {
  b.exit_label = 0;
  for (auto &s : b.stmts)
    label_stmt(*s, in_arm, next);
}

} // namespace

void label(program &p) {
  int next = 1;
  label_block(p.body, false, next);
  bool ends_in_check =
      !p.body.stmts.empty() && p.body.stmts.back()->k == stmt::kind::check;
  p.body.exit_label = ends_in_check ? 0 : next++;
  p.num_labels = next - 1;
}

namespace {

int prec(const expr &e) {
  switch (e.k) {
  case expr::kind::bin:
    return e.op == binop::mul ? 2 : 1;
  case expr::kind::neg:
    return 3;
  default:
    return 4;
  }
}

void print_expr(std::ostream &os, const expr &e, int parent_prec) {
  bool paren = prec(e) < parent_prec;
  if (paren)
    os << "(";
  switch (e.k) {
  case expr::kind::num:
    os << e.lo.get_str();
    break;
  case expr::kind::ivl:
    os << "[" << e.lo.get_str() << "," << e.hi.get_str() << "]";
    break;
  case expr::kind::var:
    os << e.name;
    break;
  case expr::kind::bin: {
    int p = prec(e);
    const char *op = e.op == binop::add ? " + " : e.op == binop::sub ? " - " : " * ";
    print_expr(os, *e.a, p);
    os << op;
    // left-associative: right child needs strictly higher precedence
    print_expr(os, *e.b, p + 1);
    break;
  }
  case expr::kind::neg:
    os << "-";
    print_expr(os, *e.a, prec(e));
    break;
  }
  if (paren)
    os << ")";
}

const char *cmp_text(cmpop op) {
  switch (op) {
  case cmpop::eq: return "==";
  case cmpop::ne: return "!=";
  case cmpop::lt: return "<";
  case cmpop::le: return "<=";
  case cmpop::gt: return ">";
  case cmpop::ge: return ">=";
  }
  return "?";
}

int cprec(const cond &c) {
  switch (c.k) {
  case cond::kind::lor: return 1;
  case cond::kind::land: return 2;
  case cond::kind::lnot: return 3;
  default: return 4;
  }
}

void print_cond(std::ostream &os, const cond &c, int parent_prec) {
  bool paren = cprec(c) < parent_prec;
  if (paren)
    os << "(";
  switch (c.k) {
  case cond::kind::tt:
    os << "true";
    break;
  case cond::kind::cmp:
    print_expr(os, *c.a, 1);
    os << " " << cmp_text(c.op) << " ";
    print_expr(os, *c.b, 1);
    break;
  case cond::kind::lnot:
    os << "!";
    if (c.c1->k == cond::kind::cmp) {
      os << "(";
      print_cond(os, *c.c1, 0);
      os << ")";
    } else {
      print_cond(os, *c.c1, cprec(c));
    }
    break;
  case cond::kind::land:
    print_cond(os, *c.c1, cprec(c));
    os << " && ";
    print_cond(os, *c.c2, cprec(c) + 1);
    break;
  case cond::kind::lor:
    print_cond(os, *c.c1, cprec(c));
    os << " || ";
    print_cond(os, *c.c2, cprec(c) + 1);
    break;
  }
  if (paren)
    os << ")";
}

void print_block(std::ostream &os, const block &b, int indent);

void print_stmt(std::ostream &os, const stmt &s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  os << pad;
  switch (s.k) {
  case stmt::kind::skip:
    os << "skip;\n";
    break;
  case stmt::kind::decl: {
    os << "int ";
    bool first = true;
    for (const auto &d : s.decls) {
      if (!first)
        os << ", ";
      os << d.name;
      if (d.init) {
        os << " := ";
        print_expr(os, *d.init, 0);
      }
      first = false;
    }
    os << ";\n";
    break;
  }
  case stmt::kind::assign:
    os << s.lhs << " := ";
    print_expr(os, *s.rhs, 0);
    os << ";\n";
    break;
  case stmt::kind::ifelse:
    os << "if (";
    print_cond(os, *s.c, 0);
    os << ") {\n";
    print_block(os, s.then_b, indent + 1);
    os << pad << "}";
    if (!s.else_b.stmts.empty()) {
      os << " else {\n";
      print_block(os, s.else_b, indent + 1);
      os << pad << "}";
    }
    os << "\n";
    break;
  case stmt::kind::wloop:
    os << "while (";
    print_cond(os, *s.c, 0);
    os << ") {\n";
    print_block(os, s.then_b, indent + 1);
    os << pad << "}\n";
    break;
  case stmt::kind::ifdef:
    os << "#if (";
    print_cond(os, *s.c, 0);
    os << ")\n";
    print_block(os, s.then_b, indent + 1);
    os << pad << "#else\n";
    print_block(os, s.else_b, indent + 1);
    os << pad << "#endif\n";
    break;
  case stmt::kind::check:
    os << "assert (";
    print_cond(os, *s.c, 0);
    os << ");\n";
    break;
  case stmt::kind::nested:
    os << "{\n";
    print_block(os, s.then_b, indent + 1);
    os << pad << "}\n";
    break;
  }
}

void print_block(std::ostream &os, const block &b, int indent) {
  for (const auto &s : b.stmts)
    print_stmt(os, *s, indent);
}

} // namespace

std::string pretty(const program &p) {
  std::ostringstream os;
  for (const auto &f : p.features) {
    os << "#feature " << f.name;
    if (f.lo == 0 && f.hi == 1)
      os << " bool\n";
    else
      os << " in [" << f.lo.get_str() << "," << f.hi.get_str() << "]\n";
  }
  for (const auto &c : p.constraints) {
    os << "#constraint ";
    print_cond(os, *c, 0);
    os << "\n";
  }
  print_block(os, p.body, 0);
  return os.str();
}

bool equal(const expr &a, const expr &b) {
  if (a.k != b.k)
    return false;
  switch (a.k) {
  case expr::kind::num:
    return a.lo == b.lo;
  case expr::kind::ivl:
    return a.lo == b.lo && a.hi == b.hi;
  case expr::kind::var:
    return a.name == b.name;
  case expr::kind::bin:
    return a.op == b.op && equal(*a.a, *b.a) && equal(*a.b, *b.b);
  case expr::kind::neg:
    return equal(*a.a, *b.a);
  }
  return false;
}

bool equal(const cond &a, const cond &b) {
  if (a.k != b.k)
    return false;
  switch (a.k) {
  case cond::kind::tt:
    return true;
  case cond::kind::cmp:
    return a.op == b.op && equal(*a.a, *b.a) && equal(*a.b, *b.b);
  case cond::kind::lnot:
    return equal(*a.c1, *b.c1);
  case cond::kind::land:
  case cond::kind::lor:
    return equal(*a.c1, *b.c1) && equal(*a.c2, *b.c2);
  }
  return false;
}

namespace {

bool equal_block(const block &a, const block &b);

bool equal_stmt(const stmt &a, const stmt &b) {
  if (a.k != b.k || a.label != b.label)
    return false;
  switch (a.k) {
  case stmt::kind::skip:
    return true;
  case stmt::kind::decl: {
    if (a.decls.size() != b.decls.size())
      return false;
    for (size_t i = 0; i < a.decls.size(); ++i) {
      if (a.decls[i].name != b.decls[i].name)
        return false;
      if (!a.decls[i].init != !b.decls[i].init)
        return false;
      if (a.decls[i].init && !equal(*a.decls[i].init, *b.decls[i].init))
        return false;
    }
    return true;
  }
  case stmt::kind::assign:
    return a.lhs == b.lhs && equal(*a.rhs, *b.rhs);
  case stmt::kind::ifelse:
    return equal(*a.c, *b.c) && equal_block(a.then_b, b.then_b) &&
           equal_block(a.else_b, b.else_b);
  case stmt::kind::wloop:
    return equal(*a.c, *b.c) && equal_block(a.then_b, b.then_b);
  case stmt::kind::ifdef:
    return equal(*a.c, *b.c) && equal_block(a.then_b, b.then_b) &&
           equal_block(a.else_b, b.else_b);
  case stmt::kind::check:
    return equal(*a.c, *b.c);
  case stmt::kind::nested:
    return equal_block(a.then_b, b.then_b);
  }
  return false;
}

bool equal_block(const block &a, const block &b) {
  if (a.stmts.size() != b.stmts.size() || a.exit_label != b.exit_label)
    return false;
  for (size_t i = 0; i < a.stmts.size(); ++i)
    if (!equal_stmt(*a.stmts[i], *b.stmts[i]))
      return false;
  return true;
}

} // namespace

bool equal(const program &a, const program &b) {
  if (a.features.size() != b.features.size())
    return false;
  for (size_t i = 0; i < a.features.size(); ++i) {
    const auto &fa = a.features[i];
    const auto &fb = b.features[i];
    if (fa.name != fb.name || fa.lo != fb.lo || fa.hi != fb.hi)
      return false;
  }
  if (a.constraints.size() != b.constraints.size())
    return false;
  for (size_t i = 0; i < a.constraints.size(); ++i)
    if (!equal(*a.constraints[i], *b.constraints[i]))
      return false;
  return a.variables == b.variables && equal_block(a.body, b.body);
}

} // namespace famalyze
