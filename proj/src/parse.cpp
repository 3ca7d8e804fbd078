#include "famalyze/parse.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace famalyze {

namespace {

enum class tok {
  end, ident, number,
  kw_skip, kw_int, kw_if, kw_else, kw_while, kw_assert, kw_true, kw_in, kw_bool,
  d_feature, d_constraint, d_if, d_else, d_endif,
  assign, // :=
  lparen, rparen, lbrace, rbrace, lbracket, rbracket, semi, comma,
  plus, minus, star,
  eq, ne, lt, le, gt, ge, andand, oror, bang,
};

struct token {
  tok t;
  std::string text;
  int_t value;
  source_pos pos;
};

std::vector<token> tokenize(const std::string &s) {
  std::vector<token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  for (;;) {
    while (i < s.size()) {
      if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '/') {
        while (i < s.size() && s[i] != '\n')
          advance(1);
      } else if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance(1);
      } else {
        break;
      }
    }
    source_pos pos{line, col};
    if (i >= s.size()) {
      out.push_back({tok::end, "", 0, pos});
      return out;
    }
    char c = s[i];
    if (c == '#') {
      size_t j = i + 1;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])))
        ++j;
      std::string w = s.substr(i, j - i);
      advance(j - i);
      tok t;
      if (w == "#feature") t = tok::d_feature;
      else if (w == "#constraint") t = tok::d_constraint;
      else if (w == "#if") t = tok::d_if;
      else if (w == "#else") t = tok::d_else;
      else if (w == "#endif") t = tok::d_endif;
      else throw syntax_error("unknown directive '" + w + "'", pos);
      out.push_back({t, w, 0, pos});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string w = s.substr(i, j - i);
      advance(j - i);
      tok t = tok::ident;
      if (w == "skip") t = tok::kw_skip;
      else if (w == "int") t = tok::kw_int;
      else if (w == "if") t = tok::kw_if;
      else if (w == "else") t = tok::kw_else;
      else if (w == "while") t = tok::kw_while;
      else if (w == "assert") t = tok::kw_assert;
      else if (w == "true") t = tok::kw_true;
      else if (w == "in") t = tok::kw_in;
      else if (w == "bool") t = tok::kw_bool;
      out.push_back({t, w, 0, pos});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      std::string w = s.substr(i, j - i);
      advance(j - i);
      out.push_back({tok::number, w, int_t(w), pos});
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < s.size() && s[i + 1] == b;
    };
    if (two(':', '=')) { advance(2); out.push_back({tok::assign, ":=", 0, pos}); continue; }
    if (two('=', '=')) { advance(2); out.push_back({tok::eq, "==", 0, pos}); continue; }
    if (two('!', '=')) { advance(2); out.push_back({tok::ne, "!=", 0, pos}); continue; }
    if (two('<', '=')) { advance(2); out.push_back({tok::le, "<=", 0, pos}); continue; }
    if (two('>', '=')) { advance(2); out.push_back({tok::ge, ">=", 0, pos}); continue; }
    if (two('&', '&')) { advance(2); out.push_back({tok::andand, "&&", 0, pos}); continue; }
    if (two('|', '|')) { advance(2); out.push_back({tok::oror, "||", 0, pos}); continue; }
    advance(1);
    tok t;
    switch (c) {
    case '(': t = tok::lparen; break;
    case ')': t = tok::rparen; break;
    case '{': t = tok::lbrace; break;
    case '}': t = tok::rbrace; break;
    case '[': t = tok::lbracket; break;
    case ']': t = tok::rbracket; break;
    case ';': t = tok::semi; break;
    case ',': t = tok::comma; break;
    case '+': t = tok::plus; break;
    case '-': t = tok::minus; break;
    case '*': t = tok::star; break;
    case '<': t = tok::lt; break;
    case '>': t = tok::gt; break;
    case '!': t = tok::bang; break;
    case '=':
      throw syntax_error("single '=' (use '==' or ':=')", pos);
    default:
      throw syntax_error(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({t, std::string(1, c), 0, pos});
  }
}

class parser {
public:
  explicit parser(const std::string &src) : toks_(tokenize(src)) {}

  program parse_program() {
    program p;
    while (cur().t == tok::d_feature)
      p.features.push_back(parse_feature());
    for (const auto &f : p.features) {
      if (f.lo > f.hi)
        throw feature_domain_error("feature '" + f.name + "' has empty domain [" +
                                   f.lo.get_str() + "," + f.hi.get_str() + "]");
      if (!feats_.insert(f.name).second)
        throw scope_error("feature '" + f.name + "' redeclared", f.pos);
    }
    while (cur().t == tok::d_constraint) {
      eat(tok::d_constraint);
      cond_ptr c = parse_or();
      check_cond(*c, /*feature_ctx=*/true);
      p.constraints.push_back(std::move(c));
    }
    if (accept(tok::lbrace)) {
      p.body = parse_block_until(tok::rbrace);
      eat(tok::rbrace);
    } else {
      p.body = parse_block_until(tok::end);
    }
    if (cur().t != tok::end)
      fail("expected end of input");
    p.variables = var_order_;
    label(p);
    return p;
  }

private:
  std::vector<token> toks_;
  size_t pos_ = 0;
  std::set<std::string> feats_;
  std::set<std::string> vars_;
  std::vector<std::string> var_order_;

  const token &cur() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string &msg) {
    throw syntax_error(msg + " (got '" +
                           (cur().t == tok::end ? "end of input" : cur().text) + "')",
                       cur().pos);
  }

  token eat(tok t) {
    if (cur().t != t)
      fail("unexpected token");
    return toks_[pos_++];
  }

  bool accept(tok t) {
    if (cur().t != t)
      return false;
    ++pos_;
    return true;
  }

  int_t parse_int_signed() {
    bool neg = accept(tok::minus);
    if (cur().t != tok::number)
      fail("expected integer");
    int_t v = eat(tok::number).value;
    return neg ? int_t(-v) : v;
  }

  feature_decl parse_feature() {
    source_pos p = cur().pos;
    eat(tok::d_feature);
    if (cur().t != tok::ident)
      fail("expected feature name");
    std::string name = eat(tok::ident).text;
    feature_decl f{name, 0, 0, p};
    if (accept(tok::kw_bool)) {
      f.lo = 0;
      f.hi = 1;
    } else {
      if (!accept(tok::kw_in))
        fail("expected 'in' or 'bool'");
      eat(tok::lbracket);
      f.lo = parse_int_signed();
      eat(tok::comma);
      f.hi = parse_int_signed();
      eat(tok::rbracket);
    }
    return f;
  }

  bool at_block_end(tok stop) const {
    return cur().t == stop || cur().t == tok::d_else || cur().t == tok::d_endif ||
           cur().t == tok::end;
  }

  block parse_block_until(tok stop) {
    block b;
    bool decls_done = false;
    while (!at_block_end(stop)) {
      auto s = parse_stmt();
      if (s->k == stmt::kind::decl) {
        if (decls_done)
          throw syntax_error("declarations are only allowed at the top of a block",
                             s->pos);
      } else {
        decls_done = true;
      }
      b.stmts.push_back(std::move(s));
    }
    return b;
  }

  block parse_body() {
    if (accept(tok::lbrace)) {
      block b = parse_block_until(tok::rbrace);
      eat(tok::rbrace);
      return b;
    }
    block b;
    b.stmts.push_back(parse_stmt());
    return b;
  }

  stmt_ptr parse_stmt() {
    auto s = std::make_shared<stmt>();
    s->pos = cur().pos;
    switch (cur().t) {
    case tok::kw_skip:
      eat(tok::kw_skip);
      eat(tok::semi);
      s->k = stmt::kind::skip;
      return s;
    case tok::kw_int: {
      eat(tok::kw_int);
      s->k = stmt::kind::decl;
      do {
        if (cur().t != tok::ident)
          fail("expected variable name");
        token name = eat(tok::ident);
        declare_var(name);
        decl_item d{name.text, nullptr};
        if (accept(tok::assign))
          d.init = parse_expr();
        s->decls.push_back(std::move(d));
      } while (accept(tok::comma));
      eat(tok::semi);
      for (const auto &d : s->decls)
        if (d.init)
          check_expr(*d.init, /*feature_ctx=*/false, /*allow_ivl=*/true);
      return s;
    }
    case tok::kw_if: {
      eat(tok::kw_if);
      eat(tok::lparen);
      s->c = parse_or();
      eat(tok::rparen);
      check_cond(*s->c, /*feature_ctx=*/false);
      s->k = stmt::kind::ifelse;
      s->then_b = parse_body();
      if (accept(tok::kw_else))
        s->else_b = parse_body();
      return s;
    }
    case tok::kw_while: {
      eat(tok::kw_while);
      eat(tok::lparen);
      s->c = parse_or();
      eat(tok::rparen);
      check_cond(*s->c, /*feature_ctx=*/false);
      s->k = stmt::kind::wloop;
      s->then_b = parse_body();
      return s;
    }
    case tok::kw_assert: {
      eat(tok::kw_assert);
      eat(tok::lparen);
      s->c = parse_or();
      eat(tok::rparen);
      eat(tok::semi);
      check_cond(*s->c, /*feature_ctx=*/false);
      s->k = stmt::kind::check;
      return s;
    }
    case tok::d_if: {
      eat(tok::d_if);
      eat(tok::lparen);
      s->c = parse_or();
      eat(tok::rparen);
      check_cond(*s->c, /*feature_ctx=*/true);
      s->k = stmt::kind::ifdef;
      s->then_b = parse_block_until(tok::d_endif);
      if (accept(tok::d_else))
        s->else_b = parse_block_until(tok::d_endif);
      if (s->else_b.stmts.empty()) {
        // one-armed form: implicit skip
        auto sk = std::make_shared<stmt>();
        sk->k = stmt::kind::skip;
        sk->pos = s->pos;
        s->else_b.stmts.push_back(std::move(sk));
      }
      if (!accept(tok::d_endif))
        fail("expected '#endif'");
      return s;
    }
    case tok::ident: {
      token name = eat(tok::ident);
      if (!accept(tok::assign))
        fail("expected ':=' after identifier");
      s->k = stmt::kind::assign;
      s->lhs = name.text;
      s->rhs = parse_expr();
      eat(tok::semi);
      if (!vars_.count(s->lhs)) {
        if (feats_.count(s->lhs))
          throw scope_error("cannot assign to feature '" + s->lhs + "'", name.pos);
        throw scope_error("undeclared variable '" + s->lhs + "'", name.pos);
      }
      check_expr(*s->rhs, /*feature_ctx=*/false, /*allow_ivl=*/true);
      return s;
    }
    default:
      fail("expected a statement");
    }
  }

  void declare_var(const token &name) {
    if (feats_.count(name.text))
      throw scope_error("'" + name.text + "' is already a feature name", name.pos);
    if (!vars_.insert(name.text).second)
      throw scope_error("variable '" + name.text + "' redeclared", name.pos);
    var_order_.push_back(name.text);
  }

  cond_ptr parse_or() {
    cond_ptr c = parse_and();
    while (cur().t == tok::oror) {
      source_pos p = eat(tok::oror).pos;
      c = cond::lor(c, parse_and(), p);
    }
    return c;
  }

  cond_ptr parse_and() {
    cond_ptr c = parse_not();
    while (cur().t == tok::andand) {
      source_pos p = eat(tok::andand).pos;
      c = cond::land(c, parse_not(), p);
    }
    return c;
  }

  cond_ptr parse_not() {
    if (cur().t == tok::bang) {
      source_pos p = eat(tok::bang).pos;
      return cond::lnot(parse_not(), p);
    }
    if (cur().t == tok::lparen) {
      // "(cond)" vs "(expr) < expr": try the condition reading and fall
      // back to the expression reading on failure.
      size_t save = pos_;
      try {
        eat(tok::lparen);
        cond_ptr c = parse_or();
        eat(tok::rparen);
        if (!at_cmp())
          return c;
      } catch (const syntax_error &) {
      }
      pos_ = save;
    }
    return parse_atom();
  }

  bool at_cmp() const {
    switch (cur().t) {
    case tok::eq: case tok::ne: case tok::lt: case tok::le: case tok::gt: case tok::ge:
      return true;
    default:
      return false;
    }
  }

  cmpop eat_cmp() {
    tok t = cur().t;
    ++pos_;
    switch (t) {
    case tok::eq: return cmpop::eq;
    case tok::ne: return cmpop::ne;
    case tok::lt: return cmpop::lt;
    case tok::le: return cmpop::le;
    case tok::gt: return cmpop::gt;
    default: return cmpop::ge;
    }
  }

  cond_ptr parse_atom() {
    source_pos p = cur().pos;
    if (accept(tok::kw_true))
      return cond::tt(p);
    expr_ptr a = parse_expr();
    if (!at_cmp()) {
      // bare-name sugar: B stands for B != 0
      if (a->k == expr::kind::var)
        return cond::cmp(cmpop::ne, a, expr::num(0, p), p);
      fail("expected comparison operator");
    }
    cmpop op = eat_cmp();
    expr_ptr b = parse_expr();
    return cond::cmp(op, a, b, p);
  }

  expr_ptr parse_expr() { return parse_sum(); }

  expr_ptr parse_sum() {
    expr_ptr e = parse_term();
    for (;;) {
      if (cur().t == tok::plus) {
        source_pos p = eat(tok::plus).pos;
        e = expr::bin(binop::add, e, parse_term(), p);
      } else if (cur().t == tok::minus) {
        source_pos p = eat(tok::minus).pos;
        e = expr::bin(binop::sub, e, parse_term(), p);
      } else {
        return e;
      }
    }
  }

  expr_ptr parse_term() {
    expr_ptr e = parse_unary();
    while (cur().t == tok::star) {
      source_pos p = eat(tok::star).pos;
      e = expr::bin(binop::mul, e, parse_unary(), p);
    }
    return e;
  }

  expr_ptr parse_unary() {
    source_pos p = cur().pos;
    if (accept(tok::minus))
      return expr::neg(parse_unary(), p);
    if (cur().t == tok::number)
      return expr::num(eat(tok::number).value, p);
    if (cur().t == tok::ident)
      return expr::var(eat(tok::ident).text, p);
    if (accept(tok::lbracket)) {
      int_t lo = parse_int_signed();
      eat(tok::comma);
      int_t hi = parse_int_signed();
      eat(tok::rbracket);
      if (lo > hi)
        throw syntax_error("interval literal with lo > hi", p);
      return expr::ivl(lo, hi, p);
    }
    if (accept(tok::lparen)) {
      expr_ptr e = parse_sum();
      eat(tok::rparen);
      return e;
    }
    fail("expected an expression");
  }

  void check_expr(const expr &e, bool feature_ctx, bool allow_ivl) {
    switch (e.k) {
    case expr::kind::num:
      return;
    case expr::kind::ivl:
      if (!allow_ivl)
        throw syntax_error(feature_ctx
                               ? "interval literal not allowed in a feature expression"
                               : "interval literal not allowed in a condition",
                           e.pos);
      return;
    case expr::kind::var:
      if (feature_ctx) {
        if (!feats_.count(e.name)) {
          if (vars_.count(e.name))
            throw scope_error("program variable '" + e.name +
                                  "' used in a feature expression",
                              e.pos);
          throw scope_error("undeclared feature '" + e.name + "'", e.pos);
        }
      } else {
        if (!vars_.count(e.name)) {
          if (feats_.count(e.name))
            throw scope_error("feature '" + e.name + "' used in a program expression",
                              e.pos);
          throw scope_error("undeclared variable '" + e.name + "'", e.pos);
        }
      }
      return;
    case expr::kind::bin:
      check_expr(*e.a, feature_ctx, allow_ivl);
      check_expr(*e.b, feature_ctx, allow_ivl);
      return;
    case expr::kind::neg:
      check_expr(*e.a, feature_ctx, allow_ivl);
      return;
    }
  }

  void check_cond(const cond &c, bool feature_ctx) {
    switch (c.k) {
    case cond::kind::tt:
      return;
    case cond::kind::cmp:
      check_expr(*c.a, feature_ctx, /*allow_ivl=*/false);
      check_expr(*c.b, feature_ctx, /*allow_ivl=*/false);
      return;
    case cond::kind::lnot:
      check_cond(*c.c1, feature_ctx);
      return;
    case cond::kind::land:
    case cond::kind::lor:
      check_cond(*c.c1, feature_ctx);
      check_cond(*c.c2, feature_ctx);
      return;
    }
  }
};

} // namespace

program parse(const std::string &source) {
  parser p(source);
  return p.parse_program();
}

} // namespace famalyze
