#pragma once

#include <memory>
#include <string>
#include <vector>

#include "famalyze/diag.hpp"
#include "famalyze/ints.hpp"

namespace famalyze {

struct expr;
struct cond;
using expr_ptr = std::shared_ptr<const expr>;
using cond_ptr = std::shared_ptr<const cond>;

enum class binop { add, sub, mul };
enum class cmpop { eq, ne, lt, le, gt, ge };

// Integer expression: literal, interval literal [lo,hi] (a nondeterministic
// choice), variable, binary +,-,* or unary minus.
struct expr {
  enum class kind { num, ivl, var, bin, neg };
  kind k;
  int_t lo, hi;     // num: lo == hi; ivl: [lo,hi]
  std::string name; // var
  binop op = binop::add;
  expr_ptr a, b;
  source_pos pos;

  static expr_ptr num(int_t v, source_pos p = {});
  static expr_ptr ivl(int_t lo, int_t hi, source_pos p = {});
  static expr_ptr var(std::string n, source_pos p = {});
  static expr_ptr bin(binop op, expr_ptr a, expr_ptr b, source_pos p = {});
  static expr_ptr neg(expr_ptr a, source_pos p = {});
};

// Boolean condition over expressions. One shape serves both program tests
// and feature expressions; the frontend enforces the name discipline.
struct cond {
  enum class kind { tt, cmp, lnot, land, lor };
  kind k;
  cmpop op = cmpop::eq;
  expr_ptr a, b;    // cmp
  cond_ptr c1, c2;  // lnot: c1; land/lor: c1, c2
  source_pos pos;

  static cond_ptr tt(source_pos p = {});
  static cond_ptr cmp(cmpop op, expr_ptr a, expr_ptr b, source_pos p = {});
  static cond_ptr lnot(cond_ptr c, source_pos p = {});
  static cond_ptr land(cond_ptr a, cond_ptr b, source_pos p = {});
  static cond_ptr lor(cond_ptr a, cond_ptr b, source_pos p = {});
};

struct stmt;
using stmt_ptr = std::shared_ptr<stmt>;

struct block {
  std::vector<stmt_ptr> stmts;
  // Program point after the last statement; 0 when the block carries none.
  // Only while bodies and the top-level program get one.
  int exit_label = 0;
};

struct decl_item {
  std::string name;
  expr_ptr init; // null: uninitialized, any integer
};

struct stmt {
  enum class kind { skip, decl, assign, ifelse, wloop, ifdef, check, nested };
  kind k;
  int label = 0; // 0 = unlabeled (inside #if arms, except asserts)
  source_pos pos;

  std::vector<decl_item> decls; // decl
  std::string lhs;              // assign
  expr_ptr rhs;                 // assign
  cond_ptr c;                   // ifelse/wloop/check condition; ifdef presence condition
  block then_b;                 // ifelse then / wloop body / ifdef true arm / nested body
  block else_b;                 // ifelse else / ifdef false arm
};

struct feature_decl {
  std::string name;
  int_t lo, hi;
  source_pos pos;
};

struct program {
  std::vector<feature_decl> features; // declaration order = priority order
  std::vector<cond_ptr> constraints;  // global restrictions on valid configs
  block body;
  std::vector<std::string> variables; // program variables, declaration order
  int num_labels = 0;
};

// Deterministic pre-order label assignment; idempotent. Statements inside
// #if arms stay unlabeled except asserts, while bodies and the program get
// an exit label unless they end in an assert.
void label(program &p);

std::string pretty(const program &p);

bool equal(const expr &a, const expr &b);
bool equal(const cond &a, const cond &b);
bool equal(const program &a, const program &b);

} // namespace famalyze
