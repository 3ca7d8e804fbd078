#include <doctest.h>

#include "test_util.hpp"

using namespace famalyze;
using namespace famalyze::testing;

namespace {

const char *simple_src = R"(#feature B bool
#feature SIZE in [1,4]
int x := 10, y := 0;
while (x != 0) {
  x := x - 1;
  #if (SIZE <= 3) y := y + 1; #else y := y - 1; #endif
  #if (!B) y := 0; #else skip; #endif
}
assert (y > 1);
)";

} // namespace

TEST_CASE("parse: minimal program") {
  program p = parse("#feature B bool\nint x := 0;");
  REQUIRE(p.features.size() == 1);
  CHECK(p.features[0].name == "B");
  CHECK(p.features[0].lo == 0);
  CHECK(p.features[0].hi == 1);
  REQUIRE(p.body.stmts.size() == 1);
  CHECK(p.body.stmts[0]->k == stmt::kind::decl);
  CHECK(p.variables == std::vector<std::string>{"x"});
}

TEST_CASE("parse: SIMPLE has seven labels in program order") {
  program p = parse(simple_src);
  CHECK(p.num_labels == 7);
  CHECK(p.body.stmts[0]->label == 1); // declarations
  CHECK(p.body.stmts[1]->label == 2); // loop head
  const stmt &loop = *p.body.stmts[1];
  CHECK(loop.then_b.stmts[0]->label == 3);
  CHECK(loop.then_b.stmts[1]->label == 4);
  CHECK(loop.then_b.stmts[2]->label == 5);
  CHECK(loop.then_b.exit_label == 6);
  CHECK(p.body.stmts[2]->label == 7); // assert is the check point
  CHECK(p.body.exit_label == 0);      // final assert absorbs the exit
}

TEST_CASE("parse: test family counts four labels") {
  program p = parse("#feature A2 in [0,2]\n#feature A1 in [0,2]\n"
                    "int i := 0;\n"
                    "#if (A1 == 0) i := i + 1; #else i := 0; #endif\n"
                    "#if (A2 == 0) i := i + 1; #else i := 0; #endif\n");
  CHECK(p.num_labels == 4);
  CHECK(p.body.exit_label == 4);
  // nothing inside #if arms is labeled
  for (const auto &arm_stmt : p.body.stmts[1]->then_b.stmts)
    CHECK(arm_stmt->label == 0);
}

TEST_CASE("parse: one-armed #if gets an implicit skip else") {
  program p = parse("#feature A in [0,1]\nint x := 0;\n#if (A == 1) x := 1; #endif\n");
  const stmt &s = *p.body.stmts[1];
  REQUIRE(s.k == stmt::kind::ifdef);
  REQUIRE(s.else_b.stmts.size() == 1);
  CHECK(s.else_b.stmts[0]->k == stmt::kind::skip);
}

TEST_CASE("parse: diagnostics carry positions") {
  CHECK_THROWS_AS(parse("while (x"), syntax_error);
  CHECK_THROWS_AS(parse("int x := 0; x := y;"), scope_error);
  CHECK_THROWS_AS(parse("#feature A in [3,1]\nskip;"), feature_domain_error);
  CHECK_THROWS_AS(parse("#feature A bool\nint A := 0;"), scope_error);
  CHECK_THROWS_AS(parse("#feature A bool\nint x := 0;\n#if (x == 1) skip; #endif"),
                  scope_error);
  CHECK_THROWS_AS(parse("#feature A bool\nint x := A;"), scope_error);
  CHECK_THROWS_AS(parse("int x := 0; if (x == [1,2]) { skip; }"), syntax_error);
  CHECK_THROWS_AS(parse("int x := 0; skip; int y := 0;"), syntax_error);
  try {
    parse("int x := 0;\nx := ;");
    FAIL("expected syntax error");
  } catch (const syntax_error &e) {
    CHECK(e.pos.line == 2);
  }
}

TEST_CASE("pretty/parse round trip on fixtures") {
  for (const char *src :
       {simple_src, "int x := 0;", "skip;",
        "#feature A in [0,3]\nint x := [1,4];\n#if (A * A < 9) x := -x; #endif\n"}) {
    program p1 = parse(src);
    program p2 = parse(pretty(p1));
    CHECK(equal(p1, p2));
    CHECK(pretty(p1) == pretty(p2));
  }
}

TEST_CASE("pretty: interval literal verbatim, skip statement") {
  program p = parse("int x := [1,4];skip;");
  std::string text = pretty(p);
  CHECK(text.find("[1,4]") != std::string::npos);
  CHECK(text.find("skip;") != std::string::npos);
}

TEST_CASE("round trip and labeling on random programs") {
  rng_t rng(1234);
  for (int i = 0; i < 60; ++i) {
    progen gen(rng, progen_opts{});
    std::string src = gen.generate();
    CAPTURE(src);
    program p1 = parse(src);
    program p2 = parse(pretty(p1));
    CHECK(equal(p1, p2));
    // relabeling is idempotent
    program p3 = p1;
    label(p3);
    CHECK(equal(p1, p3));
  }
}

TEST_CASE("fuzz: token deletions always yield a diagnostic, never a crash") {
  rng_t rng(99);
  std::string base = simple_src;
  for (int i = 0; i < 300; ++i) {
    std::string mutated = base;
    int cuts = pick(rng, 1, 4);
    for (int c = 0; c < cuts && !mutated.empty(); ++c) {
      size_t at = static_cast<size_t>(pick(rng, 0, static_cast<int>(mutated.size()) - 1));
      size_t len = static_cast<size_t>(pick(rng, 1, 5));
      mutated.erase(at, len);
    }
    try {
      program p = parse(mutated);
      (void)p;
    } catch (const syntax_error &) {
    } catch (const scope_error &) {
    } catch (const feature_domain_error &) {
    }
  }
  CHECK(true);
}
