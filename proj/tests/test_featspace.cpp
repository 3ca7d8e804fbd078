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

config mk(std::vector<long> vals) {
  config k;
  for (long v : vals)
    k.val.emplace_back(v);
  return k;
}

} // namespace

TEST_CASE("sat: exact satisfaction incl. the worked cases") {
  program p = parse(simple_src);
  feature_space sp = space_of(p);
  cond_ptr size_le3 = cond::cmp(cmpop::le, expr::var("SIZE"), expr::num(3));
  CHECK(sat(sp, mk({1, 2}), *size_le3));
  CHECK_FALSE(sat(sp, mk({1, 4}), *size_le3));
  CHECK(sat(sp, mk({0, 4}), *cond::tt()));
  // nonlinear products evaluate exactly
  cond_ptr nl = cond::cmp(cmpop::lt, expr::bin(binop::mul, expr::var("SIZE"),
                                               expr::var("SIZE")),
                          expr::num(9));
  CHECK(sat(sp, mk({0, 2}), *nl));
  CHECK_FALSE(sat(sp, mk({0, 3}), *nl));
}

TEST_CASE("enumerate: SIMPLE yields the eight configurations in listing order") {
  program p = parse(simple_src);
  feature_space sp = space_of(p);
  auto ks = enumerate(sp, 1000);
  REQUIRE(ks.size() == 8);
  // enabled-first for the Boolean feature, ascending for SIZE
  CHECK(describe(sp, ks[0]) == "B && SIZE=1");
  CHECK(describe(sp, ks[3]) == "B && SIZE=4");
  CHECK(describe(sp, ks[4]) == "!B && SIZE=1");
  CHECK(describe(sp, ks[7]) == "!B && SIZE=4");
}

TEST_CASE("enumerate: single bool feature and unsatisfiable constraints") {
  program p1 = parse("#feature B bool\nskip;");
  auto ks1 = enumerate(space_of(p1), 10);
  REQUIRE(ks1.size() == 2);
  CHECK(ks1[0].val[0] == 1);
  CHECK(ks1[1].val[0] == 0);

  program p2 = parse("#feature SIZE in [1,4]\n#constraint SIZE < 1\nskip;");
  CHECK(enumerate(space_of(p2), 10).empty());
}

TEST_CASE("enumerate: cap reports the exact product size") {
  program p = parse("#feature A in [0,999]\n#feature B in [0,999]\nskip;");
  try {
    enumerate(space_of(p), 1000);
    FAIL("expected cap_exceeded");
  } catch (const cap_exceeded &e) {
    CHECK(e.space_size == "1000000");
  }
}

TEST_CASE("models: the six configurations satisfying SIZE <= 3") {
  program p = parse(simple_src);
  feature_space sp = space_of(p);
  cond_ptr theta = cond::cmp(cmpop::le, expr::var("SIZE"), expr::num(3));
  auto ms = models(sp, *theta, 1000);
  REQUIRE(ms.size() == 6);
  CHECK(describe(sp, ms[0]) == "B && SIZE=1");
  CHECK(describe(sp, ms[3]) == "!B && SIZE=1");
  CHECK(models(sp, *cond::tt(), 1000).size() == 8);
  cond_ptr zero = cond::cmp(cmpop::eq, expr::var("SIZE"), expr::num(0));
  CHECK(models(sp, *zero, 1000).empty());
}

TEST_CASE("models agrees with sat pointwise") {
  rng_t rng(777);
  for (int round = 0; round < 40; ++round) {
    progen gen(rng, progen_opts{.nonlinear_atoms = chance(rng, 0.5), .with_asserts = false});
    program p = parse(gen.generate());
    feature_space sp = space_of(p);
    // harvest a feature expression from the program, else use true
    cond_ptr theta = cond::tt();
    for (const auto &s : p.body.stmts)
      if (s->k == stmt::kind::ifdef)
        theta = s->c;
    auto ks = enumerate(sp, 100000);
    auto ms = models(sp, *theta, 100000);
    std::set<std::string> in_models;
    for (const auto &k : ms)
      in_models.insert(describe(sp, k));
    for (const auto &k : ks)
      CHECK(in_models.count(describe(sp, k)) == (sat(sp, k, *theta) ? 1u : 0u));
  }
}

TEST_CASE("describe: boolean sugar and empty space") {
  program p = parse(simple_src);
  feature_space sp = space_of(p);
  CHECK(describe(sp, mk({1, 2})) == "B && SIZE=2");
  CHECK(describe(sp, mk({0, 4})) == "!B && SIZE=4");
  program q = parse("int x := 0;");
  feature_space sq = space_of(q);
  CHECK(describe(sq, config{}) == "true");
}

TEST_CASE("project: SIMPLE variants match the per-configuration listings") {
  program p = parse(simple_src);
  feature_space sp = space_of(p);
  // B and SIZE=1: y := y + 1 then skip
  program v1 = project(p, sp, mk({1, 1}));
  std::string t1 = pretty(v1);
  CHECK(t1.find("#if") == std::string::npos);
  CHECK(t1.find("y := y + 1;") != std::string::npos);
  CHECK(t1.find("skip;") != std::string::npos);
  CHECK(t1.find("y := y - 1;") == std::string::npos);
  // !B and SIZE=4: y := y - 1 then y := 0
  program v4 = project(p, sp, mk({0, 4}));
  std::string t4 = pretty(v4);
  CHECK(t4.find("y := y - 1;") != std::string::npos);
  CHECK(t4.find("y := 0;") != std::string::npos);
  CHECK(t4.find("y := y + 1;") == std::string::npos);
  // a program without #if projects to itself
  program q = parse("int x := 0;\nx := x + 1;");
  program vq = project(q, space_of(q), config{});
  CHECK(equal(q, vq));
}

TEST_CASE("project removes all variability") {
  rng_t rng(4242);
  for (int round = 0; round < 30; ++round) {
    progen gen(rng, progen_opts{});
    program p = parse(gen.generate());
    feature_space sp = space_of(p);
    for (const auto &k : enumerate(sp, 100000)) {
      program v = project(p, sp, k);
      std::string text = pretty(v);
      // body mentions no #if and no feature names
      CHECK(text.find("#if") == std::string::npos);
      size_t body_at = text.find("int ");
      for (int f = 0; f < sp.feats.size(); ++f) {
        CHECK(text.find(sp.feats.name(f), body_at) == std::string::npos);
      }
      if (round > 4)
        break; // one config suffices once the shape is established
    }
  }
}
