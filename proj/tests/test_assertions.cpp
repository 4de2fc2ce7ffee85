#include "doctest.h"
#include "prhl/lang/parser.hpp"
#include "prhl/logic/checker.hpp"
#include "prhl/studies/functions.hpp"

using namespace prhl;
using namespace prhl::lang;
using namespace prhl::logic;

namespace {

Program int_prog(const std::string& decls) {
  return parse_program(decls + " skip return 0 = 0");
}

}  // namespace

TEST_CASE("eval_assertion: basic tagged evaluation") {
  Program p1 = int_prog("var pos : [0, 9];");
  Program p2 = int_prog("var pos : [0, 9];");
  Memory m1 = default_memory(p1);
  Memory m2 = default_memory(p2);
  m1.set(0, Value::integer(3));
  m2.set(0, Value::integer(3));
  ExprPtr eq = parse_assertion("pos#1 = pos#2", p1, p2);
  CHECK(eval_expr(EvalScope::pair(m1, m2), eq).as_bool());
  m2.set(0, Value::integer(4));
  CHECK_FALSE(eval_expr(EvalScope::pair(m1, m2), eq).as_bool());
}

TEST_CASE("eval_assertion: the mirror invariant on a concrete pair") {
  ParseOptions o1, o2;
  o1.params = {{"start", "0"}, {"n", "1"}};
  o2.params = {{"start", "2"}, {"n", "1"}};
  const char* decls = R"(
    param start : int;
    param n : int;
    var pos : int in [start - 2, start + 2];
    var H : list<bool> cap 2;
    var i : [0, 2];
  )";
  Program p1 = parse_program(std::string(decls) + " skip return pos", o1);
  Program p2 = parse_program(std::string(decls) + " skip return pos", o2);
  FunctionRegistry reg;
  studies::register_walk_functions(reg, 1);

  // After one step where the first walk moved right and the second mirrored
  // left: H1 = [true], pos1 = 1, pos2 = 1 -- they met.
  Memory m1 = default_memory(p1);
  Memory m2 = default_memory(p2);
  m1.set(p1.slot_of("pos"), Value::integer(1));
  m1.set(p1.slot_of("H"), Value::list({Value::boolean(true)}));
  m1.set(p1.slot_of("i"), Value::integer(1));
  m2.set(p2.slot_of("pos"), Value::integer(1));
  m2.set(p2.slot_of("i"), Value::integer(1));

  ExprPtr inv = parse_assertion(
      "(pos#1 != pos#2 -> pos#1 = start#1 + Sigma(H#1) && pos#2 = start#2 - Sigma(H#1))"
      " && (P(H#1) -> pos#1 = pos#2)",
      p1, p2, &reg);
  CHECK(eval_expr(EvalScope::pair(m1, m2), inv).as_bool());

  // Pulling the met walks apart violates the invariant.
  m2.set(p2.slot_of("pos"), Value::integer(3));
  CHECK_FALSE(eval_expr(EvalScope::pair(m1, m2), inv).as_bool());
}

TEST_CASE("eval_assertion: bounded quantifier over vector coordinates") {
  ParseOptions opts;
  opts.params = {{"d", "2"}};
  const char* text = "param d : int; var pos : [0, 2]^d; skip return pos";
  Program p1 = parse_program(text, opts);
  Program p2 = parse_program(text, opts);
  Memory m1 = default_memory(p1);
  Memory m2 = default_memory(p2);
  ExprPtr all = parse_assertion("forall i in [1, 2]. pos#1[i] = pos#2[i]", p1, p2);
  CHECK(eval_expr(EvalScope::pair(m1, m2), all).as_bool());
  m2.set(p2.slot_of("pos"), Value::tuple({Value::integer(0), Value::integer(1)}));
  CHECK_FALSE(eval_expr(EvalScope::pair(m1, m2), all).as_bool());
  ExprPtr some = parse_assertion("exists i in [1, 2]. pos#1[i] != pos#2[i]", p1, p2);
  CHECK(eval_expr(EvalScope::pair(m1, m2), some).as_bool());
}

TEST_CASE("validity_check: enumeration over declared domains") {
  Program p1 = int_prog("var x : int in [-2, 2];");
  Program p2 = int_prog("var x : int in [-2, 2];");
  CheckOptions opts;

  ExprPtr tauto = parse_assertion("x#1 = x#2 -> x#1 >= x#2", p1, p2);
  CHECK(validity_check(tauto, p1, p2, opts).valid);

  ExprPtr wrong = parse_assertion("x#1 >= x#2", p1, p2);
  ValidityResult r = validity_check(wrong, p1, p2, opts);
  REQUIRE_FALSE(r.valid);
  REQUIRE(r.counterexample.has_value());
  // The counterexample re-evaluates to a violation.
  CHECK_FALSE(eval_expr(EvalScope::pair(r.counterexample->first, r.counterexample->second), wrong)
                  .as_bool());

  // Domains too large fail loudly, never silently.
  Program big1 = int_prog("var x : int in [0, 100000];");
  Program big2 = int_prog("var x : int in [0, 100000];");
  CheckOptions tight;
  tight.enumeration_cap = 1000;
  ExprPtr trivial = parse_assertion("x#1 = x#1", big1, big2);
  CHECK_THROWS_AS((void)validity_check(trivial, big1, big2, tight), PrhlError);

  // Variables without a finite domain are an explicit error.
  Program open1 = int_prog("var x : int;");
  Program open2 = int_prog("var x : int;");
  ExprPtr open_assert = parse_assertion("x#1 = x#1", open1, open2);
  CHECK_THROWS_AS((void)validity_check(open_assert, open1, open2, opts), PrhlError);
}

TEST_CASE("validity_check: guard agreement under the walk invariant") {
  ParseOptions o1, o2;
  o1.params = {{"start", "0"}, {"k", "2"}, {"n", "1"}};
  o2.params = {{"start", "2"}, {"k", "2"}, {"n", "1"}};
  const char* decls = R"(
    param start : int;
    param k : int;
    param n : int;
    var i : int in [0, k];
  )";
  Program p1 = parse_program(std::string(decls) + "skip return i", o1);
  Program p2 = parse_program(std::string(decls) + "skip return i", o2);
  CheckOptions opts;
  ExprPtr agree = parse_assertion("i#1 = i#2 -> (i#1 < k#1) = (i#2 < k#2)", p1, p2);
  CHECK(validity_check(agree, p1, p2, opts).valid);
}

TEST_CASE("torus history operators: replayed drifts") {
  FunctionRegistry reg;
  studies::register_torus_functions(reg, 1, 3, {1});
  auto fn = [&](const char* name) { return reg.find(name); };
  REQUIRE(fn("Sigma1"));

  auto entry = [](bool mov, bool dir, long crd) {
    return Value::tuple({Value::boolean(mov), Value::boolean(dir), Value::integer(crd)});
  };
  const Value i1 = Value::integer(1);

  // Empty history: no drift, delta = 1 != 0 so not met.
  Value h0 = Value::nil();
  CHECK(fn("Sigma1")->apply({i1, h0}) == Value::integer(0));
  CHECK(fn("Sigma2")->apply({i1, h0}) == Value::integer(0));
  CHECK(fn("Met")->apply({i1, h0}) == Value::boolean(false));

  // One step, mov = true, dir = up: offset was 1 (not met), so the second
  // walk flips mov and stays; drift1 = 1, drift2 = 0 and 1 - 0 = delta: met.
  Value h1 = Value::list({entry(true, true, 1)});
  CHECK(fn("Sigma1")->apply({i1, h1}) == Value::integer(1));
  CHECK(fn("Sigma2")->apply({i1, h1}) == Value::integer(0));
  CHECK(fn("Met")->apply({i1, h1}) == Value::boolean(true));

  // A further step after meeting moves both walks identically.
  Value h2 = Value::list({entry(true, false, 1), entry(true, true, 1)});
  CHECK(fn("Sigma1")->apply({i1, h2}) == Value::integer(0));
  CHECK(fn("Sigma2")->apply({i1, h2}) == Value::integer(2));
  CHECK(fn("Met")->apply({i1, h2}) == Value::boolean(true));

  // mov = false before meeting: the second walk flips to moving.
  Value h3 = Value::list({entry(false, true, 1)});
  CHECK(fn("Sigma1")->apply({i1, h3}) == Value::integer(0));
  CHECK(fn("Sigma2")->apply({i1, h3}) == Value::integer(1));
  CHECK(fn("Met")->apply({i1, h3}) == Value::boolean(false));
}
