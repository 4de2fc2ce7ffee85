#include "doctest.h"
#include "prhl/lang/parser.hpp"
#include "prhl/lang/typecheck.hpp"

using namespace prhl;
using namespace prhl::lang;

namespace {

const char* kWalk = R"(
// pwhile v1
param start : int;
param k : int;
param n : int;
var pos : int in [start - k, start + k];
var b : bool;
var i : int in [0, k];
var H : list<bool> cap k;

pos := start;
H := [];
i := 0;
while i < k do
  b ~~ {0,1};
  H := b :: H;
  if b then pos++ else pos-- fi;
  i := i + 1
end
return pos
)";

ParseOptions walk_params() {
  ParseOptions opts;
  opts.params = {{"start", "0"}, {"k", "2"}, {"n", "1"}};
  return opts;
}

}  // namespace

TEST_CASE("parse: simple assignment") {
  Program p = parse_program("var pos : int; var start : int; pos := start return pos");
  REQUIRE(p.body.size() == 1);
  const auto* a = p.body[0].get<Command::Assign>();
  REQUIRE(a != nullptr);
  CHECK(a->target.name == "pos");
  CHECK(expr_to_string(a->value) == "start");
}

TEST_CASE("parse: the random walk of Fig 4a") {
  Program p = parse_program(kWalk, walk_params());
  CHECK(p.vars.size() == 7);
  CHECK(p.slot_of("pos") == 3);
  REQUIRE(p.body.size() == 4);

  const auto* w = p.body[3].get<Command::While>();
  REQUIRE(w != nullptr);
  CHECK(expr_to_string(w->guard) == "(i < k)");
  REQUIRE(w->body.size() == 4);
  const auto* rand = w->body[0].get<Command::Rand>();
  REQUIRE(rand != nullptr);
  CHECK(rand->target.name == "b");
  const auto* branch = w->body[2].get<Command::If>();
  REQUIRE(branch != nullptr);
  // pos++ / pos-- desugar to assignments.
  const auto* inc = branch->then_branch[0].get<Command::Assign>();
  REQUIRE(inc != nullptr);
  CHECK(expr_to_string(inc->value) == "(pos + 1)");
  const auto* dec = branch->else_branch[0].get<Command::Assign>();
  REQUIRE(dec != nullptr);
  CHECK(expr_to_string(dec->value) == "(pos - 1)");

  // Parameter domains collapse to singletons; declared ranges use them.
  CHECK(p.vars[0].domain->count() == 1);
  CHECK(p.vars[size_t(p.slot_of("pos"))].domain->count() == 5);  // [-2, 2]
  CHECK(p.vars[size_t(p.slot_of("H"))].domain->count() == 7);    // bool lists, len <= 2

  CHECK(typecheck(p).empty());
}

TEST_CASE("parse: while with skip body") {
  Program p = parse_program("var i : int; var k : int; while i < k do skip end return i");
  const auto* w = p.body[0].get<Command::While>();
  REQUIRE(w != nullptr);
  REQUIRE(w->body.size() == 1);
  CHECK(w->body[0].get<Command::Skip>() != nullptr);
}

TEST_CASE("parse: multi-target assignment desugars") {
  Program p = parse_program(
      "var i : int; var binA : int; var binB : int; i, binA, binB := 0 return i");
  CHECK(p.body.size() == 3);
  for (const Command& c : p.body) {
    CHECK(c.get<Command::Assign>() != nullptr);
  }
}

TEST_CASE("parse errors carry position") {
  try {
    parse_program("var x : int;\nx := := 1 return x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_program("var x : int; x := y return x"), ParseError);  // unknown ident
  CHECK_THROWS_AS(parse_program("var x : int; x := 1 return q"), ParseError);
}

TEST_CASE("parse: registered function arity is checked") {
  FunctionRegistry reg;
  reg.add(PureFn{"Sigma", {Type::list(Type::boolean())}, Type::integer(),
                 [](const ValueVec&) { return Value::integer(0); }});
  ParseOptions opts;
  opts.registry = &reg;
  CHECK_THROWS_AS(
      parse_program("var H : list<bool>; var s : int; s := Sigma(H, H) return s", opts),
      ParseError);
  Program ok = parse_program("var H : list<bool>; var s : int; s := Sigma(H) return s", opts);
  CHECK(typecheck(ok).empty());
}

TEST_CASE("typecheck: ill-typed programs are rejected") {
  // int + bool
  Program p1 = parse_program("var pos : int; var b : bool; pos := b + 1 return pos");
  CHECK_FALSE(typecheck(p1).empty());

  // sampling an int from Bern
  Program p2 = parse_program("var x : int; x ~~ Bern(1/2) return x");
  CHECK_FALSE(typecheck(p2).empty());

  // if guard must be boolean
  Program p3 = parse_program("var x : int; if x then skip fi return x");
  CHECK_FALSE(typecheck(p3).empty());

  // well-typed program with vectors and history list
  ParseOptions opts;
  opts.params = {{"d", "2"}, {"q", "3"}};
  Program p4 = parse_program(R"(
    param d : int;
    param q : int;
    var pos : [0, q - 1]^d;
    var H : list<(bool, bool, [1, d])> cap 2;
    var mov : bool;
    var dir : bool;
    var crd : [1, d];
    H := (mov, dir, crd) :: H;
    pos := (pos + pos) % q
    return pos
  )", opts);
  CHECK(typecheck(p4).empty());
}

TEST_CASE("typecheck: {0,1} into a boolean becomes the fair coin") {
  Program p = parse_program("var b : bool; b ~~ {0,1} return b");
  REQUIRE(typecheck(p).empty());
  const auto* r = p.body[0].get<Command::Rand>();
  const auto& set = std::get<DistExpr::UniformSet>(r->dist->rep);
  REQUIRE(set.items.size() == 2);
  CHECK(set.items[0]->get<Expr::Lit>()->value == Value::boolean(false));
  CHECK(set.items[1]->get<Expr::Lit>()->value == Value::boolean(true));
}

TEST_CASE("parse: assertions with tags, quantifiers, and cons") {
  Program p1 = parse_program(kWalk, walk_params());
  Program p2 = parse_program(kWalk, walk_params());
  ExprPtr a = parse_assertion("pos#1 = pos#2 && start#1 + 2*n#1 = start#2", p1, p2);
  CHECK(typecheck_assertion(a, p1, p2).empty());

  ExprPtr q = parse_assertion("forall j in [1, 2]. pos#1 = pos#2 || j > 1", p1, p2);
  CHECK(typecheck_assertion(q, p1, p2).empty());

  // Untagged program variables are rejected in assertions.
  CHECK_THROWS_AS(parse_assertion("pos = pos#2", p1, p2), ParseError);

  // Cons of the sampled value onto a history, as used by mid-assertions.
  ExprPtr c = parse_assertion("b#1 :: H#1 = H#2", p1, p2);
  CHECK(typecheck_assertion(c, p1, p2).empty());
}

TEST_CASE("typecheck assertion: sides resolve against their own programs") {
  Program p1 = parse_program("var x : int; x := 0 return x");
  Program p2 = parse_program("var y : bool; y ~~ Bern(1/2) return y");
  ExprPtr bad = parse_assertion("x#1 = y#2", p1, p2);
  CHECK_FALSE(typecheck_assertion(bad, p1, p2).empty());
  CHECK_THROWS_AS(parse_assertion("y#1 = y#2", p1, p2), ParseError);
}

TEST_CASE("explicit tables parse with tuple keys") {
  ParseOptions opts;
  opts.params = {{"a", "3/10"}, {"b", "1/5"}};
  Program p = parse_program(R"(
    enum Move { Left, Right, Still };
    param a : prob;
    param b : prob;
    var d : (Move, Move);
    d ~~ table((Left, Left): a, (Still, Still): 1 - a - b, (Right, Right): b)
    return d
  )", opts);
  CHECK(typecheck(p).empty());
  const auto* r = p.body[0].get<Command::Rand>();
  REQUIRE(r != nullptr);
  CHECK(std::get<DistExpr::Explicit>(r->dist->rep).rows.size() == 3);
}
