#include <random>

#include "doctest.h"
#include "prhl/lang/eval.hpp"
#include "prhl/lang/parser.hpp"
#include "prhl/lang/typecheck.hpp"

using namespace prhl;
using namespace prhl::lang;

namespace {

Value iv(long i) { return Value::integer(i); }

Program walk(const std::string& start, const std::string& k) {
  ParseOptions opts;
  opts.params = {{"start", start}, {"k", k}, {"n", "1"}};
  Program p = parse_program(R"(
    param start : int;
    param k : int;
    param n : int;
    var pos : int in [start - k, start + k];
    var b : bool;
    var i : int in [0, k];
    var H : list<bool> cap k;
    pos := start; H := []; i := 0;
    while i < k do
      b ~~ {0,1};
      H := b :: H;
      if b then pos++ else pos-- fi;
      i := i + 1
    end
    return pos
  )", opts);
  REQUIRE(typecheck(p).empty());
  return p;
}

ExprPtr ret(const Program& p) { return p.returns.at(0); }

}  // namespace

TEST_CASE("interpret: assignment is a point mass") {
  Program p = parse_program("var x : int; x := 1 return x");
  MemoryDist out = interpret(p, default_memory(p));
  CHECK(out.exact());
  CHECK(out.mass() == 1);
  CHECK(pushforward(out, ret(p)) == SubDist::unit(iv(1)));
}

TEST_CASE("interpret: the k=2 walk hits {-2: 1/4, 0: 1/2, 2: 1/4}") {
  Program p = walk("0", "2");
  MemoryDist out = interpret(p, default_memory(p));
  REQUIRE(out.exact());
  SubDist pos = pushforward(out, ret(p));
  CHECK(pos == SubDist::from_entries({{iv(-2), Rational(1, 4)},
                                      {iv(0), Rational(1, 2)},
                                      {iv(2), Rational(1, 4)}}));
}

TEST_CASE("interpret: one biased coin round, k=1, q1=7/10") {
  ParseOptions opts;
  opts.params = {{"k", "1"}, {"q1", "7/10"}};
  Program p = parse_program(R"(
    param k : int;
    param q1 : prob;
    var n : int in [0, k];
    var i : int in [0, k];
    var x : bool;
    n := 0; i := 0;
    while i < k do
      x ~~ Bern(q1);
      if x then n := n + 1 fi;
      i := i + 1
    end
    return n
  )", opts);
  REQUIRE(typecheck(p).empty());
  SubDist n = pushforward(interpret(p, default_memory(p)), ret(p));
  CHECK(n == SubDist::from_entries({{iv(0), Rational(3, 10)}, {iv(1), Rational(7, 10)}}));
}

TEST_CASE("pushforward: identity and boolean events") {
  Program p = walk("0", "2");
  Memory m = default_memory(p);

  // pushforward(unit(m), x) = unit(m(x))
  MemoryDist unit_m;
  unit_m.add(m, Rational(1));
  CHECK(pushforward(unit_m, ret(p)) == SubDist::unit(m.get(p.slot_of("pos"))));

  // Event not-P(H) with n = 1: P holds iff some chronological prefix (a list
  // suffix, since H is built by prepending) sums to +1.
  FunctionRegistry reg;
  reg.add(PureFn{"P", {Type::list(Type::boolean())}, Type::boolean(), [](const ValueVec& args) {
                   const ValueVec& h = args.at(0).as_list();
                   for (size_t start = 0; start <= h.size(); ++start) {
                     long sigma = 0;
                     for (size_t i = start; i < h.size(); ++i) {
                       sigma += h[i].as_bool() ? 1 : -1;
                     }
                     if (sigma == 1) return Value::boolean(true);
                   }
                   return Value::boolean(false);
                 }});
  MemoryDist out = interpret(p, m);
  ExprPtr not_p = parse_program_expr("!P(H)", p, &reg);
  SubDist ev = pushforward(out, not_p);
  CHECK(ev == SubDist::from_entries({{Value::boolean(false), Rational(1, 2)},
                                     {Value::boolean(true), Rational(1, 2)}}));
  CHECK(event_probability(out, not_p).value() == Rational(1, 2));
}

TEST_CASE("eval_dist frozen examples") {
  Program p = parse_program("var b : bool; b ~~ Bern(1/2) return b");
  const auto* r = p.body[0].get<Command::Rand>();
  CHECK(eval_dist(default_memory(p), r->dist) ==
        SubDist::from_entries({{Value::boolean(false), Rational(1, 2)},
                               {Value::boolean(true), Rational(1, 2)}}));

  ParseOptions opts;
  opts.params = {{"d", "3"}};
  Program u = parse_program("param d : int; var c : [1, d]; c ~~ [1, d] return c", opts);
  const auto* ur = u.body[0].get<Command::Rand>();
  CHECK(eval_dist(default_memory(u), ur->dist) ==
        SubDist::from_entries({{iv(1), Rational(1, 3)},
                               {iv(2), Rational(1, 3)},
                               {iv(3), Rational(1, 3)}}));
}

TEST_CASE("eval_dist: the verbatim adjacent-state table at a=3/10, b=1/5") {
  // distr-adjacent with a_i = a_{i+1} = 3/10 and b_i = b_{i+1} = 1/5,
  // substituted directly into the paper's listing.
  ParseOptions opts;
  opts.params = {{"a", "3/10"}, {"b", "1/5"}};
  Program p = parse_program(R"(
    enum Move { Left, Right, Still };
    param a : prob;
    param b : prob;
    var d : (Move, Move);
    d ~~ table(
      (Right, Left): (b < a ? b : a),
      (Still, Left): (b - a > 0 ? b - a : 0),
      (Right, Still): (a - b > 0 ? a - b : 0),
      (Still, Right): a,
      (Left, Still): b,
      (Still, Still): 1 - (b < a ? b : a) - a - b - (b - a > 0 ? b - a : a - b))
    return d
  )", opts);
  REQUIRE(typecheck(p).empty());
  const auto* r = p.body[0].get<Command::Rand>();
  SubDist table = eval_dist(default_memory(p), r->dist);

  auto mv = [](const char* c, int o) { return Value::enumerated(EnumVal{"Move", c, o}); };
  Value L = mv("Left", 0), R = mv("Right", 1), S = mv("Still", 2);
  CHECK(table.mass() == 1);
  CHECK(table.prob(Value::pair(R, L)) == Rational(1, 5));
  CHECK(table.prob(Value::pair(R, S)) == Rational(1, 10));
  CHECK(table.prob(Value::pair(S, R)) == Rational(3, 10));
  CHECK(table.prob(Value::pair(L, S)) == Rational(1, 5));
  CHECK(table.prob(Value::pair(S, S)) == Rational(1, 5));
  CHECK(table.prob(Value::pair(S, L)) == 0);
  CHECK(table.prob(Value::pair(L, R)) == 0);
}

TEST_CASE("eval_dist validation errors") {
  ParseOptions opts;
  opts.params = {{"p", "3/2"}};
  Program p = parse_program("param p : prob; var x : bool; x ~~ Bern(p) return x", opts);
  CHECK_THROWS_AS((void)interpret(p, default_memory(p)), PrhlError);

  ParseOptions neg;
  neg.params = {{"a", "3/4"}};
  Program q = parse_program(
      "param a : prob; var x : bool; x ~~ table(true: a, false: 1 - 2*a) return x", neg);
  CHECK_THROWS_AS((void)interpret(q, default_memory(q)), PrhlError);
}

TEST_CASE("is_lossless: skip, divergence, counter loop") {
  const Int cap = 100000;
  Program skip = parse_program("var x : [0, 1]; skip return x");
  CHECK(is_lossless(skip, skip.body, 8, cap).verdict == Lossless::Yes);

  Program diverge = parse_program("var x : [0, 1]; while true do skip end return x");
  CHECK(is_lossless(diverge, diverge.body, 64, cap).verdict == Lossless::Indeterminate);

  ParseOptions opts;
  opts.params = {{"n", "3"}};
  Program counter = parse_program(
      "param n : int; var i : int in [0, 4]; while i < n do i := i + 1 end return i", opts);
  CHECK(is_lossless(counter, counter.body, 8, cap).verdict == Lossless::Yes);
  // Not enough fuel: indeterminate, not false.
  CHECK(is_lossless(counter, counter.body, 1, cap).verdict == Lossless::Indeterminate);
}

TEST_CASE("interpret: residual mass is surfaced and flag-controlled") {
  Program p = parse_program(R"(
    var b : bool;
    b := true;
    while b do b ~~ Bern(1/2) end
    return b
  )");
  InterpOptions opts;
  opts.fuel = 3;
  MemoryDist out = interpret(p, default_memory(p), opts);
  CHECK(out.residual == Rational(1, 8));
  CHECK(out.mass() == Rational(7, 8));

  opts.error_on_residual = true;
  CHECK_THROWS_AS((void)interpret(p, default_memory(p), opts), PrhlError);

  // Monotone convergence: more fuel only moves mass out of the residual.
  InterpOptions more;
  more.fuel = 10;
  MemoryDist better = interpret(p, default_memory(p), more);
  CHECK(better.residual == Rational(1, 1024));
  for (const auto& [m, q] : out.entries) {
    CHECK(better.entries.at(m) >= q);
  }
}

TEST_CASE("interpret: deterministic programs give point masses") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::string body;
    for (int s = 0; s < 4; ++s) {
      switch (pick(rng)) {
        case 0: body += "x := x + 1; "; break;
        case 1: body += "y := x - 2; "; break;
        case 2: body += "if x > y then y := y + 1 else x := x - 1 fi; "; break;
      }
    }
    Program p = parse_program("var x : [0, 9]; var y : [0, 9]; " + body + " return (x, y)");
    MemoryDist out = interpret(p, default_memory(p));
    CHECK(out.exact());
    CHECK(out.entries.size() == 1);
    CHECK(out.mass() == 1);
  }
}

TEST_CASE("interpret: sequencing agrees with monadic composition") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::string stmts[6];
    for (auto& s : stmts) {
      switch (pick(rng)) {
        case 0: s = "x := x + 1"; break;
        case 1: s = "b ~~ Bern(1/4)"; break;
        case 2: s = "if b then x := 0 fi"; break;
        case 3: s = "y ~~ [0, 2]"; break;
      }
    }
    std::string text;
    for (const auto& s : stmts) text += s + "; ";
    Program p = parse_program("var x : [0, 9]; var y : [0, 9]; var b : bool; " + text +
                              " return x");
    // Running the whole block equals running a prefix and feeding each
    // outcome to the suffix, at every split point.
    MemoryDist whole = interpret(p, default_memory(p));
    for (size_t split = 0; split <= p.body.size(); ++split) {
      Block prefix(p.body.begin(), p.body.begin() + long(split));
      Block suffix(p.body.begin() + long(split), p.body.end());
      MemoryDist mid = interpret(prefix, default_memory(p));
      MemoryDist composed;
      for (const auto& [m, q] : mid.entries) {
        MemoryDist rest = interpret(suffix, m);
        for (const auto& [m2, q2] : rest.entries) composed.add(m2, q * q2);
      }
      CHECK(composed.entries == whole.entries);
    }
  }
}
