#include "doctest.h"
#include "prhl/lang/parser.hpp"
#include "prhl/logic/checker.hpp"
#include "prhl/lang/typecheck.hpp"
#include "prhl/logic/validate.hpp"
#include "prhl/studies/functions.hpp"

using namespace prhl;
using namespace prhl::lang;
using namespace prhl::logic;

#include "walk_fixture.hpp"

using prhl::testing::make_walk;
using prhl::testing::walk_proof_json;
using prhl::testing::walk_prog;
using prhl::testing::WalkSetup;

TEST_CASE("sample rule with the identity bijection discharges x#1 = x#2") {
  const char* sources[] = {
      "var x : [0, 3]; x ~~ [0, 3] return x",
      "var x : bool; x ~~ Bern(1/3) return x",
      "var x : [0, 5]; x ~~ {0, 2, 4} return x",
  };
  for (const char* src : sources) {
    auto p1 = std::make_shared<Program>(parse_program(src));
    auto p2 = std::make_shared<Program>(parse_program(src));
    Judgment j{p1, p2, parse_assertion("0 = 0", *p1, *p2),
               parse_assertion("x#1 = x#2", *p1, *p2)};
    CheckResult r = check_proof(j, make_proof(ProofNode::Sample{"v"}), CheckOptions{});
    CHECK(r.accepted());
  }
}

TEST_CASE("the random-walk proof script is accepted (k=2, n=1)") {
  WalkSetup s = make_walk(2, 1);
  CheckResult r = check_proof(s.judgment, s.proof, s.opts);
  for (const auto& rec : r.log) {
    INFO(rec.path << " [" << rec.rule << "] " << rec.description);
    CHECK(rec.ok());
  }
  CHECK(r.accepted());

  // Deterministic: same inputs, identical log.
  CheckResult again = check_proof(s.judgment, s.proof, s.opts);
  REQUIRE(again.log.size() == r.log.size());
  for (size_t i = 0; i < r.log.size(); ++i) {
    CHECK(r.log[i].path == again.log[i].path);
    CHECK(r.log[i].status == again.log[i].status);
  }
}

TEST_CASE("swapping the bijections is rejected at a sample obligation") {
  WalkSetup s = make_walk(2, 1, "!v", "v");
  CheckResult r = check_proof(s.judgment, s.proof, s.opts);
  CHECK_FALSE(r.accepted());
  bool found = false;
  for (const auto& rec : r.log) {
    if (rec.ok() || rec.rule != "sample") continue;
    found = true;
    // The counterexample re-evaluates to a violation of the postcondition
    // obligation: rebuild the pair and the sampled value and re-check.
    REQUIRE(rec.counterexample.contains("m1"));
    REQUIRE(rec.counterexample.contains("v"));
    Memory m1 = memory_from_json(*s.judgment.left, rec.counterexample.at("m1"));
    Memory m2 = memory_from_json(*s.judgment.right, rec.counterexample.at("m2"));
    Value v = Value::from_json(rec.counterexample.at("v"));
    // The equal-position case used bijection !v: the coupled samples are
    // (v, !v), which must violate the step postcondition b#1 = b#2.
    Memory u1 = m1.with(s.judgment.left->slot_of("b"), v);
    Memory u2 = m2.with(s.judgment.right->slot_of("b"), Value::boolean(!v.as_bool()));
    ExprPtr post = parse_assertion("b#1 = b#2", *s.judgment.left, *s.judgment.right,
                                   s.reg.get());
    CHECK_FALSE(eval_expr(EvalScope::pair(u1, u2), post).as_bool());
    break;
  }
  CHECK(found);
}

TEST_CASE("weakening: conseq around an accepted judgment stays accepted") {
  WalkSetup s = make_walk(2, 1);
  // Strengthen the pre with a tautology and weaken the post to an implication.
  auto wrapped = make_proof(ProofNode::Conseq{
      "start#1 + 2*n#1 = start#2", "P(H#1) -> pos#1 = pos#2", s.proof});
  Judgment j = s.judgment;
  j.pre = parse_assertion("start#1 + 2*n#1 = start#2 && i#1 = i#1", *j.left, *j.right,
                          s.reg.get());
  j.post = parse_assertion("(P(H#1) && i#1 = i#2) -> pos#1 = pos#2", *j.left, *j.right,
                           s.reg.get());
  CheckResult r = check_proof(j, wrapped, s.opts);
  CHECK(r.accepted());
}

TEST_CASE("walk proof is accepted across k and n") {
  for (long k : {2L, 3L}) {
    for (long n : {1L, 2L}) {
      WalkSetup s = make_walk(k, n);
      CheckResult r = check_proof(s.judgment, s.proof, s.opts);
      INFO("k=" << k << " n=" << n);
      CHECK(r.accepted());
    }
  }
}

TEST_CASE("structural mismatches fail without crashing") {
  WalkSetup s = make_walk(2, 1);
  // A while proof applied to the whole body (which is not a single loop).
  auto bad = make_proof(ProofNode::While{"0 = 0", make_proof(ProofNode::Skip{})});
  CheckResult r = check_proof(s.judgment, bad, s.opts);
  CHECK_FALSE(r.accepted());
  CHECK(r.log.size() >= 1);
}

TEST_CASE("capacity overflow raises instead of passing") {
  WalkSetup s = make_walk(2, 1);
  s.opts.enumeration_cap = 2;
  CHECK_THROWS_AS((void)check_proof(s.judgment, s.proof, s.opts), PrhlError);
}
