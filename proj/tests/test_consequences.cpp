#include "doctest.h"
#include "prhl/conseq/consequences.hpp"
#include "support.hpp"
#include "walk_fixture.hpp"

using namespace prhl;
using namespace prhl::lang;
using namespace prhl::logic;
using namespace prhl::conseq;
using prhl::testing::make_walk;
using prhl::testing::WalkSetup;

namespace {

// Independent oracle: enumerate the 2^k coin sequences of the basic walk
// directly, with no interpreter involved.
struct WalkEnum {
  SubDist positions;       // final position distribution
  Rational p_not_met = 0;  // probability no chronological prefix reaches +n
};

WalkEnum enumerate_walk(long start, long k, long n) {
  WalkEnum out;
  const long paths = 1L << k;
  const Rational w(1, paths);
  for (long bits = 0; bits < paths; ++bits) {
    long pos = start;
    long sigma = 0;
    bool met = (n == 0);
    for (long step = 0; step < k; ++step) {
      const bool heads = (bits >> step) & 1;
      pos += heads ? 1 : -1;
      sigma += heads ? 1 : -1;
      if (sigma == n) met = true;
    }
    out.positions.add(Value::integer(pos), w);
    if (!met) out.p_not_met += w;
  }
  return out;
}

}  // namespace

TEST_CASE("tv_bound on the walk matches independent path enumeration (k=2, n=1)") {
  WalkSetup s = make_walk(2, 1);
  CheckResult cr;
  auto vj = verify(s.judgment, s.proof, s.opts, &cr);
  REQUIRE(vj.has_value());

  Memory m1 = default_memory(*s.judgment.left);
  Memory m2 = default_memory(*s.judgment.right);
  TvReport r = tv_bound(*vj, m1, m2, s.opts);

  // Frozen from the oracle below: both sides equal 1/2 at k=2, n=1.
  CHECK(r.tv == Rational(1, 2));
  CHECK(r.bound == Rational(1, 2));
  CHECK(r.holds);

  WalkEnum left = enumerate_walk(0, 2, 1);
  WalkEnum right = enumerate_walk(2, 2, 1);
  CHECK(r.tv == tv_distance(left.positions, right.positions).value());
  CHECK(r.bound == left.p_not_met);
}

TEST_CASE("tv_bound across walk parameters agrees with the path oracle") {
  for (long k : {2L, 3L, 4L}) {
    for (long n : {1L, 2L}) {
      WalkSetup s = make_walk(k, n);
      auto vj = verify(s.judgment, s.proof, s.opts, nullptr);
      REQUIRE(vj.has_value());
      TvReport r = tv_bound(*vj, default_memory(*s.judgment.left),
                            default_memory(*s.judgment.right), s.opts);
      WalkEnum left = enumerate_walk(0, k, n);
      WalkEnum right = enumerate_walk(2 * n, k, n);
      INFO("k=" << k << " n=" << n);
      CHECK(r.tv == tv_distance(left.positions, right.positions).value());
      CHECK(r.bound == left.p_not_met);
      CHECK(r.holds);
    }
  }
}

TEST_CASE("identical programs with Phi = true give tv = 0 <= 0") {
  auto p1 = std::make_shared<Program>(parse_program("var x : bool; x ~~ Bern(1/2) return x"));
  auto p2 = std::make_shared<Program>(parse_program("var x : bool; x ~~ Bern(1/2) return x"));
  Judgment j{p1, p2, parse_assertion("0 = 0", *p1, *p2),
             parse_assertion("0 = 0 -> x#1 = x#2", *p1, *p2)};
  CheckOptions opts;
  auto vj = verify(j, logic::make_proof(ProofNode::Sample{"v"}), opts, nullptr);
  REQUIRE(vj.has_value());
  TvReport r = tv_bound(*vj, default_memory(*p1), default_memory(*p2), opts);
  CHECK(r.tv == 0);
  CHECK(r.bound == 0);
  CHECK(r.holds);
}

TEST_CASE("the bound depends only on the left program and memory") {
  // Identical one-coin programs, free boolean input c on the right side only.
  auto p1 = std::make_shared<Program>(
      parse_program("var x : bool; var c : bool; x ~~ Bern(1/2); c := x return x"));
  auto p2 = std::make_shared<Program>(
      parse_program("var x : bool; var c : bool; x ~~ Bern(1/2); c := x return x"));
  Judgment j{p1, p2, parse_assertion("0 = 0", *p1, *p2),
             parse_assertion("x#1 = x#1 -> x#1 = x#2", *p1, *p2)};
  CheckOptions opts;
  auto proof = logic::make_proof(ProofNode::Seq{
      1, 1, "x#1 = x#2", logic::make_proof(ProofNode::Sample{"v"}),
      logic::make_proof(ProofNode::Assign{})});
  auto vj = verify(j, proof, opts, nullptr);
  REQUIRE(vj.has_value());

  Memory m1 = default_memory(*p1);
  Memory m2a = default_memory(*p2);
  Memory m2b = m2a.with(p2->slot_of("c"), Value::boolean(true));
  TvReport ra = tv_bound(*vj, m1, m2a, opts);
  TvReport rb = tv_bound(*vj, m1, m2b, opts);
  CHECK(ra.bound == rb.bound);
}

TEST_CASE("tv_bound rejects malformed postconditions") {
  WalkSetup s = make_walk(2, 1);
  auto vj = verify(s.judgment, s.proof, s.opts, nullptr);
  REQUIRE(vj.has_value());
  Memory m1 = default_memory(*s.judgment.left);
  Memory m2 = default_memory(*s.judgment.right);

  // Wrong pair: the precondition start#1 + 2n = start#2 fails.
  CHECK_THROWS_AS((void)tv_bound(*vj, m1, m1, s.opts), PrhlError);

  // A dominance-shaped judgment has the wrong shape for tv_bound.
  Judgment sd = s.judgment;
  sd.post = parse_assertion("pos#1 >= pos#2", *sd.left, *sd.right, s.reg.get());
  CheckResult cr;
  // (The proof does not accept this post; construct the report against a
  // hand-verified trivial judgment instead.)
  auto p1 = std::make_shared<Program>(parse_program("var x : [1, 1]; x := 1 return x"));
  auto p2 = std::make_shared<Program>(parse_program("var x : [0, 0]; x := 0 return x"));
  Judgment j{p1, p2, parse_assertion("0 = 0", *p1, *p2),
             parse_assertion("x#1 >= x#2", *p1, *p2)};
  auto vj2 = verify(j, logic::make_proof(ProofNode::Assign{}), CheckOptions{}, nullptr);
  REQUIRE(vj2.has_value());
  CHECK_THROWS_AS((void)tv_bound(*vj2, default_memory(*p1), default_memory(*p2), CheckOptions{}),
                  PrhlError);
  // ... while sd_conclude accepts it.
  auto reports = sd_conclude(*vj2, default_memory(*p1), default_memory(*p2), CheckOptions{});
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].dominates);
  CHECK(reports[0].witness_found);
}

TEST_CASE("sd_conclude: binomial dominance with witness (biased coins endpoint)") {
  const char* src = R"(
    param k : int;
    param q : prob;
    var n : int in [0, k];
    var i : int in [0, k];
    var x : bool;
    n := 0; i := 0;
    while i < k do
      x ~~ Bern(q);
      if x then n := n + 1 fi;
      i := i + 1
    end
    return n
  )";
  ParseOptions o1, o2;
  o1.params = {{"k", "3"}, {"q", "7/10"}};
  o2.params = {{"k", "3"}, {"q", "2/5"}};
  auto p1 = std::make_shared<Program>(parse_program(src, o1));
  auto p2 = std::make_shared<Program>(parse_program(src, o2));

  // The full structural proof for cross-bias coins goes through the
  // coin-split route exercised by the case studies; here the endpoint claim
  // itself is checked against the independent binomial CDFs.
  SubDist left = pushforward(interpret(*p1, default_memory(*p1)), p1->returns[0]);
  SubDist right = pushforward(interpret(*p2, default_memory(*p2)), p2->returns[0]);
  CHECK(left == prhl::testing::binomial(3, Rational(7, 10)));
  CHECK(right == prhl::testing::binomial(3, Rational(2, 5)));
  CHECK(stochastically_dominates(left, right));
  auto witness = lifting_exists(Relation::geq(), left, right);
  REQUIRE(witness.has_value());
  CHECK(in_frechet(*witness, left, right));
}
