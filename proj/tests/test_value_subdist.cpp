#include <random>

#include "doctest.h"
#include "prhl/subdist.hpp"
#include "support.hpp"

using namespace prhl;

namespace {

Value iv(long i) { return Value::integer(i); }

Value move(const char* ctor, int ord) { return Value::enumerated(EnumVal{"Move", ctor, ord}); }

}  // namespace

TEST_CASE("value total order: tag first, then payload") {
  CHECK(Value::boolean(false) < Value::boolean(true));
  CHECK(Value::boolean(true) < iv(0));
  CHECK(iv(-3) < iv(2));
  CHECK(iv(7) < Value::rational(Rational(1, 2)));
  CHECK(move("Left", 0) < move("Right", 1));
  CHECK(Value::pair(iv(0), iv(5)) < Value::pair(iv(1), iv(0)));
  CHECK(Value::list({iv(1)}) < Value::list({iv(1), iv(0)}));
  CHECK(Value::tuple({iv(1)}) < Value::list({}));  // tuples order before lists
  CHECK(iv(4) == iv(4));
  CHECK(Value::list({iv(1), iv(2)}) == Value::list({iv(1), iv(2)}));
}

TEST_CASE("value json round trip") {
  std::vector<Value> samples = {
      Value::boolean(true),
      iv(-42),
      Value::integer(Int("123456789012345678901234567890")),
      Value::rational(Rational(7, 10)),
      move("Still", 2),
      Value::pair(iv(1), Value::boolean(false)),
      Value::list({iv(1), iv(2), iv(3)}),
      Value::nil(),
  };
  for (const Value& v : samples) {
    CHECK(Value::from_json(v.to_json()) == v);
  }
}

TEST_CASE("unit is the Dirac distribution") {
  SubDist d = SubDist::unit(iv(0));
  CHECK(d.prob(iv(0)) == 1);
  CHECK(d.mass() == 1);
  SubDist p = SubDist::unit(Value::pair(move("Left", 0), move("Still", 2)));
  CHECK(p.mass() == 1);
  CHECK(p.support_size() == 1);
}

TEST_CASE("mlet: monad laws and the 2-point example") {
  auto succ = [](const Value& v) { return SubDist::unit(iv(long(v.as_int()) + 1)); };

  SubDist two = SubDist::from_entries({{iv(0), Rational(1, 2)}, {iv(1), Rational(1, 2)}});
  SubDist shifted = mlet(two, succ);
  CHECK(shifted == SubDist::from_entries({{iv(1), Rational(1, 2)}, {iv(2), Rational(1, 2)}}));

  // Left and right unit laws plus associativity on random distributions.
  std::mt19937 rng(7);
  auto to_unit = [](const Value& v) { return SubDist::unit(v); };
  auto f = [](const Value& v) {
    return SubDist::from_entries(
        {{iv(long(v.as_int()) % 3), Rational(1, 2)}, {iv(0), Rational(1, 2)}});
  };
  auto g = [](const Value& v) { return bernoulli(Rational(long(v.as_int()) % 2, 2) + Rational(1, 4)); };
  for (int trial = 0; trial < 25; ++trial) {
    SubDist mu = prhl::testing::random_dist(rng);
    CHECK(mlet(SubDist::unit(iv(trial)), f) == f(iv(trial)));
    CHECK(mlet(mu, to_unit) == mu);
    SubDist lhs = mlet(mlet(mu, f), g);
    SubDist rhs = mlet(mu, [&](const Value& v) { return mlet(f(v), g); });
    CHECK(lhs == rhs);
  }
}

TEST_CASE("mlet mass never grows") {
  std::mt19937 rng(11);
  auto lossy = [](const Value& v) {
    SubDist d;
    d.add(v, Rational(1, 2));
    return d;
  };
  for (int trial = 0; trial < 20; ++trial) {
    SubDist mu = prhl::testing::random_dist(rng);
    CHECK(mlet(mu, lossy).mass() == mu.mass() / 2);
    CHECK(mlet(mu, [](const Value& v) { return SubDist::unit(v); }).mass() == mu.mass());
  }
}

TEST_CASE("tv distance: frozen examples") {
  SubDist a = SubDist::unit(iv(0));
  SubDist b = SubDist::unit(iv(1));
  CHECK(tv_distance(a, a).value() == 0);
  CHECK(tv_distance(a, b).value() == 1);
  CHECK(tv_distance(bernoulli(Rational(7, 10)), bernoulli(Rational(2, 5))).value() ==
        Rational(3, 10));
}

TEST_CASE("tv distance: symmetry, triangle inequality, range") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    SubDist x = prhl::testing::random_dist(rng);
    SubDist y = prhl::testing::random_dist(rng);
    SubDist z = prhl::testing::random_dist(rng);
    const Rational xy = tv_distance(x, y).value();
    CHECK(xy == tv_distance(y, x).value());
    CHECK(xy >= 0);
    CHECK(xy <= 1);
    CHECK(xy <= tv_distance(x, z).value() + tv_distance(z, y).value());
  }
}

TEST_CASE("stochastic dominance: binomial CDFs") {
  using prhl::testing::binomial;
  CHECK(stochastically_dominates(binomial(3, Rational(7, 10)), binomial(3, Rational(7, 10))));
  CHECK(stochastically_dominates(binomial(3, Rational(7, 10)), binomial(3, Rational(2, 5))));
  CHECK_FALSE(stochastically_dominates(binomial(3, Rational(2, 5)), binomial(3, Rational(7, 10))));
}

TEST_CASE("stochastic dominance rejects incomparable supports") {
  SubDist mixed;
  mixed.add(iv(0), Rational(1, 2));
  mixed.add(Value::boolean(true), Rational(1, 2));
  CHECK_THROWS_AS((void)stochastically_dominates(mixed, mixed), PrhlError);
}

TEST_CASE("subdist json form is canonical and sorted") {
  SubDist d;
  d.add(iv(3), Rational(1, 4));
  d.add(iv(-1), Rational(1, 2));
  nlohmann::json j = d.to_json();
  CHECK(j.at("entries").size() == 2);
  CHECK(j.at("entries")[0][0].get<int>() == -1);
  CHECK(j.at("entries")[0][1].get<std::string>() == "1/2");
  CHECK(SubDist::from_json(j) == d);
  CHECK(d.to_json().dump() == j.dump());
}

TEST_CASE("subdist invariants enforced") {
  SubDist d;
  CHECK_THROWS_AS(d.add(iv(0), Rational(-1, 2)), PrhlError);
  d.add(iv(0), Rational(3, 4));
  CHECK_THROWS_AS(d.add(iv(1), Rational(1, 2)), PrhlError);
  CHECK(d.prob(iv(5)) == 0);
}
