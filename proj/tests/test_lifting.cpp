#include <random>

#include "doctest.h"
#include "prhl/lifting.hpp"
#include "support.hpp"

using namespace prhl;
using prhl::testing::binomial;
using prhl::testing::hall_feasible;

namespace {

Value iv(long i) { return Value::integer(i); }

// Support of a witness lies inside R and its marginals are exact.
void check_witness(const Coupling& w, const Relation& r, const SubDist& mu1, const SubDist& mu2) {
  CHECK(in_frechet(w, mu1, mu2));
  for (const auto& [v, p] : w.joint().entries()) {
    REQUIRE(v.is_pair());
    CHECK(r(v.first(), v.second()));
    CHECK(p > 0);
  }
}

}  // namespace

TEST_CASE("marginals: row and column sums") {
  Coupling c(SubDist::from_entries({{Value::pair(iv(0), iv(0)), Rational(1, 4)},
                                    {Value::pair(iv(0), iv(1)), Rational(1, 4)},
                                    {Value::pair(iv(1), iv(1)), Rational(1, 2)}}));
  CHECK(c.marginal1() ==
        SubDist::from_entries({{iv(0), Rational(1, 2)}, {iv(1), Rational(1, 2)}}));
  CHECK(c.marginal2() ==
        SubDist::from_entries({{iv(0), Rational(1, 4)}, {iv(1), Rational(3, 4)}}));

  Coupling point(SubDist::unit(Value::pair(iv(0), iv(1))));
  CHECK(point.marginal1() == SubDist::unit(iv(0)));
  CHECK(point.mismatch_probability().value() == 1);
}

TEST_CASE("marginals reject non-pair support") {
  Coupling bad(SubDist::unit(iv(3)));
  CHECK_THROWS_AS((void)bad.marginal1(), PrhlError);
  CHECK_THROWS_AS((void)bad.mismatch_probability(), PrhlError);
}

TEST_CASE("frechet membership") {
  SubDist fair = bernoulli(Rational(1, 2));
  CHECK(in_frechet(Coupling::product(fair, fair), fair, fair));
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    SubDist mu = prhl::testing::random_dist(rng);
    CHECK(in_frechet(Coupling::diagonal(mu), mu, mu));
  }
  Coupling c(SubDist::unit(Value::pair(iv(0), iv(0))));
  CHECK_FALSE(in_frechet(c, SubDist::unit(iv(0)), SubDist::unit(iv(1))));
}

TEST_CASE("mismatch probability of the product of fair coins") {
  SubDist fair = bernoulli(Rational(1, 2));
  CHECK(Coupling::product(fair, fair).mismatch_probability().value() == Rational(1, 2));
  CHECK(Coupling::diagonal(fair).mismatch_probability().value() == 0);
}

TEST_CASE("lifting: equality relation") {
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    SubDist mu = prhl::testing::random_dist(rng);
    auto w = lifting_exists(Relation::equality(), mu, mu);
    REQUIRE(w.has_value());
    CHECK(w->joint() == Coupling::diagonal(mu).joint());
  }
  CHECK_FALSE(
      lifting_exists(Relation::equality(), bernoulli(Rational(7, 10)), bernoulli(Rational(2, 5)))
          .has_value());
}

TEST_CASE("lifting: >= over booleans, Bern(7/10) vs Bern(2/5)") {
  SubDist hi = bernoulli(Rational(7, 10));
  SubDist lo = bernoulli(Rational(2, 5));
  auto w = lifting_exists(Relation::geq(), hi, lo);
  REQUIRE(w.has_value());
  check_witness(*w, Relation::geq(), hi, lo);
  CHECK_FALSE(lifting_exists(Relation::geq(), lo, hi).has_value());
}

TEST_CASE("lifting: mass mismatch is none, not an error") {
  SubDist sub;
  sub.add(iv(0), Rational(1, 2));
  CHECK_FALSE(lifting_exists(Relation::full(), sub, SubDist::unit(iv(0))).has_value());
}

TEST_CASE("lifting: full relation feasible iff masses agree") {
  std::mt19937 rng(23);
  for (int i = 0; i < 30; ++i) {
    SubDist a = prhl::testing::random_dist(rng);
    SubDist b = prhl::testing::random_dist(rng);
    auto w = lifting_exists(Relation::full(), a, b);
    CHECK(w.has_value() == (a.mass() == b.mass()));
    if (w) check_witness(*w, Relation::full(), a, b);
  }
}

TEST_CASE("lifting agrees with the Hall-condition oracle on random relations") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    SubDist a = prhl::testing::random_dist(rng);
    SubDist b = prhl::testing::random_dist(rng);
    // Random relation on {0..5} x {0..5}, fixed per trial.
    std::array<std::array<bool, 6>, 6> table{};
    for (auto& row : table) {
      for (auto& cell : row) cell = coin(rng) == 1;
    }
    Relation r([table](const Value& x, const Value& y) {
      return table[size_t(long(x.as_int()))][size_t(long(y.as_int()))];
    });
    auto w = lifting_exists(r, a, b);
    CHECK(w.has_value() == hall_feasible(r, a, b));
    if (w) check_witness(*w, r, a, b);
  }
}

TEST_CASE("Thm 1: tv <= mismatch probability of any coupling") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Coupling c = prhl::testing::random_coupling(rng);
    SubDist m1 = c.marginal1();
    SubDist m2 = c.marginal2();
    CHECK(tv_distance(m1, m2).value() <= c.mismatch_probability().value());
  }
}

TEST_CASE("strassen check: frozen cases and random agreement") {
  CHECK(strassen_check(SubDist::unit(iv(1)), SubDist::unit(iv(0))));
  CHECK(strassen_check(binomial(3, Rational(7, 10)), binomial(3, Rational(2, 5))));
  CHECK_FALSE(strassen_check(bernoulli(Rational(2, 5)), bernoulli(Rational(7, 10))));

  std::mt19937 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    SubDist a = prhl::testing::random_dist(rng);
    SubDist b = prhl::testing::random_dist(rng);
    CHECK_NOTHROW((void)strassen_check(a, b));
  }
}
