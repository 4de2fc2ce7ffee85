#ifndef PRHL_SUBDIST_HPP
#define PRHL_SUBDIST_HPP

#include <functional>
#include <map>
#include <utility>

#include "prhl/value.hpp"

namespace prhl {

// A finite-support sub-distribution over Values: only strictly positive
// probabilities are stored and the total mass never exceeds 1. All
// arithmetic is exact rational; there is no rounding anywhere.
class SubDist {
 public:
  using Map = std::map<Value, Rational>;

  SubDist() = default;

  // The Dirac distribution at a.
  static SubDist unit(Value a) {
    SubDist d;
    d.entries_.emplace(std::move(a), Rational(1));
    d.mass_ = 1;
    return d;
  }

  static SubDist from_entries(const std::vector<std::pair<Value, Rational>>& entries);

  // Adds p to the probability of v. p must be >= 0; the updated mass must
  // stay <= 1.
  void add(const Value& v, const Rational& p);

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  const Rational& mass() const { return mass_; }
  Rational prob(const Value& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const SubDist& a, const SubDist& b) {
    return a.entries_ == b.entries_;
  }

  std::string to_string() const;

  // Canonical form {"entries": [[value, "num/den"], ...]}, entries sorted by
  // the Value order. Identical distributions serialize byte-identically.
  nlohmann::json to_json() const;
  static SubDist from_json(const nlohmann::json& j);

 private:
  Map entries_;
  Rational mass_ = 0;
};

// Monadic bind: mlet(mu, F)(b) = sum_a mu(a) * F(a)(b). F must be total on
// supp(mu).
SubDist mlet(const SubDist& mu, const std::function<SubDist(const Value&)>& f);

// Bern(p) over booleans; p must lie in [0, 1].
SubDist bernoulli(const Rational& p);

// The uniform distribution over a non-empty set of distinct values.
SubDist uniform(const ValueVec& values);

// Total variation distance: (1/2) * sum_a |mu1(a) - mu2(a)| over the union
// of the supports.
Prob tv_distance(const SubDist& mu1, const SubDist& mu2);

// Upper-tail (CDF) test: Pr_{x~mu1}[x >= a] >= Pr_{x~mu2}[x >= a] for every
// a in the union of the supports. Requires the two supports to consist of
// values of one common kind.
bool stochastically_dominates(const SubDist& mu1, const SubDist& mu2);

}  // namespace prhl

#endif  // PRHL_SUBDIST_HPP
