#ifndef PRHL_LIFTING_HPP
#define PRHL_LIFTING_HPP

#include <functional>
#include <optional>
#include <tuple>

#include "prhl/subdist.hpp"

namespace prhl {

// A decidable predicate over pairs of values. Evaluated lazily on the
// product of the two supports it is applied to.
class Relation {
 public:
  using Fn = std::function<bool(const Value&, const Value&)>;

  explicit Relation(Fn fn) : fn_(std::move(fn)) {}

  bool operator()(const Value& a, const Value& b) const { return fn_(a, b); }

  static Relation equality() {
    return Relation([](const Value& a, const Value& b) { return a == b; });
  }
  static Relation geq() {
    return Relation([](const Value& a, const Value& b) { return a >= b; });
  }
  static Relation full() {
    return Relation([](const Value&, const Value&) { return true; });
  }
  static Relation from_pairs(std::vector<std::pair<Value, Value>> pairs);

 private:
  Fn fn_;
};

// A joint sub-distribution over pairs (a, b), witnessing a coupling. Support
// values must be 2-tuples; the marginal operations enforce this.
class Coupling {
 public:
  Coupling() = default;
  explicit Coupling(SubDist joint) : joint_(std::move(joint)) {}

  static Coupling diagonal(const SubDist& mu);
  static Coupling product(const SubDist& mu1, const SubDist& mu2);

  const SubDist& joint() const { return joint_; }

  SubDist marginal1() const;
  SubDist marginal2() const;

  // Pr[(a, b) ~ joint : a != b], the coupled mismatch probability of Thm 1.
  Prob mismatch_probability() const;

 private:
  SubDist joint_;
};

// Both marginals equal the given sub-distributions exactly.
bool in_frechet(const Coupling& c, const SubDist& mu1, const SubDist& mu2);

// Decides mu1 R-dagger mu2 on finite supports and returns a witness when one
// exists. The decision procedure is transportation feasibility: a bipartite
// flow network with source capacities mu1(a), sink capacities mu2(b), and an
// (a, b) edge whenever R(a, b); a witness exists iff the masses agree and the
// max flow equals that common mass. All flow arithmetic is exact rational.
std::optional<Coupling> lifting_exists(const Relation& r, const SubDist& mu1, const SubDist& mu2);

// Index-level variant used both by lifting_exists and by callers that couple
// things other than Values (e.g. output memories). edges lists the admissible
// (i, j) pairs; the result maps admissible pairs to their witness flow.
struct IndexedLifting {
  std::vector<std::tuple<int, int, Rational>> flows;
};
std::optional<IndexedLifting> solve_lifting(const std::vector<Rational>& left,
                                            const std::vector<Rational>& right,
                                            const std::vector<std::pair<int, int>>& edges);

// Cross-checks the CDF dominance test against lifting_exists(>=): Strassen's
// theorem says they must agree. Returns the shared verdict and raises an
// internal-inconsistency error if the two independent procedures disagree.
bool strassen_check(const SubDist& mu1, const SubDist& mu2);

}  // namespace prhl

#endif  // PRHL_LIFTING_HPP
