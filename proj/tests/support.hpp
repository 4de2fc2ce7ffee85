#ifndef PRHL_TESTS_SUPPORT_HPP
#define PRHL_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "prhl/lifting.hpp"
#include "prhl/subdist.hpp"

namespace prhl::testing {

// ---------------------------------------------------------------------------
// Independent oracles. These live in test code only and never call into the
// implementation paths they are used to check.
// ---------------------------------------------------------------------------

// Transportation feasibility by the Hall / max-flow-min-cut condition,
// decided by brute-force subset enumeration over supp(mu1): a coupling with
// support inside R exists iff the masses agree and every subset S of
// supp(mu1) satisfies mu1(S) <= mu2(N(S)).
inline bool hall_feasible(const Relation& r, const SubDist& mu1, const SubDist& mu2) {
  if (mu1.mass() != mu2.mass()) return false;
  std::vector<const Value*> a, b;
  std::vector<Rational> pa, pb;
  for (const auto& [v, p] : mu1.entries()) {
    a.push_back(&v);
    pa.push_back(p);
  }
  for (const auto& [v, p] : mu2.entries()) {
    b.push_back(&v);
    pb.push_back(p);
  }
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) rel[i][j] = r(*a[i], *b[j]);
  }
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    Rational supply = 0;
    std::vector<bool> reachable(m, false);
    for (size_t i = 0; i < n; ++i) {
      if (!(mask & (size_t{1} << i))) continue;
      supply += pa[i];
      for (size_t j = 0; j < m; ++j) {
        if (rel[i][j]) reachable[j] = true;
      }
    }
    Rational demand = 0;
    for (size_t j = 0; j < m; ++j) {
      if (reachable[j]) demand += pb[j];
    }
    if (supply > demand) return false;
  }
  return true;
}

// Binomial(k, p) over {0..k} from binomial coefficients, independent of any
// interpreter or sampling code.
inline SubDist binomial(int k, const Rational& p) {
  SubDist d;
  Rational coeff = 1;  // C(k, i), updated incrementally
  for (int i = 0; i <= k; ++i) {
    Rational term = coeff;
    for (int j = 0; j < i; ++j) term *= p;
    for (int j = 0; j < k - i; ++j) term *= (Rational(1) - p);
    d.add(Value::integer(i), term);
    coeff = coeff * (k - i) / (i + 1);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Random generators (deterministic seeds; exact rational weights).
// ---------------------------------------------------------------------------

// A random mass-1 distribution over a non-empty random subset of {0..5}.
inline SubDist random_dist(std::mt19937& rng) {
  std::uniform_int_distribution<int> weight(0, 9);
  std::vector<std::pair<int, int>> picked;
  while (picked.empty()) {
    picked.clear();
    for (int v = 0; v <= 5; ++v) {
      int w = weight(rng);
      if (w > 0) picked.emplace_back(v, w);
    }
  }
  long total = 0;
  for (auto& [v, w] : picked) total += w;
  SubDist d;
  for (auto& [v, w] : picked) d.add(Value::integer(v), Rational(w, total));
  return d;
}

// A random mass-1 coupling over {0..5} x {0..5}; its own marginals make it a
// member of the Frechet class by construction.
inline Coupling random_coupling(std::mt19937& rng) {
  std::uniform_int_distribution<int> weight(0, 3);
  std::vector<std::tuple<int, int, int>> picked;
  while (picked.empty()) {
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) {
        int w = weight(rng);
        if (w > 0) picked.emplace_back(a, b, w);
      }
    }
  }
  long total = 0;
  for (auto& [a, b, w] : picked) total += w;
  SubDist joint;
  for (auto& [a, b, w] : picked) {
    joint.add(Value::pair(Value::integer(a), Value::integer(b)), Rational(w, total));
  }
  return Coupling(std::move(joint));
}

}  // namespace prhl::testing

#endif  // PRHL_TESTS_SUPPORT_HPP
