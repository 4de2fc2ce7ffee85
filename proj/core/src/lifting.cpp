#include "prhl/lifting.hpp"

#include <set>

#include "prhl/flow.hpp"

namespace prhl {

Relation Relation::from_pairs(std::vector<std::pair<Value, Value>> pairs) {
  auto set = std::make_shared<std::set<std::pair<Value, Value>>>(pairs.begin(), pairs.end());
  return Relation([set](const Value& a, const Value& b) {
    return set->count(std::make_pair(a, b)) > 0;
  });
}

Coupling Coupling::diagonal(const SubDist& mu) {
  SubDist joint;
  for (const auto& [v, p] : mu.entries()) {
    joint.add(Value::pair(v, v), p);
  }
  return Coupling(std::move(joint));
}

Coupling Coupling::product(const SubDist& mu1, const SubDist& mu2) {
  SubDist joint;
  for (const auto& [a, pa] : mu1.entries()) {
    for (const auto& [b, pb] : mu2.entries()) {
      joint.add(Value::pair(a, b), pa * pb);
    }
  }
  return Coupling(std::move(joint));
}

namespace {

[[noreturn]] void malformed(const Value& v) {
  throw PrhlError(ErrorKind::MalformedCoupling,
                  "coupling support contains a non-pair value: " + v.to_string());
}

}  // namespace

SubDist Coupling::marginal1() const {
  SubDist out;
  for (const auto& [v, p] : joint_.entries()) {
    if (!v.is_pair()) malformed(v);
    out.add(v.first(), p);
  }
  return out;
}

SubDist Coupling::marginal2() const {
  SubDist out;
  for (const auto& [v, p] : joint_.entries()) {
    if (!v.is_pair()) malformed(v);
    out.add(v.second(), p);
  }
  return out;
}

Prob Coupling::mismatch_probability() const {
  Rational total = 0;
  for (const auto& [v, p] : joint_.entries()) {
    if (!v.is_pair()) malformed(v);
    if (v.first() != v.second()) total += p;
  }
  return Prob(total);
}

bool in_frechet(const Coupling& c, const SubDist& mu1, const SubDist& mu2) {
  return c.marginal1() == mu1 && c.marginal2() == mu2;
}

std::optional<IndexedLifting> solve_lifting(const std::vector<Rational>& left,
                                            const std::vector<Rational>& right,
                                            const std::vector<std::pair<int, int>>& edges) {
  Rational mass1 = 0, mass2 = 0;
  for (const Rational& p : left) mass1 += p;
  for (const Rational& p : right) mass2 += p;
  if (mass1 != mass2) return std::nullopt;

  const int n1 = static_cast<int>(left.size());
  const int n2 = static_cast<int>(right.size());
  const int source = n1 + n2;
  const int sink = source + 1;
  FlowNetwork net(n1 + n2 + 2);
  for (int i = 0; i < n1; ++i) net.add_edge(source, i, left[i]);
  for (int j = 0; j < n2; ++j) net.add_edge(n1 + j, sink, right[j]);

  std::vector<int> edge_ids;
  edge_ids.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    // min(left, right) bounds any feasible flow on (i, j); no infinite
    // capacities are needed.
    edge_ids.push_back(net.add_edge(i, n1 + j, left[i] < right[j] ? left[i] : right[j]));
  }

  if (net.max_flow(source, sink) != mass1) return std::nullopt;

  IndexedLifting result;
  for (size_t k = 0; k < edges.size(); ++k) {
    const Rational& f = net.flow(edge_ids[k]);
    if (f > 0) result.flows.emplace_back(edges[k].first, edges[k].second, f);
  }
  return result;
}

std::optional<Coupling> lifting_exists(const Relation& r, const SubDist& mu1,
                                       const SubDist& mu2) {
  std::vector<const Value*> vals1, vals2;
  std::vector<Rational> left, right;
  for (const auto& [v, p] : mu1.entries()) {
    vals1.push_back(&v);
    left.push_back(p);
  }
  for (const auto& [v, p] : mu2.entries()) {
    vals2.push_back(&v);
    right.push_back(p);
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(vals1.size()); ++i) {
    for (int j = 0; j < static_cast<int>(vals2.size()); ++j) {
      if (r(*vals1[i], *vals2[j])) edges.emplace_back(i, j);
    }
  }

  auto solved = solve_lifting(left, right, edges);
  if (!solved) return std::nullopt;

  SubDist joint;
  for (const auto& [i, j, f] : solved->flows) {
    joint.add(Value::pair(*vals1[i], *vals2[j]), f);
  }
  return Coupling(std::move(joint));
}

bool strassen_check(const SubDist& mu1, const SubDist& mu2) {
  const bool by_cdf = stochastically_dominates(mu1, mu2);
  const bool by_flow = lifting_exists(Relation::geq(), mu1, mu2).has_value();
  if (by_cdf != by_flow) {
    throw PrhlError(ErrorKind::InternalInconsistency,
                    std::string("Strassen check: CDF test says ") + (by_cdf ? "true" : "false") +
                        " but the flow oracle says " + (by_flow ? "true" : "false") + " for " +
                        mu1.to_string() + " vs " + mu2.to_string());
  }
  return by_cdf;
}

}  // namespace prhl
