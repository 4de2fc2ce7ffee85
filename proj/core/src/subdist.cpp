#include "prhl/subdist.hpp"

#include <sstream>

namespace prhl {

SubDist SubDist::from_entries(const std::vector<std::pair<Value, Rational>>& entries) {
  SubDist d;
  for (const auto& [v, p] : entries) d.add(v, p);
  return d;
}

void SubDist::add(const Value& v, const Rational& p) {
  if (p < 0) {
    throw_error(ErrorKind::Domain, "negative probability " + format_rational(p) + " for value " +
                                       v.to_string());
  }
  if (p == 0) return;
  mass_ += p;
  if (mass_ > 1) {
    throw_error(ErrorKind::Domain, "sub-distribution mass exceeds 1: " + format_rational(mass_));
  }
  entries_[v] += p;
}

std::string SubDist::to_string() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [v, p] : entries_) {
    if (!first) out << ", ";
    first = false;
    out << v.to_string() << ": " << format_rational(p);
  }
  out << "}";
  return out.str();
}

nlohmann::json SubDist::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [v, p] : entries_) {
    entries.push_back(nlohmann::json::array({v.to_json(), format_rational(p)}));
  }
  return nlohmann::json{{"entries", std::move(entries)}};
}

SubDist SubDist::from_json(const nlohmann::json& j) {
  SubDist d;
  for (const auto& e : j.at("entries")) {
    d.add(Value::from_json(e.at(0)), parse_rational(e.at(1).get<std::string>()));
  }
  return d;
}

SubDist mlet(const SubDist& mu, const std::function<SubDist(const Value&)>& f) {
  SubDist out;
  for (const auto& [a, pa] : mu.entries()) {
    const SubDist fa = f(a);
    for (const auto& [b, pb] : fa.entries()) {
      out.add(b, pa * pb);
    }
  }
  return out;
}

SubDist bernoulli(const Rational& p) {
  if (!is_probability(p)) {
    throw_error(ErrorKind::Domain, "Bern parameter out of [0, 1]: " + format_rational(p));
  }
  SubDist d;
  d.add(Value::boolean(true), p);
  d.add(Value::boolean(false), Rational(1) - p);
  return d;
}

SubDist uniform(const ValueVec& values) {
  if (values.empty()) {
    throw_error(ErrorKind::Domain, "uniform distribution over an empty set");
  }
  const Rational p(1, static_cast<long>(values.size()));
  SubDist d;
  for (const Value& v : values) {
    if (d.prob(v) != 0) {
      throw_error(ErrorKind::Domain, "duplicate value in uniform set: " + v.to_string());
    }
    d.add(v, p);
  }
  return d;
}

Prob tv_distance(const SubDist& mu1, const SubDist& mu2) {
  Rational total = 0;
  for (const auto& [v, p] : mu1.entries()) {
    total += abs(p - mu2.prob(v));
  }
  for (const auto& [v, p] : mu2.entries()) {
    if (mu1.prob(v) == 0) total += p;
  }
  return Prob(total / 2);
}

bool stochastically_dominates(const SubDist& mu1, const SubDist& mu2) {
  // The supports must be comparable: one common kind across both.
  std::map<Value, int> support;
  Value::Kind kind{};
  bool have_kind = false;
  auto note = [&](const Value& v) {
    if (!have_kind) {
      kind = v.kind();
      have_kind = true;
    } else if (v.kind() != kind) {
      throw_error(ErrorKind::Type, "stochastic dominance over incomparable values: " +
                                       v.to_string());
    }
    support.emplace(v, 0);
  };
  for (const auto& [v, p] : mu1.entries()) note(v);
  for (const auto& [v, p] : mu2.entries()) note(v);

  // Walk the union support from the top down, accumulating upper tails.
  Rational tail1 = 0, tail2 = 0;
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    tail1 += mu1.prob(it->first);
    tail2 += mu2.prob(it->first);
    if (tail1 < tail2) return false;
  }
  return true;
}

}  // namespace prhl
