#include "prhl/logic/validate.hpp"

#include <set>

#include "prhl/lifting.hpp"

namespace prhl::logic {

namespace {

using lang::EvalScope;
using lang::Memory;
using lang::MemoryDist;

// Tagged free variables of an assertion, split by side.
void assertion_slots(const ExprPtr& e, std::set<int>& side1, std::set<int>& side2);

struct SlotVisitor {
  std::set<int>& side1;
  std::set<int>& side2;

  void walk(const ExprPtr& e) {
    if (!e) return;
    if (const auto* v = e->get<lang::Expr::Var>()) {
      if (v->ref.bound < 0) (v->ref.side == 2 ? side2 : side1).insert(v->ref.slot);
      return;
    }
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, lang::Expr::Unary>) {
            walk(node.operand);
          } else if constexpr (std::is_same_v<T, lang::Expr::Binary>) {
            walk(node.lhs);
            walk(node.rhs);
          } else if constexpr (std::is_same_v<T, lang::Expr::Cond>) {
            walk(node.cond);
            walk(node.then_e);
            walk(node.else_e);
          } else if constexpr (std::is_same_v<T, lang::Expr::TupleExpr>) {
            for (const auto& i : node.items) walk(i);
          } else if constexpr (std::is_same_v<T, lang::Expr::Index>) {
            walk(node.base);
            walk(node.index);
          } else if constexpr (std::is_same_v<T, lang::Expr::Call>) {
            for (const auto& a : node.args) walk(a);
          } else if constexpr (std::is_same_v<T, lang::Expr::Quant>) {
            walk(node.lo);
            walk(node.hi);
            walk(node.body);
          } else if constexpr (std::is_same_v<T, lang::Expr::SampleAll>) {
            walk(node.body);
          }
        },
        e->rep);
  }
};

void assertion_slots(const ExprPtr& e, std::set<int>& side1, std::set<int>& side2) {
  SlotVisitor{side1, side2}.walk(e);
}

// Slots whose initial value can matter: the program's read-before-write
// inputs, the precondition's variables (they carve out the initial pair
// space), and postcondition variables the program does not surely overwrite.
std::vector<lang::DomainPtr> initial_domains(const Program& prog, const std::set<int>& from_pre,
                                             const std::set<int>& from_post) {
  std::set<int> wanted;
  for (int slot : lang::input_slots(prog, prog.returns)) wanted.insert(slot);
  for (int slot : from_pre) wanted.insert(slot);
  std::set<int> surely_written;
  for (int slot : lang::definitely_assigned(prog)) surely_written.insert(slot);
  for (int slot : from_post) {
    if (!surely_written.count(slot)) wanted.insert(slot);
  }

  std::vector<lang::DomainPtr> domains(prog.vars.size());
  for (int slot : wanted) {
    const lang::VarDecl& d = prog.vars.at(size_t(slot));
    if (!d.domain) {
      throw_error(ErrorKind::Domain,
                  "initial variable '" + d.name + "' has no finite domain; cannot enumerate");
    }
    domains[size_t(slot)] = d.domain;
  }
  return domains;
}

}  // namespace

nlohmann::json ValidationResult::to_json(const Program& p1, const Program& p2) const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairOutcome& o : outcomes) {
    nlohmann::json witness = nlohmann::json::array();
    for (const auto& [a, b, p] : o.witness) {
      witness.push_back(nlohmann::json::array(
          {lang::memory_to_json(p1, a), lang::memory_to_json(p2, b), format_rational(p)}));
    }
    pairs.push_back(nlohmann::json{{"m1", lang::memory_to_json(p1, o.m1)},
                                   {"m2", lang::memory_to_json(p2, o.m2)},
                                   {"holds", o.holds},
                                   {"witness", std::move(witness)}});
  }
  const char* status = verdict == Verdict3::Valid
                           ? "valid"
                           : (verdict == Verdict3::Invalid ? "invalid" : "indeterminate");
  nlohmann::json out{{"schema", "prhl/validation/v1"}, {"status", status}, {"pairs", pairs}};
  if (!detail.empty()) out["detail"] = detail;
  return out;
}

void for_each_initial_pair(
    const Judgment& j, const CheckOptions& opts,
    const std::function<bool(const Memory&, const Memory&)>& visit) {
  std::set<int> pre1, pre2, post1, post2;
  assertion_slots(j.pre, pre1, pre2);
  assertion_slots(j.post, post1, post2);

  lang::MemoryEnumerator en1(initial_domains(*j.left, pre1, post1),
                             lang::default_memory(*j.left));
  lang::MemoryEnumerator en2(initial_domains(*j.right, pre2, post2),
                             lang::default_memory(*j.right));
  const Int total = en1.count() * en2.count();
  if (total > opts.enumeration_cap) {
    throw PrhlError(ErrorKind::Capacity, "semantic validation needs " + total.str() +
                                             " initial pairs, cap is " +
                                             opts.enumeration_cap.str());
  }

  Memory m1;
  while (en1.next(m1)) {
    Memory m2;
    en2.reset();
    while (en2.next(m2)) {
      if (!lang::eval_expr(EvalScope::pair(m1, m2), j.pre).as_bool()) continue;
      if (!visit(m1, m2)) return;
    }
  }
}

ValidationResult validate_semantics(const Judgment& j, const CheckOptions& opts) {
  ValidationResult result;

  lang::InterpOptions interp;
  interp.fuel = opts.fuel;

  for_each_initial_pair(j, opts, [&](const Memory& m1, const Memory& m2) {
    MemoryDist out1 = lang::interpret(j.left->body, m1, interp);
    MemoryDist out2 = lang::interpret(j.right->body, m2, interp);
    if (!out1.exact() || !out2.exact()) {
      result.verdict = Verdict3::Indeterminate;
      result.detail = "interpretation left residual loop mass (increase fuel)";
      return false;
    }

    // Lifted postcondition: a coupling of the two output distributions
    // supported inside the relation {(a, b) | post(a, b)}.
    std::vector<const Memory*> sup1, sup2;
    std::vector<Rational> w1, w2;
    for (const auto& [m, p] : out1.entries) {
      sup1.push_back(&m);
      w1.push_back(p);
    }
    for (const auto& [m, p] : out2.entries) {
      sup2.push_back(&m);
      w2.push_back(p);
    }
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < int(sup1.size()); ++a) {
      for (int b = 0; b < int(sup2.size()); ++b) {
        if (lang::eval_expr(EvalScope::pair(*sup1[size_t(a)], *sup2[size_t(b)]), j.post)
                .as_bool()) {
          edges.emplace_back(a, b);
        }
      }
    }
    PairOutcome outcome;
    outcome.m1 = m1;
    outcome.m2 = m2;
    auto lifted = solve_lifting(w1, w2, edges);
    outcome.holds = lifted.has_value();
    if (lifted) {
      for (const auto& [a, b, p] : lifted->flows) {
        outcome.witness.emplace_back(*sup1[size_t(a)], *sup2[size_t(b)], p);
      }
    }
    const bool holds = outcome.holds;
    result.outcomes.push_back(std::move(outcome));
    if (!holds) {
      result.verdict = Verdict3::Invalid;
      result.detail = "no coupling of the outputs is supported by the postcondition";
      return false;
    }
    return true;
  });
  return result;
}

}  // namespace prhl::logic
