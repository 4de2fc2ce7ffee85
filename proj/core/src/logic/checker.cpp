#include "prhl/logic/checker.hpp"

#include <set>

#include "prhl/lang/parser.hpp"
#include "prhl/lang/typecheck.hpp"

namespace prhl::logic {

namespace {

using lang::Block;
using lang::Command;
using lang::DistExpr;
using lang::DistExprPtr;
using lang::EvalScope;
using lang::Expr;
using lang::Memory;
using lang::VarRef;

// --- tagged free variables ----------------------------------------------------

// (side, slot); side is 1 or 2 after defaulting untagged program variables.
using TaggedSlot = std::pair<int, int>;

void expr_vars(const ExprPtr& e, int default_side, std::set<TaggedSlot>& out);

void dist_vars(const DistExprPtr& d, int default_side, std::set<TaggedSlot>& out) {
  if (!d) return;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DistExpr::Bern>) {
          expr_vars(node.p, default_side, out);
        } else if constexpr (std::is_same_v<T, DistExpr::UniformSet>) {
          for (const auto& i : node.items) expr_vars(i, default_side, out);
        } else if constexpr (std::is_same_v<T, DistExpr::UniformRange>) {
          expr_vars(node.lo, default_side, out);
          expr_vars(node.hi, default_side, out);
        } else if constexpr (std::is_same_v<T, DistExpr::Explicit>) {
          for (const auto& [v, p] : node.rows) {
            expr_vars(v, default_side, out);
            expr_vars(p, default_side, out);
          }
        }
      },
      d->rep);
}

void expr_vars(const ExprPtr& e, int default_side, std::set<TaggedSlot>& out) {
  if (!e) return;
  if (const auto* v = e->get<Expr::Var>()) {
    if (v->ref.bound < 0) {
      out.emplace(v->ref.side == 0 ? default_side : v->ref.side, v->ref.slot);
    }
    return;
  }
  if (const auto* s = e->get<Expr::SampleAll>()) {
    dist_vars(s->dist, s->side, out);
    std::set<TaggedSlot> body;
    expr_vars(s->body, default_side, body);
    body.erase({s->side, s->target.slot});
    out.insert(body.begin(), body.end());
    return;
  }
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Expr::Unary>) {
          expr_vars(node.operand, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::Binary>) {
          expr_vars(node.lhs, default_side, out);
          expr_vars(node.rhs, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::Cond>) {
          expr_vars(node.cond, default_side, out);
          expr_vars(node.then_e, default_side, out);
          expr_vars(node.else_e, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::TupleExpr>) {
          for (const auto& i : node.items) expr_vars(i, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::Index>) {
          expr_vars(node.base, default_side, out);
          expr_vars(node.index, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::Call>) {
          for (const auto& a : node.args) expr_vars(a, default_side, out);
        } else if constexpr (std::is_same_v<T, Expr::Quant>) {
          expr_vars(node.lo, default_side, out);
          expr_vars(node.hi, default_side, out);
          expr_vars(node.body, default_side, out);
        }
      },
      e->rep);
}

// --- equality-aware pair enumeration -------------------------------------------
//
// Obligations quantify over the product of the declared domains of their free
// variables. Top-level equality conjuncts of the filter (x#1 = y#2, x#1 = c)
// merge enumeration dimensions: any pair violating them fails the filter
// anyway, so enumerating one representative per class is exhaustive.

struct EqClasses {
  std::map<TaggedSlot, int> parent_of;
  std::vector<int> parent;
  std::vector<std::optional<Value>> pin;

  int node(TaggedSlot v) {
    auto it = parent_of.find(v);
    if (it != parent_of.end()) return it->second;
    const int id = int(parent.size());
    parent_of.emplace(v, id);
    parent.push_back(id);
    pin.emplace_back();
    return id;
  }
  int find(int a) {
    while (parent[size_t(a)] != a) a = parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
    return a;
  }
  void merge(TaggedSlot a, TaggedSlot b) {
    int ra = find(node(a)), rb = find(node(b));
    if (ra == rb) return;
    parent[size_t(rb)] = ra;
    if (!pin[size_t(ra)] && pin[size_t(rb)]) pin[size_t(ra)] = pin[size_t(rb)];
  }
  void pin_value(TaggedSlot a, Value v) {
    const int r = find(node(a));
    if (!pin[size_t(r)]) pin[size_t(r)] = std::move(v);
    // A second, different pin leaves an unsatisfiable class; the candidate
    // filter below empties it.
  }
};

const Expr::Var* plain_var(const ExprPtr& e) {
  const auto* v = e->get<Expr::Var>();
  return (v && v->ref.bound < 0) ? v : nullptr;
}

void extract_equalities(const ExprPtr& e, EqClasses& eq) {
  if (!e) return;
  if (const auto* b = e->get<Expr::Binary>()) {
    if (b->op == lang::BinOp::And) {
      extract_equalities(b->lhs, eq);
      extract_equalities(b->rhs, eq);
      return;
    }
    if (b->op == lang::BinOp::Eq) {
      const auto* lv = plain_var(b->lhs);
      const auto* rv = plain_var(b->rhs);
      const auto* ll = b->lhs->get<Expr::Lit>();
      const auto* rl = b->rhs->get<Expr::Lit>();
      if (lv && rv) {
        eq.merge({lv->ref.side, lv->ref.slot}, {rv->ref.side, rv->ref.slot});
      } else if (lv && rl) {
        eq.pin_value({lv->ref.side, lv->ref.slot}, rl->value);
      } else if (rv && ll) {
        eq.pin_value({rv->ref.side, rv->ref.slot}, ll->value);
      }
    }
  }
}

struct PairSources {
  std::vector<std::pair<ExprPtr, int>> exprs;        // (expr, default side)
  std::vector<std::pair<DistExprPtr, int>> dists;    // (dist, side)
  std::vector<TaggedSlot> excluded;                  // slots overwritten before being read
};

// Enumerates (m1, m2) over the free variables of the given sources, reduced
// by the filter's equality conjuncts, visiting only pairs where the filter
// holds. The visitor returns false to stop early. Returns false iff stopped.
bool for_each_pair(const Program& p1, const Program& p2, const ExprPtr& filter,
                   const PairSources& sources, const CheckOptions& opts,
                   const std::function<bool(const Memory&, const Memory&)>& visit) {
  std::set<TaggedSlot> free_vars;
  if (filter) expr_vars(filter, 1, free_vars);
  for (const auto& [e, side] : sources.exprs) expr_vars(e, side, free_vars);
  for (const auto& [d, side] : sources.dists) dist_vars(d, side, free_vars);
  for (const TaggedSlot& t : sources.excluded) free_vars.erase(t);

  EqClasses eq;
  for (const TaggedSlot& t : free_vars) eq.node(t);
  if (filter) extract_equalities(filter, eq);

  // Group class members; only classes whose members are all free get
  // enumerated jointly (an equality may mention a pinned-out variable).
  std::map<int, std::vector<TaggedSlot>> members;
  for (const auto& [slot, id] : eq.parent_of) {
    if (free_vars.count(slot)) members[eq.find(id)].push_back(slot);
  }

  auto domain_of = [&](const TaggedSlot& t) -> const lang::DomainPtr& {
    const Program& p = t.first == 1 ? p1 : p2;
    const lang::VarDecl& d = p.vars.at(size_t(t.second));
    if (!d.domain) {
      throw_error(ErrorKind::Domain, "variable '" + d.name + "#" + std::to_string(t.first) +
                                         "' has no finite domain; cannot enumerate");
    }
    return d.domain;
  };

  struct ClassIter {
    std::vector<TaggedSlot> slots;
    ValueVec candidates;
    size_t index = 0;
  };
  std::vector<ClassIter> classes;
  Int total = 1;
  for (auto& [root, slots] : members) {
    ClassIter ci;
    ci.slots = slots;
    ValueVec candidates = domain_of(slots.front())->enumerate();
    // Keep only values admitted by every member's domain and the pin.
    const auto& pin = eq.pin[size_t(root)];
    ValueVec kept;
    for (Value& v : candidates) {
      if (pin && !(*pin == v)) continue;
      bool ok = true;
      for (size_t i = 1; i < slots.size() && ok; ++i) {
        ok = domain_of(slots[i])->contains(v);
      }
      if (ok) kept.push_back(std::move(v));
    }
    if (kept.empty()) return true;  // unsatisfiable filter: vacuously done
    ci.candidates = std::move(kept);
    total *= Int(ci.candidates.size());
    classes.push_back(std::move(ci));
  }
  if (total > opts.enumeration_cap) {
    throw PrhlError(ErrorKind::Capacity,
                    "obligation needs " + total.str() + " memory pairs, cap is " +
                        opts.enumeration_cap.str());
  }

  Memory m1 = lang::default_memory(p1);
  Memory m2 = lang::default_memory(p2);
  auto apply = [&](const ClassIter& ci) {
    const Value& v = ci.candidates[ci.index];
    for (const TaggedSlot& t : ci.slots) {
      (t.first == 1 ? m1 : m2).set(t.second, v);
    }
  };
  for (ClassIter& ci : classes) apply(ci);

  while (true) {
    bool pass = true;
    if (filter) {
      pass = lang::eval_expr(EvalScope::pair(m1, m2), filter).as_bool();
    }
    if (pass && !visit(m1, m2)) return false;
    // Advance the odometer.
    size_t k = 0;
    for (; k < classes.size(); ++k) {
      if (++classes[k].index < classes[k].candidates.size()) {
        apply(classes[k]);
        break;
      }
      classes[k].index = 0;
      apply(classes[k]);
    }
    if (k == classes.size()) return true;
  }
}

ExprPtr and_expr(const ExprPtr& a, const ExprPtr& b) {
  return lang::make_expr(Expr::Binary{lang::BinOp::And, a, b});
}
ExprPtr not_expr(const ExprPtr& a) { return lang::make_expr(Expr::Unary{lang::UnOp::Not, a}); }
ExprPtr iff_expr(const ExprPtr& a, const ExprPtr& b) {
  return lang::make_expr(Expr::Binary{lang::BinOp::Eq, a, b});
}

// Retags the side-0 variables of a program expression (a guard, an assign
// RHS) so it can take part in relational assertions.
ExprPtr retag(const ExprPtr& e, int side) {
  if (!e) return e;
  if (const auto* v = e->get<Expr::Var>()) {
    if (v->ref.bound >= 0 || v->ref.side == side) return e;
    VarRef ref = v->ref;
    ref.side = side;
    return lang::make_expr(Expr::Var{ref}, e->line, e->column);
  }
  auto rebuild = [&](Expr::Rep rep) { return lang::make_expr(std::move(rep), e->line, e->column); };
  struct V {
    int side;
    const ExprPtr& at;
    decltype(rebuild)& mk;
    ExprPtr operator()(const Expr::Lit&) { return at; }
    ExprPtr operator()(const Expr::Nil&) { return at; }
    ExprPtr operator()(const Expr::Var&) { return at; }  // handled above
    ExprPtr operator()(const Expr::Unary& u) {
      return mk(Expr::Unary{u.op, retag(u.operand, side)});
    }
    ExprPtr operator()(const Expr::Binary& b) {
      return mk(Expr::Binary{b.op, retag(b.lhs, side), retag(b.rhs, side)});
    }
    ExprPtr operator()(const Expr::Cond& c) {
      return mk(Expr::Cond{retag(c.cond, side), retag(c.then_e, side), retag(c.else_e, side)});
    }
    ExprPtr operator()(const Expr::TupleExpr& t) {
      std::vector<ExprPtr> items;
      for (const auto& i : t.items) items.push_back(retag(i, side));
      return mk(Expr::TupleExpr{std::move(items)});
    }
    ExprPtr operator()(const Expr::Index& i) {
      return mk(Expr::Index{retag(i.base, side), retag(i.index, side)});
    }
    ExprPtr operator()(const Expr::Call& c) {
      std::vector<ExprPtr> args;
      for (const auto& a : c.args) args.push_back(retag(a, side));
      return mk(Expr::Call{c.name, c.fn, std::move(args)});
    }
    ExprPtr operator()(const Expr::Quant& q) {
      return mk(Expr::Quant{q.is_forall, q.var, retag(q.lo, side), retag(q.hi, side),
                            retag(q.body, side)});
    }
    ExprPtr operator()(const Expr::SampleAll& s) {
      return mk(Expr::SampleAll{s.side, s.target, s.dist, retag(s.body, side)});
    }
  };
  return std::visit(V{side, e, rebuild}, e->rep);
}

Block strip_skips(const Block& b) {
  Block out;
  for (const Command& c : b) {
    if (!c.get<Command::Skip>()) out.push_back(c);
  }
  return out;
}

struct Goal {
  ProgramPtr p1, p2;
  Block c1, c2;
  ExprPtr pre, post;
};

// --- the checker ----------------------------------------------------------------

class Checker {
 public:
  explicit Checker(const CheckOptions& opts) : opts_(opts) {}

  std::vector<ObligationRecord> log;

  ObligationStatus overall() const { return overall_; }

  void check(const Goal& g, const ProofPtr& node, const std::string& path) {
    if (!node) {
      structural(path, "?", "missing proof node");
      return;
    }
    struct V {
      Checker& ck;
      const Goal& g;
      const std::string& path;
      const ProofPtr& node;

      void operator()(const ProofNode::Skip&) { ck.rule_skip(g, path); }
      void operator()(const ProofNode::Assign&) { ck.rule_assign(g, path); }
      void operator()(const ProofNode::AssignL&) { ck.rule_assign_one(g, path, 1); }
      void operator()(const ProofNode::AssignR&) { ck.rule_assign_one(g, path, 2); }
      void operator()(const ProofNode::Sample& n) { ck.rule_sample(g, path, n); }
      void operator()(const ProofNode::SampleL& n) { ck.rule_sample_one(g, path, 1, n.inner); }
      void operator()(const ProofNode::SampleR& n) { ck.rule_sample_one(g, path, 2, n.inner); }
      void operator()(const ProofNode::Seq& n) { ck.rule_seq(g, path, n); }
      void operator()(const ProofNode::If& n) {
        ck.rule_if(g, path, n.then_proof, n.else_proof, 0);
      }
      void operator()(const ProofNode::IfL& n) {
        ck.rule_if(g, path, n.then_proof, n.else_proof, 1);
      }
      void operator()(const ProofNode::IfR& n) {
        ck.rule_if(g, path, n.then_proof, n.else_proof, 2);
      }
      void operator()(const ProofNode::While& n) { ck.rule_while(g, path, n); }
      void operator()(const ProofNode::WhileL& n) {
        ck.rule_while_one(g, path, 1, n.invariant, n.fuel, n.body);
      }
      void operator()(const ProofNode::WhileR& n) {
        ck.rule_while_one(g, path, 2, n.invariant, n.fuel, n.body);
      }
      void operator()(const ProofNode::Case& n) { ck.rule_case(g, path, n); }
      void operator()(const ProofNode::Conseq& n) { ck.rule_conseq(g, path, n); }
      void operator()(const ProofNode::Equiv& n) { ck.rule_equiv(g, path, n); }
    };
    std::visit(V{*this, g, path, node}, node->rep);
  }

 private:
  void record(const std::string& path, const std::string& rule, const std::string& desc,
              ObligationStatus status, nlohmann::json cex = nlohmann::json()) {
    log.push_back(ObligationRecord{path, rule, desc, status, std::move(cex)});
    if (status == ObligationStatus::Failed) {
      overall_ = ObligationStatus::Failed;
    } else if (status == ObligationStatus::Indeterminate &&
               overall_ == ObligationStatus::Ok) {
      overall_ = ObligationStatus::Indeterminate;
    }
  }

  void structural(const std::string& path, const std::string& rule, const std::string& what) {
    record(path, rule, what, ObligationStatus::Failed);
  }

  nlohmann::json pair_json(const Goal& g, const Memory& m1, const Memory& m2) const {
    return nlohmann::json{{"m1", lang::memory_to_json(*g.p1, m1)},
                          {"m2", lang::memory_to_json(*g.p2, m2)}};
  }

  // Parses and typechecks an assertion in the goal's scope. On failure the
  // obligation fails structurally and nullptr is returned.
  ExprPtr parse_in(const Goal& g, const std::string& text, const std::string& path,
                   const std::string& rule) {
    try {
      ExprPtr e = lang::parse_assertion(text, *g.p1, *g.p2, opts_.registry);
      auto issues = lang::typecheck_assertion(e, *g.p1, *g.p2);
      if (!issues.empty()) {
        structural(path, rule, "assertion '" + text + "': " + lang::issues_to_string(issues));
        return nullptr;
      }
      return e;
    } catch (const ParseError& e) {
      structural(path, rule, "assertion '" + text + "': " + e.what());
      return nullptr;
    }
  }

  // pre => target over the enumerated pairs.
  void validity(const Goal& g, const std::string& path, const std::string& rule,
                const std::string& desc, const ExprPtr& pre, const ExprPtr& target,
                PairSources extra = {}) {
    extra.exprs.push_back({target, 1});
    std::optional<nlohmann::json> cex;
    for_each_pair(*g.p1, *g.p2, pre, extra, opts_, [&](const Memory& m1, const Memory& m2) {
      if (!lang::eval_expr(EvalScope::pair(m1, m2), target).as_bool()) {
        cex = pair_json(g, m1, m2);
        return false;
      }
      return true;
    });
    record(path, rule, desc, cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           cex.value_or(nlohmann::json()));
  }

  // --- rules ---

  void rule_skip(const Goal& g, const std::string& path) {
    if (!g.c1.empty() || !g.c2.empty()) {
      structural(path, "skip", "skip rule applied to non-empty commands");
      return;
    }
    validity(g, path, "skip", "precondition implies postcondition", g.pre, g.post);
  }

  const Command::Assign* single_assign(const Block& b) {
    return b.size() == 1 ? b[0].get<Command::Assign>() : nullptr;
  }
  const Command::Rand* single_rand(const Block& b) {
    return b.size() == 1 ? b[0].get<Command::Rand>() : nullptr;
  }
  const Command::If* single_if(const Block& b) {
    return b.size() == 1 ? b[0].get<Command::If>() : nullptr;
  }
  const Command::While* single_while(const Block& b) {
    return b.size() == 1 ? b[0].get<Command::While>() : nullptr;
  }

  void rule_assign(const Goal& g, const std::string& path) {
    const auto* a1 = single_assign(g.c1);
    const auto* a2 = single_assign(g.c2);
    if (!a1 || !a2) {
      structural(path, "assign", "assign rule needs one assignment on each side");
      return;
    }
    PairSources sources;
    sources.exprs = {{a1->value, 1}, {a2->value, 2}, {g.post, 1}};
    sources.excluded = {{1, a1->target.slot}, {2, a2->target.slot}};
    std::optional<nlohmann::json> cex;
    for_each_pair(*g.p1, *g.p2, g.pre, sources, opts_, [&](const Memory& m1, const Memory& m2) {
      Memory u1 = m1.with(a1->target.slot, lang::eval_expr(m1, a1->value));
      Memory u2 = m2.with(a2->target.slot, lang::eval_expr(m2, a2->value));
      if (!lang::eval_expr(EvalScope::pair(u1, u2), g.post).as_bool()) {
        cex = pair_json(g, m1, m2);
        return false;
      }
      return true;
    });
    record(path, "assign", "postcondition after parallel assignment",
           cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           cex.value_or(nlohmann::json()));
  }

  void rule_assign_one(const Goal& g, const std::string& path, int side) {
    const char* rule = side == 1 ? "assign-l" : "assign-r";
    const Block& active = side == 1 ? g.c1 : g.c2;
    const Block& other = side == 1 ? g.c2 : g.c1;
    const auto* a = single_assign(active);
    if (!a || !other.empty()) {
      structural(path, rule, "one-sided assign needs a single assignment against skip");
      return;
    }
    PairSources sources;
    sources.exprs = {{a->value, side}, {g.post, 1}};
    sources.excluded = {{side, a->target.slot}};
    std::optional<nlohmann::json> cex;
    for_each_pair(*g.p1, *g.p2, g.pre, sources, opts_, [&](const Memory& m1, const Memory& m2) {
      Memory u = (side == 1 ? m1 : m2)
                     .with(a->target.slot, lang::eval_expr(side == 1 ? m1 : m2, a->value));
      const Memory& u1 = side == 1 ? u : m1;
      const Memory& u2 = side == 1 ? m2 : u;
      if (!lang::eval_expr(EvalScope::pair(u1, u2), g.post).as_bool()) {
        cex = pair_json(g, m1, m2);
        return false;
      }
      return true;
    });
    record(path, rule, "postcondition after one-sided assignment",
           cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           cex.value_or(nlohmann::json()));
  }

  void rule_sample(const Goal& g, const std::string& path, const ProofNode::Sample& n) {
    const auto* r1 = single_rand(g.c1);
    const auto* r2 = single_rand(g.c2);
    if (!r1 || !r2) {
      structural(path, "sample", "sample rule needs one sampling command on each side");
      return;
    }
    ExprPtr f;
    try {
      f = lang::parse_tagged_expr(n.bijection, *g.p1, *g.p2, {"v"}, opts_.registry);
    } catch (const ParseError& e) {
      structural(path, "sample", std::string("bijection: ") + e.what());
      return;
    }

    PairSources sources;
    sources.exprs = {{f, 1}, {g.post, 1}};
    sources.dists = {{r1->dist, 1}, {r2->dist, 2}};
    sources.excluded = {{1, r1->target.slot}, {2, r2->target.slot}};

    std::optional<nlohmann::json> mass_cex, pointwise_cex, inject_cex, post_cex;
    for_each_pair(*g.p1, *g.p2, g.pre, sources, opts_, [&](const Memory& m1, const Memory& m2) {
      const SubDist d1 = lang::eval_dist(m1, r1->dist);
      const SubDist d2 = lang::eval_dist(m2, r2->dist);
      if (d1.mass() != d2.mass()) {
        if (!mass_cex) mass_cex = pair_json(g, m1, m2);
        return false;
      }
      std::set<Value> image;
      EvalScope scope = EvalScope::pair(m1, m2);
      scope.bound.push_back(Value::boolean(false));
      for (const auto& [v, p] : d1.entries()) {
        scope.bound.back() = v;
        const Value fv = lang::eval_expr(scope, f);
        if (d2.prob(fv) != p) {
          if (!pointwise_cex) {
            auto j = pair_json(g, m1, m2);
            j["v"] = v.to_json();
            j["f_v"] = fv.to_json();
            pointwise_cex = j;
          }
          return false;
        }
        if (!image.insert(fv).second) {
          if (!inject_cex) {
            auto j = pair_json(g, m1, m2);
            j["v"] = v.to_json();
            inject_cex = j;
          }
          return false;
        }
        Memory u1 = m1.with(r1->target.slot, v);
        Memory u2 = m2.with(r2->target.slot, fv);
        if (!lang::eval_expr(EvalScope::pair(u1, u2), g.post).as_bool()) {
          if (!post_cex) {
            auto j = pair_json(g, m1, m2);
            j["v"] = v.to_json();
            post_cex = j;
          }
          return false;
        }
      }
      return true;
    });
    record(path, "sample", "sampled distributions have equal mass",
           mass_cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           mass_cex.value_or(nlohmann::json()));
    record(path, "sample", "d1(v) = d2(f v) pointwise on supp(d1)",
           pointwise_cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           pointwise_cex.value_or(nlohmann::json()));
    record(path, "sample", "f injective on supp(d1)",
           inject_cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           inject_cex.value_or(nlohmann::json()));
    record(path, "sample", "postcondition for every coupled sample (v, f v)",
           post_cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           post_cex.value_or(nlohmann::json()));
  }

  void rule_sample_one(const Goal& g, const std::string& path, int side, const ProofPtr& inner) {
    const char* rule = side == 1 ? "sample-l" : "sample-r";
    const Block& active = side == 1 ? g.c1 : g.c2;
    const auto* r = single_rand(active);
    if (!r) {
      structural(path, rule, "one-sided sample rule needs a single sampling command");
      return;
    }
    // In context, the sampled distribution must carry full mass: the witness
    // for the conclusion scales the premise's witness by d(v).
    PairSources sources;
    sources.dists = {{r->dist, side}};
    std::optional<nlohmann::json> cex;
    for_each_pair(*g.p1, *g.p2, g.pre, sources, opts_, [&](const Memory& m1, const Memory& m2) {
      const SubDist d = lang::eval_dist(side == 1 ? m1 : m2, r->dist);
      if (d.mass() != 1) {
        cex = pair_json(g, m1, m2);
        return false;
      }
      return true;
    });
    record(path, rule, "sampled distribution is lossless under the precondition",
           cex ? ObligationStatus::Failed : ObligationStatus::Ok,
           cex.value_or(nlohmann::json()));

    ExprPtr quantified =
        lang::make_expr(Expr::SampleAll{side, r->target, r->dist, g.post});
    Goal premise = g;
    (side == 1 ? premise.c1 : premise.c2) = {};
    premise.post = quantified;
    check(premise, inner, path + ".premise");
  }

  void rule_seq(const Goal& g, const std::string& path, const ProofNode::Seq& n) {
    if (n.n1 < 0 || size_t(n.n1) > g.c1.size() || n.n2 < 0 || size_t(n.n2) > g.c2.size()) {
      structural(path, "seq", "split out of range");
      return;
    }
    ExprPtr mid = parse_in(g, n.mid, path, "seq");
    if (!mid) return;
    Goal first = g;
    first.c1 = Block(g.c1.begin(), g.c1.begin() + n.n1);
    first.c2 = Block(g.c2.begin(), g.c2.begin() + n.n2);
    first.post = mid;
    Goal rest = g;
    rest.c1 = Block(g.c1.begin() + n.n1, g.c1.end());
    rest.c2 = Block(g.c2.begin() + n.n2, g.c2.end());
    rest.pre = mid;
    check(first, n.first, path + ".first");
    check(rest, n.rest, path + ".rest");
  }

  void rule_if(const Goal& g, const std::string& path, const ProofPtr& then_proof,
               const ProofPtr& else_proof, int one_sided) {
    const char* rule = one_sided == 0 ? "if" : (one_sided == 1 ? "if-l" : "if-r");
    const int guard_side = one_sided == 2 ? 2 : 1;
    const Block& active = guard_side == 1 ? g.c1 : g.c2;
    const auto* branch = single_if(active);
    if (!branch) {
      structural(path, rule, "if rule needs a conditional at the active side");
      return;
    }
    const ExprPtr guard = retag(branch->guard, guard_side);

    Goal then_goal = g, else_goal = g;
    then_goal.pre = and_expr(g.pre, guard);
    else_goal.pre = and_expr(g.pre, not_expr(guard));

    if (one_sided == 0) {
      const auto* other = single_if(g.c2);
      if (!other) {
        structural(path, rule, "two-sided if needs conditionals on both sides");
        return;
      }
      validity(g, path, rule, "guards agree under the precondition", g.pre,
               iff_expr(guard, retag(other->guard, 2)));
      then_goal.c1 = strip_skips(branch->then_branch);
      then_goal.c2 = strip_skips(other->then_branch);
      else_goal.c1 = strip_skips(branch->else_branch);
      else_goal.c2 = strip_skips(other->else_branch);
    } else if (one_sided == 1) {
      then_goal.c1 = strip_skips(branch->then_branch);
      else_goal.c1 = strip_skips(branch->else_branch);
    } else {
      then_goal.c2 = strip_skips(branch->then_branch);
      else_goal.c2 = strip_skips(branch->else_branch);
    }
    check(then_goal, then_proof, path + ".then");
    check(else_goal, else_proof, path + ".else");
  }

  void rule_while(const Goal& g, const std::string& path, const ProofNode::While& n) {
    const auto* w1 = single_while(g.c1);
    const auto* w2 = single_while(g.c2);
    if (!w1 || !w2) {
      structural(path, "while", "while rule needs loops on both sides");
      return;
    }
    ExprPtr inv = parse_in(g, n.invariant, path, "while");
    if (!inv) return;
    const ExprPtr e1 = retag(w1->guard, 1);
    const ExprPtr e2 = retag(w2->guard, 2);

    validity(g, path, "while", "precondition establishes the invariant", g.pre, inv);
    validity(g, path, "while", "guards agree under the invariant", inv, iff_expr(e1, e2));
    Goal body = g;
    body.c1 = strip_skips(w1->body);
    body.c2 = strip_skips(w2->body);
    body.pre = and_expr(inv, e1);
    body.post = inv;
    check(body, n.body, path + ".body");
    validity(g, path, "while", "invariant and exit imply the postcondition",
             and_expr(inv, not_expr(e1)), g.post);
  }

  void rule_while_one(const Goal& g, const std::string& path, int side,
                      const std::string& inv_text, long fuel, const ProofPtr& body_proof) {
    const char* rule = side == 1 ? "while-l" : "while-r";
    const Block& active = side == 1 ? g.c1 : g.c2;
    const Block& other = side == 1 ? g.c2 : g.c1;
    const auto* w = single_while(active);
    if (!w || !other.empty()) {
      structural(path, rule, "one-sided while needs a loop against skip");
      return;
    }
    ExprPtr inv = parse_in(g, inv_text, path, rule);
    if (!inv) return;
    const ExprPtr guard = retag(w->guard, side);

    validity(g, path, rule, "precondition establishes the invariant", g.pre, inv);

    Goal body = g;
    (side == 1 ? body.c1 : body.c2) = strip_skips(w->body);
    (side == 1 ? body.c2 : body.c1) = {};
    body.pre = and_expr(inv, guard);
    body.post = inv;
    check(body, body_proof, path + ".body");

    // Fig 2 side condition: the looping side must terminate with mass one.
    const Program& prog = side == 1 ? *g.p1 : *g.p2;
    lang::LosslessResult lossless =
        lang::is_lossless(prog, active, fuel > 0 ? fuel : opts_.fuel, opts_.enumeration_cap);
    ObligationStatus status = ObligationStatus::Ok;
    nlohmann::json cex;
    if (lossless.verdict == lang::Lossless::No) {
      status = ObligationStatus::Failed;
    } else if (lossless.verdict == lang::Lossless::Indeterminate) {
      status = ObligationStatus::Indeterminate;
    }
    if (lossless.witness) {
      cex["memory"] = lang::memory_to_json(prog, *lossless.witness);
    }
    record(path, rule, "loop is lossless", status, cex);

    validity(g, path, rule, "invariant and exit imply the postcondition",
             and_expr(inv, not_expr(guard)), g.post);
  }

  void rule_case(const Goal& g, const std::string& path, const ProofNode::Case& n) {
    ExprPtr split = parse_in(g, n.split, path, "case");
    if (!split) return;
    Goal yes = g, no = g;
    yes.pre = and_expr(g.pre, split);
    no.pre = and_expr(g.pre, not_expr(split));
    check(yes, n.when_true, path + ".true");
    check(no, n.when_false, path + ".false");
  }

  void rule_conseq(const Goal& g, const std::string& path, const ProofNode::Conseq& n) {
    ExprPtr inner_pre = parse_in(g, n.pre, path, "conseq");
    ExprPtr inner_post = parse_in(g, n.post, path, "conseq");
    if (!inner_pre || !inner_post) return;
    validity(g, path, "conseq", "precondition strengthens the inner one", g.pre, inner_pre);
    Goal inner = g;
    inner.pre = inner_pre;
    inner.post = inner_post;
    check(inner, n.inner, path + ".inner");
    validity(g, path, "conseq", "inner postcondition weakens to the outer one", inner_post,
             g.post);
  }

  void rule_equiv(const Goal& g, const std::string& path, const ProofNode::Equiv& n) {
    const ProgramPtr& prog = n.side == 1 ? g.p1 : g.p2;
    const Block& block = n.side == 1 ? g.c1 : g.c2;

    lang::BlockRewrite rewritten;
    try {
      rewritten = lang::apply_transform_to_block(*prog, block, n.transform, n.path,
                                                 opts_.registry);
    } catch (const PrhlError& e) {
      structural(path, "equiv", std::string("rewrite ") + n.transform.describe() + ": " +
                                    e.what());
      return;
    }
    record(path, "equiv", "command matches " + n.transform.describe(), ObligationStatus::Ok);

    // The cited transform must be semantics-preserving here; the exact
    // interpreter confirms it on the declared domains.
    Program before = *prog;
    before.body = block;
    Program after = rewritten.program;
    after.body = rewritten.block;
    lang::EquivResult oracle = lang::semantically_equivalent_common(
        before, after, opts_.fuel, opts_.enumeration_cap);
    ObligationStatus status = ObligationStatus::Ok;
    nlohmann::json cex;
    if (oracle.verdict == lang::EquivVerdict::Different) {
      status = ObligationStatus::Failed;
    } else if (oracle.verdict == lang::EquivVerdict::Indeterminate) {
      status = ObligationStatus::Indeterminate;
    }
    if (oracle.counterexample) {
      cex["memory"] = lang::memory_to_json(before, *oracle.counterexample);
      cex["detail"] = oracle.detail;
    }
    record(path, "equiv", "rewrite is semantics-preserving on the domain", status, cex);

    Goal inner = g;
    auto extended = std::make_shared<Program>(rewritten.program);
    if (n.side == 1) {
      inner.p1 = extended;
      inner.c1 = strip_skips(rewritten.block);
    } else {
      inner.p2 = extended;
      inner.c2 = strip_skips(rewritten.block);
    }
    check(inner, n.inner, path + ".inner");
  }

  const CheckOptions& opts_;
  ObligationStatus overall_ = ObligationStatus::Ok;
};

}  // namespace

nlohmann::json CheckResult::to_json() const {
  nlohmann::json obligations = nlohmann::json::array();
  for (const ObligationRecord& r : log) {
    nlohmann::json o{{"path", r.path},
                     {"rule", r.rule},
                     {"check", r.description},
                     {"result", r.status == ObligationStatus::Ok
                                    ? "ok"
                                    : (r.status == ObligationStatus::Failed ? "failed"
                                                                            : "indeterminate")}};
    if (!r.counterexample.is_null() && !r.counterexample.empty()) {
      o["counterexample"] = r.counterexample;
    }
    obligations.push_back(std::move(o));
  }
  return nlohmann::json{{"schema", "prhl/verdict/v1"},
                        {"status", status == ObligationStatus::Ok
                                       ? "accepted"
                                       : (status == ObligationStatus::Failed ? "rejected"
                                                                             : "indeterminate")},
                        {"obligations", std::move(obligations)}};
}

CheckResult check_proof(const Judgment& j, const ProofPtr& proof, const CheckOptions& opts) {
  Checker checker(opts);
  {
    auto pre_issues = lang::typecheck_assertion(j.pre, *j.left, *j.right);
    auto post_issues = lang::typecheck_assertion(j.post, *j.left, *j.right);
    if (!pre_issues.empty() || !post_issues.empty()) {
      CheckResult r;
      r.status = ObligationStatus::Failed;
      r.log.push_back(ObligationRecord{
          "root", "judgment",
          "pre/post typecheck: " + lang::issues_to_string(pre_issues) +
              lang::issues_to_string(post_issues),
          ObligationStatus::Failed,
          {}});
      return r;
    }
  }
  Goal goal{j.left, j.right, strip_skips(j.left->body), strip_skips(j.right->body), j.pre,
            j.post};
  checker.check(goal, proof, "root");
  CheckResult result;
  result.status = checker.overall();
  result.log = std::move(checker.log);
  return result;
}

std::optional<VerifiedJudgment> verify(const Judgment& j, const ProofPtr& proof,
                                       const CheckOptions& opts, CheckResult* result) {
  CheckResult r = check_proof(j, proof, opts);
  std::optional<VerifiedJudgment> out;
  if (r.accepted()) {
    out.emplace(VerifiedJudgment(j, proof, r.log));
  }
  if (result) *result = std::move(r);
  return out;
}

ValidityResult validity_check(const ExprPtr& assertion, const Program& p1, const Program& p2,
                              const CheckOptions& opts) {
  ValidityResult result;
  PairSources sources;
  sources.exprs = {{assertion, 1}};
  for_each_pair(p1, p2, nullptr, sources, opts, [&](const Memory& m1, const Memory& m2) {
    if (!lang::eval_expr(EvalScope::pair(m1, m2), assertion).as_bool()) {
      result.valid = false;
      result.counterexample = std::make_pair(m1, m2);
      return false;
    }
    return true;
  });
  return result;
}

}  // namespace prhl::logic
