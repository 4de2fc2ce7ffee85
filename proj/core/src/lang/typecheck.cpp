#include "prhl/lang/typecheck.hpp"

#include <sstream>

namespace prhl::lang {

namespace {

// list<nullptr> stands for the type of the empty list literal.
bool is_unknown_list(const TypePtr& t) {
  return t && t->kind == Type::Kind::List && !t->elem;
}

bool assignable(const TypePtr& from, const TypePtr& to) {
  if (!from || !to) return false;
  if (from->kind == Type::Kind::Int && to->kind == Type::Kind::Prob) return true;
  if (is_unknown_list(from) && to->kind == Type::Kind::List) return true;
  if (from->kind == Type::Kind::List && to->kind == Type::Kind::List) {
    return is_unknown_list(from) || same_type(from, to);
  }
  if (from->kind == Type::Kind::Tuple && to->kind == Type::Kind::Tuple) {
    if (from->items.size() != to->items.size()) return false;
    for (size_t i = 0; i < from->items.size(); ++i) {
      if (!assignable(from->items[i], to->items[i])) return false;
    }
    return true;
  }
  return same_type(from, to);
}

bool numeric(const TypePtr& t) {
  return t && (t->kind == Type::Kind::Int || t->kind == Type::Kind::Prob);
}

bool int_vector(const TypePtr& t) {
  if (!t || t->kind != Type::Kind::Tuple || t->items.empty()) return false;
  for (const auto& item : t->items) {
    if (item->kind != Type::Kind::Int) return false;
  }
  return true;
}

class Checker {
 public:
  Checker(const Program* p1, const Program* p2) : p1_(p1), p2_(p2) {}

  std::vector<TypeIssue> issues;

  void error(const ExprPtr& at, const std::string& message) {
    issues.push_back(TypeIssue{message + " in '" + expr_to_string(at) + "'",
                               at ? at->line : 0, at ? at->column : 0});
  }
  void error_at(int line, int column, const std::string& message) {
    issues.push_back(TypeIssue{message, line, column});
  }

  TypePtr var_type(const VarRef& ref, const ExprPtr& at) {
    if (ref.bound >= 0) return Type::integer();
    const Program* p = ref.side == 2 ? p2_ : p1_;
    if (!p || ref.slot < 0 || size_t(ref.slot) >= p->vars.size()) {
      error(at, "unresolved variable " + ref.name);
      return nullptr;
    }
    return p->vars[size_t(ref.slot)].type;
  }

  TypePtr infer(const ExprPtr& e) {
    struct V {
      Checker& ck;
      const ExprPtr& at;

      TypePtr operator()(const Expr::Lit& l) {
        switch (l.value.kind()) {
          case Value::Kind::Bool: return Type::boolean();
          case Value::Kind::Int: return Type::integer();
          case Value::Kind::Rat: return Type::prob();
          case Value::Kind::Enum: return Type::enumeration(l.value.as_enum().type);
          default: break;
        }
        ck.error(at, "unsupported literal");
        return nullptr;
      }

      TypePtr operator()(const Expr::Nil&) { return Type::list(nullptr); }

      TypePtr operator()(const Expr::Var& v) { return ck.var_type(v.ref, at); }

      TypePtr operator()(const Expr::Unary& u) {
        TypePtr t = ck.infer(u.operand);
        if (!t) return nullptr;
        if (u.op == UnOp::Not) {
          if (t->kind != Type::Kind::Bool) ck.error(at, "'!' needs a boolean");
          return Type::boolean();
        }
        if (!numeric(t)) ck.error(at, "'-' needs a numeric operand");
        return t;
      }

      TypePtr operator()(const Expr::Binary& b) {
        TypePtr l = ck.infer(b.lhs);
        TypePtr r = ck.infer(b.rhs);
        if (!l || !r) return nullptr;
        switch (b.op) {
          case BinOp::And:
          case BinOp::Or:
          case BinOp::Implies:
            if (l->kind != Type::Kind::Bool || r->kind != Type::Kind::Bool) {
              ck.error(at, "boolean connective over non-booleans");
            }
            return Type::boolean();
          case BinOp::Eq:
          case BinOp::Ne:
            if (!(assignable(l, r) || assignable(r, l))) {
              ck.error(at, "equality across different types " + l->to_string() + " vs " +
                               r->to_string());
            }
            return Type::boolean();
          case BinOp::Lt:
          case BinOp::Le:
          case BinOp::Gt:
          case BinOp::Ge:
            if (!(numeric(l) && numeric(r))) ck.error(at, "order comparison needs numbers");
            return Type::boolean();
          case BinOp::Add:
          case BinOp::Sub:
            if (int_vector(l) && int_vector(r) && l->items.size() == r->items.size()) return l;
            if (numeric(l) && numeric(r)) {
              return (l->kind == Type::Kind::Prob || r->kind == Type::Kind::Prob) ? Type::prob()
                                                                                  : Type::integer();
            }
            ck.error(at, "invalid operands of +/-: " + l->to_string() + ", " + r->to_string());
            return nullptr;
          case BinOp::Mul:
            if (int_vector(l) && r->kind == Type::Kind::Int) return l;
            if (int_vector(r) && l->kind == Type::Kind::Int) return r;
            if (numeric(l) && numeric(r)) {
              return (l->kind == Type::Kind::Prob || r->kind == Type::Kind::Prob) ? Type::prob()
                                                                                  : Type::integer();
            }
            ck.error(at, "invalid operands of *");
            return nullptr;
          case BinOp::Div:
            if (!(numeric(l) && numeric(r))) ck.error(at, "invalid operands of /");
            return Type::prob();
          case BinOp::Mod:
            if (int_vector(l) && r->kind == Type::Kind::Int) return l;
            if (l->kind == Type::Kind::Int && r->kind == Type::Kind::Int) return Type::integer();
            ck.error(at, "invalid operands of %");
            return nullptr;
          case BinOp::Cons: {
            if (r->kind != Type::Kind::List) {
              ck.error(at, "'::' needs a list on the right");
              return nullptr;
            }
            if (is_unknown_list(r)) return Type::list(l);
            if (!assignable(l, r->elem)) ck.error(at, "cons element type mismatch");
            return r;
          }
        }
        return nullptr;
      }

      TypePtr operator()(const Expr::Cond& c) {
        TypePtr g = ck.infer(c.cond);
        if (g && g->kind != Type::Kind::Bool) ck.error(at, "'?' guard must be boolean");
        TypePtr t = ck.infer(c.then_e);
        TypePtr f = ck.infer(c.else_e);
        if (!t || !f) return t ? t : f;
        if (assignable(t, f)) return f;
        if (assignable(f, t)) return t;
        ck.error(at, "branches of '?' have different types");
        return t;
      }

      TypePtr operator()(const Expr::TupleExpr& t) {
        std::vector<TypePtr> items;
        for (const ExprPtr& item : t.items) {
          TypePtr it = ck.infer(item);
          if (!it) return nullptr;
          items.push_back(it);
        }
        return Type::tuple(std::move(items));
      }

      TypePtr operator()(const Expr::Index& i) {
        TypePtr base = ck.infer(i.base);
        TypePtr idx = ck.infer(i.index);
        if (idx && idx->kind != Type::Kind::Int) ck.error(at, "index must be an integer");
        if (!base) return nullptr;
        if (base->kind != Type::Kind::Tuple) {
          ck.error(at, "indexing needs a tuple/vector");
          return nullptr;
        }
        if (const auto* lit = i.index->get<Expr::Lit>(); lit && lit->value.is_int()) {
          const Int& k = lit->value.as_int();
          if (k < 1 || k > Int(base->items.size())) {
            ck.error(at, "index out of range 1.." + std::to_string(base->items.size()));
            return nullptr;
          }
          return base->items[size_t(long(k)) - 1];
        }
        // Dynamic index: the tuple must be homogeneous.
        for (const auto& item : base->items) {
          if (!same_type(item, base->items[0])) {
            ck.error(at, "dynamic index into a heterogeneous tuple");
            return nullptr;
          }
        }
        return base->items[0];
      }

      TypePtr operator()(const Expr::Call& c) {
        if (!c.fn) {
          ck.error(at, "unresolved function " + c.name);
          return nullptr;
        }
        for (size_t i = 0; i < c.args.size(); ++i) {
          TypePtr a = ck.infer(c.args[i]);
          if (a && !assignable(a, c.fn->params[i])) {
            ck.error(at, "argument " + std::to_string(i + 1) + " of " + c.name + " has type " +
                             a->to_string() + ", expected " + c.fn->params[i]->to_string());
          }
        }
        return c.fn->result;
      }

      TypePtr operator()(const Expr::Quant& q) {
        TypePtr lo = ck.infer(q.lo);
        TypePtr hi = ck.infer(q.hi);
        if ((lo && lo->kind != Type::Kind::Int) || (hi && hi->kind != Type::Kind::Int)) {
          ck.error(at, "quantifier bounds must be integers");
        }
        TypePtr body = ck.infer(q.body);
        if (body && body->kind != Type::Kind::Bool) ck.error(at, "quantifier body must be boolean");
        return Type::boolean();
      }

      TypePtr operator()(const Expr::SampleAll& s) {
        TypePtr body = ck.infer(s.body);
        if (body && body->kind != Type::Kind::Bool) ck.error(at, "sample quantifier body must be boolean");
        return Type::boolean();
      }
    };
    if (!e) return nullptr;
    return std::visit(V{*this, e}, e->rep);
  }

 private:
  const Program* p1_;
  const Program* p2_;
};

class ProgramChecker {
 public:
  explicit ProgramChecker(Program& prog) : prog_(prog), ck_(&prog, nullptr) {}

  std::vector<TypeIssue> run() {
    check_block(prog_.body);
    for (const ExprPtr& r : prog_.returns) ck_.infer(r);
    return std::move(ck_.issues);
  }

 private:
  void check_block(Block& block) {
    for (Command& c : block) check_command(c);
  }

  void check_command(Command& c) {
    if (auto* a = std::get_if<Command::Assign>(&c.rep)) {
      TypePtr target = prog_.vars[size_t(a->target.slot)].type;
      TypePtr value = ck_.infer(a->value);
      if (value && !assignable(value, target)) {
        ck_.error_at(c.line, c.column,
                     "cannot assign " + value->to_string() + " to " + a->target.name + " : " +
                         target->to_string());
      }
      return;
    }
    if (auto* r = std::get_if<Command::Rand>(&c.rep)) {
      check_rand(c, *r);
      return;
    }
    if (auto* i = std::get_if<Command::If>(&c.rep)) {
      TypePtr g = ck_.infer(i->guard);
      if (g && g->kind != Type::Kind::Bool) {
        ck_.error_at(c.line, c.column, "if guard must be boolean");
      }
      check_block(i->then_branch);
      check_block(i->else_branch);
      return;
    }
    if (auto* w = std::get_if<Command::While>(&c.rep)) {
      TypePtr g = ck_.infer(w->guard);
      if (g && g->kind != Type::Kind::Bool) {
        ck_.error_at(c.line, c.column, "while guard must be boolean");
      }
      check_block(w->body);
      return;
    }
  }

  void check_rand(Command& c, Command::Rand& r) {
    const TypePtr target = prog_.vars[size_t(r.target.slot)].type;
    DistExpr mutable_dist = *r.dist;

    if (auto* b = std::get_if<DistExpr::Bern>(&mutable_dist.rep)) {
      TypePtr p = ck_.infer(b->p);
      if (p && !numeric(p)) ck_.error_at(c.line, c.column, "Bern parameter must be numeric");
      if (target->kind != Type::Kind::Bool) {
        ck_.error_at(c.line, c.column, "Bern samples a boolean; " + r.target.name + " is " +
                                           target->to_string());
      }
      return;
    }
    if (auto* u = std::get_if<DistExpr::UniformSet>(&mutable_dist.rep)) {
      // The paper writes the fair coin as {0,1}; read the literals as
      // booleans when the target is boolean.
      if (target->kind == Type::Kind::Bool) {
        bool all01 = !u->items.empty();
        for (const ExprPtr& item : u->items) {
          const auto* lit = item->get<Expr::Lit>();
          all01 = all01 && lit && lit->value.is_int() &&
                  (lit->value.as_int() == 0 || lit->value.as_int() == 1);
        }
        if (all01) {
          std::vector<ExprPtr> coerced;
          for (const ExprPtr& item : u->items) {
            coerced.push_back(lit_expr(Value::boolean(item->get<Expr::Lit>()->value.as_int() == 1)));
          }
          u->items = std::move(coerced);
          r.dist = std::make_shared<const DistExpr>(std::move(mutable_dist));
        }
      }
      for (const ExprPtr& item : std::get<DistExpr::UniformSet>(r.dist->rep).items) {
        TypePtr t = ck_.infer(item);
        if (t && !assignable(t, target)) {
          ck_.error_at(c.line, c.column, "uniform-set element type " + t->to_string() +
                                             " does not match " + r.target.name + " : " +
                                             target->to_string());
        }
      }
      return;
    }
    if (auto* range = std::get_if<DistExpr::UniformRange>(&mutable_dist.rep)) {
      TypePtr lo = ck_.infer(range->lo);
      TypePtr hi = ck_.infer(range->hi);
      if ((lo && lo->kind != Type::Kind::Int) || (hi && hi->kind != Type::Kind::Int)) {
        ck_.error_at(c.line, c.column, "uniform range bounds must be integers");
      }
      if (target->kind != Type::Kind::Int) {
        ck_.error_at(c.line, c.column, "uniform range samples an integer");
      }
      return;
    }
    if (auto* x = std::get_if<DistExpr::Explicit>(&mutable_dist.rep)) {
      for (const auto& [value_e, prob_e] : x->rows) {
        TypePtr v = ck_.infer(value_e);
        if (v && !assignable(v, target)) {
          ck_.error_at(c.line, c.column, "table key type " + v->to_string() +
                                             " does not match " + r.target.name + " : " +
                                             target->to_string());
        }
        TypePtr p = ck_.infer(prob_e);
        if (p && !numeric(p)) {
          ck_.error_at(c.line, c.column, "table probability must be numeric");
        }
      }
      return;
    }
  }

  Program& prog_;
  Checker ck_;
};

}  // namespace

std::string issues_to_string(const std::vector<TypeIssue>& issues) {
  std::ostringstream out;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].message;
    if (issues[i].line > 0) out << " at " << issues[i].line << ":" << issues[i].column;
  }
  return out.str();
}

std::vector<TypeIssue> typecheck(Program& prog) { return ProgramChecker(prog).run(); }

std::vector<TypeIssue> typecheck_assertion(const ExprPtr& assertion, const Program& p1,
                                           const Program& p2) {
  Checker ck(&p1, &p2);
  TypePtr t = ck.infer(assertion);
  if (t && t->kind != Type::Kind::Bool) {
    ck.error(assertion, "assertion must be boolean, got " + t->to_string());
  }
  return std::move(ck.issues);
}

}  // namespace prhl::lang
