#include "prhl/lang/eval.hpp"

#include <sstream>

namespace prhl::lang {

namespace {

[[noreturn]] void eval_fail(const ExprPtr& e, const std::string& what) {
  std::ostringstream out;
  out << what << " in '" << expr_to_string(e) << "'";
  if (e && e->line > 0) out << " at " << e->line << ":" << e->column;
  throw_error(ErrorKind::Type, out.str());
}

bool is_numeric(const Value& v) { return v.is_int() || v.is_rat(); }

Value numeric_binary(BinOp op, const Value& a, const Value& b, const ExprPtr& at) {
  if (a.is_int() && b.is_int()) {
    const Int& x = a.as_int();
    const Int& y = b.as_int();
    switch (op) {
      case BinOp::Add: return Value::integer(x + y);
      case BinOp::Sub: return Value::integer(x - y);
      case BinOp::Mul: return Value::integer(x * y);
      case BinOp::Mod: {
        if (y <= 0) eval_fail(at, "modulus must be positive");
        Int r = x % y;
        if (r < 0) r += y;
        return Value::integer(r);
      }
      default: break;
    }
  }
  const Rational x = as_rational(a);
  const Rational y = as_rational(b);
  switch (op) {
    case BinOp::Add: return Value::rational(x + y);
    case BinOp::Sub: return Value::rational(x - y);
    case BinOp::Mul: return Value::rational(x * y);
    case BinOp::Div:
      if (y == 0) eval_fail(at, "division by zero");
      return Value::rational(x / y);
    default:
      eval_fail(at, "invalid numeric operation");
  }
}

// Elementwise extension of +, -, scalar *, and % to int vectors (tuples).
Value tuple_map2(BinOp op, const Value& a, const Value& b, const ExprPtr& at) {
  const ValueVec& xs = a.as_tuple();
  const ValueVec& ys = b.as_tuple();
  if (xs.size() != ys.size()) eval_fail(at, "tuple length mismatch");
  ValueVec out;
  out.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out.push_back(numeric_binary(op, xs[i], ys[i], at));
  return Value::tuple(std::move(out));
}

Value tuple_scale(const Value& scalar, const Value& tup, const ExprPtr& at) {
  ValueVec out;
  out.reserve(tup.as_tuple().size());
  for (const Value& x : tup.as_tuple()) {
    out.push_back(numeric_binary(BinOp::Mul, scalar, x, at));
  }
  return Value::tuple(std::move(out));
}

Value tuple_mod(const Value& tup, const Value& m, const ExprPtr& at) {
  ValueVec out;
  out.reserve(tup.as_tuple().size());
  for (const Value& x : tup.as_tuple()) {
    out.push_back(numeric_binary(BinOp::Mod, x, m, at));
  }
  return Value::tuple(std::move(out));
}

int numeric_compare(const Value& a, const Value& b, const ExprPtr& at) {
  if (a.is_int() && b.is_int()) return a.as_int().compare(b.as_int());
  if (is_numeric(a) && is_numeric(b)) return as_rational(a).compare(as_rational(b));
  if (a.kind() != b.kind()) eval_fail(at, "comparison across kinds");
  return a.compare(b);
}

}  // namespace

Rational as_rational(const Value& v) {
  if (v.is_rat()) return v.as_rat();
  if (v.is_int()) return Rational(v.as_int());
  throw_error(ErrorKind::Type, "not numeric: " + v.to_string());
}

Value eval_expr(const EvalScope& scope, const ExprPtr& e) {
  struct V {
    const EvalScope& scope;
    const ExprPtr& at;

    Value operator()(const Expr::Lit& l) const { return l.value; }
    Value operator()(const Expr::Nil&) const { return Value::nil(); }

    Value operator()(const Expr::Var& v) const {
      const VarRef& r = v.ref;
      if (r.bound >= 0) {
        const size_t depth = scope.bound.size();
        if (size_t(r.bound) >= depth) eval_fail(at, "unbound quantifier variable " + r.name);
        return scope.bound[depth - 1 - size_t(r.bound)];
      }
      const Memory* m = (r.side == 2) ? scope.m2 : scope.m1;
      if (!m) eval_fail(at, "no memory for variable " + r.name);
      if (r.slot < 0 || size_t(r.slot) >= m->size()) {
        eval_fail(at, "unbound variable " + r.name);
      }
      return m->get(r.slot);
    }

    Value operator()(const Expr::Unary& u) const {
      Value x = eval_expr(scope, u.operand);
      if (u.op == UnOp::Not) return Value::boolean(!x.as_bool());
      if (x.is_int()) return Value::integer(-x.as_int());
      return Value::rational(-x.as_rat());
    }

    Value operator()(const Expr::Binary& b) const {
      switch (b.op) {
        case BinOp::And: {
          if (!eval_expr(scope, b.lhs).as_bool()) return Value::boolean(false);
          return Value::boolean(eval_expr(scope, b.rhs).as_bool());
        }
        case BinOp::Or: {
          if (eval_expr(scope, b.lhs).as_bool()) return Value::boolean(true);
          return Value::boolean(eval_expr(scope, b.rhs).as_bool());
        }
        case BinOp::Implies: {
          if (!eval_expr(scope, b.lhs).as_bool()) return Value::boolean(true);
          return Value::boolean(eval_expr(scope, b.rhs).as_bool());
        }
        default:
          break;
      }
      Value x = eval_expr(scope, b.lhs);
      Value y = eval_expr(scope, b.rhs);
      switch (b.op) {
        case BinOp::Eq: return Value::boolean(numeric_compare(x, y, at) == 0);
        case BinOp::Ne: return Value::boolean(numeric_compare(x, y, at) != 0);
        case BinOp::Lt: return Value::boolean(numeric_compare(x, y, at) < 0);
        case BinOp::Le: return Value::boolean(numeric_compare(x, y, at) <= 0);
        case BinOp::Gt: return Value::boolean(numeric_compare(x, y, at) > 0);
        case BinOp::Ge: return Value::boolean(numeric_compare(x, y, at) >= 0);
        case BinOp::Cons: {
          ValueVec items;
          items.reserve(y.as_list().size() + 1);
          items.push_back(std::move(x));
          for (const Value& v : y.as_list()) items.push_back(v);
          return Value::list(std::move(items));
        }
        case BinOp::Mod:
          if (x.is_tuple()) return tuple_mod(x, y, at);
          return numeric_binary(BinOp::Mod, x, y, at);
        case BinOp::Add:
        case BinOp::Sub:
          if (x.is_tuple() && y.is_tuple()) return tuple_map2(b.op, x, y, at);
          return numeric_binary(b.op, x, y, at);
        case BinOp::Mul:
          if (x.is_tuple()) return tuple_scale(y, x, at);
          if (y.is_tuple()) return tuple_scale(x, y, at);
          return numeric_binary(b.op, x, y, at);
        case BinOp::Div:
          return numeric_binary(b.op, x, y, at);
        default:
          eval_fail(at, "unhandled operator");
      }
    }

    Value operator()(const Expr::Cond& c) const {
      return eval_expr(scope, eval_expr(scope, c.cond).as_bool() ? c.then_e : c.else_e);
    }

    Value operator()(const Expr::TupleExpr& t) const {
      ValueVec items;
      items.reserve(t.items.size());
      for (const ExprPtr& item : t.items) items.push_back(eval_expr(scope, item));
      return Value::tuple(std::move(items));
    }

    Value operator()(const Expr::Index& i) const {
      Value base = eval_expr(scope, i.base);
      Value idx = eval_expr(scope, i.index);
      const ValueVec& items = base.is_tuple() ? base.as_tuple() : base.as_list();
      const Int& k = idx.as_int();
      if (k < 1 || k > Int(items.size())) {
        eval_fail(at, "index " + k.str() + " out of range 1.." + std::to_string(items.size()));
      }
      return items[size_t(long(k)) - 1];
    }

    Value operator()(const Expr::Call& c) const {
      if (!c.fn) eval_fail(at, "unresolved function " + c.name);
      ValueVec args;
      args.reserve(c.args.size());
      for (const ExprPtr& a : c.args) args.push_back(eval_expr(scope, a));
      return c.fn->apply(args);
    }

    Value operator()(const Expr::Quant& q) const {
      const Int lo = eval_expr(scope, q.lo).as_int();
      const Int hi = eval_expr(scope, q.hi).as_int();
      EvalScope inner = scope;
      inner.bound.push_back(Value::integer(0));
      for (Int v = lo; v <= hi; ++v) {
        inner.bound.back() = Value::integer(v);
        const bool holds = eval_expr(inner, q.body).as_bool();
        if (q.is_forall && !holds) return Value::boolean(false);
        if (!q.is_forall && holds) return Value::boolean(true);
      }
      return Value::boolean(q.is_forall);
    }

    Value operator()(const Expr::SampleAll& s) const {
      const Memory* m = s.side == 2 ? scope.m2 : scope.m1;
      if (!m) eval_fail(at, "no memory for sample quantifier");
      const SubDist d = eval_dist(*m, s.dist);
      for (const auto& [v, p] : d.entries()) {
        Memory updated = m->with(s.target.slot, v);
        EvalScope inner = scope;
        (s.side == 2 ? inner.m2 : inner.m1) = &updated;
        if (!eval_expr(inner, s.body).as_bool()) return Value::boolean(false);
      }
      return Value::boolean(true);
    }
  };
  return std::visit(V{scope, e}, e->rep);
}

SubDist eval_dist(const EvalScope& scope, const DistExprPtr& d) {
  struct V {
    const EvalScope& scope;

    SubDist operator()(const DistExpr::Bern& b) const {
      return bernoulli(as_rational(eval_expr(scope, b.p)));
    }
    SubDist operator()(const DistExpr::UniformSet& u) const {
      ValueVec values;
      values.reserve(u.items.size());
      for (const ExprPtr& e : u.items) values.push_back(eval_expr(scope, e));
      return uniform(values);
    }
    SubDist operator()(const DistExpr::UniformRange& u) const {
      const Int lo = eval_expr(scope, u.lo).as_int();
      const Int hi = eval_expr(scope, u.hi).as_int();
      if (lo > hi) {
        throw_error(ErrorKind::Domain,
                    "empty uniform range [" + lo.str() + ", " + hi.str() + "]");
      }
      ValueVec values;
      for (Int v = lo; v <= hi; ++v) values.push_back(Value::integer(v));
      return uniform(values);
    }
    SubDist operator()(const DistExpr::Explicit& x) const {
      SubDist out;
      for (const auto& [value_e, prob_e] : x.rows) {
        const Value v = eval_expr(scope, value_e);
        const Rational p = as_rational(eval_expr(scope, prob_e));
        if (p < 0) {
          throw_error(ErrorKind::Domain, "explicit table entry for " + v.to_string() +
                                             " is negative: " + format_rational(p));
        }
        out.add(v, p);  // mass <= 1 enforced by SubDist
      }
      return out;
    }
  };
  return std::visit(V{scope}, d->rep);
}

// --- Interpretation -----------------------------------------------------------

namespace {

MemoryDist run_block(const Block& block, MemoryDist in, const InterpOptions& opts);

MemoryDist run_command(const Command& cmd, MemoryDist in, const InterpOptions& opts) {
  struct V {
    MemoryDist in;
    const InterpOptions& opts;

    MemoryDist operator()(const Command::Skip&) { return std::move(in); }

    MemoryDist operator()(const Command::Assign& a) {
      MemoryDist out;
      out.residual = in.residual;
      for (const auto& [m, p] : in.entries) {
        out.add(m.with(a.target.slot, eval_expr(m, a.value)), p);
      }
      return out;
    }

    MemoryDist operator()(const Command::Rand& r) {
      MemoryDist out;
      out.residual = in.residual;
      for (const auto& [m, p] : in.entries) {
        const SubDist d = eval_dist(m, r.dist);
        for (const auto& [v, pv] : d.entries()) {
          out.add(m.with(r.target.slot, v), p * pv);
        }
      }
      return out;
    }

    MemoryDist operator()(const Command::If& c) {
      MemoryDist then_in, else_in;
      for (const auto& [m, p] : in.entries) {
        (eval_expr(m, c.guard).as_bool() ? then_in : else_in).add(m, p);
      }
      MemoryDist out = run_block(c.then_branch, std::move(then_in), opts);
      MemoryDist other = run_block(c.else_branch, std::move(else_in), opts);
      out.residual += in.residual + other.residual;
      for (const auto& [m, p] : other.entries) out.add(m, p);
      return out;
    }

    MemoryDist operator()(const Command::While& w) {
      MemoryDist exited;
      exited.residual = in.residual;
      MemoryDist active = std::move(in);
      active.residual = 0;
      for (long round = 0;; ++round) {
        MemoryDist looping;
        for (const auto& [m, p] : active.entries) {
          if (eval_expr(m, w.guard).as_bool()) {
            looping.add(m, p);
          } else {
            exited.add(m, p);
          }
        }
        if (looping.entries.empty()) break;  // exact fixpoint: guard-true mass is 0
        if (round == opts.fuel) {
          Rational left = looping.mass();
          if (opts.error_on_residual) {
            throw PrhlError(ErrorKind::Fuel,
                            "loop residual mass " + format_rational(left) + " after " +
                                std::to_string(opts.fuel) + " unrollings of 'while " +
                                expr_to_string(w.guard) + "'");
          }
          exited.residual += left;
          break;
        }
        MemoryDist stepped = run_block(w.body, std::move(looping), opts);
        exited.residual += stepped.residual;
        stepped.residual = 0;
        active = std::move(stepped);
      }
      return exited;
    }
  };
  return std::visit(V{std::move(in), opts}, cmd.rep);
}

MemoryDist run_block(const Block& block, MemoryDist in, const InterpOptions& opts) {
  for (const Command& cmd : block) {
    in = run_command(cmd, std::move(in), opts);
  }
  return in;
}

}  // namespace

MemoryDist interpret(const Block& block, const Memory& m, const InterpOptions& opts) {
  MemoryDist in;
  in.add(m, Rational(1));
  return run_block(block, std::move(in), opts);
}

MemoryDist interpret(const Block& block, MemoryDist in, const InterpOptions& opts) {
  return run_block(block, std::move(in), opts);
}

SubDist pushforward(const MemoryDist& mu, const ExprPtr& e) {
  SubDist out;
  for (const auto& [m, p] : mu.entries) {
    out.add(eval_expr(m, e), p);
  }
  return out;
}

Prob event_probability(const MemoryDist& mu, const ExprPtr& event) {
  Rational total = 0;
  for (const auto& [m, p] : mu.entries) {
    if (eval_expr(m, event).as_bool()) total += p;
  }
  return Prob(total);
}

LosslessResult is_lossless(const Program& prog, const Block& block, long fuel,
                           const Int& enumeration_cap) {
  std::vector<DomainPtr> domains;
  for (const VarDecl& d : prog.vars) {
    if (!d.domain) {
      throw_error(ErrorKind::Domain,
                  "variable '" + d.name + "' has no finite domain; cannot enumerate");
    }
    domains.push_back(d.domain);
  }
  MemoryEnumerator en(domains, default_memory(prog));
  if (en.count() > enumeration_cap) {
    throw PrhlError(ErrorKind::Capacity, "lossless check needs " + en.count().str() +
                                             " memories, cap is " + enumeration_cap.str());
  }
  InterpOptions opts;
  opts.fuel = fuel;
  Memory m;
  while (en.next(m)) {
    MemoryDist out = interpret(block, m, opts);
    if (!out.exact()) return {Lossless::Indeterminate, m};
    if (out.mass() != 1) return {Lossless::No, m};
  }
  return {Lossless::Yes, std::nullopt};
}

}  // namespace prhl::lang
