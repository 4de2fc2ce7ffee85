#include "prhl/lang/ast.hpp"

#include <sstream>

namespace prhl::lang {

// --- Types ------------------------------------------------------------------

TypePtr Type::integer() {
  static TypePtr t = std::make_shared<Type>(Type{Kind::Int, {}, {}, nullptr});
  return t;
}
TypePtr Type::boolean() {
  static TypePtr t = std::make_shared<Type>(Type{Kind::Bool, {}, {}, nullptr});
  return t;
}
TypePtr Type::prob() {
  static TypePtr t = std::make_shared<Type>(Type{Kind::Prob, {}, {}, nullptr});
  return t;
}
TypePtr Type::enumeration(std::string name) {
  return std::make_shared<Type>(Type{Kind::Enum, std::move(name), {}, nullptr});
}
TypePtr Type::tuple(std::vector<TypePtr> items) {
  return std::make_shared<Type>(Type{Kind::Tuple, {}, std::move(items), nullptr});
}
TypePtr Type::vector_of(const TypePtr& elem, int n) {
  return tuple(std::vector<TypePtr>(size_t(n), elem));
}
TypePtr Type::list(TypePtr elem) {
  return std::make_shared<Type>(Type{Kind::List, {}, {}, std::move(elem)});
}

std::string Type::to_string() const {
  switch (kind) {
    case Kind::Int: return "int";
    case Kind::Bool: return "bool";
    case Kind::Prob: return "prob";
    case Kind::Enum: return enum_name;
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += items[i]->to_string();
      }
      return s + ")";
    }
    case Kind::List: return "list<" + elem->to_string() + ">";
  }
  return "?";
}

bool same_type(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::Int:
    case Type::Kind::Bool:
    case Type::Kind::Prob:
      return true;
    case Type::Kind::Enum:
      return a->enum_name == b->enum_name;
    case Type::Kind::Tuple: {
      if (a->items.size() != b->items.size()) return false;
      for (size_t i = 0; i < a->items.size(); ++i) {
        if (!same_type(a->items[i], b->items[i])) return false;
      }
      return true;
    }
    case Type::Kind::List:
      return same_type(a->elem, b->elem);
  }
  return false;
}

// --- Domains ----------------------------------------------------------------

DomainPtr FiniteDomain::int_range(Int lo, Int hi) {
  if (lo > hi) {
    throw_error(ErrorKind::Domain,
                "empty integer range [" + lo.str() + ", " + hi.str() + "]");
  }
  auto d = std::make_shared<FiniteDomain>();
  d->kind = Kind::IntRange;
  d->lo = std::move(lo);
  d->hi = std::move(hi);
  return d;
}

DomainPtr FiniteDomain::explicit_set(ValueVec values) {
  if (values.empty()) throw_error(ErrorKind::Domain, "empty explicit domain");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto d = std::make_shared<FiniteDomain>();
  d->kind = Kind::Explicit;
  d->values = std::move(values);
  return d;
}

DomainPtr FiniteDomain::singleton(Value v) { return explicit_set({std::move(v)}); }

DomainPtr FiniteDomain::boolean() {
  static DomainPtr d = [] {
    auto b = std::make_shared<FiniteDomain>();
    b->kind = Kind::Bool;
    return b;
  }();
  return d;
}

DomainPtr FiniteDomain::enumeration(std::string name, std::vector<std::string> ctors) {
  auto d = std::make_shared<FiniteDomain>();
  d->kind = Kind::Enum;
  d->enum_name = std::move(name);
  d->ctors = std::move(ctors);
  return d;
}

DomainPtr FiniteDomain::tuple(std::vector<DomainPtr> components) {
  auto d = std::make_shared<FiniteDomain>();
  d->kind = Kind::Tuple;
  d->components = std::move(components);
  return d;
}

DomainPtr FiniteDomain::list(DomainPtr elem, int max_len) {
  auto d = std::make_shared<FiniteDomain>();
  d->kind = Kind::List;
  d->elem = std::move(elem);
  d->max_len = max_len;
  return d;
}

Int FiniteDomain::count() const {
  switch (kind) {
    case Kind::IntRange: return hi - lo + 1;
    case Kind::Explicit: return Int(values.size());
    case Kind::Bool: return 2;
    case Kind::Enum: return Int(ctors.size());
    case Kind::Tuple: {
      Int n = 1;
      for (const auto& c : components) n *= c->count();
      return n;
    }
    case Kind::List: {
      const Int base = elem->count();
      Int total = 0, level = 1;
      for (int len = 0; len <= max_len; ++len) {
        total += level;
        level *= base;
      }
      return total;
    }
  }
  return 0;
}

ValueVec FiniteDomain::enumerate() const {
  ValueVec out;
  switch (kind) {
    case Kind::IntRange:
      for (Int v = lo; v <= hi; ++v) out.push_back(Value::integer(v));
      break;
    case Kind::Explicit:
      out = values;
      break;
    case Kind::Bool:
      out.push_back(Value::boolean(false));
      out.push_back(Value::boolean(true));
      break;
    case Kind::Enum:
      for (size_t i = 0; i < ctors.size(); ++i) {
        out.push_back(Value::enumerated(EnumVal{enum_name, ctors[i], std::int32_t(i)}));
      }
      break;
    case Kind::Tuple: {
      out.push_back(Value::tuple({}));
      for (const auto& comp : components) {
        ValueVec next;
        ValueVec comp_vals = comp->enumerate();
        for (const Value& partial : out) {
          for (const Value& v : comp_vals) {
            ValueVec items = partial.as_tuple();
            items.push_back(v);
            next.push_back(Value::tuple(std::move(items)));
          }
        }
        out = std::move(next);
      }
      break;
    }
    case Kind::List: {
      ValueVec elems = elem->enumerate();
      std::vector<ValueVec> level{{}};  // lists of current length, as raw item vectors
      out.push_back(Value::nil());
      for (int len = 1; len <= max_len; ++len) {
        std::vector<ValueVec> next;
        for (const auto& prefix : level) {
          for (const Value& v : elems) {
            ValueVec items = prefix;
            items.push_back(v);
            out.push_back(Value::list(items));
            next.push_back(std::move(items));
          }
        }
        level = std::move(next);
      }
      break;
    }
  }
  return out;
}

bool FiniteDomain::contains(const Value& v) const {
  switch (kind) {
    case Kind::IntRange:
      return v.is_int() && v.as_int() >= lo && v.as_int() <= hi;
    case Kind::Explicit:
      return std::binary_search(values.begin(), values.end(), v);
    case Kind::Bool:
      return v.is_bool();
    case Kind::Enum:
      return v.is_enum() && v.as_enum().type == enum_name;
    case Kind::Tuple: {
      if (!v.is_tuple() || v.as_tuple().size() != components.size()) return false;
      for (size_t i = 0; i < components.size(); ++i) {
        if (!components[i]->contains(v.as_tuple()[i])) return false;
      }
      return true;
    }
    case Kind::List: {
      if (!v.is_list() || v.as_list().size() > size_t(max_len)) return false;
      for (const Value& item : v.as_list()) {
        if (!elem->contains(item)) return false;
      }
      return true;
    }
  }
  return false;
}

Value FiniteDomain::default_value() const {
  switch (kind) {
    case Kind::IntRange: return Value::integer(lo);
    case Kind::Explicit: return values.front();
    case Kind::Bool: return Value::boolean(false);
    case Kind::Enum: return Value::enumerated(EnumVal{enum_name, ctors.front(), 0});
    case Kind::Tuple: {
      ValueVec items;
      for (const auto& c : components) items.push_back(c->default_value());
      return Value::tuple(std::move(items));
    }
    case Kind::List: return Value::nil();
  }
  return Value::boolean(false);
}

std::string FiniteDomain::to_string() const {
  switch (kind) {
    case Kind::IntRange: return "[" + lo.str() + ", " + hi.str() + "]";
    case Kind::Explicit: {
      std::string s = "{";
      for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += values[i].to_string();
      }
      return s + "}";
    }
    case Kind::Bool: return "bool";
    case Kind::Enum: return enum_name;
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < components.size(); ++i) {
        if (i) s += ", ";
        s += components[i]->to_string();
      }
      return s + ")";
    }
    case Kind::List:
      return "list<" + elem->to_string() + "> cap " + std::to_string(max_len);
  }
  return "?";
}

// --- Registry ----------------------------------------------------------------

void FunctionRegistry::add(PureFn fn) {
  auto name = fn.name;
  fns_[name] = std::make_shared<const PureFn>(std::move(fn));
}

PureFnPtr FunctionRegistry::find(const std::string& name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : it->second;
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, fn] : fns_) out.push_back(name);
  return out;
}

// --- Expressions --------------------------------------------------------------

ExprPtr make_expr(Expr::Rep rep, int line, int column) {
  auto e = std::make_shared<Expr>();
  e->rep = std::move(rep);
  e->line = line;
  e->column = column;
  return e;
}

ExprPtr lit_expr(Value v) { return make_expr(Expr::Lit{std::move(v)}); }

namespace {

const char* binop_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Implies: return "->";
    case BinOp::Cons: return "::";
  }
  return "?";
}

}  // namespace

std::string expr_to_string(const ExprPtr& e) {
  if (!e) return "?";
  struct V {
    std::string operator()(const Expr::Lit& l) const { return l.value.to_string(); }
    std::string operator()(const Expr::Nil&) const { return "[]"; }
    std::string operator()(const Expr::Var& v) const {
      std::string s = v.ref.name;
      if (v.ref.side == 1) s += "#1";
      if (v.ref.side == 2) s += "#2";
      return s;
    }
    std::string operator()(const Expr::Unary& u) const {
      return std::string(u.op == UnOp::Neg ? "-" : "!") + expr_to_string(u.operand);
    }
    std::string operator()(const Expr::Binary& b) const {
      return "(" + expr_to_string(b.lhs) + " " + binop_name(b.op) + " " + expr_to_string(b.rhs) +
             ")";
    }
    std::string operator()(const Expr::Cond& c) const {
      return "(" + expr_to_string(c.cond) + " ? " + expr_to_string(c.then_e) + " : " +
             expr_to_string(c.else_e) + ")";
    }
    std::string operator()(const Expr::TupleExpr& t) const {
      std::string s = "(";
      for (size_t i = 0; i < t.items.size(); ++i) {
        if (i) s += ", ";
        s += expr_to_string(t.items[i]);
      }
      return s + ")";
    }
    std::string operator()(const Expr::Index& i) const {
      return expr_to_string(i.base) + "[" + expr_to_string(i.index) + "]";
    }
    std::string operator()(const Expr::Call& c) const {
      std::string s = c.name + "(";
      for (size_t i = 0; i < c.args.size(); ++i) {
        if (i) s += ", ";
        s += expr_to_string(c.args[i]);
      }
      return s + ")";
    }
    std::string operator()(const Expr::Quant& q) const {
      return std::string("(") + (q.is_forall ? "forall " : "exists ") + q.var + " in [" +
             expr_to_string(q.lo) + ", " + expr_to_string(q.hi) + "]. " +
             expr_to_string(q.body) + ")";
    }
    std::string operator()(const Expr::SampleAll& s) const {
      return "(forall " + s.target.name + "#" + std::to_string(s.side) + " ~ " +
             dist_to_string(s.dist) + ". " + expr_to_string(s.body) + ")";
    }
  };
  return std::visit(V{}, e->rep);
}

std::string dist_to_string(const DistExprPtr& d) {
  if (!d) return "?";
  struct V {
    std::string operator()(const DistExpr::Bern& b) const {
      return "Bern(" + expr_to_string(b.p) + ")";
    }
    std::string operator()(const DistExpr::UniformSet& u) const {
      std::string s = "{";
      for (size_t i = 0; i < u.items.size(); ++i) {
        if (i) s += ", ";
        s += expr_to_string(u.items[i]);
      }
      return s + "}";
    }
    std::string operator()(const DistExpr::UniformRange& u) const {
      return "[" + expr_to_string(u.lo) + ", " + expr_to_string(u.hi) + "]";
    }
    std::string operator()(const DistExpr::Explicit& e) const {
      std::string s = "table(";
      for (size_t i = 0; i < e.rows.size(); ++i) {
        if (i) s += ", ";
        s += expr_to_string(e.rows[i].first) + ": " + expr_to_string(e.rows[i].second);
      }
      return s + ")";
    }
  };
  return std::visit(V{}, d->rep);
}

// --- Commands -----------------------------------------------------------------

std::string command_to_string(const Command& c) {
  struct V {
    std::string operator()(const Command::Skip&) const { return "skip"; }
    std::string operator()(const Command::Assign& a) const {
      return a.target.name + " := " + expr_to_string(a.value);
    }
    std::string operator()(const Command::Rand& r) const {
      return r.target.name + " ~~ " + dist_to_string(r.dist);
    }
    std::string operator()(const Command::If& i) const {
      std::string s = "if " + expr_to_string(i.guard) + " then " + block_to_string(i.then_branch);
      if (!i.else_branch.empty()) s += " else " + block_to_string(i.else_branch);
      return s + " fi";
    }
    std::string operator()(const Command::While& w) const {
      return "while " + expr_to_string(w.guard) + " do " + block_to_string(w.body) + " end";
    }
  };
  return std::visit(V{}, c.rep);
}

std::string block_to_string(const Block& b) {
  std::string s;
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) s += "; ";
    s += command_to_string(b[i]);
  }
  return s.empty() ? "skip" : s;
}

bool is_effectively_skip(const Block& b) {
  for (const Command& c : b) {
    if (!c.get<Command::Skip>()) return false;
  }
  return true;
}

// --- Program ------------------------------------------------------------------

int Program::slot_of(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return int(i);
  }
  return -1;
}

const EnumDecl* Program::find_enum(const std::string& name) const {
  for (const auto& e : enums) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

int Program::add_var(VarDecl decl) {
  if (slot_of(decl.name) >= 0) {
    throw_error(ErrorKind::Type, "variable already declared: " + decl.name);
  }
  vars.push_back(std::move(decl));
  return int(vars.size()) - 1;
}

}  // namespace prhl::lang
