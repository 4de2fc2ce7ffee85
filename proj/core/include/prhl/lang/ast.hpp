#ifndef PRHL_LANG_AST_HPP
#define PRHL_LANG_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prhl/subdist.hpp"

namespace prhl::lang {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Int, Bool, Prob, Enum, Tuple, List };

  Kind kind = Kind::Int;
  std::string enum_name;        // Kind::Enum
  std::vector<TypePtr> items;   // Kind::Tuple
  TypePtr elem;                 // Kind::List

  static TypePtr integer();
  static TypePtr boolean();
  static TypePtr prob();
  static TypePtr enumeration(std::string name);
  static TypePtr tuple(std::vector<TypePtr> items);
  static TypePtr vector_of(const TypePtr& elem, int n);
  static TypePtr list(TypePtr elem);

  std::string to_string() const;
};

bool same_type(const TypePtr& a, const TypePtr& b);

// ---------------------------------------------------------------------------
// Finite domains (drive side-condition enumeration)
// ---------------------------------------------------------------------------

struct FiniteDomain;
using DomainPtr = std::shared_ptr<const FiniteDomain>;

struct FiniteDomain {
  enum class Kind { IntRange, Explicit, Bool, Enum, Tuple, List };

  Kind kind = Kind::Bool;
  Int lo, hi;                        // IntRange
  ValueVec values;                   // Explicit (sorted, distinct)
  std::string enum_name;             // Enum
  std::vector<std::string> ctors;    // Enum
  std::vector<DomainPtr> components; // Tuple
  DomainPtr elem;                    // List
  int max_len = 0;                   // List

  static DomainPtr int_range(Int lo, Int hi);
  static DomainPtr explicit_set(ValueVec values);
  static DomainPtr singleton(Value v);
  static DomainPtr boolean();
  static DomainPtr enumeration(std::string name, std::vector<std::string> ctors);
  static DomainPtr tuple(std::vector<DomainPtr> components);
  static DomainPtr list(DomainPtr elem, int max_len);

  // Number of values in the domain.
  Int count() const;
  // Materializes the domain in its deterministic enumeration order.
  ValueVec enumerate() const;
  bool contains(const Value& v) const;
  // First value in enumeration order; used for don't-care slots.
  Value default_value() const;

  std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Registered pure functions
// ---------------------------------------------------------------------------

struct PureFn {
  std::string name;
  std::vector<TypePtr> params;
  TypePtr result;
  std::function<Value(const ValueVec&)> apply;
};
using PureFnPtr = std::shared_ptr<const PureFn>;

// Named pure functions available to programs and assertions (Sigma, P, ...).
class FunctionRegistry {
 public:
  void add(PureFn fn);
  PureFnPtr find(const std::string& name) const;  // nullptr if absent
  std::vector<std::string> names() const;

 private:
  std::map<std::string, PureFnPtr> fns_;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp {
  Add, Sub, Mul, Div, Mod,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or, Implies,
  Cons,
};

enum class UnOp { Neg, Not };

// Variable reference. side 0 = plain program variable, 1/2 = tagged variable
// of a relational assertion, bound >= 0 = quantifier-bound integer (de
// Bruijn index, innermost = 0).
struct VarRef {
  std::string name;
  int side = 0;
  int slot = -1;
  int bound = -1;
};

struct Expr {
  struct Lit { Value value; };
  struct Nil {};
  struct Var { VarRef ref; };
  struct Unary { UnOp op; ExprPtr operand; };
  struct Binary { BinOp op; ExprPtr lhs, rhs; };
  struct Cond { ExprPtr cond, then_e, else_e; };
  struct TupleExpr { std::vector<ExprPtr> items; };
  struct Index { ExprPtr base, index; };
  struct Call { std::string name; PureFnPtr fn; std::vector<ExprPtr> args; };
  // Bounded integer quantifier (assertions only): forall/exists v in [lo, hi].
  struct Quant { bool is_forall; std::string var; ExprPtr lo, hi, body; };
  // Internal node built by the one-sided sample rules: body holds for every
  // value of `target` in the support of `dist`, evaluated in side's memory.
  // Never produced by the surface grammar.
  struct SampleAll { int side; VarRef target; std::shared_ptr<const struct DistExpr> dist; ExprPtr body; };

  using Rep =
      std::variant<Lit, Nil, Var, Unary, Binary, Cond, TupleExpr, Index, Call, Quant, SampleAll>;

  Rep rep;
  int line = 0, column = 0;

  template <class T>
  const T* get() const { return std::get_if<T>(&rep); }
};

ExprPtr make_expr(Expr::Rep rep, int line = 0, int column = 0);
ExprPtr lit_expr(Value v);
std::string expr_to_string(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Distribution expressions
// ---------------------------------------------------------------------------

struct DistExpr {
  struct Bern { ExprPtr p; };
  struct UniformSet { std::vector<ExprPtr> items; };
  struct UniformRange { ExprPtr lo, hi; };
  struct Explicit { std::vector<std::pair<ExprPtr, ExprPtr>> rows; };

  using Rep = std::variant<Bern, UniformSet, UniformRange, Explicit>;
  Rep rep;
  int line = 0, column = 0;
};
using DistExprPtr = std::shared_ptr<const DistExpr>;

std::string dist_to_string(const DistExprPtr& d);

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Command;
using Block = std::vector<Command>;

struct Command {
  struct Skip {};
  struct Assign { VarRef target; ExprPtr value; };
  struct Rand { VarRef target; DistExprPtr dist; };
  struct If { ExprPtr guard; Block then_branch, else_branch; };
  struct While { ExprPtr guard; Block body; };

  using Rep = std::variant<Skip, Assign, Rand, If, While>;
  Rep rep;
  int line = 0, column = 0;

  template <class T>
  const T* get() const { return std::get_if<T>(&rep); }
};

std::string command_to_string(const Command& c);
std::string block_to_string(const Block& b);

// True if the block contains no effectful command.
bool is_effectively_skip(const Block& b);

// ---------------------------------------------------------------------------
// Declarations and programs
// ---------------------------------------------------------------------------

struct EnumDecl {
  std::string name;
  std::vector<std::string> ctors;
};

struct VarDecl {
  std::string name;
  TypePtr type;
  DomainPtr domain;  // may be null (no finite domain declared)
  bool is_param = false;
  std::optional<Value> param_value;
};

struct Program {
  std::vector<EnumDecl> enums;
  std::vector<VarDecl> vars;  // declaration order fixes memory slots
  Block body;
  std::vector<ExprPtr> returns;

  int slot_of(const std::string& name) const;  // -1 if absent
  const VarDecl& decl(int slot) const { return vars.at(size_t(slot)); }
  const EnumDecl* find_enum(const std::string& name) const;

  // Appends a fresh variable (used by program transformations). Returns its
  // slot index.
  int add_var(VarDecl decl);
};

}  // namespace prhl::lang

#endif  // PRHL_LANG_AST_HPP
