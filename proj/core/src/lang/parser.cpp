#include "prhl/lang/parser.hpp"

#include <cctype>
#include <cstring>

#include "prhl/lang/eval.hpp"

namespace prhl::lang {

namespace {

// --- Lexer -------------------------------------------------------------------

enum class Tok {
  End, Ident, Number, Punct,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Int number;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '$')) {
        bump();
      }
      current_.kind = Tok::Ident;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      current_.kind = Tok::Number;
      current_.text = src_.substr(start, pos_ - start);
      current_.number = Int(current_.text);
      return;
    }
    // Multi-character punctuation, longest first.
    static const char* puncts[] = {":=", "~~", "++", "--", "::", "<=", ">=", "!=",
                                   "&&", "||", "->", "<", ">", "=", "+", "-", "*",
                                   "/", "%", "!", "?", ":", ";", ",", ".", "(", ")",
                                   "[", "]", "{", "}", "^", "#"};
    for (const char* p : puncts) {
      const size_t n = std::strlen(p);
      if (src_.compare(pos_, n, p) == 0) {
        current_.kind = Tok::Punct;
        current_.text = p;
        for (size_t i = 0; i < n; ++i) bump();
        return;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, column_ = 1;
  Token current_;
};

// --- Parser ------------------------------------------------------------------

// How identifiers resolve: a plain program (side-0 variables of one program)
// or a relational context (tagged variables over two programs).
struct Scope {
  const Program* p1 = nullptr;
  const Program* p2 = nullptr;
  bool relational = false;
  const FunctionRegistry* registry = nullptr;
  std::vector<std::string> binders;  // quantifier-bound names, outermost first
};

class Parser {
 public:
  Parser(const std::string& src, Scope scope) : lex_(src), scope_(std::move(scope)) {}

  // --- program files ---
  Program parse_program_file(const std::map<std::string, std::string>& params);

  // --- standalone expressions ---
  ExprPtr parse_full_expr() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

  DistExprPtr parse_full_dist() {
    DistExprPtr d = parse_dist();
    expect_end();
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = lex_.peek();
    throw ParseError(message + (t.kind == Tok::End ? " at end of input"
                                                   : " near '" + t.text + "'"),
                     t.line, t.column);
  }

  bool is_punct(const char* p) const {
    return lex_.peek().kind == Tok::Punct && lex_.peek().text == p;
  }
  bool is_ident(const char* name) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == name;
  }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    lex_.take();
    return true;
  }
  bool accept_ident(const char* name) {
    if (!is_ident(name)) return false;
    lex_.take();
    return true;
  }
  Token expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    return lex_.take();
  }
  Token expect_ident() {
    if (lex_.peek().kind != Tok::Ident) fail("expected identifier");
    return lex_.take();
  }
  void expect_keyword(const char* name) {
    if (!accept_ident(name)) fail(std::string("expected '") + name + "'");
  }
  void expect_end() {
    if (lex_.peek().kind != Tok::End) fail("unexpected trailing input");
  }

  // --- expression grammar, lowest precedence first ---

  ExprPtr expr() { return ternary(); }

  ExprPtr ternary() {
    ExprPtr c = implication();
    if (!accept_punct("?")) return c;
    ExprPtr t = expr();
    expect_punct(":");
    ExprPtr f = ternary();
    return make_expr(Expr::Cond{c, t, f}, c->line, c->column);
  }

  ExprPtr implication() {
    ExprPtr lhs = or_expr();
    if (!accept_punct("->")) return lhs;
    ExprPtr rhs = implication();
    return make_expr(Expr::Binary{BinOp::Implies, lhs, rhs}, lhs->line, lhs->column);
  }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (accept_punct("||")) {
      ExprPtr rhs = and_expr();
      lhs = make_expr(Expr::Binary{BinOp::Or, lhs, rhs}, lhs->line, lhs->column);
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = comparison();
    while (accept_punct("&&")) {
      ExprPtr rhs = comparison();
      lhs = make_expr(Expr::Binary{BinOp::And, lhs, rhs}, lhs->line, lhs->column);
    }
    return lhs;
  }

  ExprPtr comparison() {
    ExprPtr lhs = cons_expr();
    BinOp op;
    if (is_punct("=")) op = BinOp::Eq;
    else if (is_punct("!=")) op = BinOp::Ne;
    else if (is_punct("<")) op = BinOp::Lt;
    else if (is_punct("<=")) op = BinOp::Le;
    else if (is_punct(">")) op = BinOp::Gt;
    else if (is_punct(">=")) op = BinOp::Ge;
    else return lhs;
    lex_.take();
    ExprPtr rhs = cons_expr();
    return make_expr(Expr::Binary{op, lhs, rhs}, lhs->line, lhs->column);
  }

  ExprPtr cons_expr() {
    ExprPtr lhs = additive();
    if (!accept_punct("::")) return lhs;
    ExprPtr rhs = cons_expr();
    return make_expr(Expr::Binary{BinOp::Cons, lhs, rhs}, lhs->line, lhs->column);
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (true) {
      BinOp op;
      if (is_punct("+")) op = BinOp::Add;
      else if (is_punct("-")) op = BinOp::Sub;
      else break;
      lex_.take();
      ExprPtr rhs = multiplicative();
      lhs = make_expr(Expr::Binary{op, lhs, rhs}, lhs->line, lhs->column);
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (true) {
      BinOp op;
      if (is_punct("*")) op = BinOp::Mul;
      else if (is_punct("/")) op = BinOp::Div;
      else if (is_punct("%")) op = BinOp::Mod;
      else break;
      lex_.take();
      ExprPtr rhs = unary();
      lhs = make_expr(Expr::Binary{op, lhs, rhs}, lhs->line, lhs->column);
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = lex_.peek();
    if (is_punct("-")) {
      lex_.take();
      return make_expr(Expr::Unary{UnOp::Neg, unary()}, t.line, t.column);
    }
    if (is_punct("!")) {
      lex_.take();
      return make_expr(Expr::Unary{UnOp::Not, unary()}, t.line, t.column);
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = atom();
    while (accept_punct("[")) {
      ExprPtr idx = expr();
      expect_punct("]");
      e = make_expr(Expr::Index{e, idx}, e->line, e->column);
    }
    return e;
  }

  ExprPtr atom() {
    Token t = lex_.peek();
    if (t.kind == Tok::Number) {
      lex_.take();
      return make_expr(Expr::Lit{Value::integer(t.number)}, t.line, t.column);
    }
    if (accept_punct("(")) {
      std::vector<ExprPtr> items{expr()};
      while (accept_punct(",")) items.push_back(expr());
      expect_punct(")");
      if (items.size() == 1) return items[0];
      return make_expr(Expr::TupleExpr{std::move(items)}, t.line, t.column);
    }
    if (accept_punct("[")) {
      expect_punct("]");
      return make_expr(Expr::Nil{}, t.line, t.column);
    }
    if (t.kind != Tok::Ident) fail("expected expression");
    lex_.take();
    if (t.text == "true") return make_expr(Expr::Lit{Value::boolean(true)}, t.line, t.column);
    if (t.text == "false") return make_expr(Expr::Lit{Value::boolean(false)}, t.line, t.column);
    if (t.text == "forall" || t.text == "exists") return quantifier(t);
    if (is_punct("(")) return call(t);
    return variable(t);
  }

  ExprPtr quantifier(const Token& kw) {
    if (!scope_.relational) fail("quantifiers are only available in assertions");
    Token name = expect_ident();
    expect_keyword("in");
    expect_punct("[");
    ExprPtr lo = expr();
    expect_punct(",");
    ExprPtr hi = expr();
    expect_punct("]");
    expect_punct(".");
    scope_.binders.push_back(name.text);
    ExprPtr body = expr();
    scope_.binders.pop_back();
    return make_expr(Expr::Quant{kw.text == "forall", name.text, lo, hi, body}, kw.line,
                     kw.column);
  }

  ExprPtr call(const Token& name) {
    PureFnPtr fn = scope_.registry ? scope_.registry->find(name.text) : nullptr;
    if (!fn) {
      throw ParseError("unknown function '" + name.text + "'", name.line, name.column);
    }
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!is_punct(")")) {
      args.push_back(expr());
      while (accept_punct(",")) args.push_back(expr());
    }
    expect_punct(")");
    if (args.size() != fn->params.size()) {
      throw ParseError("function '" + name.text + "' expects " +
                           std::to_string(fn->params.size()) + " arguments, got " +
                           std::to_string(args.size()),
                       name.line, name.column);
    }
    return make_expr(Expr::Call{name.text, fn, std::move(args)}, name.line, name.column);
  }

  ExprPtr variable(const Token& name) {
    // Quantifier-bound variables shadow everything and carry no tag.
    for (size_t i = scope_.binders.size(); i-- > 0;) {
      if (scope_.binders[i] == name.text) {
        VarRef ref;
        ref.name = name.text;
        ref.bound = int(scope_.binders.size() - 1 - i);
        return make_expr(Expr::Var{ref}, name.line, name.column);
      }
    }
    // Enum constructors.
    if (const Value* ctor = enum_ctor(name.text)) {
      return make_expr(Expr::Lit{*ctor}, name.line, name.column);
    }
    VarRef ref;
    ref.name = name.text;
    if (scope_.relational) {
      if (!accept_punct("#")) {
        throw ParseError("variable '" + name.text + "' needs a side tag #1 or #2", name.line,
                         name.column);
      }
      Token side = lex_.take();
      if (side.kind != Tok::Number || (side.number != 1 && side.number != 2)) {
        throw ParseError("side tag must be 1 or 2", side.line, side.column);
      }
      ref.side = int(long(side.number));
      const Program* p = ref.side == 1 ? scope_.p1 : scope_.p2;
      ref.slot = p->slot_of(name.text);
      if (ref.slot < 0) {
        throw ParseError("unknown variable '" + name.text + "#" + std::to_string(ref.side) + "'",
                         name.line, name.column);
      }
    } else {
      ref.side = 0;
      ref.slot = scope_.p1 ? scope_.p1->slot_of(name.text) : -1;
      if (ref.slot < 0) {
        throw ParseError("unknown identifier '" + name.text + "'", name.line, name.column);
      }
    }
    return make_expr(Expr::Var{ref}, name.line, name.column);
  }

  const Value* enum_ctor(const std::string& name) {
    auto lookup = [&](const Program* p) -> const Value* {
      if (!p) return nullptr;
      for (const EnumDecl& e : p->enums) {
        for (size_t i = 0; i < e.ctors.size(); ++i) {
          if (e.ctors[i] == name) {
            ctor_cache_ = Value::enumerated(EnumVal{e.name, name, std::int32_t(i)});
            return &ctor_cache_;
          }
        }
      }
      return nullptr;
    };
    if (const Value* v = lookup(scope_.p1)) return v;
    return lookup(scope_.p2);
  }

  // --- declarations and statements (program files) ---

  // Constant expression over already-bound parameters.
  Value const_eval(const ExprPtr& e) {
    check_const(e);
    return eval_expr(param_memory_, e);
  }

  void check_const(const ExprPtr& e) {
    if (auto* v = e->get<Expr::Var>()) {
      const VarDecl& d = building_.vars.at(size_t(v->ref.slot));
      if (!d.is_param) {
        throw ParseError("'" + d.name + "' is not a parameter; bounds and parameter values "
                         "must be constant over parameters",
                         e->line, e->column);
      }
      return;
    }
    std::visit([&](const auto& node) {
      using T = std::decay_t<decltype(node)>;
      if constexpr (std::is_same_v<T, Expr::Unary>) check_const(node.operand);
      else if constexpr (std::is_same_v<T, Expr::Binary>) { check_const(node.lhs); check_const(node.rhs); }
      else if constexpr (std::is_same_v<T, Expr::Cond>) { check_const(node.cond); check_const(node.then_e); check_const(node.else_e); }
      else if constexpr (std::is_same_v<T, Expr::TupleExpr>) { for (auto& i : node.items) check_const(i); }
      else if constexpr (std::is_same_v<T, Expr::Index>) { check_const(node.base); check_const(node.index); }
      else if constexpr (std::is_same_v<T, Expr::Call>) { for (auto& a : node.args) check_const(a); }
    }, e->rep);
  }

  long const_int(const ExprPtr& e) {
    Value v = const_eval(e);
    return long(v.as_int());
  }

  struct ParsedType {
    TypePtr type;
    DomainPtr domain;  // may be null
  };

  ParsedType parse_type() {
    ParsedType base = parse_type_atom();
    if (accept_punct("^")) {
      ExprPtr n_expr = postfix();
      const long n = const_int(n_expr);
      if (n < 1) fail("vector length must be >= 1");
      base.type = Type::vector_of(base.type, int(n));
      base.domain = base.domain
                        ? FiniteDomain::tuple(std::vector<DomainPtr>(size_t(n), base.domain))
                        : nullptr;
    }
    return base;
  }

  ParsedType parse_type_atom() {
    Token t = lex_.peek();
    if (accept_punct("[")) {
      ExprPtr lo = expr();
      expect_punct(",");
      ExprPtr hi = expr();
      expect_punct("]");
      return {Type::integer(), FiniteDomain::int_range(const_eval(lo).as_int(),
                                                       const_eval(hi).as_int())};
    }
    if (accept_punct("(")) {
      std::vector<TypePtr> types;
      std::vector<DomainPtr> domains;
      bool all_domains = true;
      do {
        ParsedType item = parse_type();
        types.push_back(item.type);
        domains.push_back(item.domain);
        all_domains = all_domains && item.domain != nullptr;
      } while (accept_punct(","));
      expect_punct(")");
      return {Type::tuple(std::move(types)),
              all_domains ? FiniteDomain::tuple(std::move(domains)) : nullptr};
    }
    Token name = expect_ident();
    if (name.text == "int") return {Type::integer(), nullptr};
    if (name.text == "bool") return {Type::boolean(), FiniteDomain::boolean()};
    if (name.text == "prob") return {Type::prob(), nullptr};
    if (name.text == "list") {
      expect_punct("<");
      ParsedType elem = parse_type();
      expect_punct(">");
      DomainPtr dom;
      if (accept_ident("cap")) {
        const long cap = const_int(postfix());
        if (cap < 0) fail("list cap must be >= 0");
        if (!elem.domain) {
          throw ParseError("list element type has no finite domain; cannot cap", name.line,
                           name.column);
        }
        dom = FiniteDomain::list(elem.domain, int(cap));
      }
      return {Type::list(elem.type), dom};
    }
    if (const EnumDecl* e = building_.find_enum(name.text)) {
      return {Type::enumeration(e->name), FiniteDomain::enumeration(e->name, e->ctors)};
    }
    throw ParseError("unknown type '" + name.text + "'", name.line, name.column);
  }

  void parse_enum_decl() {
    Token name = expect_ident();
    if (building_.find_enum(name.text)) {
      throw ParseError("enum '" + name.text + "' already declared", name.line, name.column);
    }
    expect_punct("{");
    std::vector<std::string> ctors;
    do {
      ctors.push_back(expect_ident().text);
    } while (accept_punct(","));
    expect_punct("}");
    expect_punct(";");
    building_.enums.push_back(EnumDecl{name.text, std::move(ctors)});
  }

  void parse_var_decl(bool is_param, const std::map<std::string, std::string>& params) {
    Token name = expect_ident();
    if (building_.slot_of(name.text) >= 0) {
      throw ParseError("variable '" + name.text + "' already declared", name.line, name.column);
    }
    if (name.text.find('$') != std::string::npos) {
      throw ParseError("'$' is reserved for generated variables", name.line, name.column);
    }
    expect_punct(":");
    ParsedType pt = parse_type();
    if (accept_ident("in")) {
      if (accept_punct("{")) {
        ValueVec values;
        do {
          values.push_back(const_eval(expr()));
        } while (accept_punct(","));
        expect_punct("}");
        pt.domain = FiniteDomain::explicit_set(std::move(values));
      } else {
        expect_punct("[");
        ExprPtr lo = expr();
        expect_punct(",");
        ExprPtr hi = expr();
        expect_punct("]");
        pt.domain = FiniteDomain::int_range(const_eval(lo).as_int(), const_eval(hi).as_int());
      }
    }
    expect_punct(";");

    VarDecl decl;
    decl.name = name.text;
    decl.type = pt.type;
    decl.domain = pt.domain;
    decl.is_param = is_param;
    if (is_param) {
      auto it = params.find(name.text);
      if (it == params.end()) {
        throw ParseError("missing value for parameter '" + name.text + "'", name.line,
                         name.column);
      }
      // The parameter's value is itself parsed in the current scope, so it
      // may reference earlier parameters.
      Parser value_parser(it->second, Scope{&building_, nullptr, false, scope_.registry, {}});
      ExprPtr value_expr = value_parser.parse_full_expr();
      Value v = const_eval(value_expr);
      // The tuple grammar has no 1-tuples; a scalar fills a 1-vector.
      if (pt.type->kind == Type::Kind::Tuple && pt.type->items.size() == 1 && !v.is_tuple()) {
        v = Value::tuple({std::move(v)});
      }
      if (pt.domain && !pt.domain->contains(v)) {
        throw ParseError("parameter '" + name.text + "' = " + v.to_string() +
                             " outside its domain " + pt.domain->to_string(),
                         name.line, name.column);
      }
      decl.param_value = v;
      decl.domain = FiniteDomain::singleton(v);
    }
    building_.vars.push_back(std::move(decl));
    rebuild_param_memory();
  }

  void rebuild_param_memory() {
    ValueVec slots;
    for (const VarDecl& d : building_.vars) {
      slots.push_back(d.param_value ? *d.param_value : Value::boolean(false));
    }
    param_memory_ = Memory(std::move(slots));
  }

  VarRef target_ref(const Token& name) {
    const int slot = building_.slot_of(name.text);
    if (slot < 0) {
      throw ParseError("unknown identifier '" + name.text + "'", name.line, name.column);
    }
    if (building_.vars[size_t(slot)].is_param) {
      throw ParseError("cannot assign to parameter '" + name.text + "'", name.line, name.column);
    }
    VarRef ref;
    ref.name = name.text;
    ref.side = 0;
    ref.slot = slot;
    return ref;
  }

  DistExprPtr parse_dist() {
    Token t = lex_.peek();
    auto d = std::make_shared<DistExpr>();
    d->line = t.line;
    d->column = t.column;
    if (accept_ident("Bern")) {
      expect_punct("(");
      ExprPtr p = expr();
      expect_punct(")");
      d->rep = DistExpr::Bern{p};
      return d;
    }
    if (accept_ident("table")) {
      expect_punct("(");
      DistExpr::Explicit rows;
      do {
        ExprPtr key = cons_expr();  // below ternary so ':' stays unambiguous
        expect_punct(":");
        ExprPtr p = expr();
        rows.rows.emplace_back(key, p);
      } while (accept_punct(","));
      expect_punct(")");
      d->rep = std::move(rows);
      return d;
    }
    if (accept_punct("{")) {
      DistExpr::UniformSet set;
      do {
        set.items.push_back(expr());
      } while (accept_punct(","));
      expect_punct("}");
      d->rep = std::move(set);
      return d;
    }
    if (accept_punct("[")) {
      ExprPtr lo = expr();
      expect_punct(",");
      ExprPtr hi = expr();
      expect_punct("]");
      d->rep = DistExpr::UniformRange{lo, hi};
      return d;
    }
    fail("expected distribution expression");
  }

  Block parse_block(std::initializer_list<const char*> terminators) {
    auto at_terminator = [&] {
      for (const char* t : terminators) {
        if (is_ident(t)) return true;
      }
      return lex_.peek().kind == Tok::End;
    };
    Block block;
    while (true) {
      while (accept_punct(";")) {
      }
      if (at_terminator()) break;
      parse_stmt_into(block);
      if (!is_punct(";") && !at_terminator()) fail("expected ';'");
    }
    return block;
  }

  void parse_stmt_into(Block& block) {
    Token t = lex_.peek();
    Command cmd;
    cmd.line = t.line;
    cmd.column = t.column;
    if (accept_ident("skip")) {
      cmd.rep = Command::Skip{};
      block.push_back(std::move(cmd));
      return;
    }
    if (accept_ident("if")) {
      ExprPtr guard = expr();
      expect_keyword("then");
      Block then_branch = parse_block({"else", "fi"});
      Block else_branch;
      if (accept_ident("else")) {
        else_branch = parse_block({"fi"});
      }
      expect_keyword("fi");
      cmd.rep = Command::If{guard, std::move(then_branch), std::move(else_branch)};
      block.push_back(std::move(cmd));
      return;
    }
    if (accept_ident("while")) {
      ExprPtr guard = expr();
      expect_keyword("do");
      Block body = parse_block({"end"});
      expect_keyword("end");
      cmd.rep = Command::While{guard, std::move(body)};
      block.push_back(std::move(cmd));
      return;
    }
    // Assignment forms: x++  x--  x ~~ d  x, y, z := e
    Token name = expect_ident();
    if (is_punct("++") || is_punct("--")) {
      const bool inc = lex_.take().text == "++";
      VarRef ref = target_ref(name);
      ExprPtr var = make_expr(Expr::Var{ref}, name.line, name.column);
      ExprPtr one = lit_expr(Value::integer(1));
      cmd.rep = Command::Assign{
          ref, make_expr(Expr::Binary{inc ? BinOp::Add : BinOp::Sub, var, one}, name.line,
                         name.column)};
      block.push_back(std::move(cmd));
      return;
    }
    if (accept_punct("~~")) {
      cmd.rep = Command::Rand{target_ref(name), parse_dist()};
      block.push_back(std::move(cmd));
      return;
    }
    std::vector<Token> names{name};
    while (accept_punct(",")) names.push_back(expect_ident());
    expect_punct(":=");
    ExprPtr value = expr();
    // Multi-target assignment desugars to one assignment per target; the RHS
    // is pure, so sharing it is sound.
    for (const Token& n : names) {
      Command c;
      c.line = n.line;
      c.column = n.column;
      c.rep = Command::Assign{target_ref(n), value};
      block.push_back(std::move(c));
    }
  }

  Lexer lex_;
  Scope scope_;
  Program building_;
  Memory param_memory_;
  Value ctor_cache_;
};

Program Parser::parse_program_file(const std::map<std::string, std::string>& params) {
  scope_.p1 = &building_;
  while (true) {
    if (accept_ident("enum")) {
      parse_enum_decl();
    } else if (is_ident("var") || is_ident("param")) {
      const bool is_param = lex_.take().text == "param";
      parse_var_decl(is_param, params);
    } else {
      break;
    }
  }
  building_.body = parse_block({"return"});
  expect_keyword("return");
  building_.returns.push_back(expr());
  while (accept_punct(",")) building_.returns.push_back(expr());
  expect_end();
  return std::move(building_);
}

}  // namespace

Program parse_program(const std::string& source, const ParseOptions& opts) {
  Parser parser(source, Scope{nullptr, nullptr, false, opts.registry, {}});
  return parser.parse_program_file(opts.params);
}

ExprPtr parse_assertion(const std::string& text, const Program& p1, const Program& p2,
                        const FunctionRegistry* registry) {
  Parser parser(text, Scope{&p1, &p2, true, registry, {}});
  return parser.parse_full_expr();
}

ExprPtr parse_tagged_expr(const std::string& text, const Program& p1, const Program& p2,
                          const std::vector<std::string>& bound_vars,
                          const FunctionRegistry* registry) {
  Parser parser(text, Scope{&p1, &p2, true, registry, bound_vars});
  return parser.parse_full_expr();
}

ExprPtr parse_program_expr(const std::string& text, const Program& prog,
                           const FunctionRegistry* registry) {
  Parser parser(text, Scope{&prog, nullptr, false, registry, {}});
  return parser.parse_full_expr();
}

DistExprPtr parse_dist_expr(const std::string& text, const Program& prog,
                            const FunctionRegistry* registry) {
  Parser parser(text, Scope{&prog, nullptr, false, registry, {}});
  return parser.parse_full_dist();
}

}  // namespace prhl::lang
