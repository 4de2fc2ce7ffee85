#ifndef PRHL_LANG_PARSER_HPP
#define PRHL_LANG_PARSER_HPP

#include "prhl/lang/ast.hpp"

namespace prhl::lang {

struct ParseOptions {
  const FunctionRegistry* registry = nullptr;
  // Parameter bindings, raw source text ("2", "3/10", "(0, 1)"). Every
  // `param` declaration in the file must be bound here.
  std::map<std::string, std::string> params;
};

// Parses a .pwhile program: declarations, command body, return clause.
Program parse_program(const std::string& source, const ParseOptions& opts = {});

// Parses a relational assertion over the two programs of a judgment.
// Variables are tagged `x#1` / `x#2`; quantifier-bound variables are bare.
ExprPtr parse_assertion(const std::string& text, const Program& p1, const Program& p2,
                        const FunctionRegistry* registry = nullptr);

// Like parse_assertion but with extra pre-bound integer-or-value variables
// (outermost first); used for the Sample rule's bijection expressions, where
// the sampled value is the distinguished variable.
ExprPtr parse_tagged_expr(const std::string& text, const Program& p1, const Program& p2,
                          const std::vector<std::string>& bound_vars,
                          const FunctionRegistry* registry = nullptr);

// Parses a plain (untagged) expression in the scope of one program; used by
// program transformations (e.g. the extra guard of a loop split).
ExprPtr parse_program_expr(const std::string& text, const Program& prog,
                           const FunctionRegistry* registry = nullptr);

// Parses a standalone distribution expression (Bern(p), {..}, [lo, hi],
// table(..)) in the scope of one program.
DistExprPtr parse_dist_expr(const std::string& text, const Program& prog,
                            const FunctionRegistry* registry = nullptr);

}  // namespace prhl::lang

#endif  // PRHL_LANG_PARSER_HPP
