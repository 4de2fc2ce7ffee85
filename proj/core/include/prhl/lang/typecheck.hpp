#ifndef PRHL_LANG_TYPECHECK_HPP
#define PRHL_LANG_TYPECHECK_HPP

#include "prhl/lang/ast.hpp"

namespace prhl::lang {

struct TypeIssue {
  std::string message;
  int line = 0, column = 0;
};

std::string issues_to_string(const std::vector<TypeIssue>& issues);

// Checks the program body and return clause. May rewrite the AST in one
// spot: integer literals 0/1 inside a uniform set sampled into a boolean
// variable are read as the fair-coin booleans of the paper's `{0,1}`.
std::vector<TypeIssue> typecheck(Program& prog);

// Type of a relational assertion (must come out bool). `p1`/`p2` resolve the
// #1/#2 tagged variables.
std::vector<TypeIssue> typecheck_assertion(const ExprPtr& assertion, const Program& p1,
                                           const Program& p2);

}  // namespace prhl::lang

#endif  // PRHL_LANG_TYPECHECK_HPP
