#ifndef PRHL_LOGIC_JUDGMENT_HPP
#define PRHL_LOGIC_JUDGMENT_HPP

#include "prhl/lang/transform.hpp"

namespace prhl::logic {

using lang::ExprPtr;
using lang::FunctionRegistry;
using lang::Program;
using ProgramPtr = std::shared_ptr<const Program>;

// A pRHL quadruple  |= c1 ~ c2 : pre => post. The two programs are separable
// by construction: assertions address their variables through #1/#2 tags and
// each side evaluates in its own memory, so sharing source names is fine.
struct Judgment {
  ProgramPtr left;
  ProgramPtr right;
  ExprPtr pre;
  ExprPtr post;
};

struct CheckOptions {
  const FunctionRegistry* registry = nullptr;
  long fuel = lang::kDefaultFuel;
  // Cap on the number of (reduced) memory pairs a single obligation or
  // validation may enumerate. Exceeding it raises a capacity error; there is
  // no silent pass.
  Int enumeration_cap = Int(10000000);
};

}  // namespace prhl::logic

#endif  // PRHL_LOGIC_JUDGMENT_HPP
