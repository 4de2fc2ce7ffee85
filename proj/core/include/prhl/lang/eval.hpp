#ifndef PRHL_LANG_EVAL_HPP
#define PRHL_LANG_EVAL_HPP

#include "prhl/lang/memory.hpp"

namespace prhl::lang {

// Evaluation context. Plain program evaluation reads m1 (variables carry
// side 0 or 1); relational evaluation supplies both memories and tagged
// variables pick theirs. `bound` is the stack of quantifier-bound integers,
// innermost last.
struct EvalScope {
  const Memory* m1 = nullptr;
  const Memory* m2 = nullptr;
  ValueVec bound;

  static EvalScope single(const Memory& m) { return EvalScope{&m, nullptr, {}}; }
  static EvalScope pair(const Memory& a, const Memory& b) { return EvalScope{&a, &b, {}}; }
};

// Total and deterministic on type-correct inputs.
Value eval_expr(const EvalScope& scope, const ExprPtr& e);

inline Value eval_expr(const Memory& m, const ExprPtr& e) {
  return eval_expr(EvalScope::single(m), e);
}

// Evaluates a distribution expression to an exact finite-support
// sub-distribution. Validates parameters (Bern p in [0, 1], explicit tables
// nonnegative with mass <= 1, uniform sets distinct and non-empty).
SubDist eval_dist(const EvalScope& scope, const DistExprPtr& d);

inline SubDist eval_dist(const Memory& m, const DistExprPtr& d) {
  return eval_dist(EvalScope::single(m), d);
}

// Numeric view of an int- or prob-valued Value.
Rational as_rational(const Value& v);

// ---------------------------------------------------------------------------
// Interpretation
// ---------------------------------------------------------------------------

inline constexpr long kDefaultFuel = 64;

struct InterpOptions {
  long fuel = kDefaultFuel;
  // When true, leftover loop mass raises a fuel error instead of being
  // returned as `residual`.
  bool error_on_residual = false;
};

// Exact denotational interpretation. Loops are unrolled, accumulating the
// mass that has exited; unrolling stops when the guard-true mass is exactly
// zero or after `fuel` iterations per loop, in which case the remaining mass
// is reported in MemoryDist::residual (dropped from the result).
MemoryDist interpret(const Block& block, const Memory& m, const InterpOptions& opts = {});
MemoryDist interpret(const Block& block, MemoryDist in, const InterpOptions& opts = {});

inline MemoryDist interpret(const Program& prog, const Memory& m, const InterpOptions& opts = {}) {
  return interpret(prog.body, m, opts);
}

// The distribution of e under mu: Mlet m = mu in unit m(e). Also covers
// event probabilities via boolean e.
SubDist pushforward(const MemoryDist& mu, const ExprPtr& e);

// Probability that boolean `event` holds under mu.
Prob event_probability(const MemoryDist& mu, const ExprPtr& event);

enum class Lossless { Yes, No, Indeterminate };

struct LosslessResult {
  Lossless verdict = Lossless::Indeterminate;
  std::optional<Memory> witness;  // memory exhibiting mass loss / residual
};

// Decides whether `block` terminates with mass exactly 1 from every memory
// in the enumerated domain of `prog`. Fuel exhaustion on some memory yields
// Indeterminate (not provably lossless), distinct from a definite No.
LosslessResult is_lossless(const Program& prog, const Block& block, long fuel,
                           const Int& enumeration_cap);

}  // namespace prhl::lang

#endif  // PRHL_LANG_EVAL_HPP
