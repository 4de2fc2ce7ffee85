#ifndef PRHL_LANG_TRANSFORM_HPP
#define PRHL_LANG_TRANSFORM_HPP

#include "prhl/lang/eval.hpp"

namespace prhl::lang {

// The program-equivalence rewrites. Every rewrite is checked syntactically
// here and confirmed semantically by the equivalence oracle wherever it
// feeds a proof (the Equiv rule), so a bad parameter cannot smuggle in a
// wrong equation.
//
//   loop-split(e'):     while e do c  =>  while e && e' do c; while e do c
//   coin-split(p1,p2):  x ~~ Bern(p)  =>  y ~~ Bern(p1); z ~~ Bern(p2); x := y && z
//   coin-merge:         the reverse of coin-split, folding Bern(p1*p2)
//   marginal-split(D,k): x ~~ d       =>  y ~~ D; x := y[k]   (D over pairs)
//
// Fresh variables come from the reserved '$' namespace unless the caller
// names them; named ones must be undeclared in the program.
struct Transform {
  enum class Kind { LoopSplit, CoinSplit, CoinMerge, MarginalSplit };

  Kind kind = Kind::LoopSplit;
  std::string guard_text;            // LoopSplit: the extra conjunct e'
  std::string p1_text, p2_text;      // CoinSplit factors
  std::string fresh1, fresh2;        // names for introduced variables
  std::string table_text;            // MarginalSplit: pair-distribution expression
  int component = 1;                 // MarginalSplit: which projection (1|2)

  static Transform loop_split(std::string guard);
  static Transform coin_split(std::string p1, std::string p2, std::string fresh1 = "",
                              std::string fresh2 = "");
  static Transform coin_merge();
  static Transform marginal_split(std::string table, int component, std::string fresh = "");

  std::string describe() const;
};

// AST positions: alternating (command index, branch) pairs ending in a
// command index. branch 0 enters an if's then-branch or a while body,
// branch 1 an if's else-branch.
using AstPath = std::vector<int>;

// Applies the rewrite at `path`, returning the rewritten program (fresh
// declarations included). Throws on a pattern mismatch.
Program apply_transform(const Program& prog, const Transform& t, const AstPath& path,
                        const FunctionRegistry* registry = nullptr);

// Rewrites a command block in the declaration scope of `prog` (the proof
// checker relates sub-blocks, e.g. a loop body). The returned program is
// `prog` plus any fresh declarations; its body is untouched.
struct BlockRewrite {
  Program program;
  Block block;
};
BlockRewrite apply_transform_to_block(const Program& prog, const Block& block,
                                      const Transform& t, const AstPath& path,
                                      const FunctionRegistry* registry = nullptr);

// ---------------------------------------------------------------------------
// Exact semantic equivalence oracle
// ---------------------------------------------------------------------------

enum class EquivVerdict { Equal, Different, Indeterminate };

struct EquivResult {
  EquivVerdict verdict = EquivVerdict::Indeterminate;
  std::optional<Memory> counterexample;  // an initial memory of program a
  std::string detail;

  explicit operator bool() const { return verdict == EquivVerdict::Equal; }
};

// Decides exact output equivalence: for every initial memory enumerated over
// the shared input variables, the pushforwards of the two programs under
// their `out` expressions coincide. Inexact interpretation (fuel) yields
// Indeterminate. Inputs are the variables a program may read before writing,
// which must be declared (same names) on both sides.
EquivResult semantically_equivalent(const Program& a, const Program& b,
                                    const std::vector<ExprPtr>& out_a,
                                    const std::vector<ExprPtr>& out_b, long fuel,
                                    const Int& enumeration_cap);

// Convenience: compare the joint distribution of all same-named variables.
EquivResult semantically_equivalent_common(const Program& a, const Program& b, long fuel,
                                           const Int& enumeration_cap);

// Variables the program may read before writing (slots, sorted). `extra`
// expressions are treated as read at the end of the body.
std::vector<int> input_slots(const Program& prog, const std::vector<ExprPtr>& extra);

// Slots assigned on every control path through the body.
std::vector<int> definitely_assigned(const Program& prog);

}  // namespace prhl::lang

#endif  // PRHL_LANG_TRANSFORM_HPP
