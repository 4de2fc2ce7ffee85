#ifndef PRHL_LOGIC_VALIDATE_HPP
#define PRHL_LOGIC_VALIDATE_HPP

#include "prhl/logic/judgment.hpp"

namespace prhl::logic {

enum class Verdict3 { Valid, Invalid, Indeterminate };

// One initial pair's validation outcome: whether the lifted postcondition
// admits a coupling of the two output distributions, and the witness found.
struct PairOutcome {
  lang::Memory m1, m2;
  bool holds = false;
  // Witness coupling over final memory pairs, empty when !holds.
  std::vector<std::tuple<lang::Memory, lang::Memory, Rational>> witness;
};

struct ValidationResult {
  Verdict3 verdict = Verdict3::Valid;
  std::vector<PairOutcome> outcomes;  // one per in-domain initial pair
  std::string detail;                 // set when not Valid

  bool valid() const { return verdict == Verdict3::Valid; }
  nlohmann::json to_json(const Program& p1, const Program& p2) const;
};

// Checks validity in the sense of the semantic definition: for every pair of
// initial memories satisfying the precondition (enumerated over the declared
// domains of the precondition's variables and each program's inputs), the
// output distributions must be related by the lifted postcondition. The
// lifting is decided by the exact flow oracle; this is completely
// independent of the structural proof checker.
ValidationResult validate_semantics(const Judgment& j, const CheckOptions& opts);

// Enumerates the judgment's pre-satisfying initial pairs in deterministic
// order; the visitor returns false to stop early.
void for_each_initial_pair(
    const Judgment& j, const CheckOptions& opts,
    const std::function<bool(const lang::Memory&, const lang::Memory&)>& visit);

}  // namespace prhl::logic

#endif  // PRHL_LOGIC_VALIDATE_HPP
