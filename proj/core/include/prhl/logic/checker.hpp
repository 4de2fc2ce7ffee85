#ifndef PRHL_LOGIC_CHECKER_HPP
#define PRHL_LOGIC_CHECKER_HPP

#include "prhl/logic/proof.hpp"

namespace prhl::logic {

enum class ObligationStatus { Ok, Failed, Indeterminate };

struct ObligationRecord {
  std::string path;         // node address, e.g. "root.seq.rest.while.body"
  std::string rule;
  std::string description;  // what had to hold
  ObligationStatus status = ObligationStatus::Ok;
  nlohmann::json counterexample;  // memory pair (and sample value) on failure

  bool ok() const { return status == ObligationStatus::Ok; }
};

class VerifiedJudgment;

struct CheckResult {
  ObligationStatus status = ObligationStatus::Failed;
  std::vector<ObligationRecord> log;

  bool accepted() const { return status == ObligationStatus::Ok; }
  nlohmann::json to_json() const;
};

// Checks that `proof` is a valid derivation of `j`. Side conditions are
// discharged by exhaustive enumeration over the declared variable domains;
// a domain too large for `opts.enumeration_cap` raises a capacity error
// rather than passing silently. The result carries one record per
// discharged obligation, in deterministic order; failures carry a concrete
// counterexample that re-evaluates to a violation.
CheckResult check_proof(const Judgment& j, const ProofPtr& proof, const CheckOptions& opts);

// check_proof + the VerifiedJudgment capability on success.
std::optional<VerifiedJudgment> verify(const Judgment& j, const ProofPtr& proof,
                                       const CheckOptions& opts, CheckResult* result = nullptr);

// True iff the assertion holds on every memory pair enumerated from the
// declared domains (restricted to the assertion's free variables, which
// cannot change the verdict). On failure returns the first counterexample.
struct ValidityResult {
  bool valid = true;
  std::optional<std::pair<lang::Memory, lang::Memory>> counterexample;
};
ValidityResult validity_check(const ExprPtr& assertion, const Program& p1, const Program& p2,
                              const CheckOptions& opts);

// A judgment together with the proof tree that check_proof accepted and the
// log of discharged side conditions. Only verify() constructs these.
class VerifiedJudgment {
 public:
  const Judgment& judgment() const { return judgment_; }
  const ProofPtr& proof() const { return proof_; }
  const std::vector<ObligationRecord>& discharged() const { return discharged_; }

 private:
  friend std::optional<VerifiedJudgment> verify(const Judgment&, const ProofPtr&,
                                                const CheckOptions&, CheckResult*);
  VerifiedJudgment(Judgment j, ProofPtr proof, std::vector<ObligationRecord> discharged)
      : judgment_(std::move(j)), proof_(std::move(proof)), discharged_(std::move(discharged)) {}

  Judgment judgment_;
  ProofPtr proof_;
  std::vector<ObligationRecord> discharged_;
};

}  // namespace prhl::logic

#endif  // PRHL_LOGIC_CHECKER_HPP
