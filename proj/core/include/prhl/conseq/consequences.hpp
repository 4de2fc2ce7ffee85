#ifndef PRHL_CONSEQ_CONSEQUENCES_HPP
#define PRHL_CONSEQ_CONSEQUENCES_HPP

#include "prhl/lifting.hpp"
#include "prhl/logic/checker.hpp"
#include "prhl/logic/validate.hpp"

namespace prhl::conseq {

using logic::CheckOptions;
using logic::Judgment;
using logic::VerifiedJudgment;

// The coupling bound on total variation distance, extracted from a verified
// judgment whose postcondition has the shape  Phi -> v1#1 = v2#2  with Phi
// over #1 variables only. tv is the exact distance between the output
// distributions of v1 and v2; bound is the probability of !Phi under the
// left program alone.
struct TvReport {
  lang::Memory m1, m2;
  Rational tv;
  Rational bound;
  bool holds = false;  // tv <= bound, exact

  nlohmann::json to_json(const Judgment& j) const;
};

// The stochastic-dominance conclusion for a postcondition conjunct
// v1#1 >= v2#2: the CDF test verdict plus the >=-lifting witness that must
// exist by Strassen's theorem.
struct SdReport {
  lang::Memory m1, m2;
  std::string lhs, rhs;  // the output expressions, printable form
  bool dominates = false;
  bool witness_found = false;
  Coupling witness;

  nlohmann::json to_json(const Judgment& j) const;
};

// Extractors for one initial pair; the pair must satisfy the precondition.
TvReport tv_bound(const VerifiedJudgment& vj, const lang::Memory& m1, const lang::Memory& m2,
                  const CheckOptions& opts);
std::vector<SdReport> sd_conclude(const VerifiedJudgment& vj, const lang::Memory& m1,
                                  const lang::Memory& m2, const CheckOptions& opts);

// All in-domain initial pairs satisfying the precondition.
std::vector<std::pair<lang::Memory, lang::Memory>> initial_pairs(const Judgment& j,
                                                                 const CheckOptions& opts);

std::vector<TvReport> tv_report_all(const VerifiedJudgment& vj, const CheckOptions& opts);
std::vector<SdReport> sd_report_all(const VerifiedJudgment& vj, const CheckOptions& opts);

// CSV rows (one line per report, RFC-style quoting); used by the CLI.
std::string tv_reports_csv(const Judgment& j, const std::vector<TvReport>& reports);
std::string sd_reports_csv(const Judgment& j, const std::vector<SdReport>& reports);

}  // namespace prhl::conseq

#endif  // PRHL_CONSEQ_CONSEQUENCES_HPP
