#ifndef PRHL_STUDIES_CASE_STUDIES_HPP
#define PRHL_STUDIES_CASE_STUDIES_HPP

#include "prhl/conseq/consequences.hpp"
#include "prhl/studies/functions.hpp"

namespace prhl::studies {

using logic::CheckOptions;

// Move distribution of the birth-death chain: down with probability a, up
// with probability b, still otherwise. Requires a + b <= 1.
SubDist bd_move_dist(const Rational& a, const Rational& b);

// The verbatim adjacent-state pair table (distr-adjacent). Validates that
// every entry, including the residual (Still, Still) mass, is nonnegative.
// Its marginals are checked against bd_move_dist by the birth-death runner;
// see that study's README for the outcome.
SubDist dcouple_table(const Rational& a_i, const Rational& a_succ, const Rational& b_i,
                      const Rational& b_succ);

// The comonotone (monotone) coupling of the two move distributions under
// Left < Still < Right. Marginals are exact by construction and the
// crossing entry (Left, Right) is zero whenever a_succ + b_i <= 1.
SubDist monotone_adjacent_table(const Rational& a_i, const Rational& a_succ,
                                const Rational& b_i, const Rational& b_succ);

// Outcome of one packaged case study run.
struct StudyReport {
  std::string name;
  nlohmann::json params;
  std::string proof_status = "rejected";
  std::string validation_status = "invalid";
  nlohmann::json tv;                       // array of TV reports, when applicable
  nlohmann::json sd;                       // array of SD reports, when applicable
  nlohmann::json extra = nlohmann::json::object();
  std::vector<std::string> notes;
  logic::CheckResult check;                // obligations of the main proof
  bool ok = false;

  nlohmann::json to_json() const;
};

std::vector<std::string> case_study_names();
std::string default_studies_dir();

// Runs a packaged study: loads its programs and proof script from
// <studies_dir>/<name>/, validates the parameters, checks the proof,
// validates the judgment semantically, and extracts the probability-level
// conclusion. Unknown parameters or invalid combinations raise domain
// errors.
StudyReport run_case_study(const std::string& name,
                           std::map<std::string, std::string> params,
                           const std::string& studies_dir, const CheckOptions& base);

// Compares a report against the study's expected.json (only when the
// resolved parameters match the file's). Returns mismatch descriptions.
std::vector<std::string> diff_expected(const StudyReport& report,
                                       const nlohmann::json& expected);

}  // namespace prhl::studies

#endif  // PRHL_STUDIES_CASE_STUDIES_HPP
