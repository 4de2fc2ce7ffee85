#include "doctest.h"
#include "prhl/studies/case_studies.hpp"

using namespace prhl;
using namespace prhl::studies;

namespace {

logic::CheckOptions opts64() {
  logic::CheckOptions o;
  o.fuel = 16;
  return o;
}

StudyReport run(const std::string& name, std::map<std::string, std::string> params = {}) {
  return run_case_study(name, std::move(params), PRHL_STUDIES_DIR, opts64());
}

}  // namespace

TEST_CASE("case study: random walk defaults") {
  StudyReport r = run("random-walk");
  INFO(r.to_json().dump(2));
  CHECK(r.proof_status == "accepted");
  CHECK(r.validation_status == "valid");
  REQUIRE(r.tv.size() == 1);
  CHECK(r.tv[0].at("tv").get<std::string>() == "1/2");
  CHECK(r.tv[0].at("bound").get<std::string>() == "1/2");
  CHECK(r.ok);
}

TEST_CASE("case study: torus walk defaults") {
  StudyReport r = run("torus-walk");
  INFO(r.to_json().dump(2));
  CHECK(r.proof_status == "accepted");
  CHECK(r.validation_status == "valid");
  CHECK(r.ok);
}

TEST_CASE("case study: biased coins defaults") {
  StudyReport r = run("biased-coins");
  INFO(r.to_json().dump(2));
  CHECK(r.extra.at("cstar_proof") == "accepted");
  CHECK(r.extra.at("equivalence_oracle") == "equal");
  CHECK(r.proof_status == "accepted");
  CHECK(r.validation_status == "valid");
  CHECK(r.ok);
}

TEST_CASE("case study: balls into bins defaults") {
  StudyReport r = run("balls-into-bins");
  INFO(r.to_json().dump(2));
  CHECK(r.proof_status == "accepted");
  CHECK(r.validation_status == "valid");
  CHECK(r.ok);
}

TEST_CASE("case study: birth-death defaults") {
  StudyReport r = run("birth-death");
  INFO(r.to_json().dump(2));
  CHECK(r.extra.at("dcouple").at("verbatim_marginals_ok") == false);
  CHECK(r.extra.at("dcouple").at("marginals_ok") == true);
  CHECK(r.extra.at("dcouple").at("left_right_zero") == true);
  CHECK(r.proof_status == "accepted");
  CHECK(r.validation_status == "valid");
  CHECK(r.ok);
}
