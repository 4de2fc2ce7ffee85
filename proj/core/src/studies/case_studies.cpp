#include "prhl/studies/case_studies.hpp"

#include <fstream>
#include <sstream>

#include "prhl/lang/parser.hpp"
#include "prhl/lang/typecheck.hpp"
#include "prhl/logic/validate.hpp"

#ifndef PRHL_DEFAULT_STUDIES_DIR
#define PRHL_DEFAULT_STUDIES_DIR "case_studies"
#endif

namespace prhl::studies {

namespace {

using conseq::SdReport;
using conseq::TvReport;
using lang::FunctionRegistry;
using lang::Memory;
using lang::ParseOptions;
using lang::Program;
using logic::CheckResult;
using logic::Judgment;
using logic::ObligationStatus;
using logic::ProgramPtr;
using logic::ProofPtr;
using logic::ProofScript;
using logic::Verdict3;

Value mv(const char* ctor, int ord) { return Value::enumerated(EnumVal{"Move", ctor, ord}); }

const char* status_name(ObligationStatus s) {
  switch (s) {
    case ObligationStatus::Ok: return "accepted";
    case ObligationStatus::Failed: return "rejected";
    case ObligationStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* verdict_name(Verdict3 v) {
  switch (v) {
    case Verdict3::Valid: return "valid";
    case Verdict3::Invalid: return "invalid";
    case Verdict3::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorKind::Usage, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw PrhlError(ErrorKind::Parse, path + ": " + e.what());
  }
}

ProgramPtr load_program(const std::string& path, const std::map<std::string, std::string>& params,
                        const FunctionRegistry* registry) {
  ParseOptions opts;
  opts.registry = registry;
  opts.params = params;
  auto prog = std::make_shared<Program>(lang::parse_program(read_file(path), opts));
  auto issues = lang::typecheck(*prog);
  if (!issues.empty()) {
    throw PrhlError(ErrorKind::Type, path + ": " + lang::issues_to_string(issues));
  }
  return prog;
}

// Parses a bare parameter value ("2", "3/10", "(0, 1)").
Value parse_value(const std::string& text) {
  Program scratch;
  return lang::eval_expr(Memory(), lang::parse_program_expr(text, scratch));
}

Int int_param(const std::map<std::string, std::string>& params, const std::string& name) {
  return parse_value(params.at(name)).as_int();
}

Rational rat_param(const std::map<std::string, std::string>& params, const std::string& name) {
  return lang::as_rational(parse_value(params.at(name)));
}

std::vector<Int> vec_param(const std::map<std::string, std::string>& params,
                           const std::string& name, size_t dim) {
  Value v = parse_value(params.at(name));
  std::vector<Int> out;
  if (v.is_int()) {
    out.push_back(v.as_int());
  } else {
    for (const Value& item : v.as_tuple()) out.push_back(item.as_int());
  }
  if (out.size() != dim) {
    throw_error(ErrorKind::Domain,
                "parameter '" + name + "' needs " + std::to_string(dim) + " components");
  }
  return out;
}

std::string vec_text(const std::vector<Int>& v) {
  if (v.size() == 1) return v[0].str();
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

// Fills missing keys with defaults and rejects unknown ones.
void resolve_params(std::map<std::string, std::string>& params,
                    const std::map<std::string, std::string>& defaults) {
  for (const auto& [k, v] : params) {
    if (!defaults.count(k)) {
      throw_error(ErrorKind::Usage, "unknown parameter '" + k + "'");
    }
    (void)v;
  }
  for (const auto& [k, v] : defaults) {
    params.emplace(k, v);
  }
}

struct StudyContext {
  std::string dir;
  CheckOptions opts;  // with the study registry installed
  std::shared_ptr<FunctionRegistry> registry;
};

// Runs the main judgment pipeline shared by every study.
void run_judgment(StudyReport& report, const Judgment& j, const ProofPtr& proof,
                  const CheckOptions& opts, bool want_tv, bool want_sd) {
  CheckResult check;
  auto vj = logic::verify(j, proof, opts, &check);
  report.check = check;
  report.proof_status = status_name(check.status);

  logic::ValidationResult validation = logic::validate_semantics(j, opts);
  report.validation_status = verdict_name(validation.verdict);

  bool conclusions_ok = true;
  if (vj && want_tv) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TvReport& r : conseq::tv_report_all(*vj, opts)) {
      rows.push_back(r.to_json(j));
      conclusions_ok = conclusions_ok && r.holds;
    }
    report.tv = std::move(rows);
  }
  if (vj && want_sd) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SdReport& r : conseq::sd_report_all(*vj, opts)) {
      rows.push_back(r.to_json(j));
      conclusions_ok = conclusions_ok && r.dominates && r.witness_found;
    }
    report.sd = std::move(rows);
  }
  report.ok = check.accepted() && validation.verdict == Verdict3::Valid && conclusions_ok;
}

Judgment make_judgment(const ProgramPtr& p1, const ProgramPtr& p2, const ProofScript& script,
                       const FunctionRegistry* registry) {
  Judgment j;
  j.left = p1;
  j.right = p2;
  j.pre = lang::parse_assertion(script.pre, *p1, *p2, registry);
  j.post = lang::parse_assertion(script.post, *p1, *p2, registry);
  return j;
}

// --- random walk ---------------------------------------------------------------

StudyReport run_random_walk(StudyContext& ctx, std::map<std::string, std::string> params) {
  resolve_params(params, {{"k", "2"}, {"n", "1"}, {"start", "0"}});
  const Int k = int_param(params, "k");
  const Int n = int_param(params, "n");
  const Int start1 = int_param(params, "start");
  if (k < 1 || n < 0) throw_error(ErrorKind::Domain, "need k >= 1 and n >= 0");
  const Int start2 = start1 + 2 * n;

  register_walk_functions(*ctx.registry, n);
  auto p1 = load_program(ctx.dir + "/program.pwhile",
                         {{"start", start1.str()}, {"k", k.str()}, {"n", n.str()}},
                         ctx.registry.get());
  auto p2 = load_program(ctx.dir + "/program.pwhile",
                         {{"start", start2.str()}, {"k", k.str()}, {"n", n.str()}},
                         ctx.registry.get());
  ProofScript script = logic::proof_script_from_json(read_json(ctx.dir + "/proof.json"));

  StudyReport report;
  report.name = "random-walk";
  report.params = {{"k", k.str()}, {"n", n.str()}, {"start", start1.str()},
                   {"start2", start2.str()}};
  run_judgment(report, make_judgment(p1, p2, script, ctx.registry.get()), script.proof,
               ctx.opts, /*want_tv=*/true, /*want_sd=*/false);
  return report;
}

// --- torus walk ----------------------------------------------------------------

StudyReport run_torus_walk(StudyContext& ctx, std::map<std::string, std::string> params) {
  resolve_params(params, {{"d", "1"}, {"q", "3"}, {"k", "2"}, {"start", "0"}, {"delta", "1"}});
  const long d = long(int_param(params, "d"));
  const long q = long(int_param(params, "q"));
  const Int k = int_param(params, "k");
  if (d < 1 || q < 2 || k < 1) throw_error(ErrorKind::Domain, "need d >= 1, q >= 2, k >= 1");
  std::vector<Int> start1 = vec_param(params, "start", size_t(d));
  std::vector<Int> delta = vec_param(params, "delta", size_t(d));
  std::vector<Int> start2;
  std::vector<long> delta_long;
  for (size_t i = 0; i < size_t(d); ++i) {
    if (start1[i] < 0 || start1[i] >= q) {
      throw_error(ErrorKind::Domain, "start components must lie in [0, q)");
    }
    Int s2 = (start1[i] + delta[i]) % q;
    if (s2 < 0) s2 += q;
    start2.push_back(s2);
    delta_long.push_back(long(delta[i]));
  }

  register_torus_functions(*ctx.registry, int(d), q, delta_long);
  std::map<std::string, std::string> base = {
      {"d", std::to_string(d)}, {"q", std::to_string(q)}, {"k", k.str()}};
  auto params1 = base;
  params1["start"] = vec_text(start1);
  auto params2 = base;
  params2["start"] = vec_text(start2);
  auto p1 = load_program(ctx.dir + "/program.pwhile", params1, ctx.registry.get());
  auto p2 = load_program(ctx.dir + "/program.pwhile", params2, ctx.registry.get());
  ProofScript script = logic::proof_script_from_json(read_json(ctx.dir + "/proof.json"));

  StudyReport report;
  report.name = "torus-walk";
  report.params = {{"d", d}, {"q", q}, {"k", k.str()}, {"start", vec_text(start1)},
                   {"delta", vec_text(delta)}, {"start2", vec_text(start2)}};
  run_judgment(report, make_judgment(p1, p2, script, ctx.registry.get()), script.proof,
               ctx.opts, /*want_tv=*/true, /*want_sd=*/false);
  return report;
}

// --- biased coins ----------------------------------------------------------------

StudyReport run_biased_coins(StudyContext& ctx, std::map<std::string, std::string> params) {
  resolve_params(params, {{"k", "3"}, {"q1", "7/10"}, {"q2", "2/5"}});
  const Int k = int_param(params, "k");
  const Rational q1 = rat_param(params, "q1");
  const Rational q2 = rat_param(params, "q2");
  if (!is_probability(q1) || !is_probability(q2)) {
    throw_error(ErrorKind::Domain, "q1 and q2 must be probabilities");
  }
  if (q1 < q2) throw_error(ErrorKind::Domain, "need q1 >= q2");
  if (q1 == 0) throw_error(ErrorKind::Domain, "q1 must be positive to split q2 = q1 * r");
  const Rational r = q2 / q1;  // exact

  StudyReport report;
  report.name = "biased-coins";
  report.params = {{"k", k.str()}, {"q1", format_rational(q1)}, {"q2", format_rational(q2)},
                   {"r", format_rational(r)}};

  const std::string kk = k.str(), sq1 = format_rational(q1), sq2 = format_rational(q2),
                    sr = format_rational(r);
  auto c1 = load_program(ctx.dir + "/c1.pwhile", {{"k", kk}, {"q1", sq1}}, ctx.registry.get());
  auto cstar = load_program(ctx.dir + "/cstar.pwhile",
                            {{"k", kk}, {"q1", sq1}, {"r", sr}, {"q2", sq2}},
                            ctx.registry.get());
  auto c2 = load_program(ctx.dir + "/c2.pwhile",
                         {{"k", kk}, {"q2", sq2}, {"q1", sq1}, {"r", sr}}, ctx.registry.get());

  // First leg: c1 ~ cstar coupled directly.
  ProofScript leg1 = logic::proof_script_from_json(read_json(ctx.dir + "/proof_c1_cstar.json"));
  CheckResult leg1_check;
  auto leg1_vj = logic::verify(make_judgment(c1, cstar, leg1, ctx.registry.get()), leg1.proof,
                               ctx.opts, &leg1_check);
  report.extra["cstar_proof"] = status_name(leg1_check.status);

  // Second leg: cstar and c2 are semantically equivalent on the head count.
  lang::EquivResult oracle = lang::semantically_equivalent(
      *cstar, *c2, {cstar->returns[0]}, {c2->returns[0]}, ctx.opts.fuel,
      ctx.opts.enumeration_cap);
  report.extra["equivalence_oracle"] =
      oracle.verdict == lang::EquivVerdict::Equal
          ? "equal"
          : (oracle.verdict == lang::EquivVerdict::Different ? "different" : "indeterminate");

  // Composed judgment c1 ~ c2 through the coin-splitting Equiv rule.
  ProofScript composed = logic::proof_script_from_json(read_json(ctx.dir + "/proof_c1_c2.json"));
  run_judgment(report, make_judgment(c1, c2, composed, ctx.registry.get()), composed.proof,
               ctx.opts, /*want_tv=*/false, /*want_sd=*/true);
  report.ok = report.ok && leg1_check.accepted() && bool(oracle);
  return report;
}

// --- balls into bins --------------------------------------------------------------

StudyReport run_balls_into_bins(StudyContext& ctx, std::map<std::string, std::string> params) {
  resolve_params(params, {{"n1", "3"}, {"n2", "2"}});
  const Int n1 = int_param(params, "n1");
  const Int n2 = int_param(params, "n2");
  if (n2 < 0 || n1 < n2) throw_error(ErrorKind::Domain, "need n1 >= n2 >= 0");

  auto p1 = load_program(ctx.dir + "/program.pwhile", {{"n", n1.str()}, {"m", n2.str()}},
                         ctx.registry.get());
  auto p2 = load_program(ctx.dir + "/program.pwhile", {{"n", n2.str()}, {"m", n2.str()}},
                         ctx.registry.get());
  ProofScript script = logic::proof_script_from_json(read_json(ctx.dir + "/proof.json"));

  StudyReport report;
  report.name = "balls-into-bins";
  report.params = {{"n1", n1.str()}, {"n2", n2.str()}, {"m", n2.str()}};
  run_judgment(report, make_judgment(p1, p2, script, ctx.registry.get()), script.proof,
               ctx.opts, /*want_tv=*/false, /*want_sd=*/true);
  return report;
}

// --- birth-death --------------------------------------------------------------------

StudyReport run_birth_death(StudyContext& ctx, std::map<std::string, std::string> params) {
  resolve_params(params,
                 {{"steps", "2"}, {"a", "3/10"}, {"b", "1/5"}, {"start1", "1"}, {"start2", "0"}});
  const Int steps = int_param(params, "steps");
  const Rational a = rat_param(params, "a");
  const Rational b = rat_param(params, "b");
  const Int start1 = int_param(params, "start1");
  const Int start2 = int_param(params, "start2");
  if (!is_probability(a) || !is_probability(b) || a + b > 1) {
    throw_error(ErrorKind::Domain, "need probabilities a, b with a + b <= 1");
  }
  if (start1 < start2) throw_error(ErrorKind::Domain, "need start1 >= start2");

  StudyReport report;
  report.name = "birth-death";
  report.params = {{"steps", steps.str()}, {"a", format_rational(a)},
                   {"b", format_rational(b)}, {"start1", start1.str()},
                   {"start2", start2.str()}};

  // The coupled pair table: the paper's verbatim distr-adjacent listing is
  // kept only if its marginals really are bd(state1), bd(state2); otherwise
  // fall back to the monotone coupling (see this study's README).
  const SubDist bd = bd_move_dist(a, b);
  bool verbatim_ok = false;
  try {
    Coupling verbatim(dcouple_table(a, a, b, b));
    verbatim_ok = verbatim.marginal1() == bd && verbatim.marginal2() == bd;
  } catch (const PrhlError&) {
    verbatim_ok = false;
  }
  SubDist dcouple = monotone_adjacent_table(a, a, b, b);
  if (verbatim_ok) {
    dcouple = dcouple_table(a, a, b, b);
  } else {
    report.notes.push_back(
        "verbatim distr-adjacent table rejected: its marginals do not match bd(state); "
        "using the monotone adjacent-state coupling");
  }
  Coupling coupled(dcouple);
  const bool marginals_ok = coupled.marginal1() == bd && coupled.marginal2() == bd;
  const bool zero_crossing = dcouple.prob(Value::pair(mv("Left", 0), mv("Right", 1))) == 0;
  report.extra["dcouple"] = {{"verbatim_marginals_ok", verbatim_ok},
                             {"marginals_ok", marginals_ok},
                             {"left_right_zero", zero_crossing},
                             {"table", dcouple.to_json()}};

  std::map<std::string, std::string> base = {
      {"steps", steps.str()}, {"a", format_rational(a)}, {"b", format_rational(b)}};
  auto params1 = base;
  params1["start"] = start1.str();
  auto params2 = base;
  params2["start"] = start2.str();
  auto p1 = load_program(ctx.dir + "/program.pwhile", params1, ctx.registry.get());
  auto p2 = load_program(ctx.dir + "/program.pwhile", params2, ctx.registry.get());
  ProofScript script = logic::proof_script_from_json(read_json(ctx.dir + "/proof.json"));

  run_judgment(report, make_judgment(p1, p2, script, ctx.registry.get()), script.proof,
               ctx.opts, /*want_tv=*/false, /*want_sd=*/true);
  report.ok = report.ok && marginals_ok && zero_crossing;
  return report;
}

}  // namespace

SubDist bd_move_dist(const Rational& a, const Rational& b) {
  if (!is_probability(a) || !is_probability(b) || a + b > 1) {
    throw_error(ErrorKind::Domain, "bd parameters need a, b in [0,1] with a + b <= 1");
  }
  SubDist d;
  d.add(mv("Left", 0), a);
  d.add(mv("Right", 1), b);
  d.add(mv("Still", 2), Rational(1) - a - b);
  return d;
}

SubDist dcouple_table(const Rational& a_i, const Rational& a_succ, const Rational& b_i,
                      const Rational& b_succ) {
  for (const Rational* p : {&a_i, &a_succ, &b_i, &b_succ}) {
    if (!is_probability(*p)) {
      throw_error(ErrorKind::Domain, "distr-adjacent parameter out of [0, 1]: " +
                                         format_rational(*p));
    }
  }
  const Rational meet = b_succ < a_i ? b_succ : a_i;  // min(b_{i+1}, a_i)
  const Rational residual = Rational(1) - meet - a_succ - b_i - abs(b_succ - a_i);
  if (residual < 0) {
    throw_error(ErrorKind::Domain, "distr-adjacent residual entry is negative: " +
                                       format_rational(residual));
  }
  Value L = mv("Left", 0), R = mv("Right", 1), S = mv("Still", 2);
  SubDist d;
  d.add(Value::pair(R, L), meet);
  d.add(Value::pair(S, L), positive_part(b_succ - a_i));
  d.add(Value::pair(R, S), positive_part(a_i - b_succ));
  d.add(Value::pair(S, R), a_succ);
  d.add(Value::pair(L, S), b_i);
  d.add(Value::pair(S, S), residual);
  return d;
}

SubDist monotone_adjacent_table(const Rational& a_i, const Rational& a_succ,
                                const Rational& b_i, const Rational& b_succ) {
  // First component: the upper process at state i+1; second: the lower at i.
  const SubDist upper = bd_move_dist(a_succ, b_succ);
  const SubDist lower = bd_move_dist(a_i, b_i);
  if (a_succ + b_i > 1) {
    throw_error(ErrorKind::Domain,
                "monotone adjacent coupling needs a_{i+1} + b_i <= 1 to avoid crossing");
  }
  // Comonotone pairing under Left < Still < Right (the Value order of the
  // Move constructors).
  std::vector<std::pair<Value, Rational>> xs(upper.entries().begin(), upper.entries().end());
  std::vector<std::pair<Value, Rational>> ys(lower.entries().begin(), lower.entries().end());
  SubDist joint;
  size_t i = 0, j = 0;
  Rational xi = i < xs.size() ? xs[i].second : Rational(0);
  Rational yj = j < ys.size() ? ys[j].second : Rational(0);
  while (i < xs.size() && j < ys.size()) {
    const Rational step = xi < yj ? xi : yj;
    if (step > 0) joint.add(Value::pair(xs[i].first, ys[j].first), step);
    xi -= step;
    yj -= step;
    if (xi == 0 && ++i < xs.size()) xi = xs[i].second;
    if (yj == 0 && ++j < ys.size()) yj = ys[j].second;
  }
  return joint;
}

nlohmann::json StudyReport::to_json() const {
  nlohmann::json out{{"schema", "prhl/case-study/v1"},
                     {"name", name},
                     {"params", params},
                     {"proof", proof_status},
                     {"validation", validation_status},
                     {"ok", ok}};
  if (!tv.is_null()) out["tv"] = tv;
  if (!sd.is_null()) out["sd"] = sd;
  if (!extra.empty()) out["extra"] = extra;
  if (!notes.empty()) out["notes"] = notes;
  out["obligations"] = check.to_json()["obligations"];
  return out;
}

std::vector<std::string> case_study_names() {
  return {"random-walk", "torus-walk", "biased-coins", "balls-into-bins", "birth-death"};
}

std::string default_studies_dir() { return PRHL_DEFAULT_STUDIES_DIR; }

StudyReport run_case_study(const std::string& name,
                           std::map<std::string, std::string> params,
                           const std::string& studies_dir, const CheckOptions& base) {
  StudyContext ctx;
  ctx.registry = std::make_shared<FunctionRegistry>();
  ctx.opts = base;
  ctx.opts.registry = ctx.registry.get();

  if (name == "random-walk") {
    ctx.dir = studies_dir + "/random_walk";
    return run_random_walk(ctx, std::move(params));
  }
  if (name == "torus-walk") {
    ctx.dir = studies_dir + "/torus_walk";
    return run_torus_walk(ctx, std::move(params));
  }
  if (name == "biased-coins") {
    ctx.dir = studies_dir + "/biased_coins";
    return run_biased_coins(ctx, std::move(params));
  }
  if (name == "balls-into-bins") {
    ctx.dir = studies_dir + "/balls_into_bins";
    return run_balls_into_bins(ctx, std::move(params));
  }
  if (name == "birth-death") {
    ctx.dir = studies_dir + "/birth_death";
    return run_birth_death(ctx, std::move(params));
  }
  throw_error(ErrorKind::Usage, "unknown case study '" + name + "'");
}

std::vector<std::string> diff_expected(const StudyReport& report,
                                       const nlohmann::json& expected) {
  std::vector<std::string> mismatches;
  if (expected.contains("params") && expected.at("params") != report.params) {
    return mismatches;  // expectations recorded for other parameters
  }
  auto want = [&](const char* key, const nlohmann::json& actual) {
    if (expected.contains(key) && expected.at(key) != actual) {
      mismatches.push_back(std::string(key) + ": expected " + expected.at(key).dump() +
                           ", got " + actual.dump());
    }
  };
  want("proof", report.proof_status);
  want("validation", report.validation_status);
  if (expected.contains("tv")) {
    nlohmann::json actual = nlohmann::json::array();
    for (const auto& row : report.tv) {
      actual.push_back(nlohmann::json{{"tv", row.at("tv")},
                                      {"bound", row.at("bound")},
                                      {"holds", row.at("holds")}});
    }
    want("tv", actual);
  }
  if (expected.contains("sd")) {
    nlohmann::json actual = nlohmann::json::array();
    for (const auto& row : report.sd) {
      actual.push_back(nlohmann::json{{"lhs", row.at("lhs")},
                                      {"dominates", row.at("dominates")},
                                      {"witness_found", row.at("witness_found")}});
    }
    want("sd", actual);
  }
  return mismatches;
}

}  // namespace prhl::studies
