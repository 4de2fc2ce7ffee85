#include "prhl/conseq/consequences.hpp"

#include <set>

namespace prhl::conseq {

namespace {

using lang::EvalScope;
using lang::Expr;
using lang::ExprPtr;
using lang::Memory;
using lang::MemoryDist;

// Requires every variable of e to carry the given tag.
bool only_side(const ExprPtr& e, int side) {
  bool ok = true;
  struct V {
    int side;
    bool& ok;
    void walk(const ExprPtr& e) {
      if (!e || !ok) return;
      if (const auto* v = e->get<Expr::Var>()) {
        if (v->ref.bound < 0 && v->ref.side != side) ok = false;
        return;
      }
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Expr::Unary>) walk(node.operand);
            else if constexpr (std::is_same_v<T, Expr::Binary>) { walk(node.lhs); walk(node.rhs); }
            else if constexpr (std::is_same_v<T, Expr::Cond>) { walk(node.cond); walk(node.then_e); walk(node.else_e); }
            else if constexpr (std::is_same_v<T, Expr::TupleExpr>) { for (const auto& i : node.items) walk(i); }
            else if constexpr (std::is_same_v<T, Expr::Index>) { walk(node.base); walk(node.index); }
            else if constexpr (std::is_same_v<T, Expr::Call>) { for (const auto& a : node.args) walk(a); }
            else if constexpr (std::is_same_v<T, Expr::Quant>) { walk(node.lo); walk(node.hi); walk(node.body); }
            else if constexpr (std::is_same_v<T, Expr::SampleAll>) { ok = false; }
          },
          e->rep);
    }
  };
  V{side, ok}.walk(e);
  return ok;
}

struct TvShape {
  ExprPtr phi;  // may be null: no hypothesis (Phi = true)
  ExprPtr v1, v2;
};

// post must be  Phi -> v1#1 = v2#2  (or the bare equality, Phi = true).
TvShape tv_shape(const ExprPtr& post) {
  ExprPtr phi;
  ExprPtr eq = post;
  if (const auto* imp = post->get<Expr::Binary>(); imp && imp->op == lang::BinOp::Implies) {
    phi = imp->lhs;
    eq = imp->rhs;
  }
  const auto* eq_node = eq->get<Expr::Binary>();
  if (!eq_node || eq_node->op != lang::BinOp::Eq) {
    throw PrhlError(ErrorKind::Shape,
                    "postcondition must be 'Phi -> v1#1 = v2#2', got " + expr_to_string(post));
  }
  if (phi && !only_side(phi, 1)) {
    throw PrhlError(ErrorKind::Shape,
                    "the hypothesis must only mention #1 variables: " + expr_to_string(phi));
  }
  if (!only_side(eq_node->lhs, 1) || !only_side(eq_node->rhs, 2)) {
    throw PrhlError(ErrorKind::Shape, "the equated outputs must be v1#1 and v2#2");
  }
  return {phi, eq_node->lhs, eq_node->rhs};
}

// Conjuncts v1#1 >= v2#2 of the postcondition (a single one or an && tree).
void sd_shape(const ExprPtr& post, std::vector<std::pair<ExprPtr, ExprPtr>>& out) {
  if (const auto* b = post->get<Expr::Binary>()) {
    if (b->op == lang::BinOp::And) {
      sd_shape(b->lhs, out);
      sd_shape(b->rhs, out);
      return;
    }
    if (b->op == lang::BinOp::Ge) {
      if (!only_side(b->lhs, 1) || !only_side(b->rhs, 2)) {
        throw PrhlError(ErrorKind::Shape, "dominance conjunct must be v1#1 >= v2#2");
      }
      out.emplace_back(b->lhs, b->rhs);
      return;
    }
  }
  throw PrhlError(ErrorKind::Shape,
                  "postcondition must be a conjunction of 'v1#1 >= v2#2', got " +
                      expr_to_string(post));
}

// Distribution of a tagged expression under a single-program output
// distribution (side 1 expressions read m1, side 2 expressions m2).
SubDist push_tagged(const MemoryDist& mu, const ExprPtr& e, int side) {
  SubDist out;
  for (const auto& [m, p] : mu.entries) {
    EvalScope scope;
    (side == 2 ? scope.m2 : scope.m1) = &m;
    out.add(lang::eval_expr(scope, e), p);
  }
  return out;
}

MemoryDist run_exact(const lang::Program& prog, const Memory& m, const CheckOptions& opts) {
  lang::InterpOptions interp;
  interp.fuel = opts.fuel;
  interp.error_on_residual = true;  // consequences need exact distributions
  return lang::interpret(prog.body, m, interp);
}

void require_pre(const Judgment& j, const Memory& m1, const Memory& m2) {
  if (!lang::eval_expr(EvalScope::pair(m1, m2), j.pre).as_bool()) {
    throw PrhlError(ErrorKind::Domain, "initial pair does not satisfy the precondition");
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

nlohmann::json TvReport::to_json(const Judgment& j) const {
  return nlohmann::json{{"m1", lang::memory_to_json(*j.left, m1)},
                        {"m2", lang::memory_to_json(*j.right, m2)},
                        {"tv", format_rational(tv)},
                        {"bound", format_rational(bound)},
                        {"holds", holds}};
}

nlohmann::json SdReport::to_json(const Judgment& j) const {
  nlohmann::json out{{"m1", lang::memory_to_json(*j.left, m1)},
                     {"m2", lang::memory_to_json(*j.right, m2)},
                     {"lhs", lhs},
                     {"rhs", rhs},
                     {"dominates", dominates},
                     {"witness_found", witness_found}};
  if (witness_found) out["witness"] = witness.joint().to_json();
  return out;
}

TvReport tv_bound(const VerifiedJudgment& vj, const Memory& m1, const Memory& m2,
                  const CheckOptions& opts) {
  const Judgment& j = vj.judgment();
  require_pre(j, m1, m2);
  const TvShape shape = tv_shape(j.post);

  MemoryDist out1 = run_exact(*j.left, m1, opts);
  MemoryDist out2 = run_exact(*j.right, m2, opts);

  TvReport report;
  report.m1 = m1;
  report.m2 = m2;
  report.tv = tv_distance(push_tagged(out1, shape.v1, 1), push_tagged(out2, shape.v2, 2)).value();
  // The bound depends on the left program alone: Pr[!Phi] under its output.
  Rational bad = 0;
  if (shape.phi) {
    for (const auto& [m, p] : out1.entries) {
      EvalScope scope;
      scope.m1 = &m;
      if (!lang::eval_expr(scope, shape.phi).as_bool()) bad += p;
    }
  }
  report.bound = bad;
  report.holds = report.tv <= report.bound;
  return report;
}

std::vector<SdReport> sd_conclude(const VerifiedJudgment& vj, const Memory& m1, const Memory& m2,
                                  const CheckOptions& opts) {
  const Judgment& j = vj.judgment();
  require_pre(j, m1, m2);
  std::vector<std::pair<ExprPtr, ExprPtr>> conjuncts;
  sd_shape(j.post, conjuncts);

  MemoryDist out1 = run_exact(*j.left, m1, opts);
  MemoryDist out2 = run_exact(*j.right, m2, opts);

  std::vector<SdReport> reports;
  for (const auto& [lhs, rhs] : conjuncts) {
    SdReport r;
    r.m1 = m1;
    r.m2 = m2;
    r.lhs = expr_to_string(lhs);
    r.rhs = expr_to_string(rhs);
    const SubDist x = push_tagged(out1, lhs, 1);
    const SubDist y = push_tagged(out2, rhs, 2);
    r.dominates = stochastically_dominates(x, y);
    auto witness = lifting_exists(Relation::geq(), x, y);
    r.witness_found = witness.has_value();
    if (witness) r.witness = std::move(*witness);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<std::pair<Memory, Memory>> initial_pairs(const Judgment& j,
                                                     const CheckOptions& opts) {
  std::vector<std::pair<Memory, Memory>> pairs;
  logic::for_each_initial_pair(j, opts, [&](const Memory& m1, const Memory& m2) {
    pairs.emplace_back(m1, m2);
    return true;
  });
  return pairs;
}

std::vector<TvReport> tv_report_all(const VerifiedJudgment& vj, const CheckOptions& opts) {
  std::vector<TvReport> out;
  for (const auto& [m1, m2] : initial_pairs(vj.judgment(), opts)) {
    out.push_back(tv_bound(vj, m1, m2, opts));
  }
  return out;
}

std::vector<SdReport> sd_report_all(const VerifiedJudgment& vj, const CheckOptions& opts) {
  std::vector<SdReport> out;
  for (const auto& [m1, m2] : initial_pairs(vj.judgment(), opts)) {
    for (SdReport& r : sd_conclude(vj, m1, m2, opts)) out.push_back(std::move(r));
  }
  return out;
}

std::string tv_reports_csv(const Judgment& j, const std::vector<TvReport>& reports) {
  std::string out = "m1,m2,tv,bound,holds\n";
  for (const TvReport& r : reports) {
    out += csv_quote(lang::memory_to_json(*j.left, r.m1).dump()) + "," +
           csv_quote(lang::memory_to_json(*j.right, r.m2).dump()) + "," + format_rational(r.tv) +
           "," + format_rational(r.bound) + "," + (r.holds ? "true" : "false") + "\n";
  }
  return out;
}

std::string sd_reports_csv(const Judgment& j, const std::vector<SdReport>& reports) {
  std::string out = "m1,m2,lhs,rhs,dominates,witness\n";
  for (const SdReport& r : reports) {
    out += csv_quote(lang::memory_to_json(*j.left, r.m1).dump()) + "," +
           csv_quote(lang::memory_to_json(*j.right, r.m2).dump()) + "," + csv_quote(r.lhs) + "," +
           csv_quote(r.rhs) + "," + (r.dominates ? "true" : "false") + "," +
           (r.witness_found ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace prhl::conseq
